#include "gridser/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace gridser {

const char* metric_name(Metric m) { return m == Metric::L2 ? "l2" : "linf"; }

Metric metric_from_name(const std::string& name) {
	if (name == "l2") return Metric::L2;
	if (name == "linf") return Metric::Linf;
	throw invalid_input("unknown metric '" + name + "' (expected l2 or linf)");
}

double distance(std::span<const double> a, std::span<const double> b, Metric m) {
	if (m == Metric::L2) {
		double s = 0;
		for (std::size_t i = 0; i < a.size(); ++i) {
			double diff = a[i] - b[i];
			s += diff * diff;
		}
		return std::sqrt(s);
	}
	double mx = 0;
	for (std::size_t i = 0; i < a.size(); ++i)
		mx = std::max(mx, std::abs(a[i] - b[i]));
	return mx;
}

double distance(const PointCloud& cloud, index_t i, index_t j) {
	return distance(cloud.point(i), cloud.point(j), cloud.metric);
}

namespace {

// Byte key for exact duplicate detection; -0.0 normalized to 0.0.
std::string point_key(std::span<const double> p) {
	std::string key(p.size() * sizeof(double), '\0');
	for (std::size_t i = 0; i < p.size(); ++i) {
		double v = p[i] == 0.0 ? 0.0 : p[i];
		std::memcpy(key.data() + i * sizeof(double), &v, sizeof(double));
	}
	return key;
}

}  // namespace

PointCloud parse_points(std::istream& in, Metric metric, const std::string& source) {
	PointCloud cloud;
	cloud.metric = metric;
	std::string line;
	index_t lineno = 0;
	std::vector<index_t> line_of_point;
	std::vector<double> row;
	while (std::getline(in, line)) {
		++lineno;
		std::string body = line;
		for (char& c : body)
			if (c == ',' || c == '\t' || c == '\r') c = ' ';
		std::istringstream tokens(body);
		std::string tok;
		row.clear();
		bool comment = false;
		while (tokens >> tok) {
			if (tok[0] == '#') {
				comment = true;
				break;
			}
			row.push_back(parse_double(tok, source + ":" + std::to_string(lineno)));
		}
		if (row.empty()) {
			if (!comment && body.find_first_not_of(' ') != std::string::npos)
				throw invalid_input(source + ":" + std::to_string(lineno) + ": no coordinates");
			continue;
		}
		if (cloud.dim == 0)
			cloud.dim = static_cast<int>(row.size());
		else if (static_cast<int>(row.size()) != cloud.dim)
			throw invalid_input(source + ":" + std::to_string(lineno) + ": expected " +
			                    std::to_string(cloud.dim) + " coordinates, got " +
			                    std::to_string(row.size()));
		cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
		line_of_point.push_back(lineno);
	}
	if (cloud.dim == 0) throw invalid_input(source + ": no points");

	std::unordered_map<std::string, index_t> seen;
	for (index_t i = 0; i < cloud.size(); ++i) {
		auto [it, fresh] = seen.try_emplace(point_key(cloud.point(i)), i);
		if (!fresh)
			throw invalid_input(source + ":" + std::to_string(line_of_point[i]) +
			                    ": duplicate of point at line " +
			                    std::to_string(line_of_point[it->second]) +
			                    " (closest-pair distance would be zero)");
	}
	return cloud;
}

PointCloud load_points(const std::string& path, Metric metric) {
	std::ifstream in(path);
	if (!in) throw io_error("cannot open points file '" + path + "'");
	return parse_points(in, metric, path);
}

ScaleBounds scale_bounds(const PointCloud& cloud, bool exact_diameter) {
	index_t n = cloud.size();
	if (n < 1) throw invalid_input("empty point cloud");
	ScaleBounds b;
	if (n == 1) {
		b.trivial = true;
		b.alpha0 = b.alpham = 1.0;
		return b;
	}
	double cp = std::numeric_limits<double>::infinity();
	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j) cp = std::min(cp, distance(cloud, i, j));
	if (cp <= 0)
		throw invalid_input("duplicate points: closest-pair distance is zero");

	double diam_est;
	if (exact_diameter) {
		diam_est = 0;
		for (index_t i = 0; i < n; ++i)
			for (index_t j = i + 1; j < n; ++j)
				diam_est = std::max(diam_est, distance(cloud, i, j));
	} else {
		// 2-approximation: twice the max distance from the first point
		double far0 = 0;
		for (index_t j = 1; j < n; ++j) far0 = std::max(far0, distance(cloud, 0, j));
		diam_est = 2 * far0;
	}
	b.cp = cp;
	b.diam_est = diam_est;
	b.spread = diam_est / cp;
	b.alpha0 = cp / (3.0 * cloud.dim);
	b.alpham = diam_est;
	return b;
}

int scale_count(const ScaleBounds& bounds) {
	if (bounds.trivial) return 1;
	int s = 0;
	double a = bounds.alpha0;
	while (a < bounds.alpham) {
		a *= 2;
		++s;
	}
	return s + 1;
}

PointCloud uniform_cloud(index_t n, int dim, Metric metric, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	PointCloud cloud;
	cloud.dim = dim;
	cloud.metric = metric;
	cloud.coords.reserve(static_cast<std::size_t>(n) * dim);
	for (index_t i = 0; i < n * dim; ++i)
		cloud.coords.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
	return cloud;
}

}  // namespace gridser
