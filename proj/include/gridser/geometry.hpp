#pragma once

#include <iosfwd>
#include <span>

#include "gridser/common.hpp"

namespace gridser {

enum class Metric { L2, Linf };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// A finite set of pairwise distinct points in R^d with a metric tag.
// Point ids are positions in input order.
struct PointCloud {
	int dim = 0;
	Metric metric = Metric::L2;
	std::vector<double> coords;  // n * dim, row-major

	index_t size() const {
		return dim == 0 ? 0 : static_cast<index_t>(coords.size()) / dim;
	}
	std::span<const double> point(index_t i) const {
		return {coords.data() + i * dim, static_cast<std::size_t>(dim)};
	}
};

double distance(std::span<const double> a, std::span<const double> b, Metric m);
double distance(const PointCloud& cloud, index_t i, index_t j);

// One point per line, coordinates separated by whitespace or commas.
// Lines starting with '#' are ignored. Rejects ragged rows, non-numeric
// tokens, empty input and duplicate points.
PointCloud parse_points(std::istream& in, Metric metric,
                        const std::string& source = "<input>");
PointCloud load_points(const std::string& path, Metric metric);

// Scale range of the lattice tower for a point cloud.
// trivial == true for single-point input (one vertex at one scale;
// cp and diam_est are meaningless in that case).
struct ScaleBounds {
	double cp = 0;        // exact closest-pair distance
	double diam_est = 0;  // diam(P) <= diam_est <= 2 diam(P)
	double spread = 1;    // diam_est / cp
	double alpha0 = 0;    // cp / (3d)
	double alpham = 0;    // diam_est
	bool trivial = false;
};

ScaleBounds scale_bounds(const PointCloud& cloud, bool exact_diameter = false);

// Number of scale indices spanned by [alpha0, alpham].
int scale_count(const ScaleBounds& bounds);

PointCloud uniform_cloud(index_t n, int dim, Metric metric, std::uint64_t seed);

}  // namespace gridser
