#include "gridser/rips.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace gridser {

bool filtration_order_less(const FilteredSimplex& a, const FilteredSimplex& b) {
	if (a.value != b.value) return a.value < b.value;
	if (a.vertices.size() != b.vertices.size())
		return a.vertices.size() < b.vertices.size();
	return a.vertices < b.vertices;
}

void sort_filtration(FilteredComplex& filt) {
	std::sort(filt.simplices.begin(), filt.simplices.end(), filtration_order_less);
}

namespace {

struct RipsBuilder {
	const PointCloud& cloud;
	double alpha_max;
	int max_dim;
	index_t budget;
	std::vector<std::vector<index_t>> nbr;  // ascending, only larger ids
	FilteredComplex out;

	void emit(const std::vector<index_t>& simplex, double value) {
		if (static_cast<index_t>(out.simplices.size()) >= budget)
			throw budget_error("rips filtration exceeds the simplex budget of " +
			                   std::to_string(budget));
		out.simplices.push_back({simplex, value});
	}

	// extends the clique `simplex`; cands holds common neighbors above the back
	void expand(std::vector<index_t>& simplex, const std::vector<index_t>& cands,
	            double value) {
		if (simplex.size() == static_cast<std::size_t>(max_dim) + 1) return;
		for (std::size_t ci = 0; ci < cands.size(); ++ci) {
			index_t c = cands[ci];
			double v = value;
			for (index_t m : simplex) v = std::max(v, distance(cloud, m, c));
			if (v > alpha_max) continue;
			simplex.push_back(c);
			emit(simplex, v);
			std::vector<index_t> next;
			std::set_intersection(cands.begin() + ci + 1, cands.end(), nbr[c].begin(),
			                      nbr[c].end(), std::back_inserter(next));
			expand(simplex, next, v);
			simplex.pop_back();
		}
	}
};

}  // namespace

FilteredComplex build_rips(const PointCloud& cloud, int max_dim, double alpha_max,
                           index_t budget) {
	if (max_dim < 0) throw invalid_input("max_dim must be nonnegative");
	if (alpha_max < 0) throw invalid_input("alpha_max must be nonnegative");
	index_t n = cloud.size();
	RipsBuilder b{cloud, alpha_max, max_dim, budget, {}, {}};
	b.nbr.resize(n);
	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j)
			if (distance(cloud, i, j) <= alpha_max) b.nbr[i].push_back(j);

	std::vector<index_t> simplex;
	for (index_t i = 0; i < n; ++i) {
		simplex.assign(1, i);
		b.emit(simplex, 0.0);
		b.expand(simplex, b.nbr[i], 0.0);
	}
	sort_filtration(b.out);
	return b.out;
}

void write_filtration(std::ostream& out, const FilteredComplex& filt) {
	for (const FilteredSimplex& s : filt.simplices) {
		out << format_double(s.value) << ' ' << s.dim();
		for (index_t v : s.vertices) out << ' ' << v;
		out << '\n';
	}
}

FilteredComplex read_filtration(std::istream& in) {
	FilteredComplex filt;
	std::string line;
	index_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (line.empty() || line[0] == '#') continue;
		std::istringstream ls(line);
		std::string vtok, dtok;
		if (!(ls >> vtok >> dtok))
			throw invalid_input("filtration line " + std::to_string(lineno) + ": too short");
		FilteredSimplex s;
		s.value = parse_double(vtok, "filtration value");
		index_t dim = parse_index(dtok, "simplex dimension");
		std::string tok;
		while (ls >> tok) s.vertices.push_back(parse_index(tok, "vertex id"));
		if (static_cast<index_t>(s.vertices.size()) != dim + 1)
			throw invalid_input("filtration line " + std::to_string(lineno) +
			                    ": vertex count does not match dimension");
		if (!std::is_sorted(s.vertices.begin(), s.vertices.end()))
			throw invalid_input("filtration line " + std::to_string(lineno) +
			                    ": vertex ids not ascending");
		filt.simplices.push_back(std::move(s));
	}
	sort_filtration(filt);
	return filt;
}

}  // namespace gridser
