#pragma once

#include <iosfwd>

#include "gridser/geometry.hpp"

namespace gridser {

struct FilteredSimplex {
	std::vector<index_t> vertices;  // ascending
	double value = 0;
	int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

// Simplices sorted by (value, dim, lexicographic vertex list); closed
// under subsets with monotone values.
struct FilteredComplex {
	std::vector<FilteredSimplex> simplices;
};

void sort_filtration(FilteredComplex& filt);
bool filtration_order_less(const FilteredSimplex& a, const FilteredSimplex& b);

constexpr index_t kDefaultRipsBudget = 4'000'000;

// Exact Rips filtration: all simplices of dim <= max_dim with diameter
// <= alpha_max under the cloud's metric, tagged with their exact
// diameter. Refuses to enumerate past the simplex budget.
FilteredComplex build_rips(const PointCloud& cloud, int max_dim, double alpha_max,
                           index_t budget = kDefaultRipsBudget);

// One simplex per line: <value> <dim> <vertex ids...>, sorted.
void write_filtration(std::ostream& out, const FilteredComplex& filt);
FilteredComplex read_filtration(std::istream& in);

}  // namespace gridser
