#pragma once

#include <iosfwd>

#include "gridser/rips.hpp"
#include "gridser/tower.hpp"

namespace gridser {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct Bar {
	int dim = 0;
	double birth = 0;
	double death = kInfiniteDeath;
	bool infinite() const { return std::isinf(death); }

	friend bool operator==(const Bar& a, const Bar& b) {
		return a.dim == b.dim && a.birth == b.birth && a.death == b.death;
	}
};

// Bars sorted by (dim, birth, death); zero-length bars are dropped.
struct Barcode {
	std::vector<Bar> bars;

	friend bool operator==(const Barcode& a, const Barcode& b) { return a.bars == b.bars; }
};

void sort_barcode(Barcode& b);
int max_dim(const Barcode& b);

// Standard boundary-matrix reduction over Z2.
Barcode reduce(const FilteredComplex& filt);

// Betti numbers of a plain complex (simplices as sorted vertex lists),
// computed by reducing the all-at-once filtration.
std::vector<index_t> betti_numbers(const std::vector<std::vector<index_t>>& simplices);

struct ConversionStats {
	index_t stream_includes = 0;
	index_t cone_simplices = 0;
	index_t total_simplices = 0;
};

// Turns the event stream into a genuine filtration: inclusions become
// insertions at their scale value, and each contraction (i, j) adds, at
// its scale value, the cone with apex i over the closed star of j,
// after which j is aliased to i.
FilteredComplex tower_to_filtration(const EventStream& stream,
                                    ConversionStats* stats = nullptr);

constexpr index_t kDefaultOracleBudget = 60'000;

// Exact barcode of the stream's persistence module from the rank
// invariant: for every scale pair the rank of the composed map on
// homology is computed from explicit Z2 chain maps, and bar
// multiplicities follow by inclusion-exclusion. Intended as a
// desk-scale oracle; guarded by the total complex size.
Barcode rank_oracle(const EventStream& stream, index_t budget = kDefaultOracleBudget);

// Bottleneck distance between the dim-slices of two barcodes after the
// log transform: points (ln birth, ln death) under L-infinity, finite
// bars may match the diagonal, infinite bars match only infinite bars
// by ln-birth difference. Returns +infinity when the infinite-bar
// counts differ. Exact (threshold search over candidate distances plus
// augmenting-path matching). All births must be positive.
double bottleneck_log(const Barcode& a, const Barcode& b, int dim);

// Multiplies every birth and death by factor > 0.
Barcode scale_barcode(const Barcode& b, double factor);

// One bar per line: <dim> <birth> <death|inf>, sorted.
void write_barcode(std::ostream& out, const Barcode& b);
Barcode read_barcode(std::istream& in);

}  // namespace gridser
