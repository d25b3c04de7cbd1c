#pragma once

#include <iosfwd>

#include "gridser/persistence.hpp"

namespace gridser {

// Tower barcode against the exact Rips barcodes in both metrics. Both
// pipelines use simplices up to dimension max_hom_dim + 1 so that every
// compared homology dimension 0..max_hom_dim is truncation-free. The
// tower barcode is rescaled by 1/sqrt(2) for the L-infinity comparison
// and by d^(1/4)/sqrt(2) for the Euclidean one; the bounds are
// ln(3 sqrt 2) and ln(3 sqrt 2 d^(1/4)).
struct InterleavingReport {
	index_t n = 0;
	int dim = 0;
	int max_hom_dim = 0;
	std::uint64_t seed = 0;
	double alpha0 = 0;
	double linf_bound = 0, l2_bound = 0;
	std::vector<double> linf_distance;  // per homology dimension
	std::vector<double> l2_distance;
	double seconds = 0;
	bool pass = false;
};

InterleavingReport check_interleaving(const PointCloud& cloud, std::uint64_t seed,
                                      int max_hom_dim);
void print_report(std::ostream& out, const InterleavingReport& r);

// Randomized (plus exhaustive local sweeps for d <= 3) checks of the
// lattice and span structure: Voronoi nesting, face images and their
// opposite-facet lifting, activity of face images, common-face
// containment of nearby points, the section identity of point location,
// and acyclicity of local spans.
struct LemmaCheck {
	std::string name;
	index_t cases = 0;
	index_t violations = 0;
	std::string first_counterexample;
};
struct LemmaReport {
	int dim = 0;
	std::vector<LemmaCheck> checks;
	bool pass = false;
};

LemmaReport check_lemmas(int dim, index_t trials, std::uint64_t seed = 1);
void print_report(std::ostream& out, const LemmaReport& r);

// Tower size and lifetime measurements over a parameter grid. Each run
// asserts that the number of dim-0 inclusions stays within n * 3^d.
struct SizeRow {
	index_t n = 0;
	int d = 0;
	int k = 0;
	std::uint64_t seed = 0;
	index_t total_includes = 0;  // M
	index_t zero_includes = 0;
	double mean_face_lifetime = 0;
	double seconds = 0;
	bool zero_bound_ok = false;
};

std::vector<SizeRow> measure_sizes(const std::vector<index_t>& ns,
                                   const std::vector<int>& ds, int k,
                                   const std::vector<std::uint64_t>& seeds);
void write_sizes_csv(std::ostream& out, const std::vector<SizeRow>& rows);

// Mean number of map applications until a face of dimension face_dim in
// R^dim collapses to a vertex, over fresh random shift sequences. The
// pass criterion is mean <= 3 log2(face_dim) + 3 standard errors.
struct SurvivalReport {
	int face_dim = 0;
	int dim = 0;
	index_t trials = 0;
	double mean = 0;
	double bound = 0;
	double stderr_mean = 0;
	bool pass = false;
};

SurvivalReport survival_experiment(int face_dim, int dim, index_t trials,
                                   std::uint64_t seed);

}  // namespace gridser
