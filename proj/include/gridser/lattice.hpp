#pragma once

#include <span>
#include <utility>

#include "gridser/dyadic.hpp"
#include "gridser/geometry.hpp"

namespace gridser {

// Vertex of the scale-s grid, in lattice coordinates: the embedded
// position is offset(s) + alpha(s) * z per coordinate.
struct GridVertex {
	int s = 0;
	std::vector<index_t> z;

	friend bool operator==(const GridVertex& a, const GridVertex& b) {
		return a.s == b.s && a.z == b.z;
	}
};

// A hierarchy of scaled, randomly shifted copies of the integer grid.
// Scale index s runs in [0, s_max] with alpha(s) = lambda * 2^s; the
// scale-0 grid is lambda * Z^d. Each transition s -> s+1 doubles the
// spacing and shifts by alpha(s)/2 times a +-1 vector. Offsets from
// the origin are exact dyadic multiples of lambda and the shift draws
// are reproducible from the seed.
class LatticeHierarchy {
public:
	LatticeHierarchy() = default;
	// Scale range derived from a point cloud's bounds.
	LatticeHierarchy(const ScaleBounds& bounds, int dim, std::uint64_t seed);
	// Synthetic hierarchy with a fixed number of transitions.
	LatticeHierarchy(double lambda, int transitions, int dim, std::uint64_t seed);
	// Explicit shift vectors (components +-1); shifts[t][i] for transition t.
	LatticeHierarchy(double lambda, std::vector<std::vector<int>> shifts);

	int dim() const { return dim_; }
	int s_min() const { return 0; }
	int s_max() const { return static_cast<int>(shifts_.size()); }
	double lambda() const { return lambda_; }
	std::uint64_t seed() const { return seed_; }
	double alpha(int s) const { return std::ldexp(lambda_, s); }
	const std::vector<std::vector<int>>& shifts() const { return shifts_; }
	int shift(int transition, int coord) const { return shifts_[transition][coord]; }

	// Offset of grid s from the origin, in units of lambda.
	const Dyadic& offset_units(int s, int coord) const { return offsets_[s][coord]; }
	double offset(int s, int coord) const { return lambda_ * offsets_[s][coord].to_double(); }

	Dyadic embed_units(const GridVertex& v, int coord) const;
	double embed(const GridVertex& v, int coord) const;
	// Closed Voronoi cube bounds of a vertex along one coordinate, in
	// units of lambda: [center - alpha(s)/2, center + alpha(s)/2].
	std::pair<Dyadic, Dyadic> voronoi_units(const GridVertex& v, int coord) const;

	// Grid vertex whose Voronoi cube contains p. A point exactly on a
	// cube boundary rounds toward the smaller lattice coordinate, so the
	// effective cells are half-open: (center - alpha/2, center + alpha/2].
	GridVertex locate(std::span<const double> p, int s) const;

	// The unique vertex of grid s+1 whose Voronoi cube contains v.
	// Exact integer arithmetic; 2z - sigma is odd, so no tie can occur.
	GridVertex vertex_map(const GridVertex& v) const;
	static index_t vertex_map_coord(index_t z, int sigma);

private:
	void build_offsets();

	double lambda_ = 1;
	int dim_ = 0;
	std::uint64_t seed_ = 0;
	std::vector<std::vector<int>> shifts_;    // [transition][coord], +-1
	std::vector<std::vector<Dyadic>> offsets_;  // [s][coord], units of lambda
};

// Id of the closest point (in the cloud's metric) among the points that
// locate to v; ties go to the smallest id. Throws if v is not active.
index_t representative(const LatticeHierarchy& h, const GridVertex& v,
                       const PointCloud& cloud);

}  // namespace gridser
