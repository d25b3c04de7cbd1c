#pragma once

#include <bit>
#include <optional>

#include "gridser/lattice.hpp"

namespace gridser {

// Face of the scale-s cubical complex: an axis-aligned cube face given
// by its minimal vertex (lattice coordinates) and the bitmask of spanned
// directions. dim == popcount(mask); the vertex set is anchor plus all
// 0/1 combinations on the mask directions.
struct LatticeFace {
	int s = 0;
	std::vector<index_t> anchor;
	std::uint32_t mask = 0;

	int dim() const { return std::popcount(mask); }
	int space_dim() const { return static_cast<int>(anchor.size()); }
	bool spans(int coord) const { return (mask >> coord) & 1u; }

	std::vector<GridVertex> vertices() const;     // 2^dim, corner bits ascending
	GridVertex corner(std::uint32_t bits) const;  // bits indexed over mask directions

	// Debug dump "s:(a,b,...):mask"
	std::string dump() const;

	friend bool operator==(const LatticeFace& a, const LatticeFace& b) {
		return a.s == b.s && a.mask == b.mask && a.anchor == b.anchor;
	}
};

// Total order (s, anchor lexicographic, mask numeric); canonical face ids
// follow it within one scale.
bool face_less(const LatticeFace& a, const LatticeFace& b);

struct FaceHash {
	std::size_t operator()(const LatticeFace& f) const {
		std::size_t h = IndexVectorHash{}(f.anchor);
		h = hash_combine(h, f.mask);
		return hash_combine(h, static_cast<std::size_t>(f.s));
	}
};

LatticeFace face_of_vertex(const GridVertex& v);

// True iff every vertex of a is a vertex of b.
bool face_contains(const LatticeFace& b, const LatticeFace& a);

// The 2*dim facets of f as (lower, upper) pairs per spanned direction;
// the two members of each pair are opposite (disjoint) facets.
std::vector<std::pair<LatticeFace, LatticeFace>> facet_pairs(const LatticeFace& f);
std::vector<LatticeFace> facets(const LatticeFace& f);

// All 3^d faces that contain v: per direction the face either does not
// span it, spans it with v low, or spans it with v high. Canonical order.
std::vector<LatticeFace> cofaces_of_vertex(const GridVertex& v);

// Image of a face one scale up: the face whose vertex set is the image
// of f's vertices under the vertex map. Computed coordinatewise in O(d);
// a spanned direction collapses iff both endpoint images coincide, so
// dim(face_map(f)) <= dim(f).
LatticeFace face_map(const LatticeHierarchy& h, const LatticeFace& f);

// All faces e with a < e < b strictly. a == nullopt enumerates the proper
// subfaces of b; b == nullopt enumerates the proper cofaces of a in the
// ambient grid. Results in canonical order.
std::vector<LatticeFace> faces_strictly_between(const std::optional<LatticeFace>& a,
                                                const std::optional<LatticeFace>& b);

}  // namespace gridser
