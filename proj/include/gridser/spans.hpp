#pragma once

#include <unordered_map>

#include "gridser/cubical.hpp"

namespace gridser {

// The active vertices of grid s: the image of the point cloud under
// point location, each with its representative point id.
class ActiveSet {
public:
	explicit ActiveSet(int s) : s_(s) {}

	int scale_index() const { return s_; }
	index_t size() const { return static_cast<index_t>(reps_.size()); }
	bool contains(const std::vector<index_t>& z) const { return reps_.count(z) > 0; }
	// representative point id, or -1 if the vertex is not active
	index_t rep(const std::vector<index_t>& z) const {
		auto it = reps_.find(z);
		return it == reps_.end() ? -1 : it->second;
	}
	// active vertices in canonical (lexicographic) order
	const std::vector<GridVertex>& sorted() const { return sorted_; }

	void insert(std::vector<index_t> z, index_t rep_id);
	void finalize();

private:
	int s_;
	std::unordered_map<std::vector<index_t>, index_t, IndexVectorHash> reps_;
	std::vector<GridVertex> sorted_;
};

ActiveSet active_vertices(const LatticeHierarchy& h, const PointCloud& cloud, int s);

// True iff f contains an active vertex and its active vertices are not
// all contained in one facet, i.e. for every spanned direction both
// sides carry an active vertex. Scans only f's own 2^dim corners.
bool is_spanned(const LatticeFace& f, const ActiveSet& V);

// An ascending chain of faces at one scale, strict containment;
// a simplex of the approximation complex.
struct Flag {
	std::vector<LatticeFace> faces;
	int dim() const { return static_cast<int>(faces.size()) - 1; }

	friend bool operator==(const Flag& a, const Flag& b) { return a.faces == b.faces; }
};

bool flag_less(const Flag& a, const Flag& b);
bool is_valid_flag(const Flag& f);

// All spanned faces, canonical order. Every spanned face contains an
// active vertex, so scanning vertex cofaces finds them all.
std::vector<LatticeFace> spanned_faces(const ActiveSet& V);

// All flags of spanned faces with at most max_dim + 1 members, each
// reported once, sorted by (length, lexicographic member order). The
// result is closed under subflags.
std::vector<Flag> enumerate_active_flags(const ActiveSet& V, int max_dim);

// All active flags whose members are contained in f, every length.
// Empty iff f contains no active vertex; otherwise every maximal flag
// ends at the unique maximal spanned face inside f.
std::vector<Flag> local_span(const LatticeFace& f, const ActiveSet& V);

// Image of a simplex one scale up: face images memberwise, consecutive
// duplicates collapsed. The image has equal or smaller length.
Flag flag_map(const LatticeHierarchy& h, const Flag& flag);

// Simplices over integer vertex ids, one id per distinct member face.
std::vector<std::vector<index_t>> flags_to_simplices(const std::vector<Flag>& flags);

}  // namespace gridser
