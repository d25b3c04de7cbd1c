#include "gridser/lattice.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace gridser {

LatticeHierarchy::LatticeHierarchy(const ScaleBounds& bounds, int dim, std::uint64_t seed)
    : LatticeHierarchy(bounds.alpha0, scale_count(bounds) - 1, dim, seed) {}

LatticeHierarchy::LatticeHierarchy(double lambda, int transitions, int dim,
                                   std::uint64_t seed)
    : lambda_(lambda), dim_(dim), seed_(seed) {
	if (lambda <= 0) throw invalid_input("lattice base scale must be positive");
	std::mt19937_64 rng(seed);
	shifts_.resize(transitions);
	for (auto& shift : shifts_) {
		shift.resize(dim);
		for (int i = 0; i < dim; ++i) shift[i] = (rng() & 1) ? 1 : -1;
	}
	build_offsets();
}

LatticeHierarchy::LatticeHierarchy(double lambda, std::vector<std::vector<int>> shifts)
    : lambda_(lambda), shifts_(std::move(shifts)) {
	if (lambda <= 0) throw invalid_input("lattice base scale must be positive");
	if (shifts_.empty()) throw invalid_input("explicit hierarchy needs at least one shift");
	dim_ = static_cast<int>(shifts_[0].size());
	for (const auto& shift : shifts_) {
		if (static_cast<int>(shift.size()) != dim_)
			throw invalid_input("shift vectors must share one dimension");
		for (int c : shift)
			if (c != 1 && c != -1) throw invalid_input("shift components must be +-1");
	}
	build_offsets();
}

void LatticeHierarchy::build_offsets() {
	offsets_.assign(s_max() + 1, std::vector<Dyadic>(dim_));
	for (int s = 0; s < s_max(); ++s)
		for (int i = 0; i < dim_; ++i)
			// offset(s+1) = offset(s) + (alpha(s)/2) * sigma_s, in lambda units
			offsets_[s + 1][i] = offsets_[s][i] + Dyadic::pow2(s - 1) * shifts_[s][i];
}

Dyadic LatticeHierarchy::embed_units(const GridVertex& v, int coord) const {
	return offsets_[v.s][coord] + Dyadic::pow2(v.s) * v.z[coord];
}

double LatticeHierarchy::embed(const GridVertex& v, int coord) const {
	return lambda_ * embed_units(v, coord).to_double();
}

std::pair<Dyadic, Dyadic> LatticeHierarchy::voronoi_units(const GridVertex& v,
                                                          int coord) const {
	Dyadic c = embed_units(v, coord);
	Dyadic h = Dyadic::pow2(v.s - 1);
	return {c - h, c + h};
}

GridVertex LatticeHierarchy::locate(std::span<const double> p, int s) const {
	if (s < 0 || s > s_max()) throw invalid_input("scale index out of range");
	if (static_cast<int>(p.size()) != dim_)
		throw invalid_input("point dimension does not match the hierarchy");
	GridVertex v;
	v.s = s;
	v.z.resize(dim_);
	double a = alpha(s);
	for (int i = 0; i < dim_; ++i) {
		double u = (p[i] - offset(s, i)) / a;
		// round half toward the smaller integer
		v.z[i] = static_cast<index_t>(std::ceil(u - 0.5));
	}
	return v;
}

index_t LatticeHierarchy::vertex_map_coord(index_t z, int sigma) {
	index_t num = 2 * z - sigma + 2;
	index_t q = num / 4;
	if (num % 4 != 0 && num < 0) --q;  // floor division
	return q;
}

GridVertex LatticeHierarchy::vertex_map(const GridVertex& v) const {
	if (v.s >= s_max()) throw invalid_input("vertex_map at the top scale");
	GridVertex w;
	w.s = v.s + 1;
	w.z.resize(dim_);
	for (int i = 0; i < dim_; ++i)
		w.z[i] = vertex_map_coord(v.z[i], shifts_[v.s][i]);
	return w;
}

index_t representative(const LatticeHierarchy& h, const GridVertex& v,
                       const PointCloud& cloud) {
	index_t best = -1;
	double best_dist = std::numeric_limits<double>::infinity();
	std::vector<double> pos(h.dim());
	for (int i = 0; i < h.dim(); ++i) pos[i] = h.embed(v, i);
	for (index_t p = 0; p < cloud.size(); ++p) {
		if (!(h.locate(cloud.point(p), v.s) == v)) continue;
		double d = distance(cloud.point(p), pos, cloud.metric);
		if (d < best_dist) {
			best_dist = d;
			best = p;
		}
	}
	if (best < 0)
		throw internal_error("representative requested for an inactive vertex");
	return best;
}

}  // namespace gridser
