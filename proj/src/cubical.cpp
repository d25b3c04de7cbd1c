#include "gridser/cubical.hpp"

#include <algorithm>
#include <sstream>

namespace gridser {

GridVertex LatticeFace::corner(std::uint32_t bits) const {
	GridVertex v;
	v.s = s;
	v.z = anchor;
	std::uint32_t rest = mask;
	while (rest) {
		int coord = std::countr_zero(rest);
		rest &= rest - 1;
		if (bits & 1u) ++v.z[coord];
		bits >>= 1;
	}
	return v;
}

std::vector<GridVertex> LatticeFace::vertices() const {
	std::vector<GridVertex> out;
	out.reserve(std::size_t(1) << dim());
	for (std::uint32_t bits = 0; bits < (1u << dim()); ++bits)
		out.push_back(corner(bits));
	return out;
}

std::string LatticeFace::dump() const {
	std::ostringstream os;
	os << s << ":(";
	for (std::size_t i = 0; i < anchor.size(); ++i) {
		if (i) os << ',';
		os << anchor[i];
	}
	os << "):" << mask;
	return os.str();
}

bool face_less(const LatticeFace& a, const LatticeFace& b) {
	if (a.s != b.s) return a.s < b.s;
	if (a.anchor != b.anchor) return a.anchor < b.anchor;
	return a.mask < b.mask;
}

LatticeFace face_of_vertex(const GridVertex& v) { return {v.s, v.z, 0}; }

bool face_contains(const LatticeFace& b, const LatticeFace& a) {
	if (a.s != b.s || (a.mask & ~b.mask)) return false;
	for (int i = 0; i < a.space_dim(); ++i) {
		if (a.spans(i)) {
			if (a.anchor[i] != b.anchor[i]) return false;
		} else if (b.spans(i)) {
			if (a.anchor[i] != b.anchor[i] && a.anchor[i] != b.anchor[i] + 1) return false;
		} else {
			if (a.anchor[i] != b.anchor[i]) return false;
		}
	}
	return true;
}

std::vector<std::pair<LatticeFace, LatticeFace>> facet_pairs(const LatticeFace& f) {
	if (f.dim() < 1) throw invalid_input("a vertex has no facets");
	std::vector<std::pair<LatticeFace, LatticeFace>> out;
	out.reserve(f.dim());
	std::uint32_t rest = f.mask;
	while (rest) {
		int coord = std::countr_zero(rest);
		rest &= rest - 1;
		LatticeFace lower{f.s, f.anchor, f.mask & ~(1u << coord)};
		LatticeFace upper = lower;
		++upper.anchor[coord];
		out.emplace_back(std::move(lower), std::move(upper));
	}
	return out;
}

std::vector<LatticeFace> facets(const LatticeFace& f) {
	std::vector<LatticeFace> out;
	for (auto& [lo, hi] : facet_pairs(f)) {
		out.push_back(lo);
		out.push_back(hi);
	}
	return out;
}

std::vector<LatticeFace> cofaces_of_vertex(const GridVertex& v) {
	int d = static_cast<int>(v.z.size());
	std::vector<LatticeFace> out;
	out.reserve(1);
	std::vector<int> choice(d, 0);  // 0: not spanned, 1: v low, 2: v high
	for (;;) {
		LatticeFace f{v.s, v.z, 0};
		for (int i = 0; i < d; ++i) {
			if (choice[i] == 0) continue;
			f.mask |= 1u << i;
			if (choice[i] == 2) --f.anchor[i];
		}
		out.push_back(std::move(f));
		int i = 0;
		while (i < d && choice[i] == 2) choice[i++] = 0;
		if (i == d) break;
		++choice[i];
	}
	std::sort(out.begin(), out.end(), face_less);
	return out;
}

LatticeFace face_map(const LatticeHierarchy& h, const LatticeFace& f) {
	if (f.s >= h.s_max()) throw invalid_input("face_map at the top scale");
	LatticeFace e{f.s + 1, std::vector<index_t>(f.space_dim()), 0};
	for (int i = 0; i < f.space_dim(); ++i) {
		int sigma = h.shift(f.s, i);
		index_t lo = LatticeHierarchy::vertex_map_coord(f.anchor[i], sigma);
		e.anchor[i] = lo;
		if (f.spans(i)) {
			index_t hi = LatticeHierarchy::vertex_map_coord(f.anchor[i] + 1, sigma);
			if (hi != lo) e.mask |= 1u << i;
		}
	}
	return e;
}

namespace {

void subfaces_below(const LatticeFace& b, std::vector<LatticeFace>& out) {
	// choose the kept mask, then a side per dropped direction
	std::uint32_t m = b.mask;
	for (std::uint32_t keep = 0;; keep = (keep - m) & m) {
		if (keep != m) {
			std::uint32_t dropped = m & ~keep;
			int k = std::popcount(dropped);
			for (std::uint32_t sides = 0; sides < (1u << k); ++sides) {
				LatticeFace e{b.s, b.anchor, keep};
				std::uint32_t rest = dropped;
				std::uint32_t bits = sides;
				while (rest) {
					int coord = std::countr_zero(rest);
					rest &= rest - 1;
					if (bits & 1u) ++e.anchor[coord];
					bits >>= 1;
				}
				out.push_back(std::move(e));
			}
		}
		if (keep == m) break;
	}
}

void cofaces_above(const LatticeFace& a, std::vector<LatticeFace>& out) {
	int d = a.space_dim();
	std::uint32_t free = ~a.mask & ((d == 32 ? ~0u : (1u << d) - 1));
	for (std::uint32_t grow = (0u - free) & free;; grow = (grow - free) & free) {
		if (grow == 0) break;
		int k = std::popcount(grow);
		for (std::uint32_t sides = 0; sides < (1u << k); ++sides) {
			LatticeFace e{a.s, a.anchor, a.mask | grow};
			std::uint32_t rest = grow;
			std::uint32_t bits = sides;
			while (rest) {
				int coord = std::countr_zero(rest);
				rest &= rest - 1;
				if (bits & 1u) --e.anchor[coord];
				bits >>= 1;
			}
			out.push_back(std::move(e));
		}
		if (grow == free) break;
	}
}

}  // namespace

std::vector<LatticeFace> faces_strictly_between(const std::optional<LatticeFace>& a,
                                                const std::optional<LatticeFace>& b) {
	std::vector<LatticeFace> out;
	if (a && b) {
		if (!face_contains(*b, *a))
			throw invalid_input("faces_strictly_between: lower face not contained in upper");
		std::uint32_t gap = b->mask & ~a->mask;
		for (std::uint32_t grow = (0u - gap) & gap;; grow = (grow - gap) & gap) {
			if (grow == 0) break;
			if (grow != gap) {
				LatticeFace e{a->s, a->anchor, a->mask | grow};
				std::uint32_t rest = grow;
				while (rest) {
					int coord = std::countr_zero(rest);
					rest &= rest - 1;
					e.anchor[coord] = b->anchor[coord];
				}
				out.push_back(std::move(e));
			}
			if (grow == gap) break;
		}
	} else if (b) {
		subfaces_below(*b, out);
	} else if (a) {
		cofaces_above(*a, out);
	} else {
		throw invalid_input("faces_strictly_between: both bounds absent");
	}
	std::sort(out.begin(), out.end(), face_less);
	return out;
}

}  // namespace gridser
