#include "gridser/spans.hpp"

#include <algorithm>

namespace gridser {

void ActiveSet::insert(std::vector<index_t> z, index_t rep_id) {
	reps_.emplace(std::move(z), rep_id);
}

void ActiveSet::finalize() {
	sorted_.clear();
	sorted_.reserve(reps_.size());
	for (const auto& [z, rep] : reps_) sorted_.push_back({s_, z});
	std::sort(sorted_.begin(), sorted_.end(),
	          [](const GridVertex& a, const GridVertex& b) { return a.z < b.z; });
}

ActiveSet active_vertices(const LatticeHierarchy& h, const PointCloud& cloud, int s) {
	struct Best {
		index_t id;
		double dist;
	};
	std::unordered_map<std::vector<index_t>, Best, IndexVectorHash> best;
	std::vector<double> pos(h.dim());
	for (index_t p = 0; p < cloud.size(); ++p) {
		GridVertex v = h.locate(cloud.point(p), s);
		for (int i = 0; i < h.dim(); ++i) pos[i] = h.embed(v, i);
		double d = distance(cloud.point(p), pos, cloud.metric);
		auto [it, fresh] = best.try_emplace(std::move(v.z), Best{p, d});
		if (!fresh && d < it->second.dist) it->second = {p, d};
	}
	ActiveSet V(s);
	for (auto& [z, b] : best) V.insert(z, b.id);
	V.finalize();
	return V;
}

bool is_spanned(const LatticeFace& f, const ActiveSet& V) {
	if (f.s != V.scale_index())
		throw internal_error("is_spanned: face and active set scales differ");
	int k = f.dim();
	std::uint32_t low_seen = 0, high_seen = 0;
	bool any = false;
	std::uint32_t full = k == 0 ? 0 : (1u << k) - 1;
	for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
		GridVertex c = f.corner(bits);
		if (!V.contains(c.z)) continue;
		any = true;
		low_seen |= ~bits & full;
		high_seen |= bits;
		if (low_seen == full && high_seen == full) return true;
	}
	return any && low_seen == full && high_seen == full;
}

bool flag_less(const Flag& a, const Flag& b) {
	if (a.faces.size() != b.faces.size()) return a.faces.size() < b.faces.size();
	for (std::size_t i = 0; i < a.faces.size(); ++i) {
		if (a.faces[i] == b.faces[i]) continue;
		return face_less(a.faces[i], b.faces[i]);
	}
	return false;
}

bool is_valid_flag(const Flag& f) {
	if (f.faces.empty()) return false;
	for (std::size_t i = 0; i + 1 < f.faces.size(); ++i) {
		if (f.faces[i] == f.faces[i + 1]) return false;
		if (!face_contains(f.faces[i + 1], f.faces[i])) return false;
	}
	return true;
}

std::vector<LatticeFace> spanned_faces(const ActiveSet& V) {
	std::vector<LatticeFace> out;
	std::unordered_map<LatticeFace, bool, FaceHash> seen;
	for (const GridVertex& v : V.sorted()) {
		for (LatticeFace& f : cofaces_of_vertex(v)) {
			auto [it, fresh] = seen.try_emplace(f, false);
			if (!fresh) continue;
			if (is_spanned(f, V)) {
				it->second = true;
				out.push_back(std::move(f));
			}
		}
	}
	std::sort(out.begin(), out.end(), face_less);
	return out;
}

namespace {

// chains over the containment DAG of spanned faces
void extend_chains(const std::vector<LatticeFace>& faces,
                   const std::vector<std::vector<int>>& ups, std::vector<int>& chain,
                   std::size_t max_len, std::vector<Flag>& out) {
	Flag flag;
	flag.faces.reserve(chain.size());
	for (int idx : chain) flag.faces.push_back(faces[idx]);
	out.push_back(std::move(flag));
	if (chain.size() == max_len) return;
	for (int up : ups[chain.back()]) {
		chain.push_back(up);
		extend_chains(faces, ups, chain, max_len, out);
		chain.pop_back();
	}
}

std::vector<Flag> chains_of(const std::vector<LatticeFace>& faces, std::size_t max_len) {
	std::unordered_map<LatticeFace, int, FaceHash> pos;
	for (std::size_t i = 0; i < faces.size(); ++i) pos.emplace(faces[i], static_cast<int>(i));
	std::vector<std::vector<int>> ups(faces.size());
	for (std::size_t i = 0; i < faces.size(); ++i) {
		for (const LatticeFace& c : faces_strictly_between(faces[i], std::nullopt)) {
			auto it = pos.find(c);
			if (it != pos.end()) ups[i].push_back(it->second);
		}
	}
	std::vector<Flag> out;
	std::vector<int> chain;
	for (std::size_t i = 0; i < faces.size(); ++i) {
		chain.assign(1, static_cast<int>(i));
		extend_chains(faces, ups, chain, max_len, out);
	}
	std::sort(out.begin(), out.end(), flag_less);
	return out;
}

}  // namespace

std::vector<Flag> enumerate_active_flags(const ActiveSet& V, int max_dim) {
	if (max_dim < 0) throw invalid_input("max_dim must be nonnegative");
	return chains_of(spanned_faces(V), static_cast<std::size_t>(max_dim) + 1);
}

std::vector<Flag> local_span(const LatticeFace& f, const ActiveSet& V) {
	std::vector<LatticeFace> inside = faces_strictly_between(std::nullopt, f);
	inside.push_back(f);
	std::vector<LatticeFace> spanned;
	for (LatticeFace& e : inside)
		if (is_spanned(e, V)) spanned.push_back(std::move(e));
	std::sort(spanned.begin(), spanned.end(), face_less);
	return chains_of(spanned, spanned.size());
}

Flag flag_map(const LatticeHierarchy& h, const Flag& flag) {
	Flag image;
	image.faces.reserve(flag.faces.size());
	for (const LatticeFace& f : flag.faces) {
		LatticeFace e = face_map(h, f);
		if (image.faces.empty() || !(image.faces.back() == e))
			image.faces.push_back(std::move(e));
	}
	return image;
}

std::vector<std::vector<index_t>> flags_to_simplices(const std::vector<Flag>& flags) {
	std::unordered_map<LatticeFace, index_t, FaceHash> ids;
	std::vector<std::vector<index_t>> out;
	out.reserve(flags.size());
	for (const Flag& flag : flags) {
		std::vector<index_t> simplex;
		simplex.reserve(flag.faces.size());
		for (const LatticeFace& f : flag.faces) {
			auto [it, fresh] = ids.try_emplace(f, static_cast<index_t>(ids.size()));
			simplex.push_back(it->second);
		}
		std::sort(simplex.begin(), simplex.end());
		out.push_back(std::move(simplex));
	}
	return out;
}

}  // namespace gridser
