#include "gridser/tower.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace gridser {

namespace {

template <class... Ts>
struct overloaded : Ts... {
	using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct VertexRec {
	index_t id;
	LatticeFace face;
	int included_dim;
	int included_s;
	bool collapsed;  // the face's forward orbit has reached a vertex
};

}  // namespace

double TowerStats::mean_face_lifetime() const {
	if (face_lifetimes.empty()) return 0;
	double sum = 0;
	for (const auto& [dim, t] : face_lifetimes) sum += t;
	return sum / static_cast<double>(face_lifetimes.size());
}

Tower build_tower(const PointCloud& cloud, const LatticeHierarchy& h,
                  const TowerOptions& opt) {
	if (opt.max_dim < 0) throw invalid_input("max_dim must be nonnegative");
	if (cloud.dim != h.dim())
		throw invalid_input("point cloud and hierarchy dimensions differ");
	const int k = opt.max_dim;

	Tower tw;
	tw.stream.header = {h.lambda(), h.seed(), h.dim(), k, 0, h.s_max(), h.shifts()};
	auto& events = tw.stream.events;
	TowerStats& stats = tw.stats;

	index_t next_id = 0;
	std::vector<VertexRec> verts;  // 0-simplices of the current complex, id order
	std::vector<std::set<std::vector<index_t>>> higher(k + 1);

	double cur_alpha = 0;
	int cur_s = 0;
	bool scale_emitted = false;
	std::size_t cur_stats_pos = 0;

	auto begin_scale = [&](int s) {
		cur_s = s;
		cur_alpha = h.alpha(s);
		scale_emitted = false;
	};
	auto ensure_scale = [&]() {
		if (scale_emitted) return;
		events.push_back(ScaleEvent{cur_alpha, cur_s});
		stats.scales.push_back({cur_s, cur_alpha, 0, std::vector<index_t>(k + 1, 0)});
		cur_stats_pos = stats.scales.size() - 1;
		scale_emitted = true;
	};
	auto emit_include = [&](index_t id, int dim, std::vector<index_t> boundary,
	                        Flag flag) {
		ensure_scale();
		++stats.total_includes;
		if (dim == 0) ++stats.zero_simplex_includes;
		++stats.scales[cur_stats_pos].includes_by_dim[dim];
		events.push_back(IncludeEvent{id, dim, std::move(boundary), std::move(flag)});
	};
	auto emit_contract = [&](index_t kept, index_t removed) {
		ensure_scale();
		++stats.total_contractions;
		++stats.scales[cur_stats_pos].contractions;
		events.push_back(ContractEvent{kept, removed});
	};
	auto snapshot = [&](int s) {
		if (!opt.record_snapshots) return;
		ScaleSnapshot sn{s, h.alpha(s), {}};
		sn.zero_simplices.reserve(verts.size());
		for (const VertexRec& rec : verts) sn.zero_simplices.emplace_back(rec.id, rec.face);
		tw.snapshots.push_back(std::move(sn));
	};

	// lowest scale: the active vertices are the whole complex
	begin_scale(0);
	{
		ActiveSet V0 = active_vertices(h, cloud, 0);
		for (const GridVertex& gv : V0.sorted()) {
			LatticeFace f = face_of_vertex(gv);
			index_t id = next_id++;
			verts.push_back({id, f, 0, 0, true});
			emit_include(id, 0, {id}, Flag{{f}});
		}
	}
	snapshot(0);

	for (int s = 0; s < h.s_max(); ++s) {
		begin_scale(s + 1);

		// contractions: push every 0-simplex forward, keep the minimal id
		// per image face
		std::unordered_map<LatticeFace, index_t, FaceHash> face_to_id;
		std::unordered_map<index_t, index_t> old_to_new;
		std::vector<VertexRec> nverts;
		face_to_id.reserve(verts.size() * 2);
		old_to_new.reserve(verts.size() * 2);
		for (VertexRec& rec : verts) {
			LatticeFace img = face_map(h, rec.face);
			if (!rec.collapsed && img.dim() == 0) {
				stats.face_lifetimes.emplace_back(rec.included_dim, s + 1 - rec.included_s);
				rec.collapsed = true;
			}
			auto [it, fresh] = face_to_id.try_emplace(img, rec.id);
			old_to_new[rec.id] = it->second;
			if (fresh) {
				nverts.push_back({rec.id, std::move(img), rec.included_dim, rec.included_s,
				                  rec.collapsed});
			} else {
				if (!rec.collapsed) ++stats.censored_faces;  // orbit merged away
				emit_contract(it->second, rec.id);
			}
		}

		// the active vertices one scale up are exactly the vertex images
		ActiveSet V1 = active_vertices(h, cloud, s + 1);
		index_t image_vertices = 0;
		for (const VertexRec& rec : nverts)
			if (rec.face.dim() == 0) {
				++image_vertices;
				if (!V1.contains(rec.face.anchor))
					throw internal_error("tower: image vertex " + rec.face.dump() +
					                     " is not active");
			}
		if (image_vertices != V1.size())
			throw internal_error("tower: active vertices not covered by vertex images");

		// new 0-simplices: scan vertex cofaces for spanned faces without
		// a preimage, in canonical face order
		index_t first_new_id = next_id;
		std::vector<std::size_t> new_idx;
		for (const GridVertex& gv : V1.sorted()) {
			for (LatticeFace& f : cofaces_of_vertex(gv)) {
				if (face_to_id.count(f)) continue;
				if (!is_spanned(f, V1)) continue;
				int fdim = f.dim();
				index_t id = next_id++;
				face_to_id.emplace(f, id);
				emit_include(id, 0, {id}, Flag{{f}});
				nverts.push_back({id, std::move(f), fdim, s + 1, fdim == 0});
				new_idx.push_back(nverts.size() - 1);
			}
		}

		// images of the higher simplices, by dimension
		std::vector<std::set<std::vector<index_t>>> nhigher(k + 1);
		for (int p = 1; p <= k; ++p) {
			for (const auto& ids : higher[p]) {
				std::vector<index_t> mapped;
				mapped.reserve(ids.size());
				for (index_t id : ids) mapped.push_back(old_to_new.at(id));
				std::sort(mapped.begin(), mapped.end());
				mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
				int pd = static_cast<int>(mapped.size()) - 1;
				if (pd >= 1) nhigher[pd].insert(std::move(mapped));
			}
		}

		// new higher simplices: grow flags from the new 0-simplices,
		// inserting extension faces below, between and above
		struct Entry {
			std::vector<index_t> ids;
			std::vector<LatticeFace> faces;
		};
		std::vector<Entry> frontier;
		frontier.reserve(new_idx.size());
		for (std::size_t idx : new_idx)
			frontier.push_back({{nverts[idx].id}, {nverts[idx].face}});
		for (int p = 1; p <= k && !frontier.empty(); ++p) {
			std::vector<Entry> grown;
			for (const Entry& en : frontier) {
				auto consider = [&](const LatticeFace& e, std::size_t pos) {
					if (!is_spanned(e, V1)) return;
					auto idit = face_to_id.find(e);
					if (idit == face_to_id.end())
						throw internal_error("tower: spanned face " + e.dump() +
						                     " missing from the 0-simplex table");
					std::vector<index_t> ids = en.ids;
					ids.insert(std::lower_bound(ids.begin(), ids.end(), idit->second),
					           idit->second);
					if (!nhigher[p].insert(ids).second) return;
					bool has_new = false;
					for (index_t id : ids)
						if (id >= first_new_id) has_new = true;
					if (!has_new)
						throw internal_error("tower: new simplex without a member included "
						                     "at the same scale");
					std::vector<LatticeFace> faces = en.faces;
					faces.insert(faces.begin() + pos, e);
					emit_include(next_id++, p, ids, Flag{faces});
					grown.push_back({std::move(ids), std::move(faces)});
				};
				for (const LatticeFace& e :
				     faces_strictly_between(std::nullopt, en.faces.front()))
					consider(e, 0);
				for (std::size_t j = 0; j + 1 < en.faces.size(); ++j)
					for (const LatticeFace& e :
					     faces_strictly_between(en.faces[j], en.faces[j + 1]))
						consider(e, j + 1);
				for (const LatticeFace& e :
				     faces_strictly_between(en.faces.back(), std::nullopt))
					consider(e, en.faces.size());
			}
			frontier = std::move(grown);
		}

		verts = std::move(nverts);
		higher = std::move(nhigher);
		snapshot(s + 1);
	}

	for (const VertexRec& rec : verts)
		if (!rec.collapsed) ++stats.censored_faces;
	return tw;
}

void write_events(std::ostream& out, const EventStream& es) {
	const StreamHeader& h = es.header;
	out << "# lambda=" << format_double(h.lambda) << " seed=" << h.seed << " d=" << h.dim
	    << " k=" << h.max_dim << " smin=" << h.s_min << " smax=" << h.s_max << '\n';
	for (std::size_t t = 0; t < h.shifts.size(); ++t) {
		out << "# shift s=" << t;
		for (int c : h.shifts[t]) out << ' ' << (c > 0 ? "+1" : "-1");
		out << '\n';
	}
	for (const TowerEvent& ev : es.events) {
		std::visit(overloaded{
		               [&](const ScaleEvent& e) {
			               out << "scale " << format_double(e.alpha) << '\n';
		               },
		               [&](const IncludeEvent& e) {
			               out << "include " << e.id << ' ' << e.dim;
			               for (index_t b : e.boundary) out << ' ' << b;
			               out << '\n';
		               },
		               [&](const ContractEvent& e) {
			               out << "contract " << e.kept << ' ' << e.removed << '\n';
		               },
		           },
		           ev);
	}
}

namespace {

std::pair<std::string, std::string> split_kv(const std::string& tok, index_t lineno) {
	auto eq = tok.find('=');
	if (eq == std::string::npos)
		throw invalid_input("events line " + std::to_string(lineno) +
		                    ": malformed header token '" + tok + "'");
	return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace

EventStream read_events(std::istream& in) {
	EventStream es;
	std::string line;
	index_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
		std::istringstream ls(line);
		std::string kind;
		ls >> kind;
		if (kind == "#") {
			std::vector<std::string> toks;
			std::string tok;
			while (ls >> tok) toks.push_back(tok);
			if (toks.empty()) continue;
			if (toks[0] == "shift") {
				std::vector<int> comps;
				for (std::size_t i = 1; i < toks.size(); ++i) {
					if (toks[i].find('=') != std::string::npos) continue;  // "s=<t>"
					comps.push_back(static_cast<int>(
					    parse_index(toks[i], "shift component at line " + std::to_string(lineno))));
				}
				es.header.shifts.push_back(std::move(comps));
			} else {
				for (const std::string& t : toks) {
					auto [key, value] = split_kv(t, lineno);
					if (key == "lambda")
						es.header.lambda = parse_double(value, "lambda");
					else if (key == "seed")
						es.header.seed = static_cast<std::uint64_t>(parse_index(value, "seed"));
					else if (key == "d")
						es.header.dim = static_cast<int>(parse_index(value, "d"));
					else if (key == "k")
						es.header.max_dim = static_cast<int>(parse_index(value, "k"));
					else if (key == "smin")
						es.header.s_min = static_cast<int>(parse_index(value, "smin"));
					else if (key == "smax")
						es.header.s_max = static_cast<int>(parse_index(value, "smax"));
				}
			}
			continue;
		}
		if (kind == "scale") {
			std::string tok;
			if (!(ls >> tok))
				throw invalid_input("events line " + std::to_string(lineno) + ": scale value missing");
			ScaleEvent se;
			se.alpha = parse_double(tok, "scale value");
			if (es.header.lambda > 0)
				se.s = static_cast<int>(std::lround(std::log2(se.alpha / es.header.lambda)));
			es.events.emplace_back(se);
		} else if (kind == "include") {
			IncludeEvent ie;
			std::string tok;
			if (!(ls >> tok))
				throw invalid_input("events line " + std::to_string(lineno) + ": include id missing");
			ie.id = parse_index(tok, "include id");
			if (!(ls >> tok))
				throw invalid_input("events line " + std::to_string(lineno) + ": include dim missing");
			ie.dim = static_cast<int>(parse_index(tok, "include dim"));
			while (ls >> tok) ie.boundary.push_back(parse_index(tok, "boundary id"));
			es.events.emplace_back(std::move(ie));
		} else if (kind == "contract") {
			ContractEvent ce;
			std::string a, b;
			if (!(ls >> a >> b))
				throw invalid_input("events line " + std::to_string(lineno) + ": contract ids missing");
			ce.kept = parse_index(a, "kept id");
			ce.removed = parse_index(b, "removed id");
			es.events.emplace_back(ce);
		} else {
			throw invalid_input("events line " + std::to_string(lineno) + ": unknown record '" +
			                    kind + "'");
		}
	}
	return es;
}

index_t ReplayComplex::resolve(index_t id) const {
	auto it = merged_into.find(id);
	while (it != merged_into.end()) {
		id = it->second;
		it = merged_into.find(id);
	}
	return id;
}

ReplayComplex replay(const std::vector<TowerEvent>& events, double upto) {
	ReplayComplex rc;
	std::set<index_t> used;
	bool scale_seen = false;
	for (std::size_t idx = 0; idx < events.size(); ++idx) {
		auto fail = [&](const std::string& msg) -> void {
			throw invalid_input("event " + std::to_string(idx) + ": " + msg);
		};
		if (const ScaleEvent* se = std::get_if<ScaleEvent>(&events[idx])) {
			if (se->alpha > upto) break;
			if (scale_seen && se->alpha <= rc.last_scale) fail("scale values must increase");
			rc.last_scale = se->alpha;
			scale_seen = true;
			continue;
		}
		if (!scale_seen) fail("event before the first scale event");
		if (const IncludeEvent* ie = std::get_if<IncludeEvent>(&events[idx])) {
			if (ie->id < 0 || used.count(ie->id)) fail("include id already used");
			if (ie->dim == 0) {
				if (ie->boundary.size() != 1 || ie->boundary[0] != ie->id)
					fail("dim-0 include must list its own id");
				used.insert(ie->id);
				rc.alive.insert(ie->id);
				rc.simplices.insert({ie->id});
				continue;
			}
			if (static_cast<index_t>(ie->boundary.size()) != ie->dim + 1)
				fail("boundary size does not match dimension");
			for (std::size_t i = 0; i + 1 < ie->boundary.size(); ++i)
				if (ie->boundary[i] >= ie->boundary[i + 1])
					fail("boundary ids must be strictly ascending");
			for (index_t b : ie->boundary)
				if (!rc.alive.count(b)) fail("boundary id " + std::to_string(b) + " not alive");
			std::vector<index_t> facet(ie->boundary.size() - 1);
			for (std::size_t drop = 0; drop < ie->boundary.size(); ++drop) {
				facet.clear();
				for (std::size_t i = 0; i < ie->boundary.size(); ++i)
					if (i != drop) facet.push_back(ie->boundary[i]);
				if (!rc.simplices.count(facet)) fail("missing subsimplex of included simplex");
			}
			if (!rc.simplices.insert(ie->boundary).second) fail("simplex already present");
			used.insert(ie->id);
			continue;
		}
		const ContractEvent& ce = std::get<ContractEvent>(events[idx]);
		if (ce.kept == ce.removed) fail("contraction of an id with itself");
		if (ce.kept > ce.removed) fail("contraction must keep the smaller id");
		if (!rc.alive.count(ce.kept)) fail("kept id not alive");
		if (!rc.alive.count(ce.removed)) fail("removed id not alive (double contraction?)");
		std::vector<std::vector<index_t>> add, del;
		for (const auto& simplex : rc.simplices) {
			if (!std::binary_search(simplex.begin(), simplex.end(), ce.removed)) continue;
			del.push_back(simplex);
			std::vector<index_t> repl;
			repl.reserve(simplex.size());
			for (index_t v : simplex)
				if (v != ce.removed) repl.push_back(v);
			if (!std::binary_search(repl.begin(), repl.end(), ce.kept))
				repl.insert(std::lower_bound(repl.begin(), repl.end(), ce.kept), ce.kept);
			add.push_back(std::move(repl));
		}
		for (auto& sx : del) rc.simplices.erase(sx);
		for (auto& sx : add) rc.simplices.insert(std::move(sx));
		rc.alive.erase(ce.removed);
		rc.merged_into[ce.removed] = ce.kept;
	}
	return rc;
}

ReplayComplex replay(const EventStream& stream, double upto) {
	return replay(stream.events, upto);
}

}  // namespace gridser
