#include "gridser/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace gridser {

void sort_barcode(Barcode& b) {
	std::sort(b.bars.begin(), b.bars.end(), [](const Bar& x, const Bar& y) {
		if (x.dim != y.dim) return x.dim < y.dim;
		if (x.birth != y.birth) return x.birth < y.birth;
		return x.death < y.death;
	});
}

int max_dim(const Barcode& b) {
	int m = -1;
	for (const Bar& bar : b.bars) m = std::max(m, bar.dim);
	return m;
}

namespace {

// symmetric difference of ascending index lists
std::vector<index_t> xor_columns(const std::vector<index_t>& a,
                                 const std::vector<index_t>& b) {
	std::vector<index_t> out;
	out.reserve(a.size() + b.size());
	std::size_t i = 0, j = 0;
	while (i < a.size() && j < b.size()) {
		if (a[i] < b[j])
			out.push_back(a[i++]);
		else if (b[j] < a[i])
			out.push_back(b[j++]);
		else {
			++i;
			++j;
		}
	}
	out.insert(out.end(), a.begin() + i, a.end());
	out.insert(out.end(), b.begin() + j, b.end());
	return out;
}

}  // namespace

Barcode reduce(const FilteredComplex& filt) {
	const auto& sx = filt.simplices;
	const index_t m = static_cast<index_t>(sx.size());
	for (index_t j = 1; j < m; ++j)
		if (filtration_order_less(sx[j], sx[j - 1]))
			throw invalid_input("filtration not sorted");

	std::unordered_map<std::vector<index_t>, index_t, IndexVectorHash> position;
	position.reserve(sx.size() * 2);
	for (index_t j = 0; j < m; ++j)
		if (!position.emplace(sx[j].vertices, j).second)
			throw invalid_input("filtration contains a duplicate simplex");

	std::vector<std::vector<index_t>> reduced(m);
	std::vector<index_t> owner(m, -1);  // pivot row -> owning column
	std::vector<char> creator(m, 0);
	std::vector<index_t> facet;
	Barcode out;
	for (index_t j = 0; j < m; ++j) {
		std::vector<index_t> col;
		if (sx[j].dim() > 0) {
			col.reserve(sx[j].vertices.size());
			for (std::size_t drop = 0; drop < sx[j].vertices.size(); ++drop) {
				facet.clear();
				for (std::size_t i = 0; i < sx[j].vertices.size(); ++i)
					if (i != drop) facet.push_back(sx[j].vertices[i]);
				auto it = position.find(facet);
				if (it == position.end() || it->second > j)
					throw invalid_input("filtration not closed under subsimplices");
				col.push_back(it->second);
			}
			std::sort(col.begin(), col.end());
		}
		while (!col.empty() && owner[col.back()] >= 0)
			col = xor_columns(col, reduced[owner[col.back()]]);
		if (col.empty()) {
			creator[j] = 1;
			continue;
		}
		index_t low = col.back();
		owner[low] = j;
		reduced[j] = std::move(col);
		if (sx[low].value != sx[j].value)
			out.bars.push_back({sx[low].dim(), sx[low].value, sx[j].value});
	}
	for (index_t j = 0; j < m; ++j)
		if (creator[j] && owner[j] < 0)
			out.bars.push_back({sx[j].dim(), sx[j].value, kInfiniteDeath});
	sort_barcode(out);
	return out;
}

std::vector<index_t> betti_numbers(const std::vector<std::vector<index_t>>& simplices) {
	FilteredComplex filt;
	filt.simplices.reserve(simplices.size());
	for (const auto& s : simplices) filt.simplices.push_back({s, 1.0});
	sort_filtration(filt);
	Barcode bc = reduce(filt);
	std::vector<index_t> betti(static_cast<std::size_t>(std::max(0, max_dim(bc))) + 1, 0);
	for (const Bar& bar : bc.bars)
		if (bar.infinite()) ++betti[bar.dim];
	return betti;
}

FilteredComplex tower_to_filtration(const EventStream& stream, ConversionStats* stats) {
	FilteredComplex out;
	std::set<std::vector<index_t>> alive;
	std::unordered_set<std::vector<index_t>, IndexVectorHash> ever;
	double cur = 0;
	bool have_scale = false;
	index_t cones = 0, includes = 0;

	auto add = [&](std::vector<index_t> simplex, double value) -> bool {
		if (!ever.insert(simplex).second) return false;
		out.simplices.push_back({std::move(simplex), value});
		return true;
	};

	for (std::size_t idx = 0; idx < stream.events.size(); ++idx) {
		const TowerEvent& ev = stream.events[idx];
		if (const ScaleEvent* se = std::get_if<ScaleEvent>(&ev)) {
			cur = se->alpha;
			have_scale = true;
			continue;
		}
		if (!have_scale)
			throw invalid_input("event " + std::to_string(idx) + ": before the first scale");
		if (const IncludeEvent* ie = std::get_if<IncludeEvent>(&ev)) {
			++includes;
			add(ie->boundary, cur);
			alive.insert(ie->boundary);
			continue;
		}
		const ContractEvent& ce = std::get<ContractEvent>(ev);
		// cone with apex kept over the closed star of removed
		std::set<std::vector<index_t>> closed_star;
		for (const auto& simplex : alive) {
			if (!std::binary_search(simplex.begin(), simplex.end(), ce.removed)) continue;
			std::size_t n = simplex.size();
			for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
				std::vector<index_t> sub;
				for (std::size_t i = 0; i < n; ++i)
					if (bits & (1u << i)) sub.push_back(simplex[i]);
				closed_star.insert(std::move(sub));
			}
		}
		std::vector<std::vector<index_t>> cone;
		for (const auto& tau : closed_star) {
			if (std::binary_search(tau.begin(), tau.end(), ce.kept)) continue;
			std::vector<index_t> coned = tau;
			coned.insert(std::lower_bound(coned.begin(), coned.end(), ce.kept), ce.kept);
			cone.push_back(std::move(coned));
		}
		std::sort(cone.begin(), cone.end(), [](const auto& a, const auto& b) {
			if (a.size() != b.size()) return a.size() < b.size();
			return a < b;
		});
		for (auto& simplex : cone)
			if (add(std::move(simplex), cur)) ++cones;
		// quotient the live complex
		std::set<std::vector<index_t>> nalive;
		for (const auto& simplex : alive) {
			if (!std::binary_search(simplex.begin(), simplex.end(), ce.removed)) {
				nalive.insert(simplex);
				continue;
			}
			std::vector<index_t> repl;
			repl.reserve(simplex.size());
			for (index_t v : simplex)
				if (v != ce.removed) repl.push_back(v);
			if (!std::binary_search(repl.begin(), repl.end(), ce.kept))
				repl.insert(std::lower_bound(repl.begin(), repl.end(), ce.kept), ce.kept);
			nalive.insert(std::move(repl));
		}
		alive = std::move(nalive);
	}
	sort_filtration(out);
	if (stats) {
		stats->stream_includes = includes;
		stats->cone_simplices = cones;
		stats->total_simplices = static_cast<index_t>(out.simplices.size());
	}
	return out;
}

// ---------------------------------------------------------------------------
// rank oracle: bit-packed Z2 linear algebra

namespace {

using BitVec = std::vector<std::uint64_t>;

BitVec make_bitvec(std::size_t bits) { return BitVec((bits + 63) / 64, 0); }
void flip_bit(BitVec& v, std::size_t i) { v[i / 64] ^= 1ULL << (i % 64); }
int top_bit(const BitVec& v) {
	for (std::size_t w = v.size(); w-- > 0;)
		if (v[w]) return static_cast<int>(w * 64 + 63 - std::countl_zero(v[w]));
	return -1;
}
void xor_into(BitVec& a, const BitVec& b) {
	for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

// rank of the span of `extra` modulo the span of `base`
index_t rank_modulo(const std::vector<BitVec>& base, const std::vector<BitVec>& extra) {
	std::map<int, BitVec> pivots;
	auto insert = [&](BitVec c) -> bool {
		int t;
		while ((t = top_bit(c)) >= 0) {
			auto it = pivots.find(t);
			if (it == pivots.end()) break;
			xor_into(c, it->second);
		}
		if (t < 0) return false;
		pivots.emplace(t, std::move(c));
		return true;
	};
	for (const BitVec& c : base) insert(c);
	index_t rank = 0;
	for (const BitVec& c : extra)
		if (insert(c)) ++rank;
	return rank;
}

// kernel basis of a column matrix; vectors are over column indices
std::vector<BitVec> kernel_basis(std::vector<BitVec> cols) {
	std::size_t n = cols.size();
	std::vector<BitVec> trace(n);
	for (std::size_t j = 0; j < n; ++j) {
		trace[j] = make_bitvec(n);
		flip_bit(trace[j], j);
	}
	std::map<int, std::size_t> owner;
	std::vector<BitVec> kernel;
	for (std::size_t j = 0; j < n; ++j) {
		int t;
		while ((t = top_bit(cols[j])) >= 0) {
			auto it = owner.find(t);
			if (it == owner.end()) break;
			xor_into(cols[j], cols[it->second]);
			xor_into(trace[j], trace[it->second]);
		}
		if (t >= 0)
			owner.emplace(t, j);
		else
			kernel.push_back(std::move(trace[j]));
	}
	return kernel;
}

struct ScaleComplex {
	double alpha = 0;
	std::vector<std::vector<index_t>> simplices;  // sorted by (dim, lex)
	std::unordered_map<std::vector<index_t>, index_t, IndexVectorHash> pos;
	std::vector<std::vector<index_t>> by_dim;
	int top_dim = -1;

	void build_index() {
		std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
			if (a.size() != b.size()) return a.size() < b.size();
			return a < b;
		});
		pos.clear();
		pos.reserve(simplices.size() * 2);
		for (std::size_t i = 0; i < simplices.size(); ++i)
			pos.emplace(simplices[i], static_cast<index_t>(i));
		top_dim = -1;
		for (const auto& s : simplices)
			top_dim = std::max(top_dim, static_cast<int>(s.size()) - 1);
		by_dim.assign(top_dim + 2, {});
		for (std::size_t i = 0; i < simplices.size(); ++i)
			by_dim[simplices[i].size() - 1].push_back(static_cast<index_t>(i));
	}

	// boundary matrix of dim p, columns over global simplex positions
	std::vector<BitVec> boundary(int p) const {
		std::vector<BitVec> cols;
		if (p < 1 || p > top_dim) return cols;
		cols.reserve(by_dim[p].size());
		std::vector<index_t> facet;
		for (index_t si : by_dim[p]) {
			const auto& s = simplices[si];
			BitVec col = make_bitvec(simplices.size());
			for (std::size_t drop = 0; drop < s.size(); ++drop) {
				facet.clear();
				for (std::size_t i = 0; i < s.size(); ++i)
					if (i != drop) facet.push_back(s[i]);
				flip_bit(col, pos.at(facet));
			}
			cols.push_back(std::move(col));
		}
		return cols;
	}
};

}  // namespace

Barcode rank_oracle(const EventStream& stream, index_t budget) {
	const auto& evs = stream.events;
	std::vector<double> alphas;
	for (const TowerEvent& ev : evs)
		if (const ScaleEvent* se = std::get_if<ScaleEvent>(&ev)) alphas.push_back(se->alpha);
	if (alphas.empty()) return {};
	const int T = static_cast<int>(alphas.size());

	// contractions grouped by scale segment
	std::vector<std::unordered_map<index_t, index_t>> merge(T);
	{
		int t = -1;
		for (const TowerEvent& ev : evs) {
			if (std::holds_alternative<ScaleEvent>(ev)) {
				++t;
				continue;
			}
			if (const ContractEvent* ce = std::get_if<ContractEvent>(&ev))
				merge[t][ce->removed] = ce->kept;
		}
	}

	std::vector<ScaleComplex> K(T);
	index_t total = 0;
	for (int t = 0; t < T; ++t) {
		ReplayComplex rc = replay(evs, alphas[t]);
		K[t].alpha = alphas[t];
		K[t].simplices.assign(rc.simplices.begin(), rc.simplices.end());
		K[t].build_index();
		total += static_cast<index_t>(K[t].simplices.size());
		if (total > budget)
			throw budget_error("rank oracle budget exceeded: " + std::to_string(total) +
			                   " simplices across scales");
	}

	int top = 0;
	for (const ScaleComplex& sc : K) top = std::max(top, sc.top_dim);

	// composed 0-simplex map from scale t to t'
	auto map_id = [&](index_t id, int t_from, int t_to) {
		for (int t = t_from + 1; t <= t_to; ++t) {
			auto it = merge[t].find(id);
			if (it != merge[t].end()) id = it->second;
		}
		return id;
	};

	// pre-reduced ingredients
	std::vector<std::vector<std::vector<BitVec>>> kernels(T);   // [t][p]
	std::vector<std::vector<std::vector<BitVec>>> boundaries(T);  // [t][p] = im d_{p+1}
	for (int t = 0; t < T; ++t) {
		kernels[t].resize(top + 1);
		boundaries[t].resize(top + 1);
		for (int p = 0; p <= top; ++p) {
			if (p == 0) {
				// every 0-chain is a cycle
				std::size_t n0 = K[t].by_dim.empty() ? 0 : K[t].by_dim[0].size();
				for (std::size_t j = 0; j < n0; ++j) {
					BitVec v = make_bitvec(n0);
					flip_bit(v, j);
					kernels[t][p].push_back(std::move(v));
				}
			} else {
				kernels[t][p] = kernel_basis(K[t].boundary(p));
			}
			boundaries[t][p] = K[t].boundary(p + 1);
		}
	}

	// rank of H_p(K_t) -> H_p(K_t') for all pairs
	std::vector<std::vector<std::vector<index_t>>> rank(
	    top + 1, std::vector<std::vector<index_t>>(T, std::vector<index_t>(T, 0)));
	std::vector<index_t> mapped;
	for (int p = 0; p <= top; ++p) {
		for (int t = 0; t < T; ++t) {
			if (p > K[t].top_dim) continue;
			const auto& pcells = K[t].by_dim[p];
			for (int u = t; u < T; ++u) {
				// push each kernel basis vector through the chain map
				std::vector<BitVec> images;
				images.reserve(kernels[t][p].size());
				bool any = false;
				for (const BitVec& z : kernels[t][p]) {
					BitVec w = make_bitvec(K[u].simplices.size());
					for (std::size_t j = 0; j < pcells.size(); ++j) {
						if (!((z[j / 64] >> (j % 64)) & 1)) continue;
						const auto& s = K[t].simplices[pcells[j]];
						mapped.clear();
						for (index_t id : s) mapped.push_back(map_id(id, t, u));
						std::sort(mapped.begin(), mapped.end());
						mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
						if (mapped.size() != s.size()) continue;  // degenerate, maps to 0
						auto it = K[u].pos.find(mapped);
						if (it == K[u].pos.end())
							throw internal_error("rank oracle: image simplex missing");
						flip_bit(w, static_cast<std::size_t>(it->second));
					}
					if (top_bit(w) >= 0) any = true;
					images.push_back(std::move(w));
				}
				if (!any) continue;
				rank[p][t][u] = rank_modulo(boundaries[u][p], images);
			}
		}
	}

	Barcode out;
	auto r = [&](int p, int t, int u) -> index_t {
		if (t < 0 || u >= T) return 0;
		return rank[p][t][u];
	};
	for (int p = 0; p <= top; ++p)
		for (int t = 0; t < T; ++t)
			for (int u = t; u < T; ++u) {
				index_t mult = r(p, t, u) - r(p, t - 1, u) - r(p, t, u + 1) + r(p, t - 1, u + 1);
				for (index_t c = 0; c < mult; ++c)
					out.bars.push_back(
					    {p, alphas[t], u + 1 < T ? alphas[u + 1] : kInfiniteDeath});
			}
	sort_barcode(out);
	return out;
}

// ---------------------------------------------------------------------------
// bottleneck distance after the log transform

namespace {

struct LogDiagram {
	std::vector<std::pair<double, double>> finite;  // (ln birth, ln death)
	std::vector<double> infinite;                   // ln birth
};

LogDiagram log_diagram(const Barcode& bc, int dim) {
	LogDiagram d;
	for (const Bar& bar : bc.bars) {
		if (bar.dim != dim) continue;
		if (bar.birth <= 0)
			throw invalid_input("bottleneck_log requires positive births");
		if (bar.infinite())
			d.infinite.push_back(std::log(bar.birth));
		else
			d.finite.emplace_back(std::log(bar.birth), std::log(bar.death));
	}
	std::sort(d.infinite.begin(), d.infinite.end());
	return d;
}

double linf(const std::pair<double, double>& a, const std::pair<double, double>& b) {
	return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diag_cost(const std::pair<double, double>& a) { return (a.second - a.first) / 2; }

// perfect matching feasibility at threshold delta, on the augmented
// bipartite graph (points + diagonal slots on both sides)
bool feasible(const std::vector<std::pair<double, double>>& A,
              const std::vector<std::pair<double, double>>& B, double delta) {
	const std::size_t na = A.size(), nb = B.size();
	const std::size_t L = na + nb, R = nb + na;  // left: A + diag(B); right: B + diag(A)
	std::vector<std::vector<int>> adj(L);
	for (std::size_t i = 0; i < na; ++i) {
		for (std::size_t j = 0; j < nb; ++j)
			if (linf(A[i], B[j]) <= delta) adj[i].push_back(static_cast<int>(j));
		if (diag_cost(A[i]) <= delta) adj[i].push_back(static_cast<int>(nb + i));
	}
	for (std::size_t j = 0; j < nb; ++j) {
		if (diag_cost(B[j]) <= delta) adj[na + j].push_back(static_cast<int>(j));
		for (std::size_t i = 0; i < na; ++i)
			adj[na + j].push_back(static_cast<int>(nb + i));  // diagonal-diagonal, free
	}
	std::vector<int> match_left(L, -1), match_right(R, -1);
	std::vector<char> visited(R, 0);
	std::function<bool(int)> augment = [&](int u) -> bool {
		for (int v : adj[u]) {
			if (visited[v]) continue;
			visited[v] = 1;
			if (match_right[v] < 0 || augment(match_right[v])) {
				match_left[u] = v;
				match_right[v] = u;
				return true;
			}
		}
		return false;
	};
	std::size_t matched = 0;
	for (std::size_t u = 0; u < L; ++u) {
		std::fill(visited.begin(), visited.end(), 0);
		if (augment(static_cast<int>(u))) ++matched;
	}
	return matched == L;
}

double finite_bottleneck(const std::vector<std::pair<double, double>>& A,
                         const std::vector<std::pair<double, double>>& B) {
	if (A.empty() && B.empty()) return 0;
	std::vector<double> cand;
	cand.push_back(0);
	for (const auto& a : A) {
		cand.push_back(diag_cost(a));
		for (const auto& b : B) cand.push_back(linf(a, b));
	}
	for (const auto& b : B) cand.push_back(diag_cost(b));
	std::sort(cand.begin(), cand.end());
	cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
	std::size_t lo = 0, hi = cand.size() - 1;
	while (lo < hi) {
		std::size_t mid = (lo + hi) / 2;
		if (feasible(A, B, cand[mid]))
			hi = mid;
		else
			lo = mid + 1;
	}
	return cand[lo];
}

}  // namespace

double bottleneck_log(const Barcode& a, const Barcode& b, int dim) {
	LogDiagram da = log_diagram(a, dim);
	LogDiagram db = log_diagram(b, dim);
	if (da.infinite.size() != db.infinite.size())
		return std::numeric_limits<double>::infinity();
	double inf_cost = 0;
	for (std::size_t i = 0; i < da.infinite.size(); ++i)
		inf_cost = std::max(inf_cost, std::abs(da.infinite[i] - db.infinite[i]));
	return std::max(inf_cost, finite_bottleneck(da.finite, db.finite));
}

Barcode scale_barcode(const Barcode& b, double factor) {
	if (!(factor > 0)) throw invalid_input("scale factor must be positive");
	Barcode out = b;
	for (Bar& bar : out.bars) {
		bar.birth *= factor;
		if (!bar.infinite()) bar.death *= factor;
	}
	sort_barcode(out);
	return out;
}

void write_barcode(std::ostream& out, const Barcode& b) {
	for (const Bar& bar : b.bars)
		out << bar.dim << ' ' << format_double(bar.birth) << ' '
		    << (bar.infinite() ? std::string("inf") : format_double(bar.death)) << '\n';
}

Barcode read_barcode(std::istream& in) {
	Barcode b;
	std::string line;
	index_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (line.empty() || line[0] == '#') continue;
		std::istringstream ls(line);
		std::string dtok, btok, etok;
		if (!(ls >> dtok >> btok >> etok))
			throw invalid_input("barcode line " + std::to_string(lineno) + ": too short");
		Bar bar;
		bar.dim = static_cast<int>(parse_index(dtok, "bar dimension"));
		bar.birth = parse_double(btok, "bar birth");
		bar.death = parse_double(etok, "bar death");
		b.bars.push_back(bar);
	}
	sort_barcode(b);
	return b;
}

}  // namespace gridser
