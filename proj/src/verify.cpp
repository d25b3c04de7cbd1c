#include "gridser/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace gridser {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double exact_diameter(const PointCloud& cloud) {
	double d = 0;
	for (index_t i = 0; i < cloud.size(); ++i)
		for (index_t j = i + 1; j < cloud.size(); ++j)
			d = std::max(d, distance(cloud, i, j));
	return d;
}

// restrict a barcode to dimensions <= dim_cap and to the scale window
// [t0, inf): births below t0 are clamped up (both modules are constant
// below their first interesting scale)
Barcode clamp_barcode(const Barcode& b, double t0, int dim_cap) {
	Barcode out;
	for (Bar bar : b.bars) {
		if (bar.dim > dim_cap) continue;
		bar.birth = std::max(bar.birth, t0);
		if (!bar.infinite() && bar.death <= bar.birth) continue;
		out.bars.push_back(bar);
	}
	sort_barcode(out);
	return out;
}

}  // namespace

InterleavingReport check_interleaving(const PointCloud& cloud, std::uint64_t seed,
                                      int max_hom_dim) {
	auto t0 = std::chrono::steady_clock::now();
	InterleavingReport r;
	r.n = cloud.size();
	r.dim = cloud.dim;
	r.max_hom_dim = max_hom_dim;
	r.seed = seed;

	ScaleBounds bounds = scale_bounds(cloud);
	r.alpha0 = bounds.alpha0;
	LatticeHierarchy h(bounds, cloud.dim, seed);
	// build one dimension higher than the compared homology range so the
	// compared dimensions carry no skeleton-truncation artifacts
	Tower tower = build_tower(cloud, h, {max_hom_dim + 1, false});
	Barcode tower_bc = reduce(tower_to_filtration(tower.stream));

	PointCloud cloud_inf = cloud;
	cloud_inf.metric = Metric::Linf;
	PointCloud cloud_l2 = cloud;
	cloud_l2.metric = Metric::L2;
	Barcode rips_inf = reduce(build_rips(cloud_inf, max_hom_dim + 1, exact_diameter(cloud_inf)));
	Barcode rips_l2 = reduce(build_rips(cloud_l2, max_hom_dim + 1, exact_diameter(cloud_l2)));

	const double sqrt2 = std::sqrt(2.0);
	const double droot = std::pow(static_cast<double>(cloud.dim), 0.25);
	r.linf_bound = std::log(3 * sqrt2);
	r.l2_bound = std::log(3 * sqrt2 * droot);

	auto compare = [&](const Barcode& rips, double factor, std::vector<double>& out) {
		Barcode t = clamp_barcode(scale_barcode(tower_bc, factor),
		                          bounds.alpha0 * factor, max_hom_dim);
		Barcode rp = clamp_barcode(rips, bounds.alpha0 * factor, max_hom_dim);
		out.resize(max_hom_dim + 1);
		for (int dim = 0; dim <= max_hom_dim; ++dim) out[dim] = bottleneck_log(t, rp, dim);
	};
	compare(rips_inf, 1.0 / sqrt2, r.linf_distance);
	compare(rips_l2, droot / sqrt2, r.l2_distance);

	r.pass = true;
	for (double d : r.linf_distance)
		if (!(d <= r.linf_bound)) r.pass = false;
	for (double d : r.l2_distance)
		if (!(d <= r.l2_bound)) r.pass = false;
	r.seconds = seconds_since(t0);
	return r;
}

void print_report(std::ostream& out, const InterleavingReport& r) {
	out << "interleaving n=" << r.n << " d=" << r.dim << " k=" << r.max_hom_dim
	    << " seed=" << r.seed << '\n';
	for (int dim = 0; dim <= r.max_hom_dim; ++dim)
		out << "  dim " << dim << ": linf " << format_double(r.linf_distance[dim])
		    << " (bound " << format_double(r.linf_bound) << "), l2 "
		    << format_double(r.l2_distance[dim]) << " (bound " << format_double(r.l2_bound)
		    << ")\n";
	out << "  " << (r.pass ? "PASS" : "FAIL") << " in " << format_double(r.seconds)
	    << " s\n";
}

// ---------------------------------------------------------------------------
// lemma campaigns

namespace {

std::string shifts_string(const LatticeHierarchy& h) {
	std::ostringstream os;
	os << "lambda=" << format_double(h.lambda()) << " shifts=";
	for (const auto& row : h.shifts()) {
		os << '[';
		for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
		os << ']';
	}
	return os.str();
}

struct Noter {
	LemmaCheck& check;
	void operator()(bool ok, const std::string& what) {
		++check.cases;
		if (!ok) {
			++check.violations;
			if (check.first_counterexample.empty()) check.first_counterexample = what;
		}
	}
};

bool voronoi_nested(const LatticeHierarchy& h, const GridVertex& v) {
	GridVertex y = h.vertex_map(v);
	for (int i = 0; i < h.dim(); ++i) {
		auto [lo, hi] = h.voronoi_units(v, i);
		auto [LO, HI] = h.voronoi_units(y, i);
		if (lo < LO || HI < hi) return false;
	}
	return true;
}

bool image_matches_vertex_images(const LatticeHierarchy& h, const LatticeFace& f) {
	LatticeFace e = face_map(h, f);
	std::vector<std::vector<index_t>> expect, got;
	for (const GridVertex& v : f.vertices()) expect.push_back(h.vertex_map(v).z);
	std::sort(expect.begin(), expect.end());
	expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
	for (const GridVertex& v : e.vertices()) got.push_back(v.z);
	std::sort(got.begin(), got.end());
	return expect == got;
}

bool opposite_facets_lift(const LatticeHierarchy& h, const LatticeFace& f) {
	LatticeFace e = face_map(h, f);
	if (e.dim() < 1) return true;
	for (const auto& [e1, e2] : facet_pairs(e)) {
		bool lifted = false;
		for (const auto& [f1, f2] : facet_pairs(f)) {
			LatticeFace g1 = face_map(h, f1), g2 = face_map(h, f2);
			if ((g1 == e1 && g2 == e2) || (g1 == e2 && g2 == e1)) {
				lifted = true;
				break;
			}
		}
		if (!lifted) return false;
	}
	return true;
}

}  // namespace

LemmaReport check_lemmas(int dim, index_t trials, std::uint64_t seed) {
	LemmaReport rep;
	rep.dim = dim;
	LemmaCheck vor{.name = "vorcontain"}, gimg{.name = "gcell_image"},
	    gfac{.name = "gcell_facets"}, aimg{.name = "activeimage"},
	    irip{.name = "iripscell"}, gcomp{.name = "gcompose"}, ux{.name = "uxcomplex"};
	Noter note_vor{vor}, note_gimg{gimg}, note_gfac{gfac}, note_aimg{aimg},
	    note_irip{irip}, note_gcomp{gcomp}, note_ux{ux};
	std::mt19937_64 rng(seed);
	auto rnd_int = [&](index_t lo, index_t hi) {
		return lo + static_cast<index_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
	};
	const index_t ux_target = std::max<index_t>(200, trials / 40);

	// exhaustive sweep over one transition: all shift signs, all masks,
	// anchors over a parity-covering window (the vertex map is invariant
	// under translation by two lattice units)
	if (dim <= 3) {
		std::vector<std::vector<int>> sigma(1, std::vector<int>(dim));
		for (std::uint32_t bits = 0; bits < (1u << dim); ++bits) {
			for (int i = 0; i < dim; ++i) sigma[0][i] = (bits >> i) & 1 ? 1 : -1;
			LatticeHierarchy h(1.0, sigma);
			std::vector<index_t> anchor(dim, -2);
			for (;;) {
				GridVertex v{0, anchor};
				note_vor(voronoi_nested(h, v), shifts_string(h) + " vertex " +
				                                   face_of_vertex(v).dump());
				for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) {
					LatticeFace f{0, anchor, mask};
					note_gimg(image_matches_vertex_images(h, f),
					          shifts_string(h) + " face " + f.dump());
					note_gfac(opposite_facets_lift(h, f), shifts_string(h) + " face " + f.dump());
				}
				int i = 0;
				while (i < dim && anchor[i] == 2) anchor[i++] = -2;
				if (i == dim) break;
				++anchor[i];
			}
		}
	}

	// random lattice trials
	while (vor.cases < trials || gimg.cases < trials || gfac.cases < trials) {
		LatticeHierarchy h(std::ldexp(1.0, static_cast<int>(rnd_int(-3, 3))),
		                   static_cast<int>(rnd_int(1, 6)), dim, rng());
		int s = static_cast<int>(rnd_int(0, h.s_max() - 1));
		std::vector<index_t> anchor(dim);
		for (int i = 0; i < dim; ++i) anchor[i] = rnd_int(-50, 50);
		GridVertex v{s, anchor};
		note_vor(voronoi_nested(h, v),
		         shifts_string(h) + " vertex " + face_of_vertex(v).dump());
		LatticeFace f{s, anchor, static_cast<std::uint32_t>(rnd_int(0, (1 << dim) - 1))};
		note_gimg(image_matches_vertex_images(h, f), shifts_string(h) + " face " + f.dump());
		note_gfac(opposite_facets_lift(h, f), shifts_string(h) + " face " + f.dump());
	}

	// point-cloud driven trials
	index_t instance = 0;
	while (aimg.cases < trials || irip.cases < trials || gcomp.cases < trials ||
	       ux.cases < ux_target) {
		++instance;
		index_t n = rnd_int(2, 20);
		std::uint64_t cloud_seed = rng();
		PointCloud cloud = uniform_cloud(n, dim, Metric::L2, cloud_seed);
		ScaleBounds bounds = scale_bounds(cloud);
		LatticeHierarchy h(bounds, dim, rng());
		std::string cloud_tag =
		    " n=" + std::to_string(n) + " cloud_seed=" + std::to_string(cloud_seed);
		for (int s = 0; s < h.s_max(); ++s) {
			ActiveSet V = active_vertices(h, cloud, s);
			ActiveSet W = active_vertices(h, cloud, s + 1);
			std::vector<LatticeFace> active = spanned_faces(V);
			if (aimg.cases < trials + 5000)
				for (const LatticeFace& f : active)
					note_aimg(is_spanned(face_map(h, f), W),
					          shifts_string(h) + cloud_tag + " face " + f.dump());

			if (gcomp.cases < trials + 5000)
				for (const GridVertex& x : V.sorted()) {
					index_t rep = V.rep(x.z);
					GridVertex via_rep = h.locate(cloud.point(rep), s + 1);
					note_gcomp(h.vertex_map(x) == via_rep,
					           shifts_string(h) + cloud_tag + " vertex " +
					               face_of_vertex(x).dump());
				}

			if (irip.cases < trials + 5000) {
				double alpha = h.alpha(s);
				for (index_t c = 0; c < std::min<index_t>(n, 6); ++c) {
					index_t center = rnd_int(0, n - 1);
					std::vector<index_t> q;
					for (index_t p = 0; p < n; ++p)
						if (distance(cloud.point(center), cloud.point(p), Metric::Linf) <=
						    alpha / 2)
							q.push_back(p);
					std::vector<index_t> lo(dim, std::numeric_limits<index_t>::max());
					std::vector<index_t> hi(dim, std::numeric_limits<index_t>::min());
					for (index_t p : q) {
						GridVertex v = h.locate(cloud.point(p), s);
						for (int i = 0; i < dim; ++i) {
							lo[i] = std::min(lo[i], v.z[i]);
							hi[i] = std::max(hi[i], v.z[i]);
						}
					}
					bool in_face = true;
					for (int i = 0; i < dim; ++i)
						if (hi[i] - lo[i] > 1) in_face = false;
					note_irip(in_face, shifts_string(h) + cloud_tag + " s=" +
					                       std::to_string(s) + " center=" +
					                       std::to_string(center));
				}
			}

			if (ux.cases < ux_target) {
				const auto& verts = V.sorted();
				GridVertex v = verts[static_cast<std::size_t>(rnd_int(0, V.size() - 1))];
				std::vector<LatticeFace> cofs = cofaces_of_vertex(v);
				LatticeFace f = cofs[static_cast<std::size_t>(
				    rnd_int(0, static_cast<index_t>(cofs.size()) - 1))];
				if (rnd_int(0, 9) == 0)  // sometimes probe an empty region
					for (auto& a : f.anchor) a += 1000;
				std::vector<Flag> span = local_span(f, V);
				bool ok = true;
				std::ostringstream why;
				if (span.empty()) {
					bool any_active = false;
					for (const GridVertex& c : f.vertices())
						if (V.contains(c.z)) any_active = true;
					ok = !any_active;
					if (!ok) why << "span empty but face holds an active vertex";
				} else {
					std::vector<index_t> betti = betti_numbers(flags_to_simplices(span));
					if (betti.empty() || betti[0] != 1) ok = false;
					for (std::size_t p = 1; p < betti.size(); ++p)
						if (betti[p] != 0) ok = false;
					if (!ok) why << "local span not acyclic";
				}
				note_ux(ok, shifts_string(h) + cloud_tag + " face " + f.dump() + " " +
				                why.str());
			}
		}
		if (instance > trials * 4 + 1000) break;  // safety stop
	}

	rep.checks = {vor, gimg, gfac, aimg, irip, gcomp, ux};
	rep.pass = true;
	for (const LemmaCheck& c : rep.checks)
		if (c.violations) rep.pass = false;
	return rep;
}

void print_report(std::ostream& out, const LemmaReport& r) {
	out << "lemma checks, d=" << r.dim << '\n';
	for (const LemmaCheck& c : r.checks) {
		out << "  " << c.name << ": " << c.cases << " cases, " << c.violations
		    << " violations";
		if (c.violations) out << "  [" << c.first_counterexample << "]";
		out << '\n';
	}
	out << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
}

// ---------------------------------------------------------------------------

std::vector<SizeRow> measure_sizes(const std::vector<index_t>& ns,
                                   const std::vector<int>& ds, int k,
                                   const std::vector<std::uint64_t>& seeds) {
	std::vector<SizeRow> rows;
	for (int d : ds)
		for (index_t n : ns)
			for (std::uint64_t seed : seeds) {
				auto t0 = std::chrono::steady_clock::now();
				PointCloud cloud = uniform_cloud(n, d, Metric::L2, seed * 2 + 1);
				ScaleBounds bounds = scale_bounds(cloud);
				LatticeHierarchy h(bounds, d, seed);
				Tower tower = build_tower(cloud, h, {k, false});
				SizeRow row;
				row.n = n;
				row.d = d;
				row.k = k;
				row.seed = seed;
				row.total_includes = tower.stats.total_includes;
				row.zero_includes = tower.stats.zero_simplex_includes;
				row.mean_face_lifetime = tower.stats.mean_face_lifetime();
				index_t pow3 = 1;
				for (int i = 0; i < d; ++i) pow3 *= 3;
				row.zero_bound_ok = row.zero_includes <= n * pow3;
				row.seconds = seconds_since(t0);
				rows.push_back(row);
			}
	return rows;
}

void write_sizes_csv(std::ostream& out, const std::vector<SizeRow>& rows) {
	out << "n,d,k,seed,M,zero_simplex_includes,mean_face_lifetime,seconds,zero_bound_ok\n";
	for (const SizeRow& r : rows)
		out << r.n << ',' << r.d << ',' << r.k << ',' << r.seed << ',' << r.total_includes
		    << ',' << r.zero_includes << ',' << format_double(r.mean_face_lifetime) << ','
		    << format_double(r.seconds) << ',' << (r.zero_bound_ok ? 1 : 0) << '\n';
}

SurvivalReport survival_experiment(int face_dim, int dim, index_t trials,
                                   std::uint64_t seed) {
	if (face_dim < 1 || face_dim > dim)
		throw invalid_input("face dimension must be in [1, dim]");
	std::mt19937_64 rng(seed);
	const int max_transitions = 192;
	double sum = 0, sum_sq = 0;
	for (index_t trial = 0; trial < trials; ++trial) {
		LatticeHierarchy h(1.0, max_transitions, dim, rng());
		LatticeFace f{0, std::vector<index_t>(dim), (1u << face_dim) - 1};
		for (int i = 0; i < dim; ++i)
			f.anchor[i] = static_cast<index_t>(rng() % 9) - 4;
		int steps = 0;
		while (f.dim() > 0 && f.s < h.s_max()) {
			f = face_map(h, f);
			++steps;
		}
		if (f.dim() > 0) steps = max_transitions;  // never observed
		sum += steps;
		sum_sq += static_cast<double>(steps) * steps;
	}
	SurvivalReport r;
	r.face_dim = face_dim;
	r.dim = dim;
	r.trials = trials;
	r.mean = sum / static_cast<double>(trials);
	double var = trials > 1
	                 ? (sum_sq - sum * sum / static_cast<double>(trials)) /
	                       static_cast<double>(trials - 1)
	                 : 0;
	r.stderr_mean = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
	r.bound = 3 * std::log2(static_cast<double>(face_dim));
	r.pass = r.mean <= r.bound + 3 * r.stderr_mean;
	return r;
}

}  // namespace gridser
