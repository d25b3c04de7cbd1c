// gridser: approximate Rips persistence on shifted integer lattices.
// Subcommands build the tower event stream, exact Rips filtrations,
// barcodes, and run the verification campaigns.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "gridser/verify.hpp"

using namespace gridser;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBudget = 4;
constexpr int kExitBound = 5;

std::uint64_t resolve_seed(bool given, std::uint64_t value) {
	if (given) return value;
	std::random_device rd;
	std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
	std::cout << "selected random seed " << s << '\n';
	return s;
}

std::ofstream open_output(const std::string& path) {
	std::ofstream out(path);
	if (!out) throw io_error("cannot open output file '" + path + "'");
	return out;
}

std::ifstream open_input(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw io_error("cannot open input file '" + path + "'");
	return in;
}

template <typename T>
std::vector<T> split_list(const std::string& text, const std::string& what) {
	std::vector<T> out;
	std::string item;
	std::istringstream ls(text);
	while (std::getline(ls, item, ','))
		if (!item.empty()) out.push_back(static_cast<T>(parse_index(item, what)));
	if (out.empty()) throw invalid_input("empty list for " + what);
	return out;
}

void write_stats_csv(std::ostream& out, const TowerStats& stats, int max_dim) {
	out << "s,alpha,contractions,includes_total";
	for (int p = 0; p <= max_dim; ++p) out << ",inc_dim" << p;
	out << '\n';
	for (const ScaleStats& sc : stats.scales) {
		index_t inc = 0;
		for (index_t c : sc.includes_by_dim) inc += c;
		out << sc.s << ',' << format_double(sc.alpha) << ',' << sc.contractions << ','
		    << inc;
		for (index_t c : sc.includes_by_dim) out << ',' << c;
		out << '\n';
	}
	out << "# M=" << stats.total_includes
	    << " zero_simplex_includes=" << stats.zero_simplex_includes
	    << " contractions=" << stats.total_contractions
	    << " mean_face_lifetime=" << format_double(stats.mean_face_lifetime())
	    << " censored=" << stats.censored_faces << '\n';
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"approximate Rips filtration tower on shifted integer lattices"};
	app.require_subcommand(1);

	// tower build
	auto* tower_cmd = app.add_subcommand("tower", "tower construction");
	tower_cmd->require_subcommand(1);
	auto* tower_build = tower_cmd->add_subcommand("build", "build the tower event stream");
	std::string tb_points, tb_metric = "l2", tb_out = "events.txt", tb_stats;
	int tb_maxdim = 2;
	std::uint64_t tb_seed = 0;
	tower_build->add_option("--points", tb_points, "input points file")->required();
	tower_build->add_option("--metric", tb_metric, "l2 or linf");
	tower_build->add_option("--max-dim", tb_maxdim, "skeleton cap k");
	auto* tb_seed_opt = tower_build->add_option("--seed", tb_seed, "shift seed");
	tower_build->add_option("--out", tb_out, "event stream output file");
	tower_build->add_option("--stats", tb_stats, "per-scale statistics CSV");

	// rips build
	auto* rips_cmd = app.add_subcommand("rips", "exact Rips filtration");
	rips_cmd->require_subcommand(1);
	auto* rips_build = rips_cmd->add_subcommand("build", "build the exact Rips filtration");
	std::string rb_points, rb_metric = "l2", rb_out;
	int rb_maxdim = 2;
	double rb_alpha = 0;
	index_t rb_budget = kDefaultRipsBudget;
	rips_build->add_option("--points", rb_points, "input points file")->required();
	rips_build->add_option("--metric", rb_metric, "l2 or linf");
	rips_build->add_option("--max-dim", rb_maxdim, "skeleton cap k");
	rips_build->add_option("--alpha-max", rb_alpha, "largest scale")->required();
	rips_build->add_option("--out", rb_out, "filtration output file")->required();
	rips_build->add_option("--budget", rb_budget, "simplex budget");

	// barcode
	auto* barcode_cmd = app.add_subcommand("barcode", "barcode of a tower or filtration");
	std::string bc_events, bc_filtration, bc_out;
	auto* bc_ev_opt = barcode_cmd->add_option("--events", bc_events, "event stream file");
	auto* bc_fi_opt =
	    barcode_cmd->add_option("--filtration", bc_filtration, "filtration file");
	barcode_cmd->add_option("--out", bc_out, "barcode output file")->required();
	bc_ev_opt->excludes(bc_fi_opt);

	// compare
	auto* compare_cmd =
	    app.add_subcommand("compare", "tower vs exact Rips interleaving check");
	std::string cp_points, cp_metric = "l2";
	int cp_maxdim = 2;
	std::uint64_t cp_seed = 0;
	compare_cmd->add_option("--points", cp_points, "input points file")->required();
	compare_cmd->add_option("--metric", cp_metric, "l2 or linf");
	compare_cmd->add_option("--max-dim", cp_maxdim, "largest compared homology dimension");
	auto* cp_seed_opt = compare_cmd->add_option("--seed", cp_seed, "shift seed");

	// verify lemmas / sizes
	auto* verify_cmd = app.add_subcommand("verify", "verification campaigns");
	verify_cmd->require_subcommand(1);
	auto* lemmas_cmd = verify_cmd->add_subcommand("lemmas", "structure lemma checks");
	int vl_dim = 2;
	index_t vl_trials = 10000;
	std::uint64_t vl_seed = 1;
	lemmas_cmd->add_option("--dim", vl_dim, "ambient dimension")->required();
	lemmas_cmd->add_option("--trials", vl_trials, "cases per check");
	lemmas_cmd->add_option("--seed", vl_seed, "rng seed");

	auto* sizes_cmd = verify_cmd->add_subcommand("sizes", "tower size measurements");
	std::string vs_n, vs_d, vs_seeds = "1,2,3,4,5", vs_out;
	int vs_k = 2;
	sizes_cmd->add_option("--n", vs_n, "comma-separated point counts")->required();
	sizes_cmd->add_option("--d", vs_d, "comma-separated dimensions")->required();
	sizes_cmd->add_option("--k", vs_k, "skeleton cap");
	sizes_cmd->add_option("--seeds", vs_seeds, "comma-separated seeds");
	sizes_cmd->add_option("--out", vs_out, "CSV output file");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : kExitUsage;
	}

	try {
		if (tower_build->parsed()) {
			PointCloud cloud = load_points(tb_points, metric_from_name(tb_metric));
			std::uint64_t seed = resolve_seed(tb_seed_opt->count() > 0, tb_seed);
			ScaleBounds bounds = scale_bounds(cloud);
			LatticeHierarchy h(bounds, cloud.dim, seed);
			Tower tower = build_tower(cloud, h, {tb_maxdim, false});
			{
				std::ofstream out = open_output(tb_out);
				write_events(out, tower.stream);
			}
			if (!tb_stats.empty()) {
				std::ofstream out = open_output(tb_stats);
				write_stats_csv(out, tower.stats, tb_maxdim);
			}
			std::cout << "tower: n=" << cloud.size() << " d=" << cloud.dim
			          << " scales=" << h.s_max() + 1 << " M=" << tower.stats.total_includes
			          << " contractions=" << tower.stats.total_contractions << " -> "
			          << tb_out << '\n';
			return 0;
		}
		if (rips_build->parsed()) {
			PointCloud cloud = load_points(rb_points, metric_from_name(rb_metric));
			FilteredComplex filt = build_rips(cloud, rb_maxdim, rb_alpha, rb_budget);
			std::ofstream out = open_output(rb_out);
			write_filtration(out, filt);
			std::cout << "rips: n=" << cloud.size() << " simplices="
			          << filt.simplices.size() << " -> " << rb_out << '\n';
			return 0;
		}
		if (barcode_cmd->parsed()) {
			if (bc_ev_opt->count() == 0 && bc_fi_opt->count() == 0)
				throw invalid_input("barcode needs --events or --filtration");
			Barcode bc;
			if (bc_ev_opt->count()) {
				std::ifstream in = open_input(bc_events);
				bc = reduce(tower_to_filtration(read_events(in)));
			} else {
				std::ifstream in = open_input(bc_filtration);
				bc = reduce(read_filtration(in));
			}
			std::ofstream out = open_output(bc_out);
			write_barcode(out, bc);
			std::cout << "barcode: " << bc.bars.size() << " bars -> " << bc_out << '\n';
			return 0;
		}
		if (compare_cmd->parsed()) {
			PointCloud cloud = load_points(cp_points, metric_from_name(cp_metric));
			std::uint64_t seed = resolve_seed(cp_seed_opt->count() > 0, cp_seed);
			InterleavingReport report = check_interleaving(cloud, seed, cp_maxdim);
			print_report(std::cout, report);
			return report.pass ? 0 : kExitBound;
		}
		if (lemmas_cmd->parsed()) {
			LemmaReport report = check_lemmas(vl_dim, vl_trials, vl_seed);
			print_report(std::cout, report);
			return report.pass ? 0 : kExitBound;
		}
		if (sizes_cmd->parsed()) {
			std::vector<SizeRow> rows =
			    measure_sizes(split_list<index_t>(vs_n, "--n"), split_list<int>(vs_d, "--d"),
			                  vs_k, split_list<std::uint64_t>(vs_seeds, "--seeds"));
			write_sizes_csv(std::cout, rows);
			if (!vs_out.empty()) {
				std::ofstream out = open_output(vs_out);
				write_sizes_csv(out, rows);
			}
			for (const SizeRow& r : rows)
				if (!r.zero_bound_ok) {
					std::cerr << "error: dim-0 inclusion bound violated at n=" << r.n
					          << " d=" << r.d << " seed=" << r.seed << '\n';
					return kExitBound;
				}
			return 0;
		}
	} catch (const io_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitIo;
	} catch (const budget_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitBudget;
	} catch (const invalid_input& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitInvalid;
	} catch (const std::exception& e) {
		std::cerr << "internal error: " << e.what() << '\n';
		return 70;
	}
	return kExitUsage;
}
