// Batch front end: grids, symbol decompositions, operator application and
// the estimate experiments, with JSON/CSV reports.
//
// Exit codes: 0 pass, 2 configuration error, 3 numerical-contract failure,
// 4 hypothesis violation.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "paracalc/config.hpp"
#include "paracalc/decompose.hpp"
#include "paracalc/elementary.hpp"
#include "paracalc/operators.hpp"
#include "paracalc/seminorms.hpp"

namespace fs = std::filesystem;
using namespace paracalc;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 2;
constexpr int kExitContract = 3;
constexpr int kExitHypothesis = 4;

struct CommonArgs {
    std::string config_path;
    std::string grid_flag;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file (schema paracalc-config-v1)");
    cmd->add_option("--grid", args.grid_flag, "grid spec, e.g. d=1,n=1024,L=32pi");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_flag("--quiet", args.quiet, "suppress console detail");
}

Grid grid_from_args(const CommonArgs& args) {
    if (!args.grid_flag.empty()) {
        GridFlag f = parse_grid_flag(args.grid_flag);
        return Grid(f.d, f.n, f.L);
    }
    if (!args.config_path.empty()) return load_config(args.config_path).grid();
    return Grid::make_default(1);
}

void ensure_out_dir(const CommonArgs& args) {
    if (args.out_dir != "." && !fs::exists(args.out_dir)) fs::create_directories(args.out_dir);
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    return (fs::path(args.out_dir) / name).string();
}

SymbolSpec spec_from_block(const json& j, const std::string& context) {
    validate_keys(j, {"id", "m", "amplitude", "s0", "seed"}, context);
    SymbolSpec s;
    s.id = j.at("id").get<std::string>();
    s.m = j.value("m", s.m);
    s.amplitude = j.value("amplitude", s.amplitude);
    s.s0 = j.value("s0", s.s0);
    s.seed = j.value("seed", s.seed);
    return s;
}

int cmd_partition_check(const CommonArgs& args) {
    Grid grid = grid_from_args(args);
    FilterBank bank(grid);
    double dev = bank.partition_deviation();
    ensure_out_dir(args);
    json j;
    j["schema"] = "paracalc-partition-v1";
    j["grid"] = {{"d", grid.dim()}, {"n", grid.n()}, {"L", grid.length()}};
    j["p_max"] = bank.p_max();
    j["max_deviation"] = dev;
    j["pass"] = dev <= 1e-12;
    write_text_atomic(out_path(args, "partition_check.json"), j.dump(2) + "\n");
    if (!args.quiet)
        std::cout << "partition-of-unity max deviation " << dev
                  << (dev <= 1e-12 ? "  [pass]" : "  [FAIL]") << "\n";
    return dev <= 1e-12 ? kExitPass : kExitContract;
}

int cmd_decompose(const CommonArgs& args) {
    if (args.config_path.empty()) throw ConfigError("decompose requires --config");
    RunConfig cfg = load_config(args.config_path);
    const json& block = cfg.block("decompose");
    validate_keys(block, {"symbol", "N", "K", "k_sweep", "archive"}, "decompose");
    Grid grid = grid_from_args(args);
    FilterBank bank(grid);
    SymbolSpec spec = spec_from_block(block.at("symbol"), "decompose.symbol");
    Symbol sym = make_catalogue_symbol(spec, grid);
    int N = block.value("N", 4);

    FourWaySplit split = four_way_split(bank, sym, N);

    // Reconstruction error (relative sup, <xi>^{-m}-free: plain sup ratio).
    double err = 0.0, scale = 0.0;
    {
        std::vector<cplx> total(grid.size()), ref(grid.size());
        std::vector<cplx> part(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            double xi[2];
            grid.xi_at(k, xi);
            sym.eval_column(grid, xi, ref.data());
            std::fill(total.begin(), total.end(), cplx(0.0, 0.0));
            for (const char* which : {"lf", "I", "II", "R"}) {
                split.component(which).eval_column(grid, xi, part.data());
                for (std::size_t i = 0; i < grid.size(); ++i) total[i] += part[i];
            }
            for (std::size_t i = 0; i < grid.size(); ++i) {
                err = std::max(err, std::abs(total[i] - ref[i]));
                scale = std::max(scale, std::abs(ref[i]));
            }
        }
    }
    double rel = scale > 0.0 ? err / scale : 0.0;
    SupportCheckReport support = spectral_support_check(bank, split);

    ensure_out_dir(args);
    json j;
    j["schema"] = "paracalc-decompose-v1";
    j["symbol"] = spec.id;
    j["N"] = N;
    j["reconstruction_rel_sup_error"] = rel;
    j["support_max_outside_fraction"] = support.max_outside_fraction;
    j["support_pass"] = support.pass;
    json comps = json::object();
    for (const char* which : {"lf", "I", "II", "R", "R1", "R2"}) {
        const Symbol& c = split.component(which);
        comps[which] = {{"N_{2,2}", seminorm_N(grid, c, std::min(reg_k(grid.dim()), 2), 2.0)},
                        {"M_d", seminorm_M(grid, c, grid.dim(), 0)}};
    }
    j["component_seminorms"] = comps;

    if (block.contains("K") || block.contains("k_sweep")) {
        std::vector<int> ks;
        if (block.contains("k_sweep"))
            for (const auto& v : block.at("k_sweep")) ks.push_back(v.get<int>());
        else
            ks.push_back(block.at("K").get<int>());
        json sweep = json::array();
        for (int K : ks) {
            ElementarySymbols es = elementary_decompose(bank, sym, K);
            auto e = es.reconstruction_error(sym);
            sweep.push_back({{"K", K}, {"rel_sup_error", e.relative()}});
            if (block.value("archive", false) && K == ks.back())
                write_elementary_archive(out_path(args, "elementary.pces"), es);
        }
        j["elementary_sweep"] = sweep;
    }
    write_text_atomic(out_path(args, "decompose.json"), j.dump(2) + "\n");
    bool pass = rel <= 1e-10 && support.pass;
    if (!args.quiet)
        std::cout << "decompose " << spec.id << ": recon rel err " << rel
                  << ", support fraction " << support.max_outside_fraction
                  << (pass ? "  [pass]" : "  [FAIL]") << "\n";
    return pass ? kExitPass : kExitContract;
}

int cmd_seminorms(const CommonArgs& args) {
    if (args.config_path.empty()) throw ConfigError("seminorms requires --config");
    RunConfig cfg = load_config(args.config_path);
    const json& block = cfg.block("seminorms");
    validate_keys(block, {"symbol", "s"}, "seminorms");
    Grid grid = grid_from_args(args);
    SymbolSpec spec = spec_from_block(block.at("symbol"), "seminorms.symbol");
    Symbol sym = make_catalogue_symbol(spec, grid);
    double s = block.value("s", 2.0);
    SeminormReport rep = seminorm_report(grid, sym, s);
    ensure_out_dir(args);
    json j;
    j["schema"] = "paracalc-seminorms-v1";
    j["symbol"] = rep.symbol;
    j["order"] = rep.order;
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"family", e.family}, {"k", e.k}, {"l", e.l}, {"s", e.s},
                           {"value", e.value}});
    j["entries"] = entries;
    write_text_atomic(out_path(args, "seminorms.json"), j.dump(2) + "\n");
    if (!args.quiet)
        for (const auto& e : rep.entries)
            std::cout << e.family << "[k=" << e.k << ",s=" << e.s << "] = " << e.value << "\n";
    return kExitPass;
}

int cmd_apply(const CommonArgs& args, const std::string& mode, int K, bool stats) {
    if (args.config_path.empty() && args.grid_flag.empty())
        throw ConfigError("apply requires --config or --grid");
    Grid grid = grid_from_args(args);
    FilterBank bank(grid);
    SymbolSpec spec{.id = "dn", .amplitude = 0.1};
    if (!args.config_path.empty()) {
        RunConfig cfg = load_config(args.config_path);
        if (cfg.has("apply")) {
            const json& block = cfg.block("apply");
            validate_keys(block, {"symbol", "mode", "K"}, "apply");
            if (block.contains("symbol"))
                spec = spec_from_block(block.at("symbol"), "apply.symbol");
        }
    }
    Symbol sym = make_catalogue_symbol(spec, grid);
    Field u = random_band_limited(grid, sym.order() + 0.5 * grid.dim() + 1.5, args.seed);

    Field out(grid);
    ApplyPlan plan = ApplyPlan::dense(grid);
    if (mode == "dense") {
        out = op_apply_dense(sym, u);
    } else if (mode == "elementary") {
        ElementarySymbols es = elementary_decompose(bank, sym, K);
        out = op_apply_elementary(es, u);
        plan = ApplyPlan::elementary(grid, K);
    } else {
        throw ConfigError("apply mode must be dense or elementary");
    }
    ensure_out_dir(args);
    json j;
    j["schema"] = "paracalc-apply-v1";
    j["symbol"] = spec.id;
    j["mode"] = mode;
    j["input_l2"] = u.l2();
    j["output_l2"] = out.l2();
    if (stats) j["flops_estimate"] = plan.flops;
    write_text_atomic(out_path(args, "apply.json"), j.dump(2) + "\n");
    if (!args.quiet) {
        std::cout << "|u|_2 = " << u.l2() << "  |Op(sigma)u|_2 = " << out.l2() << "\n";
        if (stats) std::cout << "estimated flops: " << plan.flops << "\n";
    }
    return kExitPass;
}

int cmd_commutator(const CommonArgs& args, const std::string& s1_arg,
                   const std::string& s2_arg) {
    Grid grid = grid_from_args(args);
    Symbol s1 = make_catalogue_symbol(parse_symbol_arg(s1_arg), grid);
    Symbol s2 = make_catalogue_symbol(parse_symbol_arg(s2_arg), grid);
    Field u = random_band_limited(grid, s1.order() + s2.order() + 2.0, args.seed);
    Field c = commutator_apply(s1, s2, u);
    ensure_out_dir(args);
    json j;
    j["schema"] = "paracalc-commutator-v1";
    j["sigma1"] = s1.name();
    j["sigma2"] = s2.name();
    j["commutator_l2"] = c.l2();
    j["input_l2"] = u.l2();
    write_text_atomic(out_path(args, "commutator.json"), j.dump(2) + "\n");
    if (!args.quiet) std::cout << "|[Op(s1),Op(s2)]u|_2 = " << c.l2() << "\n";
    return kExitPass;
}

ExperimentConfig experiment_config_from_args(
    const CommonArgs& args, const std::string& tag, const std::string& variant,
    const std::string& sigma1, const std::string& sigma2, double m1, double s, double t0,
    double s0, int n, int probes) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        RunConfig rc = load_config(args.config_path);
        if (rc.has("experiments")) {
            for (const auto& e : rc.block("experiments")) {
                ExperimentConfig c = config_from_json(e);
                if (c.theorem == tag) return c;
            }
        }
    }
    cfg.theorem = tag;
    cfg.id = tag + (variant.empty() ? "" : "-" + variant);
    cfg.variant = variant;
    if (!args.grid_flag.empty()) {
        GridFlag f = parse_grid_flag(args.grid_flag);
        cfg.d = f.d;
        cfg.n_pts = f.n;
        cfg.length = f.L;
    }
    if (!sigma1.empty()) cfg.sigma1 = parse_symbol_arg(sigma1);
    if (!sigma2.empty()) cfg.sigma2 = parse_symbol_arg(sigma2);
    if (m1 != 0.0) cfg.sigma1.m = m1;
    cfg.s = s;
    cfg.t0 = t0 > 0.0 ? t0 : (cfg.d == 2 ? 1.5 : 1.0);
    cfg.s0 = s0;
    cfg.n = n;
    cfg.probes = probes;
    cfg.seed = args.seed;
    if (tag == "th-III3-order") {
        cfg.n_pts = std::max(cfg.n_pts, 2048);
        cfg.length = 8.0 * kPi;
    }
    return cfg;
}

int emit_experiment(const CommonArgs& args, const EstimateReport& rep) {
    ensure_out_dir(args);
    std::string base = rep.id;
    for (auto& c : base)
        if (c == '/' || c == ' ') c = '_';
    write_report_json(out_path(args, base + ".json"), rep);
    write_report_csv(out_path(args, base + ".csv"), rep);
    write_plot_data(out_path(args, base + ".dat"), rep);
    if (!args.quiet) {
        std::cout << rep.theorem << (rep.config.variant.empty() ? "" : "." + rep.config.variant)
                  << ": C_emp = " << rep.c_emp;
        if (rep.slope)
            std::cout << ", slope = " << rep.slope->value << " (expected "
                      << rep.slope->expected << ")";
        if (rep.degenerate_zero) std::cout << "  [degenerate-zero]";
        std::cout << (rep.pass ? "  [pass]" : "  [FAIL]") << "\n";
    }
    return rep.pass ? kExitPass : kExitContract;
}

int cmd_sweep(const CommonArgs& args) {
    if (args.config_path.empty()) throw ConfigError("sweep requires --config");
    RunConfig rc = load_config(args.config_path);
    const json& block = rc.block("sweep");
    validate_keys(block, {"experiment", "n_pts"}, "sweep");
    ExperimentConfig cfg = config_from_json(block.at("experiment"));
    std::vector<int> ns;
    for (const auto& v : block.at("n_pts")) ns.push_back(v.get<int>());
    SweepReport sweep = resolution_sweep(cfg, ns);
    ensure_out_dir(args);
    write_text_atomic(out_path(args, cfg.id + "_sweep.json"),
                      sweep_to_json(sweep).dump(2) + "\n");
    if (!args.quiet) std::cout << "sweep stability (max/min C_emp) = " << sweep.stability << "\n";
    bool pass = true;
    for (const auto& r : sweep.reports) pass = pass && r.pass;
    return pass ? kExitPass : kExitContract;
}

int cmd_verify(const CommonArgs& args, const std::vector<std::string>& paths) {
    bool all_ok = true;
    for (const auto& p : paths) {
        std::string msg = verify_report_file(p);
        if (!msg.empty()) {
            all_ok = false;
            std::cerr << p << ": " << msg << "\n";
        } else if (!args.quiet) {
            std::cout << p << ": valid\n";
        }
    }
    return all_ok ? kExitPass : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical paradifferential-operator calculus lab"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* partition = app.add_subcommand("partition-check", "dyadic partition-of-unity check");
    CommonArgs pa = args;
    add_common(partition, pa);

    auto* decompose = app.add_subcommand("decompose", "four-way and elementary decompositions");
    CommonArgs da = args;
    add_common(decompose, da);

    auto* seminorms = app.add_subcommand("seminorms", "symbol seminorm panel");
    CommonArgs sa = args;
    add_common(seminorms, sa);

    auto* apply = app.add_subcommand("apply", "apply Op(sigma) to a probe field");
    CommonArgs aa = args;
    add_common(apply, aa);
    std::string apply_mode = "dense";
    int apply_K = 8;
    bool apply_stats = false;
    apply->add_option("--mode", apply_mode, "dense | elementary");
    apply->add_option("--K", apply_K, "elementary truncation radius");
    apply->add_flag("--stats", apply_stats, "emit cost estimates");

    auto* comm = app.add_subcommand("commutator", "commutator of two catalogue symbols");
    CommonArgs ca = args;
    add_common(comm, ca);
    std::string comm_s1 = "angxi:1", comm_s2 = "func:0.3";
    comm->add_option("--sigma1", comm_s1, "first symbol (id[:param])");
    comm->add_option("--sigma2", comm_s2, "second symbol (id[:param])");

    auto* exp = app.add_subcommand("experiment", "run a theorem experiment");
    CommonArgs ea = args;
    add_common(exp, ea);
    std::string exp_tag, exp_variant, exp_s1, exp_s2;
    double exp_m1 = 0.0, exp_s = 0.0, exp_t0 = 0.0, exp_s0 = 3.0;
    int exp_n = 0, exp_probes = 32;
    exp->add_option("tag", exp_tag, "theorem tag (th-II1, th-III3, th-IV1, ...)")->required();
    exp->add_option("--variant", exp_variant, "theorem variant");
    exp->add_option("--sigma1", exp_s1, "first symbol");
    exp->add_option("--sigma2", exp_s2, "second symbol");
    exp->add_option("--m1", exp_m1, "order of sigma1");
    exp->add_option("--s", exp_s, "Sobolev index s");
    exp->add_option("--t0", exp_t0, "index t0 (default d/2 + 1/2 rounded)");
    exp->add_option("--s0", exp_s0, "index s0");
    exp->add_option("--n", exp_n, "expansion order n");
    exp->add_option("--probes", exp_probes, "random probe count");

    auto* sweep = app.add_subcommand("sweep", "resolution sweep of an experiment");
    CommonArgs wa = args;
    add_common(sweep, wa);

    auto* verify = app.add_subcommand("verify", "re-validate report files");
    CommonArgs va = args;
    add_common(verify, va);
    std::vector<std::string> verify_paths;
    verify->add_option("files", verify_paths, "report JSON files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (partition->parsed()) return cmd_partition_check(pa);
        if (decompose->parsed()) return cmd_decompose(da);
        if (seminorms->parsed()) return cmd_seminorms(sa);
        if (apply->parsed()) return cmd_apply(aa, apply_mode, apply_K, apply_stats);
        if (comm->parsed()) return cmd_commutator(ca, comm_s1, comm_s2);
        if (exp->parsed()) {
            ExperimentConfig cfg = experiment_config_from_args(
                ea, exp_tag, exp_variant, exp_s1, exp_s2, exp_m1, exp_s, exp_t0, exp_s0,
                exp_n, exp_probes);
            return emit_experiment(ea, run_experiment(cfg));
        }
        if (sweep->parsed()) return cmd_sweep(wa);
        if (verify->parsed()) return cmd_verify(va, verify_paths);
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.hypothesis() << "\n";
        return kExitHypothesis;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
