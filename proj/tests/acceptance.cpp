// Acceptance suite: runs every quantitative criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "paracalc/decompose.hpp"
#include "paracalc/elementary.hpp"
#include "paracalc/fft.hpp"
#include "paracalc/report.hpp"
#include "paracalc/seminorms.hpp"

using namespace paracalc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --------------------------------------------------------------------------

void criterion_1_partition() {
    Grid g = Grid::make_default(1);
    FilterBank bank(g);
    double dev = bank.partition_deviation();
    Grid g2 = Grid::make_default(2);
    FilterBank bank2(g2);
    double dev2 = bank2.partition_deviation();
    double worst = std::max(dev, dev2);
    report(1, "partition of unity", worst <= 1e-12,
           "max lattice deviation " + fmt(worst) + " (tol 1e-12)");
}

void criterion_2_and_3_four_way() {
    Grid g = Grid::make_default(1);
    FilterBank bank(g);
    double worst_recon = 0.0, worst_r12 = 0.0, worst_support = 0.0;
    std::vector<cplx> total(g.size()), ref(g.size()), part(g.size());
    for (const auto& spec : default_catalogue(1)) {
        Symbol sym = make_catalogue_symbol(spec, g);
        for (int N : {4, 5}) {
            FourWaySplit split = four_way_split(bank, sym, N);
            double err = 0.0, scale = 0.0, r12 = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                double xi[2];
                g.xi_at(k, xi);
                sym.eval_column(g, xi, ref.data());
                std::fill(total.begin(), total.end(), cplx(0.0, 0.0));
                for (const char* which : {"lf", "I", "II", "R"}) {
                    split.component(which).eval_column(g, xi, part.data());
                    for (std::size_t i = 0; i < g.size(); ++i) total[i] += part[i];
                }
                for (std::size_t i = 0; i < g.size(); ++i) {
                    err = std::max(err, std::abs(total[i] - ref[i]));
                    scale = std::max(scale, std::abs(ref[i]));
                }
                split.R.eval_column(g, xi, total.data());
                split.R1.eval_column(g, xi, ref.data());
                split.R2.eval_column(g, xi, part.data());
                for (std::size_t i = 0; i < g.size(); ++i)
                    r12 = std::max(r12, std::abs(ref[i] + part[i] - total[i]));
            }
            worst_recon = std::max(worst_recon, scale > 0.0 ? err / scale : 0.0);
            worst_r12 = std::max(worst_r12, r12);
            SupportCheckReport sup = spectral_support_check(bank, split);
            worst_support = std::max(worst_support, sup.max_outside_fraction);
        }
    }
    report(2, "four-way reconstruction",
           worst_recon <= 1e-10 && worst_r12 <= 1e-12,
           "rel sup error " + fmt(worst_recon) + " (tol 1e-10), |R1+R2-R| " +
               fmt(worst_r12));
    report(3, "spectral condition on sigma_I", worst_support <= 1e-10,
           "max outside-cone energy fraction " + fmt(worst_support) + " (tol 1e-10)");
}

void criterion_4_elementary() {
    Grid g = Grid::make_default(1);
    FilterBank bank(g);
    Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, g);
    double prev = 1e300, final_err = 1.0;
    bool decreasing = true;
    std::string detail;
    ElementarySymbols last(g, 1.0, 1, -1, bank.p_max(), 64);
    for (int K : {2, 4, 8}) {
        ElementarySymbols es = elementary_decompose(bank, dn, K);
        double rel = es.reconstruction_error(dn).relative();
        decreasing = decreasing && rel < prev;
        prev = rel;
        final_err = rel;
        detail += "K=" + std::to_string(K) + ": " + fmt(rel) + "  ";
        if (K == 8) last = es;
    }
    bool lambda_ok = true;
    for (int kk : {-8, -3, 0, 5}) {
        int k[2] = {kk, 0};
        for (double r : {0.1, 0.39, 2.41, 6.0}) {
            double xi[2] = {r, 0.0};
            if (std::abs(last.lambda_k(k, xi)) != 0.0) lambda_ok = false;
        }
    }
    bool pass = decreasing && final_err <= 1e-2 && lambda_ok;
    if (!pass) detail += "— K=8 sits on the truncation plateau of the separable construction (see README, known limitation) ";
    report(4, "elementary-symbol reconstruction", pass,
           detail + (lambda_ok ? "(lambda_k supported in [2/5,12/5])"
                               : "(lambda_k support violated)"));
}

void criterion_5_operator_oracles() {
    Grid g = Grid::make_default(1);
    FilterBank bank(g);
    Field u = random_band_limited(g, 3.0, 2024);

    Field a = smooth_coefficient(g, 0.3);
    Field fn_out = op_apply_dense(make_function_symbol("a", a), u);
    Field fn_ref = pointwise(a, u);
    double fn_err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        fn_err = std::max(fn_err, std::abs(fn_out.samples()[i] - fn_ref.samples()[i]));
    fn_err /= std::max(1.0, fn_ref.linf());

    Symbol m = make_angxi_multiplier(1.5);
    Field mu_out = op_apply_dense(m, u);
    Field mu_ref = apply_multiplier(u, [](const double* xi) {
        return cplx(std::pow(1.0 + xi[0] * xi[0], 0.75), 0.0);
    });
    double mu_err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        mu_err = std::max(mu_err, std::abs(mu_out.samples()[i] - mu_ref.samples()[i]));
    mu_err /= std::max(1.0, mu_ref.linf());

    // fast elementary apply vs the dense high-frequency reference
    Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, g);
    ElementarySymbols es = elementary_decompose(bank, dn, 8);
    auto recon_err = es.reconstruction_error(dn);
    std::vector<cplx> data(g.size() * g.size());
    std::vector<cplx> col(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double xi[2];
        g.xi_at(k, xi);
        dn.eval_column(g, xi, col.data());
        double hf = 1.0 - psi_profile(g.xi_norm_at(k));
        for (std::size_t i = 0; i < g.size(); ++i) data[k * g.size() + i] = hf * col[i];
    }
    Symbol target = make_grid_sampled("hf_dn", 1.0, kInfReg, false, false, g, std::move(data));
    Field fast = op_apply_elementary(es, u);
    Field dense = op_apply_dense(target, u);
    double diff = (fast - dense).l2();
    double bound = recon_err.absolute * weighted_spectral_l1(u, dn.order());

    report(5, "operator oracles",
           fn_err <= 1e-12 && mu_err <= 1e-12 && diff <= bound,
           "function " + fmt(fn_err) + ", multiplier " + fmt(mu_err) +
               " (tol 1e-12); fast-dense L2 diff " + fmt(diff) + " <= bound " + fmt(bound));
}

void criterion_6_bracket_identities() {
    Grid g(1, 512, 32.0 * kPi);
    Field u = random_band_limited(g, 2.5, 7);
    Symbol m1 = make_angxi_multiplier(1.0);
    Symbol m2 = make_angxi_multiplier(0.5);
    Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, g);

    // {.,.}_0 identically zero
    Symbol p0 = poisson_n(g, m1, dn, 0);
    double xi[2] = {2.0, 0.0};
    double z0 = 0.0;
    for (const auto& v : p0.column(g, xi)) z0 = std::max(z0, std::abs(v));

    // antisymmetry (exact)
    Symbol pab = poisson_n(g, m1, dn, 1);
    Symbol pba = poisson_n(g, dn, m1, 1);
    double anti = 0.0;
    std::vector<cplx> ca(g.size()), cb(g.size());
    for (std::size_t k = 0; k < g.size(); k += 3) {
        double q[2];
        g.xi_at(k, q);
        pab.eval_column(g, q, ca.data());
        pba.eval_column(g, q, cb.data());
        for (std::size_t i = 0; i < g.size(); ++i)
            anti = std::max(anti, std::abs(ca[i] + cb[i]));
    }

    double comm = commutator_apply(m1, m2, u).l2() / u.l2();
    report(6, "bracket identities", z0 == 0.0 && anti <= 1e-12 && comm <= 1e-12,
           "poisson_0 sup " + fmt(z0) + ", antisymmetry defect " + fmt(anti) +
               ", multiplier commutator " + fmt(comm) + " (tol 1e-12)");
}

void criterion_7_worked_example() {
    Grid g(2, 64, 8.0 * kPi);
    const double m = 1.5;
    std::vector<cplx> av(g.size());
    double x[2];
    for (std::size_t i = 0; i < av.size(); ++i) {
        g.x_at(i, x);
        av[i] = 0.05 * std::sin(x[0]) + 0.025 * std::cos(x[1]);
    }
    Field a(g, std::move(av));
    Symbol bracket = poisson_n(g, make_angxi_multiplier(m), dn_symbol(a).as_symbol(), 1);

    Field a1 = spectral_derivative(a, MultiIndex::axis(0, 1));
    Field a2 = spectral_derivative(a, MultiIndex::axis(1, 1));
    Field a11 = spectral_derivative(a, MultiIndex::axis(0, 2));
    Field a22 = spectral_derivative(a, MultiIndex::axis(1, 2));
    MultiIndex mixed;
    mixed.b[0] = 1;
    mixed.b[1] = 1;
    Field a12 = spectral_derivative(a, mixed);

    double worst = 0.0;
    cplx mean(0.0, 0.0);
    int count = 0;
    std::vector<cplx> col(g.size());
    for (std::size_t k = 0; k < g.size(); k += 29) {
        double xi[2];
        g.xi_at(k, xi);
        double r = g.xi_norm_at(k);
        if (r < 0.5 || r > g.xi_guard()) continue;
        bracket.eval_column(g, xi, col.data());
        for (std::size_t i = 0; i < g.size(); i += 113) {
            double g1 = a1.samples()[i].real(), g2 = a2.samples()[i].real();
            double xi2 = xi[0] * xi[0] + xi[1] * xi[1];
            double gdotxi = g1 * xi[0] + g2 * xi[1];
            double d2a_grad_xi = a11.samples()[i].real() * g1 * xi[0] +
                                 a12.samples()[i].real() * (g1 * xi[1] + g2 * xi[0]) +
                                 a22.samples()[i].real() * g2 * xi[1];
            double d2a_xi_xi = a11.samples()[i].real() * xi[0] * xi[0] +
                               2.0 * a12.samples()[i].real() * xi[0] * xi[1] +
                               a22.samples()[i].real() * xi[1] * xi[1];
            double sigma = std::sqrt((1.0 + g1 * g1 + g2 * g2) * xi2 - gdotxi * gdotxi);
            double tau = m * std::pow(1.0 + xi2, 0.5 * (m - 2.0)) *
                         (xi2 * d2a_grad_xi - gdotxi * d2a_xi_xi) / sigma;
            if (std::abs(tau) < 1e-6) continue;
            cplx ratio = col[i] / tau;
            worst = std::max(worst, std::abs(ratio - cplx(0.0, -1.0)));
            mean += ratio;
            ++count;
        }
    }
    mean /= static_cast<double>(std::max(count, 1));
    std::ostringstream detail;
    detail << "max |ratio - (-i)| = " << fmt(worst) << " over " << count
           << " samples (tol 1e-8); recorded constant " << mean.real() << (mean.imag() < 0 ? " - " : " + ")
           << std::abs(mean.imag()) << "i";
    report(7, "worked-example bracket vs closed form", count > 100 && worst <= 1e-8,
           detail.str());
}

void criterion_8_remainder_order() {
    bool all = true;
    std::string detail;
    for (double m1 : {1.0, 1.5, 2.5}) {
        for (int n : {0, 1, 2}) {
            if (!(m1 > n)) continue;
            ExperimentConfig cfg;
            cfg.theorem = "th-III3-order";
            cfg.id = "order";
            cfg.n_pts = 2048;
            cfg.length = 8.0 * kPi;
            cfg.sigma1 = {.id = "angxi", .m = m1};
            cfg.sigma2 = {.id = "func", .amplitude = 0.3};
            cfg.n = n;
            cfg.j_lo = 3;
            cfg.j_hi = 7;
            EstimateReport rep = run_experiment(cfg);
            bool ok = rep.slope && rep.slope->deviation <= 0.3;
            all = all && ok;
            std::ostringstream o;
            o << "(m1=" << m1 << ",n=" << n << "): " << (rep.slope ? rep.slope->value : 0.0)
              << " vs " << (m1 - n - 1.0) << "  ";
            detail += o.str();
        }
    }
    report(8, "remainder order slopes", all, detail + "(tol 0.3)");
}

void criterion_9_action_stability() {
    ExperimentConfig cfg;
    cfg.theorem = "th-II1";
    cfg.variant = "low";
    cfg.id = "action-dn";
    cfg.sigma1 = {.id = "dn", .amplitude = 0.1};
    cfg.s = 0.0;
    cfg.t0 = 1.0;
    cfg.probes = 32;
    cfg.seed = 11;

    SweepReport sweep = resolution_sweep(cfg, {512, 1024, 2048});
    double res_stab = sweep.stability;

    cfg.n_pts = 1024;
    double c32 = run_experiment(cfg).c_emp;
    cfg.probes = 64;
    double c64 = run_experiment(cfg).c_emp;
    double probe_stab = std::max(c64, c32) / std::min(c64, c32);

    report(9, "action-estimate stability", res_stab <= 1.5 && probe_stab <= 1.2,
           "resolution stability " + fmt(res_stab) + " (tol 1.5), probe stability " +
               fmt(probe_stab) + " (tol 1.2)");
}

void criterion_10_tame_scaling() {
    ExperimentConfig cfg;
    cfg.theorem = "tame-scaling";
    cfg.id = "tame";
    cfg.n_pts = 1024;
    cfg.sigma1 = {.id = "growth_angxi", .m = 1.0, .amplitude = 0.5};
    cfg.s = 1.0;
    cfg.t0 = 1.0;
    cfg.probes = 16;
    EstimateReport rep = run_experiment(cfg);
    report(10, "tame-estimate scaling", rep.pass,
           "tame band " + fmt(rep.terms.at("tame_band")) + " (tol 3), naive growth " +
               fmt(rep.terms.at("naive_growth")) + " (>= 2)");
}

void criterion_11_hypothesis_gates() {
    auto run_cli = [](const std::string& args) {
        std::string cmd = std::string(PARACALC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    std::string base = " --grid d=1,n=256,L=8pi --probes 4";
    int a = run_cli("experiment th-III3 --sigma1 angxi:0.5 --m1 0.5 --sigma2 func:0.3 --n 1" +
                    base);
    int b = run_cli(
        "experiment th-IV1 --variant iii --sigma1 angxi:-0.5 --m1 -0.5 --sigma2 func:0.3 "
        "--s 0.5" + base);
    int c = run_cli("experiment th-III1 --variant i --sigma1 angxi:1 --m1 1 "
                    "--sigma2 func:0.3 --s 9 --s0 3" + base);
    report(11, "hypothesis gates (exit code 4)", a == 4 && b == 4 && c == 4,
           "m1<=n: " + std::to_string(a) + ", IV1.iii m1<=0: " + std::to_string(b) +
               ", index window: " + std::to_string(c));
}

void criterion_12_determinism() {
    auto run_suite = [&]() {
        std::string all;
        std::vector<ExperimentConfig> suite;
        {
            ExperimentConfig c;
            c.theorem = "th-II1";
            c.variant = "low";
            c.id = "suite-action";
            c.n_pts = 512;
            c.sigma1 = {.id = "dn", .amplitude = 0.1};
            c.s = 0.0;
            c.t0 = 1.0;
            c.probes = 8;
            c.seed = 5;
            suite.push_back(c);
        }
        {
            ExperimentConfig c;
            c.theorem = "th-III3";
            c.variant = "i";
            c.id = "suite-kp";
            c.n_pts = 512;
            c.length = 8.0 * kPi;
            c.sigma1 = {.id = "angxi", .m = 1.5};
            c.sigma2 = {.id = "func", .amplitude = 0.3};
            c.s = 1.0;
            c.n = 0;
            c.probes = 8;
            c.seed = 5;
            suite.push_back(c);
        }
        {
            ExperimentConfig c;
            c.theorem = "th-IV1bis";
            c.id = "suite-ccm";
            c.n_pts = 512;
            c.length = 8.0 * kPi;
            c.sigma1 = {.id = "coeff_angxi", .m = 0.5, .amplitude = 0.2};
            c.sigma2 = {.id = "rough", .amplitude = 0.2, .s0 = 3.0, .seed = 7};
            c.s = 0.25;
            c.t0 = 1.0;
            c.n = 0;
            c.probes = 8;
            c.seed = 5;
            suite.push_back(c);
        }
        {
            ExperimentConfig c;
            c.theorem = "th-III3-order";
            c.id = "suite-order";
            c.n_pts = 1024;
            c.length = 8.0 * kPi;
            c.sigma1 = {.id = "angxi", .m = 2.5};
            c.sigma2 = {.id = "func", .amplitude = 0.3};
            c.n = 1;
            c.j_lo = 3;
            c.j_hi = 6;
            suite.push_back(c);
        }
        for (const auto& c : suite) all += report_to_json(run_experiment(c)).dump(2) + "\n";
        return all;
    };
    std::string first = run_suite();
    std::string second = run_suite();
    report(12, "determinism of the experiment suite", !first.empty() && first == second,
           first == second ? "two runs byte-identical (" +
                                 std::to_string(first.size()) + " bytes of JSON)"
                           : "runs differ");
}

}  // namespace

int main() {
    criterion_1_partition();
    criterion_2_and_3_four_way();
    criterion_4_elementary();
    criterion_5_operator_oracles();
    criterion_6_bracket_identities();
    criterion_7_worked_example();
    criterion_8_remainder_order();
    criterion_9_action_stability();
    criterion_10_tame_scaling();
    criterion_11_hypothesis_gates();
    criterion_12_determinism();
    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
