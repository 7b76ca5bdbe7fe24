#include "paracalc/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "paracalc/seminorms.hpp"

namespace paracalc {

namespace {

void require(bool cond, const std::string& hypothesis) {
    if (!cond) throw HypothesisError(hypothesis);
}

double zyg0(const FilterBank& bank, const Field& u) { return zygmund_norm(bank, u, 0.0); }

struct Lab {
    Grid grid;
    FilterBank bank;
    explicit Lab(const ExperimentConfig& cfg)
        : grid(cfg.d, cfg.n_pts, cfg.length), bank(grid) {}
};

EstimateReport base_report(const ExperimentConfig& cfg) {
    EstimateReport rep;
    rep.id = cfg.id;
    rep.theorem = cfg.theorem;
    rep.config = cfg;
    return rep;
}

// Max-ratio loop shared by the probe experiments. rhs(u) returns the
// denominator; zero denominators are skipped.
template <typename Num, typename Den>
void run_probes(EstimateReport& rep, const ProbeFamily& fam, const Num& num_fn,
                const Den& den_fn) {
    rep.degenerate_zero = true;
    double scale = 0.0;
    for (std::size_t i = 0; i < fam.fields.size(); ++i) {
        double den = den_fn(fam.fields[i]);
        if (den <= 0.0 || !std::isfinite(den)) continue;
        double num = num_fn(fam.fields[i]);
        if (!std::isfinite(num)) {
            rep.pass = false;
            rep.note = "non-finite ratio";
            continue;
        }
        rep.rows.push_back({static_cast<int>(i), fam.labels[i], num, den, num / den});
        rep.c_emp = std::max(rep.c_emp, num / den);
        scale = std::max(scale, den);
        if (num > 1e-13 * den) rep.degenerate_zero = false;
    }
    if (rep.rows.empty()) {
        rep.pass = false;
        rep.note = "no usable probes";
    }
}

}  // namespace

SlopeFit order_probe(const std::function<Field(const Field&)>& residual_fn,
                     const WavePacketFamily& packets, double expected, int trim_lo,
                     int trim_hi) {
    const int count = static_cast<int>(packets.u.size());
    if (count < 4) throw InputError("order_probe: need at least 4 packets");
    // Shrink the requested trims so at least 4 points remain in the window.
    while (trim_lo + trim_hi > count - 4) {
        if (trim_lo >= trim_hi && trim_lo > 0) --trim_lo;
        else if (trim_hi > 0) --trim_hi;
        else break;
    }

    std::vector<double> xs, ys;
    bool degenerate = true;
    for (int i = trim_lo; i < count - trim_hi; ++i) {
        double r = residual_fn(packets.u[i]).l2();
        if (r > 1e-14) degenerate = false;
        xs.push_back(static_cast<double>(packets.j[i]));
        ys.push_back(std::log2(std::max(r, 1e-300)));
    }

    SlopeFit fit;
    fit.points = static_cast<int>(xs.size());
    fit.expected = expected;
    if (degenerate) {
        fit.value = 0.0;
        fit.stderr_ = 0.0;
        fit.deviation = std::abs(expected);
        return fit;
    }
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    fit.value = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.value * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (intercept + fit.value * xs[i]);
        ss += e * e;
    }
    fit.stderr_ = xs.size() > 2 ? std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n)) : 0.0;
    fit.deviation = std::abs(fit.value - expected);
    return fit;
}

// ---------------------------------------------------------------------------
// Action experiments (operator action on Sobolev spaces)
// ---------------------------------------------------------------------------

EstimateReport action_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;
    const int d = g.dim();
    require(cfg.t0 > 0.5 * d, "t0 > d/2");
    require(cfg.t0 <= cfg.s0, "t0 <= s0");

    Symbol sym = make_catalogue_symbol(cfg.sigma1, g);
    const double m = sym.order();
    const int rk = reg_k(d);
    const std::string& v = cfg.variant;

    std::optional<CompositeSymbol> comp;
    double c_sigma = 0.0, v_inf = 0.0;
    if (v.rfind("composite", 0) == 0) {
        comp = make_catalogue_composite(cfg.sigma1, g);
        if (!comp) throw ConfigError("variant '" + v + "' needs a composite symbol");
        v_inf = comp->inner_sup();
        c_sigma = composite_class_constant(*comp, v_inf);
        rep.terms["C_Sigma"] = c_sigma;
        rep.terms["v_inf"] = v_inf;
    }

    double s_in = cfg.s + m;
    ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
    auto num_fn = [&](const Field& u) { return op_apply_dense(sym, u).sobolev(cfg.s); };

    if (v == "low") {
        require(-cfg.t0 < cfg.s && cfg.s < cfg.t0, "-t0 < s < t0");
        double n0 = seminorm_low_n(g, sym, 0, cfg.t0);
        double nn = seminorm_N(g, sym, rk, cfg.t0);
        rep.terms["n_{0,t0}"] = n0;
        rep.terms["N_{2[d/2]+2,t0}"] = nn;
        run_probes(rep, fam, num_fn,
                   [&](const Field& u) { return (n0 + nn) * u.sobolev(cfg.s + m); });
    } else if (v == "high") {
        require(cfg.t0 <= cfg.s && cfg.s <= cfg.s0, "t0 <= s <= s0");
        double n0 = seminorm_low_n(g, sym, 0, cfg.s);
        double nn = seminorm_N(g, sym, rk, cfg.s);
        double md = seminorm_M(g, sym, d, 0);
        rep.terms["n_{0,s}"] = n0;
        rep.terms["N_{2[d/2]+2,s}"] = nn;
        rep.terms["M_d"] = md;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return (n0 + nn) * u.sobolev(m + cfg.t0) + md * u.sobolev(cfg.s + m);
        });
    } else if (v == "tame") {
        require(m > 0.0, "m > 0");
        require(0.0 < cfg.s && cfg.s <= cfg.s0, "0 < s <= s0");
        require(sym.k_reg() >= rk, "sigma 2[d/2]+2-regular at the origin");
        double nn = seminorm_low_n(g, sym, rk, cfg.s);
        double nN = seminorm_N(g, sym, rk, cfg.s + m);
        double md = seminorm_M(g, sym, d, 0);
        rep.terms["n_{2[d/2]+2,s}"] = nn;
        rep.terms["N_{2[d/2]+2,s+m}"] = nN;
        rep.terms["M_d"] = md;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return (nn + nN) * zyg0(lab.bank, u) + md * u.sobolev(cfg.s + m);
        });
    } else if (v == "composite-low") {
        require(-cfg.t0 < cfg.s && cfg.s < cfg.t0, "-t0 < s < t0");
        double vh = comp->inner_sobolev(cfg.t0);
        rep.terms["v_{H^t0}"] = vh;
        run_probes(rep, fam, num_fn,
                   [&](const Field& u) { return c_sigma * vh * u.sobolev(cfg.s + m); });
    } else if (v == "composite-high") {
        require(cfg.t0 <= cfg.s && cfg.s <= cfg.s0, "t0 <= s <= s0");
        double vh = comp->inner_sobolev(cfg.s);
        rep.terms["v_{H^s}"] = vh;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return c_sigma * (vh * u.sobolev(m + cfg.t0) + u.sobolev(cfg.s + m));
        });
    } else if (v == "composite-tame") {
        require(m > 0.0, "m > 0");
        require(0.0 < cfg.s && cfg.s <= cfg.s0, "0 < s <= s0");
        require(comp->outer().k_reg >= rk, "Sigma 2[d/2]+2-regular at the origin");
        double vh = comp->inner_sobolev(cfg.s + m);
        rep.terms["v_{H^{s+m}}"] = vh;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return c_sigma * (vh * zyg0(lab.bank, u) + u.sobolev(cfg.s + m));
        });
    } else {
        throw ConfigError("unknown action variant: " + v);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Kato-Ponce style commutator remainders (multiplier vs limited regularity)
// ---------------------------------------------------------------------------

namespace {

// |sigma2|_{W^{k,inf}} for function symbols, via the coefficient field.
double function_wkinf(const Grid& g, const Symbol& fn_sym, int k) {
    const double origin[2] = {0.0, 0.0};
    Field a(g, fn_sym.column(g, origin));
    double best = 0.0;
    for (const auto& alpha : multi_indices_upto(g.dim(), k))
        best = std::max(best, spectral_derivative(a, alpha).linf());
    return best;
}

double function_grad_inf(const Grid& g, const Symbol& fn_sym, int l) {
    const double origin[2] = {0.0, 0.0};
    Field a(g, fn_sym.column(g, origin));
    double best = 0.0;
    for (const auto& alpha : multi_indices_upto(g.dim(), l))
        if (alpha.order() == l)
            best = std::max(best, spectral_derivative(a, alpha).linf());
    return best;
}

double function_grad_sobolev(const Grid& g, const Symbol& fn_sym, int l, double s) {
    const double origin[2] = {0.0, 0.0};
    Field a(g, fn_sym.column(g, origin));
    double best = 0.0;
    for (const auto& alpha : multi_indices_upto(g.dim(), l))
        if (alpha.order() == l)
            best = std::max(best, spectral_derivative(a, alpha).sobolev(s));
    return best;
}

double function_sobolev(const Grid& g, const Symbol& fn_sym, double s) {
    const double origin[2] = {0.0, 0.0};
    return Field(g, fn_sym.column(g, origin)).sobolev(s);
}

}  // namespace

EstimateReport kato_ponce_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;
    const int d = g.dim();
    const int n = cfg.n;
    require(cfg.t0 > 0.5 * d, "t0 > d/2");

    Symbol s1 = make_catalogue_symbol(cfg.sigma1, g);
    Symbol s2 = make_catalogue_symbol(cfg.sigma2, g);
    require(s1.is_multiplier(), "sigma1 is a Fourier multiplier");
    require(s1.k_reg() >= n, "sigma1 n-regular at the origin");
    const double m1 = s1.order(), m2 = s2.order();
    const double mn = std::min(m1, static_cast<double>(n));
    const int ck = class_k(d, n);
    const bool second = cfg.variant == "ii";
    if (second) require(s1.k_reg() >= ck, "sigma1 (n+2+[d/2]+d)-regular at the origin");

    double c_const = seminorm_M(g, s1, ck, 0) +
                     seminorm_low_m(g, s1, second ? ck : n);
    rep.terms["C(sigma1)"] = c_const;

    Symbol bracket = poisson_n(g, s1, s2, n);
    auto num_fn = [&](const Field& u) {
        return remainder_apply(s1, s2, bracket, u).sobolev(cfg.s);
    };

    if (cfg.theorem == "th-III3") {
        require(s2.is_function(), "sigma2 is a function");
        require(m1 > n, "m1 > n");
        require(0.0 <= cfg.s && cfg.s <= cfg.s0 + 1.0, "0 <= s <= s0+1");
        double s_in = std::max(cfg.s + m1 - n - 1.0, 1.0);
        ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
        if (!second) {
            double w = function_wkinf(g, s2, n + 1);
            double h = function_sobolev(g, s2, cfg.s + m1);
            rep.terms["sigma2_{W^{n+1,inf}}"] = w;
            rep.terms["sigma2_{H^{s+m1}}"] = h;
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return c_const * (w * u.sobolev(cfg.s + m1 - n - 1.0) + h * u.linf());
            });
        } else {
            double w = function_grad_inf(g, s2, n + 1);
            double h = function_grad_sobolev(g, s2, n + 1, cfg.s + m1 - n - 1.0);
            rep.terms["grad^{n+1}sigma2_inf"] = w;
            rep.terms["grad^{n+1}sigma2_{H^{s+m1-n-1}}"] = h;
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return c_const * (w * u.sobolev(cfg.s + m1 - n - 1.0) + h * u.linf());
            });
        }
        return rep;
    }

    if (cfg.theorem == "th-III2") {
        require(m2 > 0.0, "m2 > 0");
        require(s2.k_reg() >= reg_k(d), "sigma2 2[d/2]+2-regular at the origin");
        require(0.0 < cfg.s + m1, "0 < s + m1");
        require(0.0 < cfg.s, "0 < s");
        require(cfg.s + m2 <= cfg.s0 + 1.0, "s + m2 <= s0+1");
        double md = seminorm_M_gradx(g, s2, n + 1, d, 0);
        rep.terms["M_d(grad^{n+1}sigma2)"] = md;
        double s_in = std::max(cfg.s + m1 + m2 - n - 1.0, 1.0);
        ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
        if (!second) {
            double hreg = 0.5 * (seminorm_low_n(g, s2, reg_k(d), cfg.s + mn + m2) +
                                 seminorm_N(g, s2, reg_k(d), cfg.s + mn + m2));
            rep.terms["sigma2_{H^{s+m1^n+m2}_reg}"] = hreg;
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return c_const * (md * u.sobolev(cfg.s + m1 + m2 - n - 1.0) + hreg * u.linf());
            });
        } else {
            double winf = 0.0, hreg = 0.0;
            for (const auto& alpha : multi_indices_upto(d, n + 1)) {
                if (alpha.order() != n + 1) continue;
                Symbol ds = x_derivative(s2, alpha);
                winf = std::max(winf, norm_inf_m(g, ds));
                hreg = std::max(hreg, norm_Hs_reg(g, ds, cfg.s + mn + m2 - n - 1.0));
            }
            rep.terms["grad^{n+1}sigma2_inf"] = winf;
            rep.terms["grad^{n+1}sigma2_{H_reg}"] = hreg;
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return c_const * (winf * u.sobolev(cfg.s + m1 + m2 - n - 1.0) +
                                  hreg * u.linf());
            });
        }
        return rep;
    }

    // th-III1
    require(std::max(-cfg.t0, -cfg.t0 - m1) < cfg.s && cfg.s <= cfg.s0 + 1.0,
            "max{-t0,-t0-m1} < s <= s0+1");
    double md = seminorm_M_gradx(g, s2, n + 1, d, 0);
    rep.terms["M_d(grad^{n+1}sigma2)"] = md;
    double idx_hi = m1 + m2 + cfg.t0 - mn;
    double s_in = std::max({cfg.s + m1 + m2 - n - 1.0, idx_hi, 1.0});
    ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
    if (!second) {
        double hs = norm_Hs(g, s2, cfg.s + mn);
        rep.terms["sigma2_{H^{s+m1^n}}"] = hs;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return c_const * (md * u.sobolev(cfg.s + m1 + m2 - n - 1.0) +
                              hs * u.sobolev(idx_hi));
        });
    } else {
        require(s2.k_reg() >= d, "sigma2 d-regular at the origin");
        double winf = 0.0, hs = 0.0;
        for (const auto& alpha : multi_indices_upto(d, n + 1)) {
            if (alpha.order() != n + 1) continue;
            Symbol ds = x_derivative(s2, alpha);
            winf = std::max(winf, norm_inf_m(g, ds));
            hs = std::max(hs, norm_Hs(g, ds, cfg.s + mn - n - 1.0));
        }
        rep.terms["grad^{n+1}sigma2_inf"] = winf;
        rep.terms["grad^{n+1}sigma2_{H^{s+m1^n-n-1}}"] = hs;
        run_probes(rep, fam, num_fn, [&](const Field& u) {
            return c_const * (winf * u.sobolev(cfg.s + m1 + m2 - n - 1.0) +
                              hs * u.sobolev(idx_hi));
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Calderon-Coifman-Meyer style remainders
// ---------------------------------------------------------------------------

EstimateReport ccm_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;
    const int d = g.dim();
    const int n = cfg.n;
    require(cfg.t0 > 0.5 * d, "t0 > d/2");

    Symbol s1 = make_catalogue_symbol(cfg.sigma1, g);
    Symbol s2 = make_catalogue_symbol(cfg.sigma2, g);
    const double m1 = s1.order(), m2 = s2.order();
    const int ck = class_k(d, n);

    Symbol bracket = poisson_n(g, s1, s2, n);
    auto num_fn = [&](const Field& u) {
        return remainder_apply(s1, s2, bracket, u).sobolev(cfg.s);
    };
    double res_idx = cfg.s + m1 + m2 - n - 1.0;
    double s_in = std::max(res_idx, 1.0);

    if (cfg.theorem == "th-IV1bis") {
        require(s1.k_reg() >= n, "sigma1 n-regular at the origin");
        require(s2.k_reg() >= n, "sigma2 n-regular at the origin");
        require(-cfg.t0 < cfg.s && cfg.s <= cfg.t0 + 1.0, "-t0 < s <= t0+1");
        require(-cfg.t0 < cfg.s + m1 && cfg.s + m1 <= cfg.t0 + n + 1.0,
                "-t0 < s+m1 <= t0+n+1");
        require(-cfg.t0 < cfg.s + m2 && cfg.s + m2 <= cfg.t0 + n + 1.0,
                "-t0 < s+m2 <= t0+n+1");
        double a = norm_Hs_n(g, s1, n, cfg.t0 + n + 1.0);
        double b = norm_Hs(g, s2, cfg.t0 + n + 1.0);
        rep.terms["sigma1_{H^{t0+n+1}_n}"] = a;
        rep.terms["sigma2_{H^{t0+n+1}}"] = b;
        ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
        run_probes(rep, fam, num_fn,
                   [&](const Field& u) { return a * b * u.sobolev(res_idx); });
        return rep;
    }

    // th-III1bis
    require(s1.is_multiplier(), "sigma1 is a Fourier multiplier");
    require(s1.k_reg() >= n, "sigma1 n-regular at the origin");
    require(-cfg.t0 < cfg.s && cfg.s <= cfg.t0 + 1.0, "-t0 < s <= t0+1");
    require(-cfg.t0 < cfg.s + m1 && cfg.s + m1 <= cfg.t0 + n + 1.0,
            "-t0 < s+m1 <= t0+n+1");
    const bool second = cfg.variant == "ii";
    double c_const = seminorm_M(g, s1, ck, 0) + seminorm_low_m(g, s1, second ? ck : n);
    rep.terms["C(sigma1)"] = c_const;
    ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
    if (!second) {
        double b = norm_Hs(g, s2, cfg.t0 + n + 1.0);
        rep.terms["sigma2_{H^{t0+n+1}}"] = b;
        run_probes(rep, fam, num_fn,
                   [&](const Field& u) { return c_const * b * u.sobolev(res_idx); });
    } else {
        require(s1.k_reg() >= ck, "sigma1 (n+2+[d/2]+d)-regular at the origin");
        require(s2.k_reg() >= d, "sigma2 d-regular at the origin");
        double b = 0.0;
        for (const auto& alpha : multi_indices_upto(d, n + 1))
            if (alpha.order() == n + 1)
                b = std::max(b, norm_Hs(g, x_derivative(s2, alpha), cfg.t0));
        rep.terms["grad^{n+1}sigma2_{H^{t0}}"] = b;
        run_probes(rep, fam, num_fn,
                   [&](const Field& u) { return c_const * b * u.sobolev(res_idx); });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Composition / commutators of two limited-regularity operators
// ---------------------------------------------------------------------------

EstimateReport composition_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;
    const int d = g.dim();
    const int n = cfg.n;
    require(cfg.t0 > 0.5 * d, "t0 > d/2");

    Symbol s1 = make_catalogue_symbol(cfg.sigma1, g);
    Symbol s2 = make_catalogue_symbol(cfg.sigma2, g);
    const double m1 = s1.order(), m2 = s2.order();
    const std::string& v = cfg.variant;

    if (v == "iii") {
        require(m1 > 0.0, "m1 > 0");
        require(s1.k_reg() >= reg_k(d), "sigma1 2[d/2]+2-regular at the origin");
        require(s2.is_function(), "sigma2 is a function");
        require(0.0 <= cfg.s && cfg.s <= cfg.t0 + 1.0, "0 <= s <= t0+1");
        double a = norm_Hs_reg(g, s1, cfg.t0 + 1.0);
        double h = function_sobolev(g, s2, cfg.s + m1);
        double w = function_wkinf(g, s2, 1);
        rep.terms["sigma1_{H^{t0+1}_reg}"] = a;
        rep.terms["sigma2_{H^{s+m1}}"] = h;
        rep.terms["sigma2_{W^{1,inf}}"] = w;
        double s_in = std::max(cfg.s + m1 - 1.0, 1.0);
        ProbeFamily fam = default_probe_family(lab.bank, s_in, cfg.probes, cfg.seed);
        run_probes(rep, fam,
                   [&](const Field& u) { return commutator_apply(s1, s2, u).sobolev(cfg.s); },
                   [&](const Field& u) {
                       return a * (h * u.linf() + w * u.sobolev(cfg.s + m1 - 1.0));
                   });
        return rep;
    }

    require(s1.k_reg() >= n, "sigma1 n-regular at the origin");
    require(s2.k_reg() >= n, "sigma2 n-regular at the origin");

    const double mn = std::min(m1, static_cast<double>(n));
    const double sp = std::max(cfg.s, 0.0);
    const double res_idx = cfg.s + m1 + m2 - n - 1.0;
    const double hi_idx = m1 + m2 + cfg.t0 - mn;

    // Right-hand side of variant i (also the building block of ii).
    auto rhs_terms_i = [&](const Symbol& a, const Symbol& b, double ma,
                           std::map<std::string, double>& out, const std::string& tag) {
        double w1 = norm_Wkinf_n(g, a, n, n + 1);
        double w2 = norm_Wkinf(g, b, n + 1);
        double h1t = norm_Hs_n(g, a, n, cfg.t0 + 1.0);
        double h2s = norm_Hs(g, b, sp + std::min(ma, static_cast<double>(n)));
        double h1s = norm_Hs_n(g, a, n, sp + std::min(ma, static_cast<double>(n)));
        double h2t = norm_Hs(g, b, cfg.t0);
        out[tag + "W_n(sigma_a)"] = w1;
        out[tag + "W(sigma_b)"] = w2;
        out[tag + "H_n^{t0+1}(sigma_a)"] = h1t;
        out[tag + "H^{s_++m^n}(sigma_b)"] = h2s;
        out[tag + "H_n^{s_++m^n}(sigma_a)"] = h1s;
        out[tag + "H^{t0}(sigma_b)"] = h2t;
        return std::array<double, 6>{w1, w2, h1t, h2s, h1s, h2t};
    };

    ProbeFamily fam = default_probe_family(lab.bank, std::max({res_idx, hi_idx, 1.0}),
                                           cfg.probes, cfg.seed);

    if (v == "i" || v == "i.bis" || v == "i.ter") {
        if (v == "i.ter")
            require(std::max(cfg.t0 + 1.0, -cfg.t0 - m1) <= cfg.s && cfg.s <= cfg.s0 + 1.0,
                    "max{t0+1,-t0-m1} <= s <= s0+1");
        else
            require(std::max(-cfg.t0, -cfg.t0 - m1) < cfg.s && cfg.s <= cfg.t0 + 1.0,
                    "max{-t0,-t0-m1} < s <= t0+1");
        Symbol sharp = sharp_n(g, s1, s2, n);
        auto num_fn = [&](const Field& u) {
            return composition_residual_apply(s1, s2, sharp, u).sobolev(cfg.s);
        };
        if (v == "i.bis") {
            double a = norm_Hs_n(g, s1, n, cfg.t0 + mn + 1.0);
            double h2s = norm_Hs(g, s2, cfg.s + mn);
            double w2 = norm_Wkinf(g, s2, n + 1);
            rep.terms["sigma1_{H^{t0+m^n+1}_n}"] = a;
            rep.terms["sigma2_{H^{s+m^n}}"] = h2s;
            rep.terms["sigma2_{W^{n+1,inf}}"] = w2;
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return a * (h2s * u.sobolev(hi_idx) + w2 * u.sobolev(res_idx));
            });
        } else {
            auto t = rhs_terms_i(s1, s2, m1, rep.terms, "");
            double extra = 0.0;
            if (v == "i.ter") {
                extra = norm_Hs(g, s1, cfg.s) * norm_Hs(g, s2, mn + cfg.t0 + 1.0);
                rep.terms["i.ter extra"] = extra;
            }
            run_probes(rep, fam, num_fn, [&](const Field& u) {
                return t[0] * t[1] * u.sobolev(res_idx) +
                       (t[2] * t[3] + t[4] * t[5] + extra) * u.sobolev(hi_idx);
            });
        }
        return rep;
    }

    if (v == "ii") {
        require(std::max({-cfg.t0, -cfg.t0 - m1, -cfg.t0 - m2}) < cfg.s &&
                    cfg.s <= cfg.t0 + 1.0,
                "max{-t0,-t0-m1,-t0-m2} < s <= t0+1");
        Symbol bracket = poisson_n(g, s1, s2, n);
        auto t12 = rhs_terms_i(s1, s2, m1, rep.terms, "12:");
        auto t21 = rhs_terms_i(s2, s1, m2, rep.terms, "21:");
        double hi21 = m1 + m2 + cfg.t0 - std::min(m2, static_cast<double>(n));
        run_probes(rep, fam,
                   [&](const Field& u) {
                       return remainder_apply(s1, s2, bracket, u).sobolev(cfg.s);
                   },
                   [&](const Field& u) {
                       double lhs = t12[0] * t12[1] * u.sobolev(res_idx) +
                                    (t12[2] * t12[3] + t12[4] * t12[5]) * u.sobolev(hi_idx);
                       double rhs = t21[0] * t21[1] * u.sobolev(res_idx) +
                                    (t21[2] * t21[3] + t21[4] * t21[5]) * u.sobolev(hi21);
                       return lhs + rhs;
                   });
        return rep;
    }
    throw ConfigError("unknown composition variant: " + v);
}

// ---------------------------------------------------------------------------
// Residual-order slope experiment
// ---------------------------------------------------------------------------

EstimateReport order_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;

    Symbol s1 = make_catalogue_symbol(cfg.sigma1, g);
    Symbol s2 = make_catalogue_symbol(cfg.sigma2, g);
    require(s1.is_multiplier(), "sigma1 is a Fourier multiplier");
    require(s2.is_function(), "sigma2 is a function");
    const double m1 = s1.order();
    require(m1 > cfg.n, "m1 > n");

    double e[2] = {1.0, 0.0};
    double w = default_packet_width(g, cfg.j_lo);
    WavePacketFamily packets = wave_packets(lab.bank, cfg.j_lo, cfg.j_hi, e, w);

    Symbol bracket = poisson_n(g, s1, s2, cfg.n);
    auto residual = [&](const Field& u) { return remainder_apply(s1, s2, bracket, u); };

    SlopeFit fit = order_probe(residual, packets, m1 - cfg.n - 1.0, cfg.trim_lo, cfg.trim_hi);
    rep.slope = fit;
    for (std::size_t i = 0; i < packets.u.size(); ++i) {
        double r = residual(packets.u[i]).l2();
        rep.rows.push_back({packets.j[i], "packet j=" + std::to_string(packets.j[i]),
                            r, 1.0, r});
        if (r > 1e-14) rep.degenerate_zero = false;
    }
    rep.c_emp = fit.value;
    rep.pass = !rep.degenerate_zero && fit.deviation <= cfg.slope_tol;
    if (rep.degenerate_zero) rep.note = "degenerate-zero residual";
    return rep;
}

// ---------------------------------------------------------------------------
// Tame vs naive normalizer scaling
// ---------------------------------------------------------------------------

EstimateReport tame_scaling_experiment(const ExperimentConfig& cfg) {
    Lab lab(cfg);
    EstimateReport rep = base_report(cfg);
    const Grid& g = lab.grid;
    require(cfg.t0 > 0.5 * g.dim(), "t0 > d/2");
    require(0.0 < cfg.s && cfg.s <= cfg.s0, "0 < s <= s0");

    const double scales[3] = {0.25, 1.0, 4.0};
    double tame_min = 0.0, tame_max = 0.0, naive_lo = 0.0, naive_hi = 0.0;
    for (int si = 0; si < 3; ++si) {
        SymbolSpec spec = cfg.sigma1;
        spec.amplitude *= scales[si];
        auto comp = make_catalogue_composite(spec, g);
        if (!comp) throw ConfigError("tame-scaling needs a composite symbol");
        Symbol sym = comp->as_symbol();
        const double m = sym.order();
        require(m > 0.0, "m > 0");
        require(comp->outer().k_reg >= reg_k(g.dim()),
                "Sigma 2[d/2]+2-regular at the origin");

        double v_inf = comp->inner_sup();
        double c_sigma = composite_class_constant(*comp, v_inf);
        double vh = comp->inner_sobolev(cfg.s + m);

        ProbeFamily fam = default_probe_family(lab.bank, cfg.s + m, cfg.probes, cfg.seed);
        double tame = 0.0, naive = 0.0;
        for (const auto& u : fam.fields) {
            double num = op_apply_dense(sym, u).sobolev(cfg.s);
            double den_n = u.sobolev(cfg.s + m);
            if (den_n > 0.0) naive = std::max(naive, num / den_n);
            double den_t = c_sigma * (vh * zyg0(lab.bank, u) + den_n);
            if (den_t > 0.0) tame = std::max(tame, num / den_t);
        }
        rep.rows.push_back({si, "scale=" + std::to_string(scales[si]) + " naive",
                            naive, 1.0, naive});
        rep.rows.push_back({si, "scale=" + std::to_string(scales[si]) + " tame",
                            tame, 1.0, tame});
        if (si == 0) {
            tame_min = tame_max = tame;
            naive_lo = naive;
        } else {
            tame_min = std::min(tame_min, tame);
            tame_max = std::max(tame_max, tame);
        }
        if (si == 2) naive_hi = naive;
        rep.degenerate_zero = false;
    }
    double band = tame_min > 0.0 ? tame_max / tame_min : 0.0;
    double growth = naive_lo > 0.0 ? naive_hi / naive_lo : 0.0;
    rep.terms["tame_band"] = band;
    rep.terms["naive_growth"] = growth;
    rep.c_emp = band;
    rep.pass = band <= 3.0 && growth >= 2.0;
    if (!rep.pass) rep.note = "tame band or naive growth out of range";
    return rep;
}

EstimateReport run_experiment(const ExperimentConfig& cfg) {
    const std::string& t = cfg.theorem;
    if (t == "th-II1" || t == "th-II2" || t == "cor-II1") return action_experiment(cfg);
    if (t == "th-III1" || t == "th-III2" || t == "th-III3") return kato_ponce_experiment(cfg);
    if (t == "th-III1bis" || t == "th-IV1bis") return ccm_experiment(cfg);
    if (t == "th-IV1") return composition_experiment(cfg);
    if (t == "th-III3-order") return order_experiment(cfg);
    if (t == "tame-scaling") return tame_scaling_experiment(cfg);
    throw ConfigError("unknown theorem tag: " + t);
}

SweepReport resolution_sweep(const ExperimentConfig& cfg, const std::vector<int>& n_pts_list) {
    if (n_pts_list.empty()) throw ConfigError("resolution sweep: empty n_pts list");
    SweepReport sweep;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int n : n_pts_list) {
        ExperimentConfig c = cfg;
        c.n_pts = n;
        c.id = cfg.id + "@n" + std::to_string(n);
        EstimateReport rep = run_experiment(c);
        if (rep.c_emp > 0.0) {
            if (first || rep.c_emp < lo) lo = rep.c_emp;
            if (first || rep.c_emp > hi) hi = rep.c_emp;
            first = false;
        }
        sweep.reports.push_back(std::move(rep));
    }
    sweep.stability = (!first && lo > 0.0) ? hi / lo : 1.0;
    return sweep;
}

}  // namespace paracalc
