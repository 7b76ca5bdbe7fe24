#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "paracalc/catalogue.hpp"
#include "paracalc/seminorms.hpp"

using namespace paracalc;

namespace {

// Central-difference oracle for xi-derivatives (independent of the
// analytic evaluators it checks).
cplx fd_xi(const Symbol& s, const Grid& g, std::size_t ix, const double* xi,
           const MultiIndex& beta, double h) {
    if (beta.order() == 0) return s.eval(g, ix, xi);
    int axis = beta.b[0] > 0 ? 0 : 1;
    MultiIndex rest = beta;
    rest.b[axis] -= 1;
    double plus[2] = {xi[0], xi[1]}, minus[2] = {xi[0], xi[1]};
    plus[axis] += h;
    minus[axis] -= h;
    return (fd_xi(s, g, ix, plus, rest, h) - fd_xi(s, g, ix, minus, rest, h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("dn symbol closed forms") {
    // a == 0: sigma = |xi|
    Grid g1(1, 256, 32.0 * kPi);
    Field zero(g1);
    Symbol dn0 = dn_symbol(zero).as_symbol();
    double xi[2] = {3.0, 0.0};
    CHECK(dn0.eval(g1, 10, xi).real() == doctest::Approx(3.0));
    CHECK(dn0.order() == 1.0);
    CHECK(dn0.k_reg() == 0);

    // d=1, a = sin x: the gradient terms cancel and sigma = |xi| exactly
    std::vector<cplx> s(g1.size());
    double x[2];
    for (std::size_t i = 0; i < s.size(); ++i) {
        g1.x_at(i, x);
        s[i] = std::sin(x[0]);
    }
    Symbol dn1 = dn_symbol(Field(g1, std::move(s))).as_symbol();
    for (std::size_t ix : {std::size_t(0), std::size_t(100), std::size_t(255)})
        CHECK(std::abs(dn1.eval(g1, ix, xi) - cplx(3.0, 0.0)) <= 1e-10);

    // d=2, a = sin(x1), xi = (0,1): sigma = sqrt(1 + cos^2 x1)
    Grid g2(2, 32, 8.0 * kPi);
    std::vector<cplx> a2(g2.size());
    for (std::size_t i = 0; i < a2.size(); ++i) {
        g2.x_at(i, x);
        a2[i] = std::sin(x[0]);
    }
    Symbol dn2 = dn_symbol(Field(g2, std::move(a2))).as_symbol();
    double e2[2] = {0.0, 1.0};
    for (std::size_t ix = 0; ix < g2.size(); ix += 97) {
        g2.x_at(ix, x);
        double expect = std::sqrt(1.0 + std::cos(x[0]) * std::cos(x[0]));
        CHECK(dn2.eval(g2, ix, e2).real() == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("analytic xi-derivatives match finite differences") {
    Grid g(2, 32, 8.0 * kPi);
    Field a = smooth_coefficient(g, 0.2);
    Symbol dn = dn_symbol(a).as_symbol();
    Rng rng(42);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t ix = rng.next_u64() % g.size();
        double xi[2] = {0.5 + 3.0 * rng.next_uniform(), -2.0 + 4.0 * rng.next_uniform()};
        if (std::hypot(xi[0], xi[1]) < 0.25) continue;
        for (const auto& beta : multi_indices_upto(2, 2)) {
            if (beta.order() == 0) continue;
            Symbol ds = dn.xi_derivative(beta, g.dxi());
            cplx got = ds.eval(g, ix, xi);
            cplx ref = fd_xi(dn, g, ix, xi, beta, 1e-4);
            CHECK(std::abs(got - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
        }
        ++checked;
    }
    CHECK(checked >= 90);
}

TEST_CASE("multiplier expression derivatives are exact") {
    Grid g(1, 256, 32.0 * kPi);
    // d^2/dxi^2 <xi>^2 = 2
    Symbol m2 = make_angxi_multiplier(2.0);
    Symbol d2 = m2.xi_derivative(MultiIndex::axis(0, 2), g.dxi());
    double xi[2] = {1.7, 0.0};
    CHECK(d2.eval(g, 0, xi).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m2.has_analytic_xi_derivative(MultiIndex::axis(0, 2)));

    // sigma = a(x) xi1, d/dxi1 -> a(x)
    Field a = smooth_coefficient(g, 0.3);
    Symbol ax = make_separable_sum(
        "a*xi", 1.0, kInfReg,
        {{a, make_multiplier_expr("xi1", 1.0,
                                  {MultiplierTerm{cplx(1.0, 0.0), MultiIndex::axis(0, 1), 0.0}})}});
    Symbol dax = ax.xi_derivative(MultiIndex::axis(0, 1), g.dxi());
    for (std::size_t i = 0; i < g.size(); i += 41)
        CHECK(std::abs(dax.eval(g, i, xi) - a.samples()[i]) <= 1e-12);
}

TEST_CASE("split_composite") {
    Grid g(2, 32, 8.0 * kPi);

    // dn with a == 0: tau == 0, multiplier = |xi|
    Field zero(g);
    auto split0 = split_composite(dn_symbol(zero));
    double xi[2] = {1.0, 2.0};
    CHECK(std::abs(split0.tau.eval(g, 5, xi)) <= 1e-14);
    CHECK(split0.multiplier.eval(g, 0, xi).real() == doctest::Approx(std::sqrt(5.0)));

    // dn, a = 0.1 sin(x1): tau + multiplier reconstructs sigma; reference
    // values from direct evaluation
    std::vector<cplx> a(g.size());
    double x[2];
    for (std::size_t i = 0; i < a.size(); ++i) {
        g.x_at(i, x);
        a[i] = 0.1 * std::sin(x[0]);
    }
    CompositeSymbol dn = dn_symbol(Field(g, std::move(a)));
    auto split = split_composite(dn);
    Symbol full = dn.as_symbol();
    const double xis[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {2.0, 2.0}};
    for (const auto& q : xis) {
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            cplx back = split.tau.eval(g, i, q) + split.multiplier.eval(g, i, q);
            worst = std::max(worst, std::abs(back - full.eval(g, i, q)));
            // direct-evaluation oracle for tau
            g.x_at(i, x);
            double da = 0.1 * std::cos(x[0]);
            double sig = std::sqrt((1.0 + da * da) * (q[0] * q[0] + q[1] * q[1]) -
                                   da * q[0] * da * q[0]);
            double tau_ref = sig - std::hypot(q[0], q[1]);
            CHECK(std::abs(split.tau.eval(g, i, q) - cplx(tau_ref, 0.0)) <= 1e-10);
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("seminorm N basics") {
    Grid g(1, 512, 32.0 * kPi);
    Field a = smooth_coefficient(g, 0.25);

    // sigma = a(x) <xi>^m with k = 0: weight cancels, N = |a|_{H^s}
    Symbol s = make_separable_sum("a<xi>", 1.5, kInfReg,
                                  {{a, make_angxi_multiplier(1.5)}});
    CHECK(seminorm_N(g, s, 0, 2.0) == doctest::Approx(a.sobolev(2.0)).epsilon(1e-9));

    // multiplier <xi>^m: the H^s norm of the constant-in-x function times
    // the sup of the bounded <xi>-weight ratios; for k=0 the weight is 1
    Symbol m = make_angxi_multiplier(2.0);
    double const_norm = Field(g, std::vector<cplx>(g.size(), cplx(1.0, 0.0))).sobolev(2.0);
    CHECK(seminorm_N(g, m, 0, 2.0) == doctest::Approx(const_norm).epsilon(1e-9));
    // closed-form ratio for k=1: sup <xi>^{1-2} |d <xi>^2| = sup 2|xi|/<xi>
    double n1 = seminorm_N(g, m, 1, 2.0);
    CHECK(n1 == doctest::Approx(2.0 * const_norm).epsilon(0.01));

    // DN symbol: finite, resolution-stable within 5%
    double prev = 0.0;
    for (int n : {512, 1024}) {
        Grid gn(1, n, 32.0 * kPi);
        Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, gn);
        double v = seminorm_N(gn, dn, 2, 2.0);
        CHECK(std::isfinite(v));
        if (prev > 0.0) CHECK(std::abs(v - prev) / prev <= 0.05);
        prev = v;
    }
}

TEST_CASE("seminorm M and low-frequency families") {
    Grid g(1, 512, 32.0 * kPi);
    Field a = smooth_coefficient(g, 0.25);

    // M^m_{0,0}(a <xi>^m) = |a|_inf
    Symbol s = make_separable_sum("a<xi>", 1.0, kInfReg, {{a, make_angxi_multiplier(1.0)}});
    CHECK(seminorm_M(g, s, 0, 0) == doctest::Approx(a.linf()).epsilon(1e-10));

    // constant symbol: m_k = 1 for all k
    Symbol one = make_multiplier_expr("1", 0.0, {MultiplierTerm{cplx(1.0, 0.0), {}, 0.0}});
    for (int k : {0, 1, 2}) CHECK(seminorm_low_m(g, one, k) == doctest::Approx(1.0));

    // DN: low-frequency seminorm with k = 1 rejected (k_reg = 0)
    Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, g);
    CHECK_THROWS_AS(seminorm_low_m(g, dn, 1), ClassViolationError);
    CHECK_NOTHROW(seminorm_low_m(g, dn, 0));
}

TEST_CASE("composite norms on function symbols") {
    Grid g(1, 512, 32.0 * kPi);
    Field a = smooth_coefficient(g, 0.3);
    Symbol f = make_function_symbol("a", a);
    CHECK(norm_Hs(g, f, 2.0) == doctest::Approx(a.sobolev(2.0)).epsilon(1e-9));
    CHECK(norm_Hs_reg(g, f, 2.0) == doctest::Approx(a.sobolev(2.0)).epsilon(1e-9));
    CHECK(norm_inf_m(g, f) == doctest::Approx(a.linf()).epsilon(1e-10));

    Symbol zero = make_function_symbol("0", Field(g));
    CHECK(norm_Hs(g, zero, 2.0) == 0.0);
    CHECK(norm_inf_m(g, zero) == 0.0);
    CHECK(norm_Hs_n(g, zero, 1, 2.0) == 0.0);
}

TEST_CASE("seminorm scaling and monotonicity") {
    Grid g(1, 256, 32.0 * kPi);
    Symbol dn = make_catalogue_symbol({.id = "dn", .amplitude = 0.1}, g);

    // |c sigma| scales every seminorm by |c|
    Symbol sampled = sample_on_grid(dn, g);
    std::vector<cplx> scaled_data(g.size() * g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double xi[2];
        g.xi_at(k, xi);
        auto col = sampled.column(g, xi);
        for (std::size_t i = 0; i < g.size(); ++i) scaled_data[k * g.size() + i] = 3.0 * col[i];
    }
    Symbol scaled = make_grid_sampled("3dn", dn.order(), dn.k_reg(), false, false, g,
                                      std::move(scaled_data));
    CHECK(seminorm_N(g, scaled, 1, 1.0) ==
          doctest::Approx(3.0 * seminorm_N(g, dn, 1, 1.0)).epsilon(1e-9));
    CHECK(seminorm_M(g, scaled, 1, 0) ==
          doctest::Approx(3.0 * seminorm_M(g, dn, 1, 0)).epsilon(1e-9));

    // monotone in k and s
    CHECK(seminorm_N(g, dn, 0, 1.0) <= seminorm_N(g, dn, 1, 1.0) + 1e-12);
    CHECK(seminorm_N(g, dn, 1, 1.0) <= seminorm_N(g, dn, 2, 1.0) + 1e-12);
    CHECK(seminorm_N(g, dn, 1, 0.5) <= seminorm_N(g, dn, 1, 1.0) + 1e-12);
}

TEST_CASE("class consistency of the composite split") {
    // N^m_{k,s}(tau) / |v|_{H^s} bounded while |v|_{H^s} sweeps with
    // |v|_inf held at the same level (amplitude fixed, frequency raised).
    // d = 2: in one dimension the water-wave symbol degenerates to |xi|.
    // n = 64 keeps the quadratic harmonics of every mode below the Nyquist.
    Grid g(2, 64, 8.0 * kPi);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int mode : {1, 2, 3}) {
        std::vector<cplx> a(g.size());
        double x[2];
        for (std::size_t i = 0; i < a.size(); ++i) {
            g.x_at(i, x);
            a[i] = 0.2 / mode * std::sin(mode * x[0]);  // grad amplitude fixed
        }
        CompositeSymbol dn = dn_symbol(Field(g, std::move(a)));
        auto split = split_composite(dn);
        double vh = dn.inner_sobolev(3.0);
        double ratio = seminorm_N(g, split.tau, 1, 3.0) / vh;
        if (first || ratio < lo) lo = ratio;
        if (first || ratio > hi) hi = ratio;
        first = false;
    }
    CHECK(hi / lo <= 10.0);
}

TEST_CASE("sobolev embedding of M into N seminorms") {
    // M^m_d(sigma) <= C N^m_{2[d/2]+2, t0}(sigma), C stable across the
    // catalogue and across resolution
    for (int n : {256, 512}) {
        Grid g(1, n, 32.0 * kPi);
        for (const auto& spec : default_catalogue(1)) {
            Symbol s = make_catalogue_symbol(spec, g);
            double M = seminorm_M(g, s, 1, 0);
            double N = seminorm_N(g, s, 2, 1.0);
            if (N > 0.0) CHECK(M / N <= 2.0);
        }
    }
}

TEST_CASE("catalogue ids") {
    Grid g(1, 256, 32.0 * kPi);
    for (const auto& spec : default_catalogue(1)) {
        Symbol s = make_catalogue_symbol(spec, g);
        CHECK(std::isfinite(s.order()));
    }
    CHECK_THROWS_AS(make_catalogue_symbol({.id = "nope"}, g), ConfigError);
    CHECK(make_catalogue_symbol({.id = "angxi", .m = 2.0}, g).is_multiplier());
    CHECK(make_catalogue_symbol({.id = "func"}, g).is_function());
    CHECK(make_catalogue_composite({.id = "dn"}, g).has_value());
    CHECK(!make_catalogue_composite({.id = "func"}, g).has_value());
}
