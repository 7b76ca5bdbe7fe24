#include "paracalc/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "paracalc/fft.hpp"
#include "paracalc/seminorms.hpp"

namespace paracalc {

const Symbol& FourWaySplit::component(const std::string& which) const {
    if (which == "lf") return lf;
    if (which == "I") return I;
    if (which == "II") return II;
    if (which == "R") return R;
    if (which == "R1") return R1;
    if (which == "R2") return R2;
    throw InputError("unknown split component: " + which);
}

FourWaySplit four_way_split(const FilterBank& bank, const Symbol& sym, int N) {
    const Grid& g = bank.grid();
    if (N < 4) throw ConfigError("four_way_split requires N >= 4");
    // The cone |eta| <= 2^{1-N} |xi| must hold at least one nonzero lattice
    // mode at the guard frequency, or sigma_I degenerates to the x-mean
    // everywhere and the split loses its dyadic range.
    if (std::ldexp(g.xi_guard(), 1 - N) < g.dxi())
        throw ConfigError("four_way_split: N too large for the grid's dyadic range");

    const std::size_t nx = g.size();
    std::vector<std::vector<cplx>> comp(6);
    for (auto& c : comp) c.resize(nx * nx);

    parallel_for(nx, [&](std::size_t kxi) {
        double xi[2];
        g.xi_at(kxi, xi);
        const double r = g.xi_norm_at(kxi);
        const double psi_xi = psi_profile(r);
        const double hf = 1.0 - psi_xi;

        std::vector<cplx> col(nx), spec(nx), acc(nx), out(nx);
        sym.eval_column(g, xi, col.data());
        fft::forward(g, col.data(), spec.data());
        const double inv = 1.0 / static_cast<double>(nx);

        auto ifft_into = [&](const std::vector<cplx>& s, cplx* dst) {
            fft::backward(g, s.data(), out.data());
            for (std::size_t i = 0; i < nx; ++i) dst[i] = out[i] * inv;
        };

        cplx* lf_col = comp[0].data() + kxi * nx;
        cplx* i_col = comp[1].data() + kxi * nx;
        cplx* ii_col = comp[2].data() + kxi * nx;
        cplx* r_col = comp[3].data() + kxi * nx;
        cplx* r1_col = comp[4].data() + kxi * nx;
        cplx* r2_col = comp[5].data() + kxi * nx;

        // sigma_lf
        for (std::size_t i = 0; i < nx; ++i) lf_col[i] = psi_xi * col[i];

        // Active xi-shells (at most two).
        std::vector<std::pair<int, double>> shells;
        for (int p = -1; p <= bank.p_max(); ++p) {
            double w = bank.phi_p(p, r);
            if (w != 0.0) shells.emplace_back(p, w);
        }

        // sigma_I: per shell, scaled low-pass psi(2^{N-p} eta) in x.
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        if (hf != 0.0) {
            for (auto [p, w] : shells) {
                double eta[2];
                for (std::size_t i = 0; i < nx; ++i) {
                    g.xi_at(i, eta);
                    double en = g.dim() == 1 ? std::abs(eta[0]) : std::hypot(eta[0], eta[1]);
                    double lp = psi_profile(std::ldexp(en, N - p));
                    acc[i] += hf * w * lp * spec[i];
                }
            }
        }
        ifft_into(acc, i_col);

        // sigma_R: telescoped ring band psi_{p+N+1} - psi_{p-N} per shell.
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        std::vector<cplx> racc(nx, cplx(0.0, 0.0));
        if (hf != 0.0) {
            for (auto [p, w] : shells) {
                double eta[2];
                for (std::size_t i = 0; i < nx; ++i) {
                    g.xi_at(i, eta);
                    double en = g.dim() == 1 ? std::abs(eta[0]) : std::hypot(eta[0], eta[1]);
                    double band = psi_profile(std::ldexp(en, -(p + N + 1))) -
                                  psi_profile(std::ldexp(en, N - p));
                    racc[i] += hf * w * band * spec[i];
                }
            }
        }
        ifft_into(racc, r_col);

        // sigma_{R,1} and sigma_{R,2}: high/low x-frequency parts of sigma_R.
        std::vector<cplx> rspec = racc;
        {
            double eta[2];
            for (std::size_t i = 0; i < nx; ++i) {
                g.xi_at(i, eta);
                double en = g.dim() == 1 ? std::abs(eta[0]) : std::hypot(eta[0], eta[1]);
                double lo = psi_profile(en);
                acc[i] = lo * rspec[i];
                rspec[i] *= (1.0 - lo);
            }
        }
        ifft_into(rspec, r1_col);
        ifft_into(acc, r2_col);

        // sigma_II: dyadic x-shells against low-pass factors in xi.
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        if (hf != 0.0) {
            for (int q = -1; q <= bank.p_max(); ++q) {
                double wxi = psi_profile(std::ldexp(r, N - q));
                if (wxi == 0.0) continue;
                const auto& shell_q = bank.shell(q);
                for (std::size_t i = 0; i < nx; ++i)
                    acc[i] += hf * wxi * shell_q[i] * spec[i];
            }
        }
        ifft_into(acc, ii_col);
    });

    FourWaySplit split{N, g, Symbol(), Symbol(), Symbol(), Symbol(), Symbol(), Symbol()};
    const double m = sym.order();
    const bool mult = sym.is_multiplier();
    auto pack = [&](const char* suffix, std::vector<cplx>&& data, int kreg) {
        return make_grid_sampled(sym.name() + suffix, m, kreg, mult, false, g, std::move(data));
    };
    split.lf = pack("_lf", std::move(comp[0]), sym.k_reg());
    split.I = pack("_I", std::move(comp[1]), kInfReg);
    split.II = pack("_II", std::move(comp[2]), kInfReg);
    split.R = pack("_R", std::move(comp[3]), kInfReg);
    split.R1 = pack("_R1", std::move(comp[4]), kInfReg);
    split.R2 = pack("_R2", std::move(comp[5]), kInfReg);
    return split;
}

SupportCheckReport spectral_support_check(const FilterBank& bank, const FourWaySplit& split) {
    const Grid& g = split.grid;
    (void)bank;
    SupportCheckReport report;
    report.cone_factor = std::ldexp(1.0, 1 - split.N);

    std::vector<SupportCheckRow> rows(g.size(), SupportCheckRow{0.0, -1.0});
    parallel_for(g.size(), [&](std::size_t kxi) {
        double r = g.xi_norm_at(kxi);
        if (r < 0.5) return;
        double xi[2];
        g.xi_at(kxi, xi);
        std::vector<cplx> col(g.size()), spec(g.size());
        split.I.eval_column(g, xi, col.data());
        fft::forward(g, col.data(), spec.data());
        double total = 0.0, outside = 0.0;
        double cone = report.cone_factor * r;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            double e = std::norm(spec[i]);
            total += e;
            if (g.xi_norm_at(i) > cone) outside += e;
        }
        rows[kxi] = {r, total > 0.0 ? outside / total : 0.0};
    });

    for (const auto& row : rows) {
        if (row.outside_fraction < 0.0) continue;
        report.max_outside_fraction = std::max(report.max_outside_fraction, row.outside_fraction);
    }
    report.pass = report.max_outside_fraction <= 1e-10;
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.outside_fraction > b.outside_fraction;
    });
    for (std::size_t i = 0; i < rows.size() && i < 8; ++i)
        if (rows[i].outside_fraction >= 0.0) report.worst.push_back(rows[i]);
    return report;
}

BernsteinReport bernstein_check(const FilterBank& bank, const FourWaySplit& split,
                                const Symbol& original) {
    const Grid& g = split.grid;
    BernsteinReport report;
    const double m = original.order();
    report.reference = seminorm_M(g, original, 2, 0);

    std::vector<double> radii;
    for (double r = 1.0; r <= g.xi_guard(); r *= 2.0) radii.push_back(r);

    for (const auto& alpha : multi_indices_upto(g.dim(), 2)) {
        for (const auto& beta : multi_indices_upto(g.dim(), 2)) {
            Symbol ds = x_derivative(split.I, alpha).xi_derivative(beta, g.dxi());
            double vmin = 0.0, vmax = 0.0;
            bool seen = false;
            for (double r : radii) {
                // Nearest lattice xi along the first axis.
                double xi[2] = {g.dxi() * std::round(r / g.dxi()), 0.0};
                std::vector<cplx> col(g.size());
                ds.eval_column(g, xi, col.data());
                double sup = 0.0;
                for (const auto& v : col) sup = std::max(sup, std::abs(v));
                double rr = std::abs(xi[0]);
                double w = std::pow(1.0 + rr * rr, 0.5 * (beta.order() - m - alpha.order()));
                double val = w * sup;
                report.rows.push_back({alpha, beta, rr, val});
                if (!seen || val < vmin) vmin = val;
                if (!seen || val > vmax) vmax = val;
                seen = true;
            }
            report.pairs.emplace_back(alpha, beta);
            report.spreads.push_back(vmin > 1e-14 * vmax ? vmax / std::max(vmin, 1e-300) : 1.0);
        }
    }
    (void)bank;
    return report;
}

}  // namespace paracalc
