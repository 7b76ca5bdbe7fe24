#include "paracalc/filter_bank.hpp"

#include <algorithm>
#include <cmath>

#include "paracalc/fft.hpp"

namespace paracalc {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double psi_profile(double r) {
    // 1 on r <= 1/2, 0 on r >= 1: smoothstep of the reversed, rescaled radius.
    return smoothstep(2.0 - 2.0 * r);
}

double phi_profile(double r) { return psi_profile(0.5 * r) - psi_profile(r); }

FilterBank::FilterBank(const Grid& grid) : grid_(grid) {
    if (grid.xi_max() < 1.0)
        throw ConfigError("grid too coarse to resolve the |xi|=1 shell");
    double rmax = grid.xi_max_euclid();
    p_max_ = 0;
    while (std::pow(2.0, p_max_) < rmax) ++p_max_;
    shells_.resize(static_cast<std::size_t>(p_max_) + 2);
    for (int p = -1; p <= p_max_; ++p) {
        auto& s = shells_[static_cast<std::size_t>(p + 1)];
        s.resize(grid.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = phi_p(p, grid.xi_norm_at(i));
    }
}

double FilterBank::phi_p(int p, double r) const {
    if (p < -1) return 0.0;
    if (p == -1) return psi_profile(r);
    return phi_profile(std::ldexp(r, -p));
}

const std::vector<double>& FilterBank::shell(int p) const {
    if (p < -1 || p > p_max_) throw InputError("shell index out of range");
    return shells_[static_cast<std::size_t>(p + 1)];
}

Field FilterBank::lp_block(const Field& u, int p) const {
    if (p < -1 || p > p_max_) throw InputError("lp_block: p out of range");
    const auto& s = shell(p);
    std::vector<cplx> spec = u.spectrum();
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= s[i];
    return Field::from_spectrum(grid_, std::move(spec));
}

double FilterBank::partition_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        double sum = 0.0;
        for (int p = -1; p <= p_max_; ++p) sum += shells_[static_cast<std::size_t>(p + 1)][i];
        dev = std::max(dev, std::abs(sum - 1.0));
    }
    return dev;
}

double zygmund_norm(const FilterBank& bank, const Field& u, double r) {
    double best = 0.0;
    for (int p = -1; p <= bank.p_max(); ++p) {
        double block = bank.lp_block(u, p).linf();
        best = std::max(best, std::pow(2.0, p * r) * block);
    }
    return best;
}

CutoffChi::CutoffChi(const FilterBank& bank, int N) : bank_(&bank), N_(N) {
    if (N < 2) throw InputError("admissible cut-off requires N >= 2");
}

CutoffChi build_admissible_cutoff(const FilterBank& bank, int N) {
    return CutoffChi(bank, N);
}

double CutoffChi::radial(double eta_norm, double xi_norm) const {
    // At most two shells are active at any xi; sum them directly.
    double acc = 0.0;
    for (int p = -1; p <= bank_->p_max(); ++p) {
        double w = bank_->phi_p(p, xi_norm);
        if (w == 0.0) continue;
        acc += psi_profile(std::ldexp(eta_norm, -p + N_)) * w;
    }
    return acc;
}

double CutoffChi::operator()(const double* eta, const double* xi) const {
    int d = bank_->grid().dim();
    double en = d == 1 ? std::abs(eta[0]) : std::hypot(eta[0], eta[1]);
    double xn = d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
    return radial(en, xn);
}

namespace {

// L1 norm over the spatial lattice of the inverse transform of a lattice
// profile in eta.
double kernel_l1(const Grid& grid, const std::vector<cplx>& profile) {
    std::vector<cplx> kernel(profile.size());
    fft::backward(grid, profile.data(), kernel.data());
    // chi_check(x) = (2pi)^{-d} dxi^d sum_eta chi(eta) e^{i eta x}
    double scale = std::pow(grid.dxi() / (2.0 * kPi), grid.dim());
    double acc = 0.0;
    for (const auto& v : kernel) acc += std::abs(v);
    return acc * scale * std::pow(grid.dx(), grid.dim());
}

std::vector<cplx> chi_profile_at_xi(const CutoffChi& chi, const Grid& grid,
                                    const double* xi) {
    std::vector<cplx> prof(grid.size());
    double eta[2];
    for (std::size_t i = 0; i < prof.size(); ++i) {
        grid.xi_at(i, eta);
        prof[i] = chi(eta, xi);
    }
    return prof;
}

}  // namespace

CutoffKernelReport cutoff_kernel_l1_report(const CutoffChi& chi,
                                           const std::vector<MultiIndex>& betas,
                                           const std::vector<double>& xi_norms) {
    const Grid& grid = chi.bank().grid();
    const double h = grid.dxi();

    // 1-D central stencils for derivative orders 0..2, composed per axis.
    auto stencil = [h](int k) -> std::vector<std::pair<int, double>> {
        switch (k) {
            case 0: return {{0, 1.0}};
            case 1: return {{-1, -0.5 / h}, {1, 0.5 / h}};
            case 2: return {{-1, 1.0 / (h * h)}, {0, -2.0 / (h * h)}, {1, 1.0 / (h * h)}};
            default: throw InputError("cutoff kernel report supports |beta| <= 2");
        }
    };

    CutoffKernelReport report;
    report.bounded = true;
    double b0_min = 0.0, b0_max = 0.0;
    bool b0_seen = false;

    for (const auto& beta : betas) {
        if (beta.order() > 2) throw InputError("cutoff kernel report supports |beta| <= 2");
        double col_min = 0.0, col_max = 0.0;
        bool seen = false;
        for (double xn : xi_norms) {
            if (xn < 0.5) continue;  // outside the lemma's region
            auto sa = stencil(beta.b[0]);
            auto sb = grid.dim() == 2 ? stencil(beta.b[1])
                                      : std::vector<std::pair<int, double>>{{0, 1.0}};
            std::vector<cplx> deriv(grid.size(), cplx(0.0, 0.0));
            for (auto [oa, wa] : sa) {
                for (auto [ob, wb] : sb) {
                    double xi[2] = {xn + oa * h, ob * h};
                    auto prof = chi_profile_at_xi(chi, grid, xi);
                    double w = wa * wb;
                    for (std::size_t i = 0; i < deriv.size(); ++i) deriv[i] += w * prof[i];
                }
            }
            double l1 = kernel_l1(grid, deriv);
            double weighted = std::pow(1.0 + xn * xn, 0.5 * beta.order()) * l1;
            report.rows.push_back({beta, xn, weighted});
            if (!seen || weighted < col_min) col_min = weighted;
            if (!seen || weighted > col_max) col_max = weighted;
            seen = true;
        }
        if (seen && col_min > 0.0 && col_max / col_min > 4.0) report.bounded = false;
        if (beta.order() == 0 && seen) {
            b0_min = col_min;
            b0_max = col_max;
            b0_seen = true;
        }
    }
    report.max_over_min_beta0 = b0_seen && b0_min > 0.0 ? b0_max / b0_min : 1.0;
    return report;
}

}  // namespace paracalc
