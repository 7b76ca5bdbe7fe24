#include "paracalc/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "paracalc/fft.hpp"

namespace paracalc {

namespace {

class XDerivImpl final : public SymbolImpl {
  public:
    XDerivImpl(std::shared_ptr<const SymbolImpl> base, MultiIndex alpha)
        : SymbolImpl("dx^" + std::to_string(alpha.order()) + " " + base->name(),
                     base->order(), base->k_reg(), base->is_multiplier(),
                     base->is_function()),
          base_(std::move(base)), alpha_(alpha) {}

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        base_->eval_column(grid, xi, out);
        std::vector<cplx> spec(grid.size());
        fft::forward(grid, out, spec.data());
        double eta[2];
        for (std::size_t i = 0; i < spec.size(); ++i) {
            grid.xi_at(i, eta);
            cplx m(1.0, 0.0);
            for (int ax = 0; ax < grid.dim(); ++ax)
                for (int k = 0; k < alpha_.b[ax]; ++k) m *= cplx(0.0, eta[ax]);
            spec[i] *= m;
        }
        fft::backward(grid, spec.data(), out);
        double inv = 1.0 / static_cast<double>(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] *= inv;
    }

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        std::vector<cplx> col(grid.size());
        eval_column(grid, xi, col.data());
        return col[ix];
    }

    bool has_analytic_xi_derivative(const MultiIndex& beta) const override {
        return base_->has_analytic_xi_derivative(beta);
    }

    std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex& beta) const override {
        return std::make_shared<XDerivImpl>(base_->analytic_xi_derivative(beta), alpha_);
    }

    bool fd_flagged() const override { return base_->fd_flagged(); }

  private:
    std::shared_ptr<const SymbolImpl> base_;
    MultiIndex alpha_;
};

// Sup over the requested xi set of a per-column norm, parallel over columns.
template <typename ColumnNorm>
double sup_over_xi(const Grid& grid, const Symbol& s, double r_lo, double r_hi,
                   const ColumnNorm& column_norm) {
    std::mutex m;
    double best = 0.0;
    parallel_for(grid.size(), [&](std::size_t k) {
        double r = grid.xi_norm_at(k);
        if (r < r_lo || r > r_hi) return;
        double xi[2];
        grid.xi_at(k, xi);
        std::vector<cplx> col(grid.size());
        s.eval_column(grid, xi, col.data());
        double v = column_norm(col, r);
        std::lock_guard<std::mutex> lock(m);
        best = std::max(best, v);
    });
    return best;
}

double column_sobolev(const Grid& grid, std::vector<cplx> col, double sob) {
    return Field(grid, std::move(col)).sobolev(sob);
}

double column_wlinf(const Grid& grid, const std::vector<cplx>& col, int l) {
    if (l == 0) {
        double m = 0.0;
        for (const auto& v : col) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<cplx> spec(col.size());
    fft::forward(grid, col.data(), spec.data());
    double best = 0.0;
    std::vector<cplx> work(col.size()), back(col.size());
    double eta[2];
    for (const auto& alpha : multi_indices_upto(grid.dim(), l)) {
        for (std::size_t i = 0; i < spec.size(); ++i) {
            grid.xi_at(i, eta);
            cplx m(1.0, 0.0);
            for (int ax = 0; ax < grid.dim(); ++ax)
                for (int k = 0; k < alpha.b[ax]; ++k) m *= cplx(0.0, eta[ax]);
            work[i] = spec[i] * m;
        }
        fft::backward(grid, work.data(), back.data());
        double inv = 1.0 / static_cast<double>(grid.size());
        for (const auto& v : back) best = std::max(best, std::abs(v) * inv);
    }
    return best;
}

void check_low_regularity(const Symbol& s, int k, const char* what) {
    if (k > s.k_reg())
        throw ClassViolationError(std::string(what) + ": k exceeds regularity at the origin of " +
                                  s.name());
}

}  // namespace

Symbol x_derivative(const Symbol& s, const MultiIndex& alpha) {
    if (alpha.order() == 0) return s;
    return Symbol(std::make_shared<XDerivImpl>(s.impl(), alpha));
}

double seminorm_N(const Grid& grid, const Symbol& s, int k, double sob) {
    const double m = s.order();
    double best = 0.0;
    for (const auto& beta : multi_indices_upto(grid.dim(), k)) {
        Symbol ds = s.xi_derivative(beta, grid.dxi());
        double v = sup_over_xi(grid, ds, 0.25, grid.xi_guard(),
                               [&](std::vector<cplx>& col, double r) {
                                   double w = std::pow(1.0 + r * r, 0.5 * (beta.order() - m));
                                   return w * column_sobolev(grid, std::move(col), sob);
                               });
        best = std::max(best, v);
    }
    return best;
}

double seminorm_M(const Grid& grid, const Symbol& s, int k, int l) {
    const double m = s.order();
    double best = 0.0;
    for (const auto& beta : multi_indices_upto(grid.dim(), k)) {
        Symbol ds = s.xi_derivative(beta, grid.dxi());
        double v = sup_over_xi(grid, ds, 0.25, grid.xi_guard(),
                               [&](const std::vector<cplx>& col, double r) {
                                   double w = std::pow(1.0 + r * r, 0.5 * (beta.order() - m));
                                   return w * column_wlinf(grid, col, l);
                               });
        best = std::max(best, v);
    }
    return best;
}

double seminorm_low_n(const Grid& grid, const Symbol& s, int k, double sob) {
    check_low_regularity(s, k, "n_{k,s}");
    double best = 0.0;
    for (const auto& beta : multi_indices_upto(grid.dim(), k)) {
        Symbol ds = s.xi_derivative(beta, grid.dxi());
        double v = sup_over_xi(grid, ds, 0.0, 1.0, [&](std::vector<cplx>& col, double) {
            return column_sobolev(grid, std::move(col), sob);
        });
        best = std::max(best, v);
    }
    return best;
}

double seminorm_low_m(const Grid& grid, const Symbol& s, int k) {
    check_low_regularity(s, k, "m_k");
    double best = 0.0;
    for (const auto& beta : multi_indices_upto(grid.dim(), k)) {
        Symbol ds = s.xi_derivative(beta, grid.dxi());
        double v = sup_over_xi(grid, ds, 0.0, 1.0, [&](const std::vector<cplx>& col, double) {
            return column_wlinf(grid, col, 0);
        });
        best = std::max(best, v);
    }
    return best;
}

namespace {

template <typename F>
double sup_over_gradx(const Grid& grid, const Symbol& s, int l, const F& fn) {
    if (l == 0) return fn(s);
    double best = 0.0;
    for (const auto& alpha : multi_indices_upto(grid.dim(), l))
        if (alpha.order() == l) best = std::max(best, fn(x_derivative(s, alpha)));
    return best;
}

}  // namespace

double seminorm_N_gradx(const Grid& grid, const Symbol& s, int l, int k, double sob) {
    return sup_over_gradx(grid, s, l,
                          [&](const Symbol& d) { return seminorm_N(grid, d, k, sob); });
}

double seminorm_M_gradx(const Grid& grid, const Symbol& s, int l, int k, int w) {
    return sup_over_gradx(grid, s, l,
                          [&](const Symbol& d) { return seminorm_M(grid, d, k, w); });
}

double seminorm_low_n_gradx(const Grid& grid, const Symbol& s, int l, int k, double sob) {
    return sup_over_gradx(grid, s, l,
                          [&](const Symbol& d) { return seminorm_low_n(grid, d, k, sob); });
}

int reg_k(int dim) { return 2 * (dim / 2) + 2; }
int class_k(int dim, int n) { return n + 2 + dim / 2 + dim; }

double norm_Hs(const Grid& grid, const Symbol& s, double sob) {
    return 0.5 * (seminorm_low_n(grid, s, 0, sob) + seminorm_N(grid, s, reg_k(grid.dim()), sob));
}

double norm_Hs_reg(const Grid& grid, const Symbol& s, double sob) {
    int k = reg_k(grid.dim());
    return 0.5 * (seminorm_low_n(grid, s, k, sob) + seminorm_N(grid, s, k, sob));
}

double norm_inf_m(const Grid& grid, const Symbol& s) {
    int d = grid.dim();
    return 0.5 * (seminorm_low_m(grid, s, d) + seminorm_M(grid, s, d, 0));
}

double norm_Hs_n(const Grid& grid, const Symbol& s, int n, double sob) {
    return 0.5 * (seminorm_low_n(grid, s, n, sob) +
                  seminorm_N(grid, s, class_k(grid.dim(), n), sob));
}

double norm_Wkinf_n(const Grid& grid, const Symbol& s, int n, int k) {
    return 0.5 * (seminorm_low_m(grid, s, n) +
                  seminorm_M(grid, s, class_k(grid.dim(), n), k));
}

double norm_Wkinf(const Grid& grid, const Symbol& s, int k) {
    return 0.5 * (seminorm_low_m(grid, s, 0) + seminorm_M(grid, s, grid.dim(), k));
}

SeminormReport seminorm_report(const Grid& grid, const Symbol& s, double sob) {
    SeminormReport rep;
    rep.symbol = s.name();
    rep.order = s.order();
    int rk = reg_k(grid.dim());
    rep.entries.push_back({"N", 0, 0, sob, seminorm_N(grid, s, 0, sob)});
    rep.entries.push_back({"N", rk, 0, sob, seminorm_N(grid, s, rk, sob)});
    rep.entries.push_back({"M", grid.dim(), 0, 0.0, seminorm_M(grid, s, grid.dim(), 0)});
    rep.entries.push_back({"n", 0, 0, sob, seminorm_low_n(grid, s, 0, sob)});
    if (s.k_reg() >= rk) {
        rep.entries.push_back({"n", rk, 0, sob, seminorm_low_n(grid, s, rk, sob)});
        rep.entries.push_back({"Hs_reg", rk, 0, sob, norm_Hs_reg(grid, s, sob)});
    }
    rep.entries.push_back({"m", 0, 0, 0.0, seminorm_low_m(grid, s, 0)});
    rep.entries.push_back({"Hs", 0, 0, sob, norm_Hs(grid, s, sob)});
    if (s.k_reg() >= grid.dim())
        rep.entries.push_back({"inf", grid.dim(), 0, 0.0, norm_inf_m(grid, s)});
    return rep;
}

}  // namespace paracalc
