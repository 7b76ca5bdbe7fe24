#include "paracalc/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace paracalc {

void SymbolImpl::eval_column(const Grid& grid, const double* xi, cplx* out) const {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = eval(grid, i, xi);
}

std::shared_ptr<const SymbolImpl> SymbolImpl::analytic_xi_derivative(const MultiIndex&) const {
    throw CapabilityError("no analytic xi-derivative for symbol " + name_);
}

double Symbol::order() const { return impl_->order(); }
int Symbol::k_reg() const { return impl_->k_reg(); }
bool Symbol::is_multiplier() const { return impl_->is_multiplier(); }
bool Symbol::is_function() const { return impl_->is_function(); }
const std::string& Symbol::name() const { return impl_->name(); }

cplx Symbol::eval(const Grid& grid, std::size_t x_flat, const double* xi) const {
    return impl_->eval(grid, x_flat, xi);
}

void Symbol::eval_column(const Grid& grid, const double* xi, cplx* out) const {
    impl_->eval_column(grid, xi, out);
}

std::vector<cplx> Symbol::column(const Grid& grid, const double* xi) const {
    std::vector<cplx> out(grid.size());
    impl_->eval_column(grid, xi, out.data());
    return out;
}

bool Symbol::has_analytic_xi_derivative(const MultiIndex& beta) const {
    return impl_->has_analytic_xi_derivative(beta);
}

bool Symbol::fd_unreliable_near_origin() const { return impl_->fd_flagged(); }

// ---------------------------------------------------------------------------
// Finite-difference derivative wrapper (first order, 4th-order stencil).
// Higher orders are taken by peeling one axis-unit at a time; the wrapped
// base keeps as much of the derivative analytic as the symbol offers.
// ---------------------------------------------------------------------------

namespace {

class Fd1Impl final : public SymbolImpl {
  public:
    Fd1Impl(std::shared_ptr<const SymbolImpl> base, int axis, double step)
        : SymbolImpl(base->name() + "'", base->order() - 1.0, base->k_reg(),
                     base->is_multiplier(), false),
          base_(std::move(base)), axis_(axis), step_(step) {
        is_function_ = false;
        flagged_ = base_->fd_flagged() || base_->k_reg() < 1;
    }

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        double q[2] = {xi[0], xi[1]};
        auto at = [&](double offset) {
            q[axis_] = xi[axis_] + offset;
            return base_->eval(grid, ix, q);
        };
        cplx v = -at(2.0 * step_) + 8.0 * at(step_) - 8.0 * at(-step_) + at(-2.0 * step_);
        return v / (12.0 * step_);
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        std::vector<cplx> buf(grid.size());
        double q[2] = {xi[0], xi[1]};
        const double offs[4] = {2.0 * step_, step_, -step_, -2.0 * step_};
        const double wts[4] = {-1.0, 8.0, -8.0, 1.0};
        std::fill(out, out + grid.size(), cplx(0.0, 0.0));
        for (int t = 0; t < 4; ++t) {
            q[axis_] = xi[axis_] + offs[t];
            base_->eval_column(grid, q, buf.data());
            double w = wts[t] / (12.0 * step_);
            for (std::size_t i = 0; i < grid.size(); ++i) out[i] += w * buf[i];
        }
    }

    bool fd_flagged() const override { return flagged_; }

  private:
    std::shared_ptr<const SymbolImpl> base_;
    int axis_;
    double step_;
    bool flagged_;
};

}  // namespace

Symbol Symbol::xi_derivative(const MultiIndex& beta, double fd_step) const {
    if (beta.order() == 0) return *this;
    if (is_function()) {
        // d_xi of an x-only symbol vanishes identically.
        return make_multiplier_expr("0", order() - beta.order(), {});
    }
    if (impl_->has_analytic_xi_derivative(beta))
        return Symbol(impl_->analytic_xi_derivative(beta));
    // Peel one unit off the axis with the largest remaining order; the
    // recursive base keeps the analytic part maximal.
    int axis = beta.b[0] >= beta.b[1] ? 0 : 1;
    MultiIndex rest = beta;
    rest.b[axis] -= 1;
    Symbol base = xi_derivative(rest, fd_step);
    return Symbol(std::make_shared<Fd1Impl>(base.impl(), axis, fd_step));
}

// ---------------------------------------------------------------------------
// Multiplier expressions: sums of c * xi^a * <xi>^b
// ---------------------------------------------------------------------------

namespace {

class MultiplierExprImpl final : public SymbolImpl {
  public:
    MultiplierExprImpl(std::string name, double order, std::vector<MultiplierTerm> terms)
        : SymbolImpl(std::move(name), order, kInfReg, true, terms.empty()),
          terms_(std::move(terms)) {}

    cplx eval(const Grid&, std::size_t, const double* xi) const override {
        double r2 = xi[0] * xi[0] + xi[1] * xi[1];
        cplx acc(0.0, 0.0);
        for (const auto& t : terms_) {
            double mono = 1.0;
            for (int ax = 0; ax < 2; ++ax)
                for (int k = 0; k < t.mono.b[ax]; ++k) mono *= xi[ax];
            acc += t.coeff * mono * std::pow(1.0 + r2, 0.5 * t.ang_pow);
        }
        return acc;
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        cplx v = eval(grid, 0, xi);
        std::fill(out, out + grid.size(), v);
    }

    bool has_analytic_xi_derivative(const MultiIndex&) const override { return true; }

    std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex& beta) const override {
        std::vector<MultiplierTerm> cur = terms_;
        for (int ax = 0; ax < 2; ++ax)
            for (int k = 0; k < beta.b[ax]; ++k) cur = differentiate(cur, ax);
        return std::make_shared<MultiplierExprImpl>(name_ + "_d", order_ - beta.order(),
                                                    std::move(cur));
    }

    static std::vector<MultiplierTerm> differentiate(const std::vector<MultiplierTerm>& in,
                                                     int axis) {
        std::vector<MultiplierTerm> out;
        for (const auto& t : in) {
            if (t.mono.b[axis] > 0) {
                MultiplierTerm u = t;
                u.coeff *= static_cast<double>(t.mono.b[axis]);
                u.mono.b[axis] -= 1;
                out.push_back(u);
            }
            if (t.ang_pow != 0.0) {
                MultiplierTerm u = t;
                u.coeff *= t.ang_pow;
                u.mono.b[axis] += 1;
                u.ang_pow -= 2.0;
                out.push_back(u);
            }
        }
        return out;
    }

  private:
    std::vector<MultiplierTerm> terms_;
};

}  // namespace

Symbol make_multiplier_expr(std::string name, double order,
                            std::vector<MultiplierTerm> terms) {
    return Symbol(std::make_shared<MultiplierExprImpl>(std::move(name), order, std::move(terms)));
}

Symbol make_angxi_multiplier(double m) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "angxi^%g", m);
    return make_multiplier_expr(buf, m, {MultiplierTerm{cplx(1.0, 0.0), {}, m}});
}

cplx eval_multiplier_terms(const std::vector<MultiplierTerm>& terms, const double* xi) {
    double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    cplx acc(0.0, 0.0);
    for (const auto& t : terms) {
        double mono = 1.0;
        for (int ax = 0; ax < 2; ++ax)
            for (int k = 0; k < t.mono.b[ax]; ++k) mono *= xi[ax];
        acc += t.coeff * mono * std::pow(1.0 + r2, 0.5 * t.ang_pow);
    }
    return acc;
}

std::vector<MultiplierTerm> differentiate_multiplier_terms(std::vector<MultiplierTerm> terms,
                                                           const MultiIndex& beta) {
    for (int ax = 0; ax < 2; ++ax)
        for (int k = 0; k < beta.b[ax]; ++k)
            terms = MultiplierExprImpl::differentiate(terms, ax);
    return terms;
}

// ---------------------------------------------------------------------------
// Profile multipliers
// ---------------------------------------------------------------------------

namespace {

class ProfileMultiplierImpl final : public SymbolImpl {
  public:
    ProfileMultiplierImpl(std::string name, double order, int k_reg, XiProfile profile)
        : SymbolImpl(std::move(name), order, k_reg, true, false),
          profile_(std::move(profile)) {}

    cplx eval(const Grid&, std::size_t, const double* xi) const override {
        return profile_(xi);
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        cplx v = profile_(xi);
        std::fill(out, out + grid.size(), v);
    }

  private:
    XiProfile profile_;
};

}  // namespace

Symbol make_profile_multiplier(std::string name, double order, int k_reg,
                               XiProfile profile) {
    return Symbol(std::make_shared<ProfileMultiplierImpl>(std::move(name), order, k_reg,
                                                          std::move(profile)));
}

// ---------------------------------------------------------------------------
// Function symbols
// ---------------------------------------------------------------------------

namespace {

class FunctionSymbolImpl final : public SymbolImpl {
  public:
    FunctionSymbolImpl(std::string name, Field a)
        : SymbolImpl(std::move(name), 0.0, kInfReg, false, true), a_(std::move(a)) {}

    cplx eval(const Grid& grid, std::size_t ix, const double*) const override {
        if (!grid.same_as(a_.grid())) throw InputError("function symbol grid mismatch");
        return a_.samples()[ix];
    }

    void eval_column(const Grid& grid, const double*, cplx* out) const override {
        if (!grid.same_as(a_.grid())) throw InputError("function symbol grid mismatch");
        std::copy(a_.samples().begin(), a_.samples().end(), out);
    }

    bool has_analytic_xi_derivative(const MultiIndex&) const override { return true; }

    std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex& beta) const override {
        if (beta.order() == 0) return std::make_shared<FunctionSymbolImpl>(*this);
        return std::make_shared<MultiplierExprImpl>("0", -beta.order(),
                                                    std::vector<MultiplierTerm>{});
    }

  private:
    Field a_;
};

}  // namespace

Symbol make_function_symbol(std::string name, const Field& a) {
    return Symbol(std::make_shared<FunctionSymbolImpl>(std::move(name), a));
}

// ---------------------------------------------------------------------------
// Separable sums
// ---------------------------------------------------------------------------

namespace {

class SeparableSumImpl final : public SymbolImpl {
  public:
    SeparableSumImpl(std::string name, double order, int k_reg,
                     std::vector<std::pair<Field, Symbol>> terms)
        : SymbolImpl(std::move(name), order, k_reg, false, false),
          terms_(std::move(terms)) {}

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        cplx acc(0.0, 0.0);
        for (const auto& [a, b] : terms_) {
            if (!grid.same_as(a.grid())) throw InputError("separable symbol grid mismatch");
            acc += a.samples()[ix] * b.eval(grid, 0, xi);
        }
        return acc;
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        std::fill(out, out + grid.size(), cplx(0.0, 0.0));
        for (const auto& [a, b] : terms_) {
            if (!grid.same_as(a.grid())) throw InputError("separable symbol grid mismatch");
            cplx bv = b.eval(grid, 0, xi);
            const auto& s = a.samples();
            for (std::size_t i = 0; i < s.size(); ++i) out[i] += s[i] * bv;
        }
    }

    bool has_analytic_xi_derivative(const MultiIndex& beta) const override {
        return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
            return t.second.has_analytic_xi_derivative(beta);
        });
    }

    std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex& beta) const override {
        std::vector<std::pair<Field, Symbol>> out;
        out.reserve(terms_.size());
        for (const auto& [a, b] : terms_)
            out.emplace_back(a, Symbol(b.impl()->analytic_xi_derivative(beta)));
        return std::make_shared<SeparableSumImpl>(name_ + "_d", order_ - beta.order(), k_reg_,
                                                  std::move(out));
    }

    const std::vector<std::pair<Field, Symbol>>& terms() const { return terms_; }

  private:
    std::vector<std::pair<Field, Symbol>> terms_;
};

}  // namespace

Symbol make_separable_sum(std::string name, double order, int k_reg,
                          std::vector<std::pair<Field, Symbol>> terms) {
    return Symbol(std::make_shared<SeparableSumImpl>(std::move(name), order, k_reg,
                                                     std::move(terms)));
}

// ---------------------------------------------------------------------------
// Grid-sampled symbols
// ---------------------------------------------------------------------------

namespace {

class GridSampledImpl final : public SymbolImpl {
  public:
    GridSampledImpl(std::string name, double order, int k_reg, bool is_mult, bool is_fn,
                    const Grid& grid, std::vector<cplx> data)
        : SymbolImpl(std::move(name), order, k_reg, is_mult, is_fn),
          grid_(grid), data_(std::move(data)) {
        if (data_.size() != grid_.size() * grid_.size())
            throw InputError("grid-sampled symbol: bad data size");
    }

    std::size_t xi_flat(const Grid& grid, const double* xi) const {
        const double s = grid.dxi();
        std::size_t flat = 0;
        for (int ax = 0; ax < grid.dim(); ++ax) {
            double kf = xi[ax] / s;
            long k = std::lround(kf);
            if (std::abs(kf - static_cast<double>(k)) > 1e-9)
                throw CapabilityError("grid-sampled symbol evaluated off the xi-lattice");
            long n = grid.n();
            long j = ((k % n) + n) % n;
            flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
        }
        return flat;
    }

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        if (!grid.same_as(grid_)) throw InputError("grid-sampled symbol grid mismatch");
        return data_[xi_flat(grid, xi) * grid_.size() + ix];
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        if (!grid.same_as(grid_)) throw InputError("grid-sampled symbol grid mismatch");
        const cplx* col = data_.data() + xi_flat(grid, xi) * grid_.size();
        std::copy(col, col + grid_.size(), out);
    }

  private:
    Grid grid_;
    std::vector<cplx> data_;
};

}  // namespace

Symbol make_grid_sampled(std::string name, double order, int k_reg, bool is_multiplier,
                         bool is_function, const Grid& grid, std::vector<cplx> data_xi_major) {
    return Symbol(std::make_shared<GridSampledImpl>(std::move(name), order, k_reg, is_multiplier,
                                                    is_function, grid, std::move(data_xi_major)));
}

Symbol sample_on_grid(const Symbol& s, const Grid& grid) {
    std::vector<cplx> data(grid.size() * grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        double xi[2];
        grid.xi_at(k, xi);
        s.eval_column(grid, xi, data.data() + k * grid.size());
    });
    return make_grid_sampled(s.name(), s.order(), s.k_reg(), s.is_multiplier(),
                             s.is_function(), grid, std::move(data));
}

}  // namespace paracalc
