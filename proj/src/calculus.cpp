#include "paracalc/calculus.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "paracalc/seminorms.hpp"

namespace paracalc {

namespace {

cplx minus_i_pow(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

double alpha_factorial(const MultiIndex& a) { return factorial(a.b[0]) * factorial(a.b[1]); }

// Lazily evaluated linear combination of per-term products
// sum_t c_t * A_t(., xi) .* B_t(., xi), with per-column caching keyed by the
// lattice frequency index.
class ProductSumImpl final : public SymbolImpl {
  public:
    struct Term {
        cplx coeff;
        Symbol a, b;
    };

    ProductSumImpl(std::string name, double order, int k_reg, const Grid& grid,
                   std::vector<Term> terms)
        : SymbolImpl(std::move(name), order, k_reg, false, false),
          grid_(grid), terms_(std::move(terms)) {}

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        if (!grid.same_as(grid_)) throw InputError("expansion symbol grid mismatch");
        std::size_t key = xi_key(grid, xi);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                std::copy(it->second.begin(), it->second.end(), out);
                return;
            }
        }
        std::vector<cplx> col(grid.size(), cplx(0.0, 0.0));
        std::vector<cplx> a(grid.size()), b(grid.size());
        for (const auto& t : terms_) {
            t.a.eval_column(grid, xi, a.data());
            t.b.eval_column(grid, xi, b.data());
            for (std::size_t i = 0; i < col.size(); ++i) col[i] += t.coeff * a[i] * b[i];
        }
        std::copy(col.begin(), col.end(), out);
        std::lock_guard<std::mutex> lock(mutex_);
        cache_.emplace(key, std::move(col));
    }

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        std::vector<cplx> col(grid.size());
        eval_column(grid, xi, col.data());
        return col[ix];
    }

  private:
    static std::size_t xi_key(const Grid& grid, const double* xi) {
        std::size_t key = 0;
        for (int ax = 0; ax < grid.dim(); ++ax) {
            double kf = xi[ax] / grid.dxi();
            long k = std::lround(kf);
            if (std::abs(kf - static_cast<double>(k)) > 1e-9)
                throw CapabilityError("expansion symbols evaluate on the xi-lattice only");
            long n = grid.n();
            key = key * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(((k % n) + n) % n);
        }
        return key;
    }

    Grid grid_;
    std::vector<Term> terms_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::size_t, std::vector<cplx>> cache_;
};

constexpr std::size_t kMaterializeLimit = std::size_t(8) << 20;  // lattice pairs

}  // namespace

Symbol sharp_n(const Grid& grid, const Symbol& s1, const Symbol& s2, int n) {
    if (n < 0 || n > 4) throw CapabilityError("sharp_n supports 0 <= n <= 4");
    const double order = s1.order() + s2.order();
    const int k_reg = std::min(s1.k_reg(), s2.k_reg());

    // Multiplier second factor: all x-derivatives vanish, the expansion is
    // the plain product for every n.
    const int n_eff = s2.is_multiplier() ? 0 : n;

    // Separable case: multiplier # function stays a small sum of
    // (x-field) x (multiplier) terms with exact evaluation everywhere.
    if (s1.is_multiplier() && s2.is_function()) {
        const double origin[2] = {0.0, 0.0};
        Field a(grid, s2.column(grid, origin));
        std::vector<std::pair<Field, Symbol>> terms;
        for (const auto& alpha : multi_indices_upto(grid.dim(), n_eff)) {
            cplx c = minus_i_pow(alpha.order()) / alpha_factorial(alpha);
            Field da = spectral_derivative(a, alpha);
            da *= c;
            terms.emplace_back(std::move(da), s1.xi_derivative(alpha, grid.dxi()));
        }
        return make_separable_sum(s1.name() + "#" + s2.name(), order, k_reg,
                                  std::move(terms));
    }

    std::vector<ProductSumImpl::Term> terms;
    for (const auto& alpha : multi_indices_upto(grid.dim(), n_eff)) {
        cplx c = minus_i_pow(alpha.order()) / alpha_factorial(alpha);
        terms.push_back({c, s1.xi_derivative(alpha, grid.dxi()), x_derivative(s2, alpha)});
    }
    Symbol lazy(std::make_shared<ProductSumImpl>(s1.name() + "#" + s2.name(), order, k_reg,
                                                 grid, std::move(terms)));
    if (grid.size() * grid.size() <= kMaterializeLimit) return sample_on_grid(lazy, grid);
    return lazy;
}

Symbol poisson_n(const Grid& grid, const Symbol& s1, const Symbol& s2, int n) {
    const double order = n >= 1 ? s1.order() + s2.order() - 1.0 : s1.order() + s2.order();
    const int k_reg = std::min(s1.k_reg(), s2.k_reg());
    if (n == 0 || (s1.is_multiplier() && s2.is_multiplier())) {
        // #_0 is the commutative pointwise product; the bracket vanishes.
        return make_multiplier_expr("{" + s1.name() + "," + s2.name() + "}", order, {});
    }
    Symbol a = sharp_n(grid, s1, s2, n);
    Symbol b = sharp_n(grid, s2, s1, n);
    std::vector<ProductSumImpl::Term> terms;
    Symbol one = make_multiplier_expr("1", 0.0, {MultiplierTerm{cplx(1.0, 0.0), {}, 0.0}});
    terms.push_back({cplx(1.0, 0.0), a, one});
    terms.push_back({cplx(-1.0, 0.0), b, one});
    Symbol lazy(std::make_shared<ProductSumImpl>(
        "{" + s1.name() + "," + s2.name() + "}_" + std::to_string(n), order, k_reg, grid,
        std::move(terms)));
    bool cheap_terms = (s1.is_multiplier() && s2.is_function()) ||
                       (s2.is_multiplier() && s1.is_function());
    if (!cheap_terms && grid.size() * grid.size() <= kMaterializeLimit)
        return sample_on_grid(lazy, grid);
    return lazy;
}

Field commutator_apply(const Symbol& s1, const Symbol& s2, const Field& u) {
    Field a = op_apply_dense(s1, op_apply_dense(s2, u));
    Field b = op_apply_dense(s2, op_apply_dense(s1, u));
    return a - b;
}

Field remainder_apply(const Symbol& s1, const Symbol& s2, const Symbol& bracket,
                      const Field& u) {
    return commutator_apply(s1, s2, u) - op_apply_dense(bracket, u);
}

Field remainder_apply(const Symbol& s1, const Symbol& s2, int n, const Field& u) {
    return remainder_apply(s1, s2, poisson_n(u.grid(), s1, s2, n), u);
}

Field composition_residual_apply(const Symbol& s1, const Symbol& s2, const Symbol& sharp,
                                 const Field& u) {
    return op_apply_dense(s1, op_apply_dense(s2, u)) - op_apply_dense(sharp, u);
}

Field composition_residual_apply(const Symbol& s1, const Symbol& s2, int n, const Field& u) {
    return composition_residual_apply(s1, s2, sharp_n(u.grid(), s1, s2, n), u);
}

}  // namespace paracalc
