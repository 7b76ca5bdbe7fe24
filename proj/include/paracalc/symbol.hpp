#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paracalc/field.hpp"
#include "paracalc/filter_bank.hpp"
#include "paracalc/grid.hpp"

namespace paracalc {

/// Sentinel regularity degree for symbols smooth at the origin in xi.
constexpr int kInfReg = 1 << 20;

class SymbolImpl;

/// A symbol sigma(x, xi) of a given order. Spatial evaluation is by lattice
/// index (symbols that carry coefficient fields are only defined on their
/// grid); xi may be any point unless the symbol is grid-sampled.
///
/// xi-derivatives prefer analytic evaluators and complete the remaining
/// orders with 4th-order central differences of step fd_step.
class Symbol {
  public:
    Symbol() = default;
    explicit Symbol(std::shared_ptr<const SymbolImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    double order() const;
    int k_reg() const;
    bool is_multiplier() const;
    bool is_function() const;
    const std::string& name() const;

    cplx eval(const Grid& grid, std::size_t x_flat, const double* xi) const;
    /// sigma(., xi) over the whole x-lattice.
    void eval_column(const Grid& grid, const double* xi, cplx* out) const;
    std::vector<cplx> column(const Grid& grid, const double* xi) const;

    bool has_analytic_xi_derivative(const MultiIndex& beta) const;
    /// d_xi^beta sigma as a symbol of order (order - |beta|).
    Symbol xi_derivative(const MultiIndex& beta, double fd_step) const;

    /// True when a finite-difference derivative was taken on a symbol that
    /// is not regular at the origin: values at |xi| < 1/4 are unreliable.
    bool fd_unreliable_near_origin() const;

    const std::shared_ptr<const SymbolImpl>& impl() const { return impl_; }

  private:
    std::shared_ptr<const SymbolImpl> impl_;
};

class SymbolImpl {
  public:
    SymbolImpl(std::string name, double order, int k_reg, bool is_multiplier,
               bool is_function)
        : name_(std::move(name)), order_(order), k_reg_(k_reg),
          is_multiplier_(is_multiplier), is_function_(is_function) {}
    virtual ~SymbolImpl() = default;

    virtual cplx eval(const Grid& grid, std::size_t x_flat, const double* xi) const = 0;
    virtual void eval_column(const Grid& grid, const double* xi, cplx* out) const;
    virtual bool has_analytic_xi_derivative(const MultiIndex&) const { return false; }
    virtual std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex&) const;
    virtual bool fd_flagged() const { return false; }

    const std::string& name() const { return name_; }
    double order() const { return order_; }
    int k_reg() const { return k_reg_; }
    bool is_multiplier() const { return is_multiplier_; }
    bool is_function() const { return is_function_; }

  protected:
    std::string name_;
    double order_;
    int k_reg_;
    bool is_multiplier_;
    bool is_function_;
};

// ---------------------------------------------------------------------------
// Concrete symbol families
// ---------------------------------------------------------------------------

/// Finite sum of terms c * xi^a * <xi>^b; closed under differentiation, so
/// all xi-derivatives are exact. Covers <xi>^m and polynomial multipliers.
struct MultiplierTerm {
    cplx coeff;
    MultiIndex mono;   // xi^a
    double ang_pow;    // <xi>^b
};

Symbol make_multiplier_expr(std::string name, double order,
                            std::vector<MultiplierTerm> terms);
Symbol make_angxi_multiplier(double m);  // <xi>^m

cplx eval_multiplier_terms(const std::vector<MultiplierTerm>& terms, const double* xi);
std::vector<MultiplierTerm> differentiate_multiplier_terms(std::vector<MultiplierTerm> terms,
                                                           const MultiIndex& beta);

/// Multiplier from an arbitrary profile; derivatives by finite differences.
Symbol make_profile_multiplier(std::string name, double order, int k_reg,
                               XiProfile profile);

/// x-only symbol sigma(x, xi) = a(x).
Symbol make_function_symbol(std::string name, const Field& a);

/// Separable sum sigma(x, xi) = sum_t A_t(x) * B_t(xi) with multiplier
/// factors B_t given as symbols (their analytic derivatives carry over).
Symbol make_separable_sum(std::string name, double order, int k_reg,
                          std::vector<std::pair<Field, Symbol>> terms);

/// Dense lattice samples, stored xi-major so sigma(., xi) is contiguous.
/// xi evaluation is restricted to lattice points; derivatives by finite
/// differences on the xi-lattice.
Symbol make_grid_sampled(std::string name, double order, int k_reg,
                         bool is_multiplier, bool is_function, const Grid& grid,
                         std::vector<cplx> data_xi_major);

/// Builds a grid-sampled symbol from any symbol by lattice evaluation.
Symbol sample_on_grid(const Symbol& s, const Grid& grid);

// ---------------------------------------------------------------------------
// Composite symbols sigma(x, xi) = OuterFn(v(x), xi)
// ---------------------------------------------------------------------------

/// Smooth outer function of (v, xi) with optional analytic xi-derivatives.
struct OuterFn {
    int p = 0;       // number of v components
    double order = 0.0;
    int k_reg = 0;
    std::function<cplx(const double* v, const double* xi, int d)> eval;
    /// Analytic xi-derivatives keyed by (b0, b1); optional.
    std::map<std::pair<int, int>, std::function<cplx(const double* v, const double* xi, int d)>>
        xi_derivs;
};

class CompositeSymbol {
  public:
    CompositeSymbol(std::string name, OuterFn outer, std::vector<Field> inner);

    const std::vector<Field>& inner() const { return inner_; }
    const OuterFn& outer() const { return outer_; }
    const Grid& grid() const { return inner_.front().grid(); }
    double order() const { return outer_.order; }

    Symbol as_symbol() const;

    /// max_x |v(x)| (Euclidean over components).
    double inner_sup() const;
    /// (sum_i |v_i|_{H^s}^2)^{1/2}.
    double inner_sobolev(double s) const;
    double inner_wkinf(int k) const;

    const std::string& name() const { return name_; }

  private:
    std::string name_;
    OuterFn outer_;
    std::vector<Field> inner_;
};

/// Water-wave symbol sqrt((1+|grad a|^2)|xi|^2 - (grad a . xi)^2), order 1,
/// analytic xi-derivatives to order 3, not regular at the origin.
CompositeSymbol dn_symbol(const Field& a);

/// Splits a composite into tau(x,xi) = sigma(x,xi) - OuterFn(0,xi) plus the
/// Fourier multiplier OuterFn(0, .). Throws InputError if the multiplier is
/// not finite at some lattice frequency.
struct CompositeSplit {
    Symbol tau;
    Symbol multiplier;
};
CompositeSplit split_composite(const CompositeSymbol& cs);

/// Empirical stand-in for the nondecreasing constants of the outer class:
/// max over |alpha| <= 2, |beta| <= 2 and sampled |v| <= radius, lattice xi
/// in [1/4, guard], of <xi>^{|beta|-m} |d_v^alpha d_xi^beta OuterFn|.
double composite_class_constant(const CompositeSymbol& cs, double radius);

}  // namespace paracalc
