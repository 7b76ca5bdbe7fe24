#include <algorithm>
#include <cmath>

#include "paracalc/symbol.hpp"

namespace paracalc {

namespace {

class CompositeImpl final : public SymbolImpl {
  public:
    CompositeImpl(std::string name, OuterFn outer, std::vector<Field> inner,
                  MultiIndex beta)
        : SymbolImpl(std::move(name), outer.order - beta.order(), outer.k_reg,
                     false, false),
          outer_(std::move(outer)), inner_(std::move(inner)), beta_(beta) {}

    const std::function<cplx(const double*, const double*, int)>& fn() const {
        if (beta_.order() == 0) return outer_.eval;
        auto it = outer_.xi_derivs.find({beta_.b[0], beta_.b[1]});
        if (it == outer_.xi_derivs.end())
            throw CapabilityError("composite symbol lacks analytic derivative");
        return it->second;
    }

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        double v[4];
        gather(grid, ix, v);
        return fn()(v, xi, grid.dim());
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        const auto& f = fn();
        double v[4];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            gather(grid, i, v);
            out[i] = f(v, xi, grid.dim());
        }
    }

    bool has_analytic_xi_derivative(const MultiIndex& beta) const override {
        if (beta_.order() != 0) return false;  // derivatives are taken from the base
        return outer_.xi_derivs.count({beta.b[0], beta.b[1]}) > 0;
    }

    std::shared_ptr<const SymbolImpl> analytic_xi_derivative(const MultiIndex& beta) const override {
        if (!has_analytic_xi_derivative(beta))
            throw CapabilityError("composite symbol lacks analytic derivative");
        return std::make_shared<CompositeImpl>(name_ + "_d", outer_, inner_, beta);
    }

  private:
    void gather(const Grid& grid, std::size_t ix, double* v) const {
        for (std::size_t c = 0; c < inner_.size(); ++c) {
            if (!grid.same_as(inner_[c].grid()))
                throw InputError("composite symbol grid mismatch");
            v[c] = inner_[c].samples()[ix].real();
        }
    }

    OuterFn outer_;
    std::vector<Field> inner_;
    MultiIndex beta_;
};

// tau(x, xi) = Outer(v(x), xi) - Outer(0, xi), sharing the outer derivatives.
OuterFn subtract_at_zero(const OuterFn& outer) {
    OuterFn t = outer;
    const int p = outer.p;
    t.eval = [p, f = outer.eval](const double* v, const double* xi, int d) {
        double z[4] = {0, 0, 0, 0};
        (void)p;
        return f(v, xi, d) - f(z, xi, d);
    };
    for (auto& [key, f] : t.xi_derivs) {
        t.xi_derivs[key] = [g = f](const double* v, const double* xi, int d) {
            double z[4] = {0, 0, 0, 0};
            return g(v, xi, d) - g(z, xi, d);
        };
    }
    return t;
}

}  // namespace

CompositeSymbol::CompositeSymbol(std::string name, OuterFn outer, std::vector<Field> inner)
    : name_(std::move(name)), outer_(std::move(outer)), inner_(std::move(inner)) {
    if (inner_.empty() || static_cast<int>(inner_.size()) != outer_.p)
        throw InputError("composite symbol: inner tuple size must match outer arity");
    if (outer_.p > 4) throw InputError("composite symbol: at most 4 inner components");
}

Symbol CompositeSymbol::as_symbol() const {
    return Symbol(std::make_shared<CompositeImpl>(name_, outer_, inner_, MultiIndex{}));
}

double CompositeSymbol::inner_sup() const {
    double best = 0.0;
    for (std::size_t i = 0; i < grid().size(); ++i) {
        double s = 0.0;
        for (const auto& f : inner_) {
            double t = f.samples()[i].real();
            s += t * t;
        }
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

double CompositeSymbol::inner_sobolev(double s) const {
    double acc = 0.0;
    for (const auto& f : inner_) {
        double n = f.sobolev(s);
        acc += n * n;
    }
    return std::sqrt(acc);
}

double CompositeSymbol::inner_wkinf(int k) const {
    double best = 0.0;
    for (const auto& f : inner_) {
        for (const auto& alpha : multi_indices_upto(grid().dim(), k))
            best = std::max(best, spectral_derivative(f, alpha).linf());
    }
    return best;
}

CompositeSplit split_composite(const CompositeSymbol& cs) {
    const Grid& g = cs.grid();
    const OuterFn& outer = cs.outer();

    // The low-frequency multiplier OuterFn(0, .), validated on the lattice.
    XiProfile mult = [f = outer.eval, d = g.dim()](const double* xi) {
        double z[4] = {0, 0, 0, 0};
        return f(z, xi, d);
    };
    double xi[2];
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.xi_at(k, xi);
        cplx m = mult(xi);
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
            throw InputError("split_composite: Outer(0, xi) not finite on the lattice");
    }

    CompositeSplit out;
    out.tau = Symbol(std::make_shared<CompositeImpl>(cs.name() + "_tau",
                                                     subtract_at_zero(outer), cs.inner(),
                                                     MultiIndex{}));
    out.multiplier = make_profile_multiplier(cs.name() + "_mult", outer.order, outer.k_reg,
                                             std::move(mult));
    return out;
}

// ---------------------------------------------------------------------------
// Water-wave (Dirichlet-Neumann) symbol
// ---------------------------------------------------------------------------

namespace {

// Q(v, xi) = (1+|v|^2)|xi|^2 - (v.xi)^2 and its xi-derivatives. Q >= |xi|^2
// by Cauchy-Schwarz, so the square root is real.
struct DnQ {
    double q;
    double qi[2];
    double qij[2][2];
};

DnQ dn_q(const double* v, const double* xi, int d) {
    double g = 1.0, vdotxi = 0.0, xi2 = 0.0;
    for (int a = 0; a < d; ++a) {
        g += v[a] * v[a];
        vdotxi += v[a] * xi[a];
        xi2 += xi[a] * xi[a];
    }
    DnQ out{};
    out.q = g * xi2 - vdotxi * vdotxi;
    for (int a = 0; a < d; ++a) {
        out.qi[a] = 2.0 * g * xi[a] - 2.0 * vdotxi * v[a];
        for (int b = 0; b < d; ++b)
            out.qij[a][b] = 2.0 * g * (a == b ? 1.0 : 0.0) - 2.0 * v[a] * v[b];
    }
    return out;
}

cplx dn_eval(const double* v, const double* xi, int d) {
    return std::sqrt(std::max(dn_q(v, xi, d).q, 0.0));
}

cplx dn_d1(int i, const double* v, const double* xi, int d) {
    DnQ q = dn_q(v, xi, d);
    return q.qi[i] / (2.0 * std::sqrt(q.q));
}

cplx dn_d2(int i, int j, const double* v, const double* xi, int d) {
    DnQ q = dn_q(v, xi, d);
    double s = std::sqrt(q.q);
    return q.qij[i][j] / (2.0 * s) - q.qi[i] * q.qi[j] / (4.0 * q.q * s);
}

cplx dn_d3(int i, int j, int k, const double* v, const double* xi, int d) {
    DnQ q = dn_q(v, xi, d);
    double s15 = std::pow(q.q, 1.5);
    double s25 = std::pow(q.q, 2.5);
    return -(q.qij[i][j] * q.qi[k] + q.qij[i][k] * q.qi[j] + q.qij[j][k] * q.qi[i]) /
               (4.0 * s15) +
           3.0 * q.qi[i] * q.qi[j] * q.qi[k] / (8.0 * s25);
}

// Axis list of a multi-index, e.g. (2,1) -> {0,0,1}.
std::vector<int> axes_of(int b0, int b1) {
    std::vector<int> ax;
    for (int k = 0; k < b0; ++k) ax.push_back(0);
    for (int k = 0; k < b1; ++k) ax.push_back(1);
    return ax;
}

}  // namespace

CompositeSymbol dn_symbol(const Field& a) {
    const Grid& g = a.grid();
    std::vector<Field> grad;
    for (int ax = 0; ax < g.dim(); ++ax)
        grad.push_back(spectral_derivative(a, MultiIndex::axis(ax)));

    OuterFn outer;
    outer.p = g.dim();
    outer.order = 1.0;
    outer.k_reg = 0;  // first xi-derivatives are singular at the origin
    outer.eval = dn_eval;
    for (int b0 = 0; b0 <= 3; ++b0) {
        for (int b1 = 0; b1 <= 3 - b0; ++b1) {
            if (b0 + b1 == 0) continue;
            auto ax = axes_of(b0, b1);
            if (ax.size() == 1) {
                outer.xi_derivs[{b0, b1}] = [i = ax[0]](const double* v, const double* xi, int d) {
                    return dn_d1(i, v, xi, d);
                };
            } else if (ax.size() == 2) {
                outer.xi_derivs[{b0, b1}] = [i = ax[0], j = ax[1]](const double* v,
                                                                  const double* xi, int d) {
                    return dn_d2(i, j, v, xi, d);
                };
            } else {
                outer.xi_derivs[{b0, b1}] = [i = ax[0], j = ax[1], k = ax[2]](
                                                const double* v, const double* xi, int d) {
                    return dn_d3(i, j, k, v, xi, d);
                };
            }
        }
    }
    return CompositeSymbol("dn", std::move(outer), std::move(grad));
}

double composite_class_constant(const CompositeSymbol& cs, double radius) {
    const Grid& g = cs.grid();
    const OuterFn& outer = cs.outer();
    const int d = g.dim();
    const double m = outer.order;
    const double hv = std::max(radius, 0.25) / 8.0;  // v-difference step

    // Sample v on a small ball grid and xi on a dyadic sweep of directions.
    std::vector<std::vector<double>> vs;
    if (outer.p == 1) {
        for (int i = -8; i <= 8; ++i) vs.push_back({radius * i / 8.0});
    } else {
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                std::vector<double> v = {radius * i / 4.0, radius * j / 4.0};
                if (std::hypot(v[0], v[1]) <= radius * 1.0001) vs.push_back(v);
            }
    }
    std::vector<double> radii;
    for (double r = 0.25; r <= g.xi_guard(); r *= 2.0) radii.push_back(r);

    auto outer_eval = [&](const std::vector<double>& v, const double* xi) {
        double vb[4] = {0, 0, 0, 0};
        for (std::size_t c = 0; c < v.size(); ++c) vb[c] = v[c];
        return outer.eval(vb, xi, d);
    };

    double best = 0.0;
    for (const auto& v0 : vs) {
        for (double r : radii) {
            double xi[2] = {r, 0.0};
            if (d == 2) {
                xi[0] = r / std::sqrt(2.0);
                xi[1] = r / std::sqrt(2.0);
            }
            // |alpha| <= 2 v-derivatives by central differences, |beta| <= 2
            // xi-derivatives the same way, weighted by <xi>^{|beta|-m}.
            for (int av = 0; av <= 2; ++av) {
                for (int bx = 0; bx <= 2; ++bx) {
                    double w = std::pow(1.0 + r * r, 0.5 * (bx - m));
                    double hx = std::max(r / 16.0, 1e-3);
                    auto fv = [&](double dv, double dx) {
                        std::vector<double> v = v0;
                        v[0] += dv;
                        double q[2] = {xi[0] + dx, xi[1]};
                        return outer_eval(v, q);
                    };
                    cplx val;
                    auto d1 = [&](auto f, double h) { return (f(h) - f(-h)) / (2.0 * h); };
                    auto d2c = [&](auto f, double h) {
                        return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
                    };
                    auto fx = [&](double dv) {
                        return [&, dv](double dx) { return fv(dv, dx); };
                    };
                    auto gx = [&](double dv) -> cplx {
                        if (bx == 0) return fv(dv, 0.0);
                        if (bx == 1) return d1(fx(dv), hx);
                        return d2c(fx(dv), hx);
                    };
                    if (av == 0) val = gx(0.0);
                    else if (av == 1) val = (gx(hv) - gx(-hv)) / (2.0 * hv);
                    else val = (gx(hv) - 2.0 * gx(0.0) + gx(-hv)) / (hv * hv);
                    best = std::max(best, w * std::abs(val));
                }
            }
        }
    }
    return best;
}

}  // namespace paracalc
