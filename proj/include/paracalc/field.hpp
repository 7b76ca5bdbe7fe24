#pragma once

#include <functional>
#include <vector>

#include "paracalc/common.hpp"
#include "paracalc/grid.hpp"

namespace paracalc {

/// Profile over the frequency lattice, evaluated at a point xi (length-2
/// buffer, second entry unused in d=1).
using XiProfile = std::function<cplx(const double* xi)>;

/// Complex function on the spatial lattice with a lazily computed discrete
/// spectrum. The lazy computation means concurrent first access to
/// spectrum() on a shared instance is not safe; force it before fanning a
/// field out to workers. Normalization (documented in the README):
///   hat u(xi_k) = h^d * sum_j u(x_j) e^{-i xi_k . x_j},      h = L/n
///   u(x_j)     = (2pi)^{-d} dxi^d * sum_k hat u(xi_k) e^{+i xi_k . x_j}
/// so the discrete Plancherel identity holds with constant one:
///   h^d sum |u|^2 = (2pi)^{-d} dxi^d sum |hat u|^2.
class Field {
  public:
    explicit Field(const Grid& grid);
    Field(const Grid& grid, std::vector<cplx> samples);

    static Field from_spectrum(const Grid& grid, std::vector<cplx> spectrum);

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    const std::vector<cplx>& spectrum() const;  // computed on first access

    cplx& sample(std::size_t i) { spectrum_valid_ = false; return samples_[i]; }

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(cplx c);

    /// Quadrature L2 norm: (h^d sum |u(x)|^2)^(1/2).
    double l2() const;
    double linf() const;
    /// ((2pi)^{-d} dxi^d sum <xi>^{2s} |hat u(xi)|^2)^(1/2).
    double sobolev(double s) const;
    /// L2 norm computed on the spectral side (Plancherel cross-check).
    double l2_spectral() const { return sobolev(0.0); }

  private:
    Grid grid_;
    std::vector<cplx> samples_;
    mutable std::vector<cplx> spectrum_;
    mutable bool spectrum_valid_ = false;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field a);

/// Pointwise product of spatial samples.
Field pointwise(const Field& a, const Field& b);

/// Fourier multiplier m(D)u: spectrum multiplied pointwise, samples
/// refreshed. Throws InputError on non-finite profile values.
Field apply_multiplier(const Field& u, const XiProfile& profile);
Field apply_multiplier(const Field& u, const std::vector<cplx>& profile_on_lattice);

/// Spectral partial derivative d^alpha u (multiplier (i xi)^alpha).
Field spectral_derivative(const Field& u, const MultiIndex& alpha);

/// Samples m(xi) over the frequency lattice.
std::vector<cplx> sample_profile(const Grid& grid, const XiProfile& profile);

/// Quadrature weights behind the norms: h^d for spatial sums and
/// (2pi)^{-d} dxi^d for spectral sums (Plancherel constant one).
double spatial_quadrature_weight(const Grid& grid);
double spectral_quadrature_weight(const Grid& grid);

/// Real-valued random band-limited field with |hat u(xi)| ~ <xi>^{-decay},
/// random phases, zero mean removed; deterministic in seed.
Field random_band_limited(const Grid& grid, double decay, std::uint64_t seed);

}  // namespace paracalc
