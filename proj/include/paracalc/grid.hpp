#pragma once

#include <cstddef>
#include <memory>

#include "paracalc/common.hpp"

namespace paracalc {

/// Periodic spatial/frequency lattice on the torus (R/LZ)^d, d in {1,2}.
///
/// Space lattice: x_j = j*h, h = L/n, j = 0..n-1 per axis.
/// Frequency lattice: xi_k = dxi*k, dxi = 2*pi/L, with the signed index
/// k in {-n/2, ..., n/2-1} per axis (standard FFT aliasing convention).
class Grid {
  public:
    Grid(int d, int n_pts, double length);

    static Grid make_default(int d);  // L = 32*pi (d=1), 8*pi (d=2)

    int dim() const { return d_; }
    int n() const { return n_; }
    double length() const { return L_; }
    double dx() const { return L_ / n_; }
    double dxi() const { return 2.0 * kPi / L_; }
    double xi_max() const { return kPi * n_ / L_; }  // per-axis Nyquist
    /// Largest Euclidean |xi| on the lattice (hits the corner in d=2).
    double xi_max_euclid() const;
    /// All sups over xi in seminorms exclude |xi| above this radius.
    double xi_guard() const { return 0.875 * xi_max(); }

    std::size_t size() const { return size_; }

    /// Signed frequency index along one axis for flat position j in [0,n).
    int freq_index(int j) const { return j < n_ / 2 ? j : j - n_; }

    void x_at(std::size_t flat, double out[2]) const;
    void xi_at(std::size_t flat, double out[2]) const;
    double xi_norm_at(std::size_t flat) const;

    bool same_as(const Grid& o) const {
        return d_ == o.d_ && n_ == o.n_ && L_ == o.L_;
    }

  private:
    int d_;
    int n_;
    double L_;
    std::size_t size_;
};

}  // namespace paracalc
