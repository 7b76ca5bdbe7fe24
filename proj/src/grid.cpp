#include "paracalc/grid.hpp"

#include <cmath>

namespace paracalc {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int d, int n_pts, double length) : d_(d), n_(n_pts), L_(length) {
    if (d != 1 && d != 2) throw ConfigError("grid dimension must be 1 or 2");
    if (!is_power_of_two(n_pts)) throw ConfigError("n_pts must be a power of two");
    if (n_pts < 8) throw ConfigError("n_pts too small");
    if (!(length > 0.0)) throw ConfigError("period L must be positive");
    // The |xi| = 1 shell must be resolvable (build_filter_bank precondition).
    if (xi_max() < 1.0) throw ConfigError("grid too coarse to resolve the |xi|=1 shell");
    size_ = 1;
    for (int i = 0; i < d_; ++i) size_ *= static_cast<std::size_t>(n_);
}

Grid Grid::make_default(int d) {
    if (d == 1) return Grid(1, 1024, 32.0 * kPi);
    return Grid(2, 64, 8.0 * kPi);
}

double Grid::xi_max_euclid() const {
    return xi_max() * std::sqrt(static_cast<double>(d_));
}

void Grid::x_at(std::size_t flat, double out[2]) const {
    double h = dx();
    if (d_ == 1) {
        out[0] = h * static_cast<double>(flat);
        out[1] = 0.0;
    } else {
        out[0] = h * static_cast<double>(flat / static_cast<std::size_t>(n_));
        out[1] = h * static_cast<double>(flat % static_cast<std::size_t>(n_));
    }
}

void Grid::xi_at(std::size_t flat, double out[2]) const {
    double s = dxi();
    if (d_ == 1) {
        out[0] = s * freq_index(static_cast<int>(flat));
        out[1] = 0.0;
    } else {
        out[0] = s * freq_index(static_cast<int>(flat / static_cast<std::size_t>(n_)));
        out[1] = s * freq_index(static_cast<int>(flat % static_cast<std::size_t>(n_)));
    }
}

double Grid::xi_norm_at(std::size_t flat) const {
    double xi[2];
    xi_at(flat, xi);
    return d_ == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

}  // namespace paracalc
