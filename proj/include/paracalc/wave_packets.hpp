#pragma once

#include <vector>

#include "paracalc/field.hpp"
#include "paracalc/filter_bank.hpp"

namespace paracalc {

/// Modulated Gaussian probes u_j(x) = e^{i 2^j e.x} g(x - center), one per
/// carrier exponent j. Every packet keeps >= 99.99% of its spectral energy
/// in the dyadic shells |p - j| <= 2 and the envelope's wrap-around mass is
/// below 1e-10; construction fails otherwise.
struct WavePacketFamily {
    std::vector<int> j;       // carrier exponents
    std::vector<Field> u;     // one field per exponent
    double direction[2];      // unit vector e
    double width;             // Gaussian width parameter
};

/// Builds packets for j in [j_lo, j_hi] with direction e (unit vector) and
/// envelope width w. Throws ConfigError when a carrier exceeds the Nyquist
/// guard or an invariant cannot be met on this grid.
WavePacketFamily wave_packets(const FilterBank& bank, int j_lo, int j_hi,
                              const double e[2], double w);

/// Width that satisfies both packet invariants on this grid for the given
/// j range, or throws ConfigError when none exists.
double default_packet_width(const Grid& grid, int j_lo);

/// Fraction of spectral energy inside the shells |p - j| <= 2.
double packet_shell_concentration(const FilterBank& bank, const Field& u, int j);

}  // namespace paracalc
