#include "paracalc/wave_packets.hpp"

#include <cmath>

namespace paracalc {

namespace {
// erfc(y) < 1e-10 for y > 4.6; erfc(y) < 1e-4 for y > 2.76.
constexpr double kWrapArg = 4.6;
constexpr double kShellArg = 2.76;
}  // namespace

double default_packet_width(const Grid& grid, int j_lo) {
    double w_max = 0.5 * grid.length() / kWrapArg;           // wrap-around < 1e-10
    double w_min = kShellArg / (0.875 * std::ldexp(1.0, j_lo));  // shell mass >= 99.99%
    if (w_min > w_max)
        throw ConfigError("no Gaussian width satisfies the packet invariants on this grid");
    if (w_min <= 1.0 && 1.0 <= w_max) return 1.0;
    return std::sqrt(w_min * w_max);
}

double packet_shell_concentration(const FilterBank& bank, const Field& u, int j) {
    const Grid& g = bank.grid();
    double lo = j >= 3 ? std::ldexp(1.0, j - 3) : 0.0;
    double hi = std::ldexp(1.0, j + 3);
    const auto& spec = u.spectrum();
    double total = 0.0, inside = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double e = std::norm(spec[i]);
        total += e;
        double r = g.xi_norm_at(i);
        if (r >= lo && r <= hi) inside += e;
    }
    return total > 0.0 ? inside / total : 0.0;
}

WavePacketFamily wave_packets(const FilterBank& bank, int j_lo, int j_hi,
                              const double e[2], double w) {
    const Grid& g = bank.grid();
    if (j_lo > j_hi) throw ConfigError("wave_packets: empty j range");
    if (std::ldexp(1.0, j_hi) > g.xi_guard())
        throw ConfigError("wave_packets: carrier beyond the Nyquist guard");
    double en = g.dim() == 1 ? std::abs(e[0]) : std::hypot(e[0], e[1]);
    if (std::abs(en - 1.0) > 1e-12) throw ConfigError("wave_packets: direction must be unit");
    if (0.5 * g.length() / w < kWrapArg)
        throw ConfigError("wave_packets: envelope wrap-around mass exceeds 1e-10");

    WavePacketFamily fam;
    fam.direction[0] = e[0];
    fam.direction[1] = g.dim() == 2 ? e[1] : 0.0;
    fam.width = w;

    const double c = 0.5 * g.length();
    for (int j = j_lo; j <= j_hi; ++j) {
        double carrier = std::ldexp(1.0, j);
        std::vector<cplx> samples(g.size());
        double x[2];
        for (std::size_t i = 0; i < samples.size(); ++i) {
            g.x_at(i, x);
            double r2 = 0.0, phase = 0.0;
            for (int ax = 0; ax < g.dim(); ++ax) {
                double dxc = x[ax] - c;
                r2 += dxc * dxc;
                phase += carrier * fam.direction[ax] * x[ax];
            }
            samples[i] = std::polar(std::exp(-r2 / (2.0 * w * w)), phase);
        }
        Field u(g, std::move(samples));
        if (packet_shell_concentration(bank, u, j) < 0.9999)
            throw ConfigError("wave_packets: packet j=" + std::to_string(j) +
                              " misses the 99.99% shell-concentration invariant");
        fam.j.push_back(j);
        fam.u.push_back(std::move(u));
    }
    return fam;
}

}  // namespace paracalc
