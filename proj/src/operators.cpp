#include "paracalc/operators.hpp"

#include <algorithm>
#include <cmath>

#include "paracalc/fft.hpp"
#include "paracalc/wave_packets.hpp"

namespace paracalc {

namespace {

// Twiddle table e^{2pi i m / n}; phases x_j . xi_k reduce to table lookups
// with exact integer index arithmetic.
std::vector<cplx> twiddle_table(int n) {
    std::vector<cplx> t(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) t[m] = std::polar(1.0, 2.0 * kPi * m / n);
    return t;
}

}  // namespace

Field op_apply_dense(const Symbol& sym, const Field& u) {
    const Grid& g = u.grid();
    const auto& spec = u.spectrum();
    const int n = g.n();
    const std::size_t size = g.size();
    const double scale = std::pow(g.length(), -g.dim());
    const std::vector<cplx> tw = twiddle_table(n);

    // Fixed block partition: the merge order (and hence the floating-point
    // sum) is independent of the worker count.
    const int blocks = 16;
    const std::size_t per = (size + blocks - 1) / blocks;
    std::vector<std::vector<cplx>> partial(blocks);

    parallel_for(blocks, [&](std::size_t b) {
        std::size_t k_lo = b * per, k_hi = std::min(size, (b + 1) * per);
        if (k_lo >= k_hi) return;
        auto& acc = partial[b];
        acc.assign(size, cplx(0.0, 0.0));
        std::vector<cplx> col(size);
        double xi[2];
        for (std::size_t k = k_lo; k < k_hi; ++k) {
            g.xi_at(k, xi);
            sym.eval_column(g, xi, col.data());
            cplx checksum(0.0, 0.0);
            for (const auto& v : col) checksum += v;
            if (!std::isfinite(checksum.real()) || !std::isfinite(checksum.imag()))
                throw InputError("op_apply_dense: non-finite symbol values at a lattice xi");
            const cplx uk = spec[k] * scale;
            if (uk == cplx(0.0, 0.0)) continue;
            if (g.dim() == 1) {
                int kk = g.freq_index(static_cast<int>(k));
                int step = ((kk % n) + n) % n;
                int m = 0;
                for (std::size_t j = 0; j < size; ++j) {
                    acc[j] += col[j] * uk * tw[m];
                    m += step;
                    if (m >= n) m -= n;
                }
            } else {
                int k0 = g.freq_index(static_cast<int>(k / static_cast<std::size_t>(n)));
                int k1 = g.freq_index(static_cast<int>(k % static_cast<std::size_t>(n)));
                int s0 = ((k0 % n) + n) % n;
                int s1 = ((k1 % n) + n) % n;
                std::size_t j = 0;
                int base = 0;
                for (int j0 = 0; j0 < n; ++j0) {
                    int m = base;
                    for (int j1 = 0; j1 < n; ++j1, ++j) {
                        acc[j] += col[j] * uk * tw[m];
                        m += s1;
                        if (m >= n) m -= n;
                    }
                    base += s0;
                    if (base >= n) base -= n;
                }
            }
        }
    });

    std::vector<cplx> out(size, cplx(0.0, 0.0));
    for (const auto& acc : partial) {
        if (acc.empty()) continue;
        for (std::size_t j = 0; j < size; ++j) out[j] += acc[j];
    }
    return Field(g, std::move(out));
}

Field op_apply_component(const FourWaySplit& split, const std::string& which, const Field& u) {
    return op_apply_dense(split.component(which), u);
}

Field op_apply_elementary(const ElementarySymbols& es, const Field& u) {
    const Grid& g = u.grid();
    if (!g.same_as(es.grid())) throw InputError("op_apply_elementary: grid mismatch");

    // v = <D>^m u once; then per (k, q) a multiplier block and a pointwise
    // coefficient multiply.
    Field v = apply_multiplier(u, [&](const double* xi) {
        double r2 = xi[0] * xi[0] + xi[1] * xi[1];
        return cplx(std::pow(1.0 + r2, 0.5 * es.m()), 0.0);
    });
    const auto& vspec = v.spectrum();

    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    std::vector<cplx> block_spec(g.size()), block(g.size());
    const double inv = 1.0 / static_cast<double>(g.size());
    double xi[2];

    for (int q = es.q_min(); q <= es.q_max(); ++q) {
        for (int kf = 0; kf < es.k_count(); ++kf) {
            int k[2];
            es.k_of(kf, k);
            bool any = false;
            for (std::size_t i = 0; i < g.size(); ++i) {
                g.xi_at(i, xi);
                double xiq[2] = {std::ldexp(xi[0], -q), std::ldexp(xi[1], -q)};
                cplx lam = es.lambda_k(k, xiq);
                block_spec[i] = lam * vspec[i];
                any = any || lam != cplx(0.0, 0.0);
            }
            if (!any) continue;
            fft::backward(g, block_spec.data(), block.data());
            const auto& c = es.coeff(kf, q);
            double w = es.weight(k) * inv;
            for (std::size_t i = 0; i < g.size(); ++i) out[i] += w * c[i] * block[i];
        }
    }
    return Field(g, std::move(out));
}

double weighted_spectral_l1(const Field& u, double m) {
    const Grid& g = u.grid();
    const auto& spec = u.spectrum();
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double r = g.xi_norm_at(i);
        acc += std::pow(1.0 + r * r, 0.5 * m) * std::abs(spec[i]);
    }
    double quad = std::pow(g.dxi() / (2.0 * kPi), g.dim());
    return std::sqrt(std::pow(g.length(), g.dim())) * quad * acc;
}

ApplyPlan ApplyPlan::dense(const Grid& g) {
    double n = static_cast<double>(g.size());
    return {ApplyMode::dense, 8.0 * n * n};
}
ApplyPlan ApplyPlan::multiplier(const Grid& g) {
    double n = static_cast<double>(g.size());
    return {ApplyMode::multiplier, 10.0 * n * std::log2(n)};
}
ApplyPlan ApplyPlan::component(const Grid& g) {
    ApplyPlan p = dense(g);
    p.mode = ApplyMode::component;
    return p;
}
ApplyPlan ApplyPlan::elementary(const Grid& g, int K) {
    double n = static_cast<double>(g.size());
    double kq = std::pow(2.0 * K + 1.0, g.dim()) * (std::log2(g.xi_max_euclid()) + 2.0);
    return {ApplyMode::elementary, kq * 10.0 * n * std::log2(n)};
}

ProbeFamily default_probe_family(const FilterBank& bank, double s_in, int probes,
                                 std::uint64_t seed) {
    const Grid& g = bank.grid();
    ProbeFamily fam;
    double decay = s_in + 0.5 * g.dim() + 1.0;
    for (int i = 0; i < probes; ++i) {
        fam.fields.push_back(random_band_limited(g, decay, mix64(seed + 0x100 * i)));
        fam.labels.push_back("random " + std::to_string(i));
    }
    int j_hi = bank.p_max() - 2;
    int j_lo = 2;
    if (j_hi >= j_lo && std::ldexp(1.0, j_hi) <= g.xi_guard()) {
        try {
            double w = default_packet_width(g, j_lo);
            double e[2] = {1.0, 0.0};
            if (g.dim() == 2) {
                e[0] = 0.0;
                e[1] = 1.0;
            }
            WavePacketFamily packets = wave_packets(bank, j_lo, j_hi, e, w);
            for (std::size_t i = 0; i < packets.u.size(); ++i) {
                fam.fields.push_back(packets.u[i]);
                fam.labels.push_back("packet j=" + std::to_string(packets.j[i]));
            }
        } catch (const ConfigError&) {
            // No valid packet family on this grid: random probes only.
        }
    }
    return fam;
}

OperatorNormResult empirical_operator_norm(const FilterBank& bank, const ApplyFn& apply,
                                           double s_in, double s_out, int probes,
                                           std::uint64_t seed) {
    if (probes < 1) throw InputError("empirical_operator_norm: probes >= 1 required");
    ProbeFamily fam = default_probe_family(bank, s_in, probes, seed);
    OperatorNormResult res;
    for (std::size_t i = 0; i < fam.fields.size(); ++i) {
        double den = fam.fields[i].sobolev(s_in);
        if (den == 0.0) continue;  // zero-norm probe: skipped
        double num = apply(fam.fields[i]).sobolev(s_out);
        res.rows.push_back({static_cast<int>(i), fam.labels[i], num, den, num / den});
        if (num > 1e-13 * den) res.degenerate_zero = false;
        res.value = std::max(res.value, num / den);
    }
    return res;
}

double power_iteration_norm(const Grid& grid, const Symbol& sym, double s_in,
                            double s_out, int iters, std::uint64_t seed) {
    // A* w in the quadrature inner product: on the spectral side,
    // (A* w)^(xi_k) = h^d sum_x conj(sigma(x, xi_k)) w(x) e^{-i xi_k x}.
    auto adjoint = [&](const Field& w) {
        std::vector<cplx> spec(grid.size());
        std::vector<cplx> col(grid.size());
        const double hd = std::pow(grid.dx(), grid.dim());
        const int n = grid.n();
        const std::vector<cplx> tw = twiddle_table(n);
        double xi[2];
        for (std::size_t k = 0; k < grid.size(); ++k) {
            grid.xi_at(k, xi);
            sym.eval_column(grid, xi, col.data());
            cplx acc(0.0, 0.0);
            if (grid.dim() == 1) {
                int kk = grid.freq_index(static_cast<int>(k));
                int step = ((-kk % n) + n) % n;
                int m = 0;
                for (std::size_t j = 0; j < grid.size(); ++j) {
                    acc += std::conj(col[j]) * w.samples()[j] * tw[m];
                    m += step;
                    if (m >= n) m -= n;
                }
            } else {
                int k0 = grid.freq_index(static_cast<int>(k / static_cast<std::size_t>(n)));
                int k1 = grid.freq_index(static_cast<int>(k % static_cast<std::size_t>(n)));
                int s0 = ((-k0 % n) + n) % n;
                int s1 = ((-k1 % n) + n) % n;
                std::size_t j = 0;
                int base = 0;
                for (int j0 = 0; j0 < n; ++j0) {
                    int m = base;
                    for (int j1 = 0; j1 < n; ++j1, ++j) {
                        acc += std::conj(col[j]) * w.samples()[j] * tw[m];
                        m += s1;
                        if (m >= n) m -= n;
                    }
                    base += s0;
                    if (base >= n) base -= n;
                }
            }
            spec[k] = acc * hd;
        }
        return Field::from_spectrum(grid, std::move(spec));
    };

    auto weight = [&](const Field& f, double s) {
        return apply_multiplier(f, [&](const double* xi) {
            double r2 = xi[0] * xi[0] + xi[1] * xi[1];
            return cplx(std::pow(1.0 + r2, s), 0.0);
        });
    };

    Field v = random_band_limited(grid, 1.0, seed);
    double nv = v.l2();
    if (nv == 0.0) throw InputError("power iteration: zero start vector");
    v *= cplx(1.0 / nv, 0.0);

    double est = 0.0;
    for (int it = 0; it < iters; ++it) {
        Field av = op_apply_dense(sym, v);
        Field w = weight(av, s_out);
        Field back = weight(adjoint(w), -s_in);
        double nb = back.l2();
        if (nb == 0.0) return 0.0;
        // Rayleigh estimate of |A|_{H^{s_in} -> H^{s_out}} on the weighted
        // normal operator.
        est = std::sqrt(nb);
        back *= cplx(1.0 / nb, 0.0);
        v = back;
    }
    return est;
}

}  // namespace paracalc
