#include "paracalc/elementary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "paracalc/fft.hpp"

namespace paracalc {

double lambda_profile(double r) {
    return smoothstep((r - 0.2) / 0.05) * smoothstep((1.2 - r) / 0.2);
}

ElementarySymbols::ElementarySymbols(const Grid& grid, double m, int K, int q_min, int q_max,
                                     int box_n)
    : grid_(grid), m_(m), K_(K), q_min_(q_min), q_max_(q_max), box_n_(box_n) {
    if (K < 1) throw ConfigError("elementary decomposition requires K >= 1");
    int q_count = q_max_ - q_min_ + 1;
    coeffs_.assign(static_cast<std::size_t>(k_count()) * q_count,
                   std::vector<cplx>(grid_.size(), cplx(0.0, 0.0)));
}

int ElementarySymbols::k_count() const {
    int per_axis = 2 * K_ + 1;
    return grid_.dim() == 1 ? per_axis : per_axis * per_axis;
}

void ElementarySymbols::k_of(int k_flat, int out[2]) const {
    int per_axis = 2 * K_ + 1;
    if (grid_.dim() == 1) {
        out[0] = k_flat - K_;
        out[1] = 0;
    } else {
        out[0] = k_flat / per_axis - K_;
        out[1] = k_flat % per_axis - K_;
    }
}

double ElementarySymbols::weight(const int k[2]) const {
    double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
    return std::pow(1.0 + k2, -(1.0 + grid_.dim() / 2));
}

std::vector<cplx>& ElementarySymbols::coeff(int k_flat, int q) {
    return coeffs_[static_cast<std::size_t>(k_flat) * (q_max_ - q_min_ + 1) + (q - q_min_)];
}

const std::vector<cplx>& ElementarySymbols::coeff(int k_flat, int q) const {
    return coeffs_[static_cast<std::size_t>(k_flat) * (q_max_ - q_min_ + 1) + (q - q_min_)];
}

cplx ElementarySymbols::lambda_k(const int k[2], const double* xi) const {
    double r = grid_.dim() == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
    double prof = lambda_profile(0.5 * r);
    if (prof == 0.0) return cplx(0.0, 0.0);
    double phase = 0.5 * (xi[0] * k[0] + xi[1] * k[1]);
    return std::polar(prof, phase);
}

namespace {

class EsReconstructImpl final : public SymbolImpl {
  public:
    explicit EsReconstructImpl(std::shared_ptr<const ElementarySymbols> es)
        : SymbolImpl("es_recon", es->m(), kInfReg, false, false), es_(std::move(es)) {}

    cplx eval(const Grid& grid, std::size_t ix, const double* xi) const override {
        if (!grid.same_as(es_->grid())) throw InputError("elementary symbol grid mismatch");
        double r = grid.dim() == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
        double ang = std::pow(1.0 + r * r, 0.5 * es_->m());
        cplx acc(0.0, 0.0);
        for (int q = es_->q_min(); q <= es_->q_max(); ++q) {
            double xiq[2] = {std::ldexp(xi[0], -q), std::ldexp(xi[1], -q)};
            double rq = std::ldexp(r, -q);
            if (lambda_profile(0.5 * rq) == 0.0) continue;
            for (int kf = 0; kf < es_->k_count(); ++kf) {
                int k[2];
                es_->k_of(kf, k);
                cplx lam = es_->lambda_k(k, xiq);
                if (lam == cplx(0.0, 0.0)) continue;
                acc += es_->weight(k) * es_->coeff(kf, q)[ix] * lam;
            }
        }
        return acc * ang;
    }

    void eval_column(const Grid& grid, const double* xi, cplx* out) const override {
        if (!grid.same_as(es_->grid())) throw InputError("elementary symbol grid mismatch");
        std::fill(out, out + grid.size(), cplx(0.0, 0.0));
        double r = grid.dim() == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
        double ang = std::pow(1.0 + r * r, 0.5 * es_->m());
        for (int q = es_->q_min(); q <= es_->q_max(); ++q) {
            double xiq[2] = {std::ldexp(xi[0], -q), std::ldexp(xi[1], -q)};
            double rq = std::ldexp(r, -q);
            if (lambda_profile(0.5 * rq) == 0.0) continue;
            for (int kf = 0; kf < es_->k_count(); ++kf) {
                int k[2];
                es_->k_of(kf, k);
                cplx lam = es_->lambda_k(k, xiq) * es_->weight(k) * ang;
                if (lam == cplx(0.0, 0.0)) continue;
                const auto& c = es_->coeff(kf, q);
                for (std::size_t i = 0; i < grid.size(); ++i) out[i] += c[i] * lam;
            }
        }
    }

  private:
    std::shared_ptr<const ElementarySymbols> es_;
};

}  // namespace

Symbol ElementarySymbols::reconstruct() const {
    return Symbol(std::make_shared<EsReconstructImpl>(
        std::make_shared<ElementarySymbols>(*this)));
}

ElementarySymbols::SymbolError ElementarySymbols::reconstruction_error(const Symbol& sym) const {
    Symbol recon = reconstruct();
    SymbolError err{0.0, 0.0};
    std::vector<double> abs_per(grid_.size(), 0.0), tgt_per(grid_.size(), 0.0);
    parallel_for(grid_.size(), [&](std::size_t kxi) {
        double xi[2];
        grid_.xi_at(kxi, xi);
        double r = grid_.xi_norm_at(kxi);
        double wm = std::pow(1.0 + r * r, -0.5 * m_);
        double hf = 1.0 - psi_profile(r);
        std::vector<cplx> a(grid_.size()), b(grid_.size());
        recon.eval_column(grid_, xi, a.data());
        sym.eval_column(grid_, xi, b.data());
        double worst = 0.0, tworst = 0.0;
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            cplx target = hf * b[i];
            worst = std::max(worst, std::abs(a[i] - target) * wm);
            tworst = std::max(tworst, std::abs(target) * wm);
        }
        abs_per[kxi] = worst;
        tgt_per[kxi] = tworst;
    });
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        err.absolute = std::max(err.absolute, abs_per[i]);
        err.target = std::max(err.target, tgt_per[i]);
    }
    return err;
}

ElementarySymbols elementary_decompose(const FilterBank& bank, const Symbol& sym, int K) {
    const Grid& g = bank.grid();
    if (K < 1) throw ConfigError("elementary_decompose requires K >= 1");
    int box_n = 64;
    while (box_n < 8 * K) box_n *= 2;
    if (box_n > 512) throw ConfigError("elementary_decompose: K exceeds the xi-box DFT resolution");

    ElementarySymbols es(g, sym.order(), K, -1, bank.p_max(), box_n);
    const int d = g.dim();
    const double m = sym.order();
    const std::size_t nx = g.size();
    const std::size_t box_size = d == 1 ? static_cast<std::size_t>(box_n)
                                        : static_cast<std::size_t>(box_n) * box_n;

    // x-tiles keep the per-tile transpose buffer bounded.
    std::size_t tile = std::max<std::size_t>(1, (8u << 20) / (box_size * sizeof(cplx)));
    tile = std::min(tile, nx);

    std::vector<cplx> col(nx);
    std::vector<cplx> tile_buf;  // [box_j][x_in_tile]

    for (int q = es.q_min(); q <= es.q_max(); ++q) {
        // sigma_q(x, 2^{q+1} zeta) over the box lattice zeta_j = -pi + 2pi j / box_n.
        // Columns are evaluated once per box node and scattered into tiles.
        for (std::size_t x0 = 0; x0 < nx; x0 += tile) {
            std::size_t cur = std::min(tile, nx - x0);
            tile_buf.assign(box_size * cur, cplx(0.0, 0.0));

            for (std::size_t j = 0; j < box_size; ++j) {
                double zeta[2] = {0.0, 0.0};
                if (d == 1) {
                    zeta[0] = -kPi + 2.0 * kPi * static_cast<double>(j) / box_n;
                } else {
                    zeta[0] = -kPi + 2.0 * kPi * static_cast<double>(j / box_n) / box_n;
                    zeta[1] = -kPi + 2.0 * kPi * static_cast<double>(j % box_n) / box_n;
                }
                double xi[2] = {std::ldexp(zeta[0], q + 1), std::ldexp(zeta[1], q + 1)};
                double r = d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
                double factor = (1.0 - psi_profile(r)) * bank.phi_p(q, r) *
                                std::pow(1.0 + r * r, -0.5 * m);
                if (factor == 0.0) continue;
                sym.eval_column(g, xi, col.data());
                for (std::size_t t = 0; t < cur; ++t)
                    tile_buf[j * cur + t] = factor * col[x0 + t];
            }

            // Box DFT per x: c_{k,q}(x) = w_k^{-1} ... actually
            // c = (1+|k|^2)^{1+[d/2]} box_n^{-d} sum_j e^{-i zeta_j . k} f_j.
            parallel_for(cur, [&](std::size_t t) {
                std::vector<cplx> f(box_size), F(box_size);
                for (std::size_t j = 0; j < box_size; ++j) f[j] = tile_buf[j * cur + t];
                if (d == 1)
                    fft::forward_1d(box_n, f.data(), F.data());
                else
                    fft::forward_nd(2, box_n, f.data(), F.data());
                double inv = 1.0 / static_cast<double>(box_size);
                for (int kf = 0; kf < es.k_count(); ++kf) {
                    int k[2];
                    es.k_of(kf, k);
                    // e^{-i zeta_j k} = e^{i pi (k0+k1)} e^{-2pi i j k / box_n}
                    std::size_t idx;
                    int k0 = ((k[0] % box_n) + box_n) % box_n;
                    if (d == 1) {
                        idx = static_cast<std::size_t>(k0);
                    } else {
                        int k1 = ((k[1] % box_n) + box_n) % box_n;
                        idx = static_cast<std::size_t>(k0) * box_n + k1;
                    }
                    double sign = ((k[0] + k[1]) % 2 == 0) ? 1.0 : -1.0;
                    double w2 = static_cast<double>(k[0]) * k[0] +
                                static_cast<double>(k[1]) * k[1];
                    double lift = std::pow(1.0 + w2, 1.0 + d / 2);
                    es.coeff(kf, q)[x0 + t] = lift * sign * inv * F[idx];
                }
            });
        }
    }
    return es;
}

// ---------------------------------------------------------------------------
// Archive
// ---------------------------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'P', 'C', 'E', 'S'};
constexpr std::uint32_t kVersion = 1;
constexpr int kLambdaSamples = 1024;

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace

void write_elementary_archive(const std::string& path, const ElementarySymbols& es) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open archive for writing: " + path);
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(es.grid().dim()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(es.grid().n()));
    put<double>(os, es.grid().length());
    put<double>(os, es.m());
    put<std::int32_t>(os, es.K());
    put<std::int32_t>(os, es.q_min());
    put<std::int32_t>(os, es.q_max());
    put<std::uint32_t>(os, static_cast<std::uint32_t>(es.box_n()));
    put<std::uint32_t>(os, kLambdaSamples);
    for (int kf = 0; kf < es.k_count(); ++kf) {
        for (int q = es.q_min(); q <= es.q_max(); ++q) {
            const auto& c = es.coeff(kf, q);
            os.write(reinterpret_cast<const char*>(c.data()),
                     static_cast<std::streamsize>(c.size() * sizeof(cplx)));
        }
    }
    for (int i = 0; i < kLambdaSamples; ++i)
        put<double>(os, lambda_profile(3.0 * i / kLambdaSamples));
    if (!os) throw InputError("archive write failed: " + path);
}

ElementarySymbols read_elementary_archive(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open archive: " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw InputError("bad archive magic");
    if (get<std::uint32_t>(is) != kVersion) throw InputError("unsupported archive version");
    int d = static_cast<int>(get<std::uint32_t>(is));
    int n = static_cast<int>(get<std::uint32_t>(is));
    double L = get<double>(is);
    double m = get<double>(is);
    int K = get<std::int32_t>(is);
    int q_min = get<std::int32_t>(is);
    int q_max = get<std::int32_t>(is);
    int box_n = static_cast<int>(get<std::uint32_t>(is));
    int lam = static_cast<int>(get<std::uint32_t>(is));
    Grid g(d, n, L);
    ElementarySymbols es(g, m, K, q_min, q_max, box_n);
    for (int kf = 0; kf < es.k_count(); ++kf) {
        for (int q = q_min; q <= q_max; ++q) {
            auto& c = es.coeff(kf, q);
            is.read(reinterpret_cast<char*>(c.data()),
                    static_cast<std::streamsize>(c.size() * sizeof(cplx)));
        }
    }
    is.ignore(static_cast<std::streamsize>(lam) * sizeof(double));
    if (!is) throw InputError("archive truncated: " + path);
    return es;
}

}  // namespace paracalc
