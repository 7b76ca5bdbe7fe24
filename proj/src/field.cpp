#include "paracalc/field.hpp"

#include <algorithm>
#include <cmath>

#include "paracalc/fft.hpp"

namespace paracalc {

Field::Field(const Grid& grid) : grid_(grid), samples_(grid.size(), cplx(0.0, 0.0)) {}

Field::Field(const Grid& grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) throw InputError("sample count does not match grid");
}

Field Field::from_spectrum(const Grid& grid, std::vector<cplx> spectrum) {
    if (spectrum.size() != grid.size()) throw InputError("spectrum size does not match grid");
    Field f(grid);
    const double scale = 1.0 / std::pow(grid.length(), grid.dim());
    fft::backward(grid, spectrum.data(), f.samples_.data());
    for (auto& v : f.samples_) v *= scale;
    f.spectrum_ = std::move(spectrum);
    f.spectrum_valid_ = true;
    return f;
}

const std::vector<cplx>& Field::spectrum() const {
    if (!spectrum_valid_) {
        spectrum_.resize(samples_.size());
        fft::forward(grid_, samples_.data(), spectrum_.data());
        const double w = std::pow(grid_.dx(), grid_.dim());
        for (auto& v : spectrum_) v *= w;
        spectrum_valid_ = true;
    }
    return spectrum_;
}

Field& Field::operator+=(const Field& o) {
    if (!grid_.same_as(o.grid_)) throw InputError("grid mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
    spectrum_valid_ = false;
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (!grid_.same_as(o.grid_)) throw InputError("grid mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
    spectrum_valid_ = false;
    return *this;
}

Field& Field::operator*=(cplx c) {
    for (auto& v : samples_) v *= c;
    spectrum_valid_ = false;
    return *this;
}

double Field::l2() const {
    double acc = 0.0;
    for (const auto& v : samples_) acc += std::norm(v);
    return std::sqrt(acc * std::pow(grid_.dx(), grid_.dim()));
}

double Field::linf() const {
    double m = 0.0;
    for (const auto& v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double Field::sobolev(double s) const {
    const auto& spec = spectrum();
    const double w = std::pow(grid_.dxi() / (2.0 * kPi), grid_.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double r = grid_.xi_norm_at(i);
        acc += std::pow(1.0 + r * r, s) * std::norm(spec[i]);
    }
    return std::sqrt(acc * w);
}

Field operator+(Field a, const Field& b) { a += b; return a; }
Field operator-(Field a, const Field& b) { a -= b; return a; }
Field operator*(cplx c, Field a) { a *= c; return a; }

Field pointwise(const Field& a, const Field& b) {
    if (!a.grid().same_as(b.grid())) throw InputError("grid mismatch");
    std::vector<cplx> out(a.samples().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.samples()[i] * b.samples()[i];
    return Field(a.grid(), std::move(out));
}

double spatial_quadrature_weight(const Grid& grid) {
    return std::pow(grid.dx(), grid.dim());
}

double spectral_quadrature_weight(const Grid& grid) {
    return std::pow(grid.dxi() / (2.0 * kPi), grid.dim());
}

std::vector<cplx> sample_profile(const Grid& grid, const XiProfile& profile) {
    std::vector<cplx> out(grid.size());
    double xi[2];
    for (std::size_t i = 0; i < out.size(); ++i) {
        grid.xi_at(i, xi);
        out[i] = profile(xi);
    }
    return out;
}

Field apply_multiplier(const Field& u, const std::vector<cplx>& profile_on_lattice) {
    if (profile_on_lattice.size() != u.grid().size())
        throw InputError("multiplier profile size does not match grid");
    std::vector<cplx> spec = u.spectrum();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        cplx m = profile_on_lattice[i];
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
            throw InputError("non-finite multiplier profile value");
        spec[i] *= m;
    }
    return Field::from_spectrum(u.grid(), std::move(spec));
}

Field apply_multiplier(const Field& u, const XiProfile& profile) {
    return apply_multiplier(u, sample_profile(u.grid(), profile));
}

Field spectral_derivative(const Field& u, const MultiIndex& alpha) {
    const Grid& g = u.grid();
    std::vector<cplx> spec = u.spectrum();
    double xi[2];
    for (std::size_t i = 0; i < spec.size(); ++i) {
        g.xi_at(i, xi);
        cplx m(1.0, 0.0);
        for (int ax = 0; ax < g.dim(); ++ax)
            for (int k = 0; k < alpha.b[ax]; ++k) m *= cplx(0.0, xi[ax]);
        spec[i] *= m;
    }
    return Field::from_spectrum(g, std::move(spec));
}

Field random_band_limited(const Grid& grid, double decay, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> spec(grid.size(), cplx(0.0, 0.0));
    const double guard = grid.xi_guard();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double phase = 2.0 * kPi * rng.next_uniform();
        double jitter = 0.5 + rng.next_uniform();
        double r = grid.xi_norm_at(i);
        if (r > guard || r == 0.0) continue;
        double mag = std::pow(1.0 + r * r, -0.5 * decay);
        spec[i] = std::polar(mag * jitter, phase);
    }
    Field f = Field::from_spectrum(grid, std::move(spec));
    // Real part only: keeps probe fields real-valued with the intended decay.
    std::vector<cplx> re(grid.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = cplx(f.samples()[i].real(), 0.0);
    return Field(grid, std::move(re));
}

}  // namespace paracalc
