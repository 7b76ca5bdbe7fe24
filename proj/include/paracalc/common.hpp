#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paracalc {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Error raised by malformed or inconsistent configuration (bad grid,
/// out-of-range parameters, unknown keys). CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Error raised by invalid runtime inputs (NaN profiles, grid mismatch).
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested derivative order or evaluation mode is not available.
class CapabilityError : public std::runtime_error {
  public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A seminorm or operation was requested outside the symbol's class
/// (e.g. low-frequency seminorm beyond the regularity degree at the origin).
class ClassViolationError : public std::runtime_error {
  public:
    explicit ClassViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A theorem experiment was configured outside the hypotheses of the
/// estimate it measures. CLI exit code 4; carries the violated hypothesis.
class HypothesisError : public std::runtime_error {
  public:
    explicit HypothesisError(const std::string& hypothesis)
        : std::runtime_error("hypothesis violated: " + hypothesis), hypothesis_(hypothesis) {}
    const std::string& hypothesis() const { return hypothesis_; }

  private:
    std::string hypothesis_;
};

/// Multi-index in up to two dimensions. b[i] is the order along axis i;
/// axes beyond the grid dimension stay zero.
struct MultiIndex {
    int b[2] = {0, 0};

    int order() const { return b[0] + b[1]; }
    static MultiIndex axis(int i, int k = 1) {
        MultiIndex m;
        m.b[i] = k;
        return m;
    }
    bool operator==(const MultiIndex& o) const { return b[0] == o.b[0] && b[1] == o.b[1]; }
};

/// All multi-indices with |alpha| <= n in dimension d, graded order.
std::vector<MultiIndex> multi_indices_upto(int d, int n);

double factorial(int n);

/// Deterministic 64-bit mix (splitmix64); used to derive per-probe seeds.
std::uint64_t mix64(std::uint64_t z);

/// Small deterministic RNG for probe fields. xoshiro-free: a splitmix64
/// stream is enough for test-field synthesis and keeps reports portable.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next_uniform();          // [0,1)
    double next_symmetric();        // [-1,1)

  private:
    std::uint64_t state_;
};

/// Runs fn(i) for i in [0,count), chunked over worker threads.
/// Thread count is min(hardware, PARACALC_THREADS) when the env var is set.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

int worker_thread_count();

}  // namespace paracalc
