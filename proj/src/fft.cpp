#include "paracalc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace paracalc {
namespace fft {

namespace {

// Plans are cached per (rank, n, sign). FFTW planning is not thread-safe;
// execution via fftw_execute_dft on caller buffers is.
struct PlanKey {
    int rank;
    int n;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (rank != o.rank) return rank < o.rank;
        if (n != o.n) return n < o.n;
        return sign < o.sign;
    }
};

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(int rank, int n, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanKey key{rank, n, sign};
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;
    std::size_t total = rank == 1 ? static_cast<std::size_t>(n)
                                  : static_cast<std::size_t>(n) * n;
    // Out-of-place plan with no alignment assumptions: the plan is reused
    // via fftw_execute_dft on caller-owned buffers of any alignment.
    fftw_complex* in = fftw_alloc_complex(total);
    fftw_complex* out = fftw_alloc_complex(total);
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = rank == 1 ? fftw_plan_dft_1d(n, in, out, sign, flags)
                               : fftw_plan_dft_2d(n, n, in, out, sign, flags);
    fftw_free(in);
    fftw_free(out);
    plan_cache()[key] = plan;
    return plan;
}

void execute(int rank, int n, int sign, const cplx* in, cplx* out) {
    fftw_plan plan = get_plan(rank, n, sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const Grid& grid, const cplx* in, cplx* out) {
    execute(grid.dim(), grid.n(), FFTW_FORWARD, in, out);
}

void backward(const Grid& grid, const cplx* in, cplx* out) {
    execute(grid.dim(), grid.n(), FFTW_BACKWARD, in, out);
}

void forward_1d(int n, const cplx* in, cplx* out) {
    execute(1, n, FFTW_FORWARD, in, out);
}

void backward_1d(int n, const cplx* in, cplx* out) {
    execute(1, n, FFTW_BACKWARD, in, out);
}

void forward_nd(int rank, int n, const cplx* in, cplx* out) {
    execute(rank, n, FFTW_FORWARD, in, out);
}

}  // namespace fft
}  // namespace paracalc
