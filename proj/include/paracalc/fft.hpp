#pragma once

#include <vector>

#include "paracalc/common.hpp"
#include "paracalc/grid.hpp"

namespace paracalc {

/// Unnormalized DFTs backed by FFTW (complex-to-complex, FFTW_ESTIMATE
/// plans so runs are reproducible). forward computes sum_j u_j e^{-i 2pi jk/n}
/// per axis; backward the conjugate kernel. Plan creation is serialized,
/// execution is safe from multiple threads on distinct buffers.
namespace fft {

void forward(const Grid& grid, const cplx* in, cplx* out);
void backward(const Grid& grid, const cplx* in, cplx* out);

/// 1-D transforms of arbitrary power-of-two length (used by the xi-box
/// DFT in the elementary-symbol decomposition).
void forward_1d(int n, const cplx* in, cplx* out);
void backward_1d(int n, const cplx* in, cplx* out);

/// rank-dimensional transform with n points per axis (rank 1 or 2).
void forward_nd(int rank, int n, const cplx* in, cplx* out);

}  // namespace fft

}  // namespace paracalc
