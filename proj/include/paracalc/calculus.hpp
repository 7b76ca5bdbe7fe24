#pragma once

#include "paracalc/operators.hpp"
#include "paracalc/symbol.hpp"

namespace paracalc {

/// Truncated composition expansion
///   sigma1 #_n sigma2 = sum_{|alpha| <= n} (-i)^{|alpha|}/alpha!
///                       d_xi^alpha sigma1 . d_x^alpha sigma2,
/// with x-derivatives taken spectrally per frequency column. The result is
/// lattice-evaluatable; columns are materialized up-front on small grids and
/// cached lazily on large ones. n <= 4.
Symbol sharp_n(const Grid& grid, const Symbol& s1, const Symbol& s2, int n);

/// Poisson bracket {s1, s2}_n = s1 #_n s2 - s2 #_n s1 (identically zero for
/// n = 0); order metadata m1 + m2 - 1 for n >= 1.
Symbol poisson_n(const Grid& grid, const Symbol& s1, const Symbol& s2, int n);

/// [Op(s1), Op(s2)] u via dense applications.
Field commutator_apply(const Symbol& s1, const Symbol& s2, const Field& u);

/// Commutator minus the bracket correction: the residual whose order the
/// commutator estimates bound.
Field remainder_apply(const Symbol& s1, const Symbol& s2, int n, const Field& u);
/// Same with a prebuilt bracket (reused across probes).
Field remainder_apply(const Symbol& s1, const Symbol& s2, const Symbol& bracket,
                      const Field& u);

/// Op(s1)(Op(s2)u) - Op(s1 #_n s2)u; measures Op(rho_n) without building
/// the remainder kernel. Pass paradifferential components for the smoothed
/// variant.
Field composition_residual_apply(const Symbol& s1, const Symbol& s2, int n, const Field& u);
Field composition_residual_apply(const Symbol& s1, const Symbol& s2, const Symbol& sharp,
                                 const Field& u);

}  // namespace paracalc
