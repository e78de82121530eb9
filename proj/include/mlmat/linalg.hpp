#pragma once

#include "mlmat/matrix.hpp"

namespace mlmat {

enum class NormKind { frobenius, one, two };

/// Frobenius and one norms are exact; the two-norm is estimated by power
/// iteration on A*A (at least 20 iterations, then until the relative change
/// drops below 1e-6).
double norm_estimate(const ComplexMatrix& A, NormKind kind);

/// Solves (zI - T) X = B for upper-triangular T by back substitution.
/// Throws SingularShift when z is numerically an eigenvalue of T.
ComplexMatrix shifted_triangular_solve(const ComplexMatrix& T, Complex z, const ComplexMatrix& B);

struct SchurFactors {
    ComplexMatrix U; ///< unitary
    ComplexMatrix T; ///< upper triangular, A = U T U*
};

/// Complex Schur decomposition: Householder reduction to Hessenberg form
/// followed by the single-shift QR iteration with Wilkinson shifts and
/// standard deflation. Throws NoConvergence after 50*n sweeps.
SchurFactors schur_decompose(const ComplexMatrix& A);

/// Exchanges the diagonal entries k and k+1 of factors.T by a unitary
/// similarity, updating factors.U accordingly. A no-op when the two entries
/// differ by less than 1e-14 * ||T||_F (same cluster, exchange unnecessary).
void swap_adjacent(SchurFactors& factors, std::size_t k);

/// Solves X M - N X = P for upper-triangular M, N column by column.
/// Throws EigenvalueOverlap when min |lambda - mu| over the two spectra is
/// below 1e-8 * max(||M||_F, ||N||_F, 1).
ComplexMatrix sylvester_solve_triangular(const ComplexMatrix& M, const ComplexMatrix& N,
                                         const ComplexMatrix& P);

} // namespace mlmat
