#pragma once

#include <optional>

#include "mlmat/matrix.hpp"

namespace mlmat {

/// Decision record of the Taylor-series gate: whether the truncated series
/// is numerically safe for the given norm, and the term counts to use.
struct TaylorPlan {
    bool accepted = false;
    int m_max = 0;       ///< floor((171.624 - beta)/alpha)
    double norm_max = 0; ///< (eps * Gamma(alpha*m_max + beta))^(1/m_max)
    std::optional<int> k1;
    int k2 = 0;
    double a = 0; ///< 2 * matrix_norm
    double b = 0; ///< 1/2
    double matrix_norm = 0;
};

/// Runs the gate for a matrix of the given (subordinate) norm. The k1 scan
/// compares Gamma(alpha*m + beta) against a^m in log space. Rejection is a
/// value, not an error.
TaylorPlan taylor_plan(double matrix_norm, MLParams params, double eps);

/// Smallest m guaranteeing a truncation error <= eps when ||A|| < 1.
/// Throws NormTooLarge otherwise.
int min_terms_prop1(double matrix_norm, MLParams params, double eps);

/// R_m bound mu * ||A|| / (1 - ||A||) under the term-norm hypothesis.
double truncation_bound_prop2(double matrix_norm, double mu);

/// R_m bound b^(m+1) / (1 - b) for b = ||A||/a < 1. Throws InvalidRatio
/// when b >= 1.
double truncation_bound_prop3(double b, int m);

/// Evaluates sum_{k=0}^{degree} A^k / Gamma(alpha*k + beta) by the
/// Paterson-Stockmeyer scheme with s = ceil(sqrt(degree)). When `mults` is
/// non-null it receives the number of matrix-matrix multiplications
/// performed. Throws GammaOverflow if alpha*degree + beta exceeds the
/// double-precision Gamma range.
ComplexMatrix taylor_eval_ps(const ComplexMatrix& A, MLParams params, int degree,
                             int* mults = nullptr);

} // namespace mlmat
