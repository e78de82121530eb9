#include "mlmat/driver.hpp"

#include <cmath>
#include <stdexcept>

namespace mlmat {

namespace {

ComplexMatrix schur_path(const ComplexMatrix& A, MLParams params, const MLComputeOptions& opts,
                         MLComputeReport& report) {
    const BlockedSchur blocked = blocked_schur(A, opts.delta_sep);
    const ComplexMatrix& T = blocked.factors.T;
    const std::size_t q = blocked.block_count();

    std::vector<ComplexMatrix> diag;
    diag.reserve(q);
    const double scalar_tol = std::max(1e-15, opts.quad_tol * 1e-2);
    for (std::size_t k = 0; k < q; ++k) {
        const std::size_t b0 = blocked.block_begin(k);
        const std::size_t sz = blocked.block_end(k) - b0;
        BlockRecord rec{b0, sz, BlockMethod::scalar, 0, 0.0, 0.0};
        if (sz == 1) {
            ComplexMatrix F(1, 1);
            F(0, 0) = ml_scalar(T(b0, b0), params, scalar_tol).value;
            diag.push_back(std::move(F));
        } else if (sz == 2) {
            try {
                diag.push_back(
                    block2x2_ml(T(b0, b0), T(b0, b0 + 1), T(b0 + 1, b0 + 1), params));
                rec.method = BlockMethod::formula2x2;
            } catch (const ConfluentBlock&) {
                ContourCircle circle;
                QuadratureResult qr;
                diag.push_back(atomic_block_ml(blocked.block(k, k), params, opts.quad_tol,
                                               opts.initial_m, opts.max_doublings, &circle, &qr));
                rec.method = BlockMethod::quadrature;
                rec.m0 = qr.m0;
                rec.err_est = qr.err_est;
                rec.radius = circle.radius;
            }
        } else {
            ContourCircle circle;
            QuadratureResult qr;
            diag.push_back(atomic_block_ml(blocked.block(k, k), params, opts.quad_tol,
                                           opts.initial_m, opts.max_doublings, &circle, &qr));
            rec.method = BlockMethod::quadrature;
            rec.m0 = qr.m0;
            rec.err_est = qr.err_est;
            rec.radius = circle.radius;
        }
        report.blocks.push_back(rec);
    }

    const ComplexMatrix F = parlett_fill(blocked, diag);
    return blocked.factors.U * F * blocked.factors.U.adjoint();
}

} // namespace

MLComputeReport ml_matrix(const ComplexMatrix& A, MLParams params, const MLComputeOptions& opts) {
    params.validate();
    if (!A.is_square()) throw std::invalid_argument("ml_matrix: matrix must be square");
    if (!A.is_finite()) throw std::invalid_argument("ml_matrix: matrix has non-finite entries");

    MLComputeReport report;
    const double norm2 = norm_estimate(A, NormKind::two);
    report.plan = taylor_plan(norm2, params, opts.eps);

    const bool want_taylor = opts.path != PathOverride::schur && report.plan->accepted;
    if (opts.path == PathOverride::taylor && !report.plan->accepted)
        throw PathUnavailable("Taylor path forced but the gate rejected the norm");

    if (want_taylor) {
        report.path = ComputePath::taylor;
        report.result = taylor_eval_ps(A, params, report.plan->k2);
        return report;
    }

    report.path = ComputePath::schur;
    report.result = schur_path(A, params, opts, report);
    if (A.is_upper_triangular()) {
        // f preserves triangularity; discard the roundoff the unitary
        // similarity re-introduces below the diagonal
        for (std::size_t i = 1; i < A.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j) report.result(i, j) = 0.0;
    }
    return report;
}

double relative_error(const ComplexMatrix& X, const ComplexMatrix& Xref) {
    if (X.rows() != Xref.rows() || X.cols() != Xref.cols())
        throw std::invalid_argument("relative_error: shape mismatch");
    const double denom = frobenius_norm(Xref);
    if (denom == 0.0) throw ZeroReference("relative_error: reference norm is zero");
    return frobenius_norm(Xref - X) / denom;
}

double err_gp(const ComplexMatrix& X, const ComplexMatrix& Xref) {
    if (X.rows() != Xref.rows() || X.cols() != Xref.cols())
        throw std::invalid_argument("err_gp: shape mismatch");
    return frobenius_norm(Xref - X) / (frobenius_norm(Xref) + 1.0);
}

} // namespace mlmat
