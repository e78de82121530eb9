#pragma once

#include <optional>
#include <vector>

#include "mlmat/contour.hpp"
#include "mlmat/schur_parlett.hpp"
#include "mlmat/taylor.hpp"

namespace mlmat {

enum class PathOverride { automatic, taylor, schur };
enum class ComputePath { taylor, schur };
enum class BlockMethod { scalar, formula2x2, quadrature };

struct MLComputeOptions {
    double eps = 1e-15;      ///< Taylor-gate tolerance
    double quad_tol = 1e-13; ///< per-block quadrature tolerance (scale-aware)
    PathOverride path = PathOverride::automatic;
    double delta_sep = 0.1;
    int initial_m = 10;
    int max_doublings = 10;
};

struct BlockRecord {
    std::size_t start = 0;
    std::size_t size = 0;
    BlockMethod method = BlockMethod::scalar;
    int m0 = 0;         ///< quadrature nodes (0 for scalar/2x2 blocks)
    double err_est = 0; ///< quadrature error estimate (0 likewise)
    double radius = 0;  ///< contour radius (0 likewise)
};

struct MLComputeReport {
    ComplexMatrix result;
    ComputePath path = ComputePath::taylor;
    std::optional<TaylorPlan> plan;
    std::vector<BlockRecord> blocks;
};

/// E_{alpha,beta}(A): Taylor polynomial via Paterson-Stockmeyer when the
/// gate accepts the two-norm estimate, otherwise blocked Schur-Parlett with
/// per-block scalar/2x2/contour evaluation and back-transformation.
/// Throws PathUnavailable when the Taylor path is forced but the gate
/// rejects.
MLComputeReport ml_matrix(const ComplexMatrix& A, MLParams params,
                          const MLComputeOptions& opts = {});

/// ||Xref - X||_F / ||Xref||_F. Throws ZeroReference when ||Xref||_F = 0.
double relative_error(const ComplexMatrix& X, const ComplexMatrix& Xref);

/// ||Xref - X||_F / (||Xref||_F + 1).
double err_gp(const ComplexMatrix& X, const ComplexMatrix& Xref);

} // namespace mlmat
