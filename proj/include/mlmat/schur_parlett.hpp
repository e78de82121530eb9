#pragma once

#include <span>
#include <vector>

#include "mlmat/linalg.hpp"
#include "mlmat/scalar.hpp"

namespace mlmat {

/// Transitive closure of the relation |lambda_i - lambda_j| <= delta_sep.
/// Returns a cluster id per eigenvalue, ids numbered by first occurrence.
std::vector<int> cluster_eigenvalues(std::span<const Complex> eigs, double delta_sep);

/// Schur form reordered so each eigenvalue cluster occupies a contiguous
/// run of the diagonal.
struct BlockedSchur {
    SchurFactors factors;
    std::vector<int> cluster_of;            ///< cluster id per diagonal position
    std::vector<std::size_t> block_starts;  ///< ascending; block i is [starts[i], starts[i+1])

    std::size_t block_count() const { return block_starts.size(); }
    std::size_t block_begin(std::size_t i) const { return block_starts[i]; }
    std::size_t block_end(std::size_t i) const {
        return i + 1 < block_starts.size() ? block_starts[i + 1] : factors.T.rows();
    }
    ComplexMatrix block(std::size_t i, std::size_t j) const;
};

/// Schur decomposition followed by clustering (delta_sep chains) and
/// reordering by adjacent swaps; clusters are brought into contiguity in
/// the order of their mean diagonal position to keep the swap count low.
BlockedSchur blocked_schur(const ComplexMatrix& A, double delta_sep);

/// Given the function values of the diagonal blocks, fills the off-diagonal
/// blocks superdiagonal by superdiagonal through the Sylvester equations of
/// the block Parlett recurrence. Returns the full upper-triangular F.
ComplexMatrix parlett_fill(const BlockedSchur& blocked,
                           const std::vector<ComplexMatrix>& diag_blocks);

/// Closed form for a 2x2 triangular block: f12 = t12 (f22 - f11)/(t22 - t11).
/// Throws ConfluentBlock when the diagonal gap is below 1e-8 * scale; the
/// caller falls back to contour quadrature.
ComplexMatrix block2x2_ml(Complex t11, Complex t12, Complex t22, MLParams params);

} // namespace mlmat
