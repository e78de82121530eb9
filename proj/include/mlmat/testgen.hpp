#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mlmat/matrix.hpp"

namespace mlmat {

/// n x n 0/1 Redheffer matrix: a_ij = 1 when j = 1 or i divides j.
ComplexMatrix gen_redheffer(std::size_t n);

struct SpectrumSpec {
    std::vector<Complex> eigenvalues;
    std::vector<int> multiplicities;
    std::uint64_t seed = 0;

    std::size_t order() const;
};

/// Q D Q^T with D carrying the prescribed eigenvalues (with multiplicity)
/// and Q a seeded random real orthogonal matrix (QR of a seeded Gaussian
/// matrix, R-diagonal signs normalized). Bitwise reproducible per seed.
ComplexMatrix gen_prescribed_spectrum(const SpectrumSpec& spec);

/// Sixteen 40x40 atomic blocks: eight Jordan blocks with varied |lambda|<=1
/// followed by eight seeded random upper-triangular matrices with clustered
/// diagonals (cluster diameter <= 0.2) and unit-scale strictly-upper
/// entries.
std::vector<ComplexMatrix> gen_atomic_suite(std::uint64_t seed);

/// Brute-force reference: elementwise-compensated direct summation of the
/// defining series. Throws SeriesNotDecayed unless the term norms fall
/// below 1e-20 within `terms`.
ComplexMatrix oracle_series(const ComplexMatrix& A, MLParams params, int terms);

/// The four prescribed-spectrum rows used by the bench table1 suite.
std::array<SpectrumSpec, 4> table1_specs(std::uint64_t seed);

/// Deterministic scalar generators shared by the seeded suites.
namespace det_rng {
double uniform(std::uint64_t& state);          // [0, 1)
double gaussian(std::uint64_t& state);         // Box-Muller, one value per call
}

} // namespace mlmat
