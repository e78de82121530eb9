#pragma once

#include <functional>

#include "mlmat/matrix.hpp"
#include "mlmat/scalar.hpp"

namespace mlmat {

/// Circle z0 + r e^{it} enclosing the spectrum of an atomic block.
struct ContourCircle {
    Complex center;    ///< z0 = trace(T)/n
    double radius;     ///< r, strictly larger than eig_radius
    double eig_radius; ///< d = max |lambda - z0|
};

/// Arithmetic mean of the eigenvalues (trace/n).
Complex contour_center(const ComplexMatrix& T);

/// d = max over the diagonal of |T_ii - z0|.
double eigen_radius(const ComplexMatrix& T, Complex z0);

/// Scalar bound on ||g''(r,t)||_F used as the radius-search objective:
/// the bracketed combination of g1, g2 and their derivatives weighted by
/// gamma_1..gamma_3 with (r - d) powers, the disk radius taken as d itself.
/// The block-constant factor ||(I-|N|)^{-1}||_F is omitted (independent of
/// both r and t). Throws Overflow when the scalar ML value overflows at the
/// probe point; the search discards that radius.
double g2pp_bound(double r, double t, const ContourCircle& circle, std::size_t n,
                  MLParams params);

/// Min-max grid search: 20 radii in (d + margin, max(3, d+1)] by 32 angles;
/// returns the smallest radius attaining the minimal worst-angle bound.
/// Throws NoViableRadius when every candidate overflowed.
ContourCircle select_radius(const ComplexMatrix& T, MLParams params);

/// g(t) = r e^{it} E(z0 + r e^{it}) ((z0 + r e^{it}) I - T)^{-1}.
/// `scalar_factor` replaces the ML factor when non-null (test hook; the
/// Cauchy identity uses the constant 1).
ComplexMatrix integrand_g(double t, const ContourCircle& circle, const ComplexMatrix& T,
                          MLParams params,
                          const std::function<Complex(Complex)>& scalar_factor = {});

enum class QuadStop {
    absolute, ///< stop when ||T_2m - T_m||_F <= tol
    scaled    ///< stop when ||T_2m - T_m||_F <= tol * max(1, ||T_2m||_F)
};

struct QuadratureResult {
    ComplexMatrix integral;
    int m0 = 0;         ///< final node count, initial_m * 2^j
    double err_est = 0; ///< ||T_2m - T_m||_F at acceptance
};

/// Composite trapezoidal rule on [0, 2pi] with node doubling and reuse:
/// T_2m = T_m/2 + (pi/m) * sum over the refined odd nodes. Summation runs
/// in fixed node order. With `conjugate_symmetric` set (integrand satisfies
/// g(2pi - t) = conj(g(t)), e.g. real blocks) only the upper half circle is
/// evaluated; requires an even initial_m. Throws NoConvergence when the
/// tolerance is not met within max_doublings.
QuadratureResult trapezoid_adaptive(const std::function<ComplexMatrix(double)>& g, double tol,
                                    int initial_m = 10, int max_doublings = 10,
                                    QuadStop stop = QuadStop::absolute,
                                    bool conjugate_symmetric = false);

/// E_{alpha,beta} of one atomic block by the Cauchy integral over the
/// selected circle, normalized by 1/(2 pi) immediately. Uses the scaled
/// stopping rule so the per-block tolerance is relative to the block scale.
ComplexMatrix atomic_block_ml(const ComplexMatrix& T, MLParams params, double tol,
                              int initial_m = 10, int max_doublings = 10,
                              ContourCircle* circle_out = nullptr,
                              QuadratureResult* quad_out = nullptr);

} // namespace mlmat
