#pragma once

#include <cstddef>
#include <vector>

#include "mlmat/core.hpp"

namespace mlmat {

enum class ScalarMethod { taylor, contour, reduction };

/// Result of a scalar evaluation. `est_error` follows the same convention
/// as `tol`: relative when |value| > 1, absolute otherwise. When the
/// double-precision rounding floor of the quadrature exceeds the requested
/// tolerance, est_error reports that floor instead.
struct ScalarMLResult {
    Complex value;
    ScalarMethod method;
    double est_error;
};

/// Evaluates E_{alpha,beta}(z). Dispatch: the Taylor series when the scalar
/// gate accepts |z| and the summation is well conditioned; otherwise the
/// Hankel-path contour (alpha <= 1) or the alpha-reduction followed by the
/// contour (alpha > 1).
ScalarMLResult ml_scalar(Complex z, MLParams params, double tol);

/// Compensated summation of the first k2+1 Taylor terms. Throws
/// TaylorNotApplicable when the gate rejects |z|.
Complex ml_scalar_taylor(Complex z, MLParams params, double tol);

/// Trapezoidal quadrature of the Wiman integrand y^{alpha-beta} e^y /
/// (y^alpha - z) over a truncated Hankel path (parabolic parameterization).
/// Requires 0 < alpha <= 1. Throws NoConvergence after 12 node doublings,
/// Overflow when the integrand leaves the double range.
Complex ml_scalar_contour(Complex z, MLParams params, double tol);

/// For alpha > 1: averages E_{alpha/m0,beta} over the m0 rotated m0-th
/// roots of z, with m0 = ceil(alpha).
Complex ml_scalar_reduce_alpha(Complex z, MLParams params, double tol);

/// First or second derivative, rough-estimate contract (~1e-4 relative):
/// term-wise differentiated Taylor when the gate accepts, otherwise central
/// finite differences of ml_scalar with step 1e-3 * max(1, |z|).
Complex ml_scalar_derivative(Complex z, MLParams params, int order, double tol);

struct GridRect {
    double re_min, re_max, im_min, im_max;
};

/// |E| over an evenly spaced grid including endpoints. Emitted row-major
/// with the imaginary axis as the slow index: entry i_im * n_re + i_re.
/// Cells where the value overflows carry +Inf.
std::vector<double> ml_scalar_grid(GridRect rect, std::size_t n_re, std::size_t n_im,
                                   MLParams params, double tol);

} // namespace mlmat
