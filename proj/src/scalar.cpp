#include "mlmat/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mlmat/taylor.hpp"

namespace mlmat {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_gate_eps(double tol) { return std::clamp(tol, 1e-15, 1e-8); }

struct TaylorSum {
    Complex value;
    double abs_sum; // sum of term magnitudes, for the cancellation estimate
};

// Kahan-compensated summation of k2+1 series terms; coefficients come from
// log space so no Gamma evaluation can overflow.
TaylorSum taylor_sum(Complex z, MLParams p, int k2) {
    Complex s = 0.0, comp = 0.0, zk = 1.0;
    double abs_sum = 0.0;
    for (int k = 0; k <= k2; ++k) {
        const Complex term = zk * std::exp(-std::lgamma(p.alpha * k + p.beta));
        abs_sum += std::abs(term);
        const Complex y = term - comp;
        const Complex t = s + y;
        comp = (t - s) - y;
        s = t;
        zk *= z;
    }
    return {s, abs_sum};
}

// Poles of 1/(y^alpha - z) on the principal branch: radius |z|^(1/alpha),
// angles (Arg z + 2 pi k)/alpha inside (-pi, pi].
std::vector<std::pair<double, double>> principal_poles(Complex z, double alpha) {
    std::vector<std::pair<double, double>> poles;
    if (z == Complex(0.0, 0.0)) return poles;
    const double rp = std::pow(std::abs(z), 1.0 / alpha);
    const double th0 = std::arg(z);
    const int k_lo = static_cast<int>(std::ceil((-kPi * alpha - th0) / (2.0 * kPi))) - 1;
    const int k_hi = static_cast<int>(std::floor((kPi * alpha - th0) / (2.0 * kPi))) + 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double th = (th0 + 2.0 * kPi * k) / alpha;
        if (th > -kPi && th <= kPi) poles.emplace_back(rp, th);
    }
    return poles;
}

struct ContourResult {
    Complex value;
    double err; // max(last doubling difference, rounding floor)
};

// Truncated Hankel path y(u) = mu (1 + iu)^2, u in [-U, U]. The vertex mu
// is chosen so every principal pole lies strictly inside the parabola with
// unit radial clearance; with no poles the minimal contour mu = 1 suffices
// (the integral is contour-independent by deformation).
ContourResult contour_eval(Complex z, MLParams p, double tol) {
    double mu = 1.0;
    for (const auto& [rp, th] : principal_poles(z, p.alpha)) {
        const double c = std::cos(0.5 * th);
        mu = std::max(mu, rp * c * c + 1.0);
    }
    const double U = std::sqrt(1.0 + std::log(100.0 / tol) / mu);

    const double ab = p.alpha - p.beta;
    auto f = [&](double u) {
        const Complex w(1.0, u);
        const Complex y = mu * w * w;
        const Complex logy = std::log(y);
        const Complex dy = Complex(0.0, 2.0 * mu) * w;
        return std::exp(ab * logy + y) / (std::exp(p.alpha * logy) - z) * dy;
    };

    int n = 32;
    double h = 2.0 * U / n;
    Complex sum = 0.5 * (f(-U) + f(U));
    double abs_sum = std::abs(sum);
    for (int k = 1; k < n; ++k) {
        const Complex v = f(-U + k * h);
        sum += v;
        abs_sum += std::abs(v);
    }
    // 1/(2 pi i) * integral
    Complex approx = sum * h / Complex(0.0, 2.0 * kPi);

    for (int doubling = 0; doubling < 12; ++doubling) {
        Complex mid = 0.0;
        for (int k = 0; k < n; ++k) {
            const Complex v = f(-U + (k + 0.5) * h);
            mid += v;
            abs_sum += std::abs(v);
        }
        sum += mid;
        n *= 2;
        h *= 0.5;
        const Complex next = sum * h / Complex(0.0, 2.0 * kPi);
        const double diff = std::abs(next - approx);
        approx = next;
        if (!std::isfinite(approx.real()) || !std::isfinite(approx.imag()) ||
            !std::isfinite(abs_sum))
            throw Overflow("integrand overflow on the Hankel path");
        const double floor_est = 4.0 * kUnitRoundoff * abs_sum * h / (2.0 * kPi);
        if (diff <= std::max(tol * std::max(1.0, std::abs(approx)), floor_est))
            return {approx, std::max(diff, floor_est)};
    }
    throw NoConvergence("Hankel-path quadrature did not meet the tolerance in 12 doublings");
}

void validate_inputs(Complex z, const MLParams& p, double tol) {
    p.validate();
    if (!(tol >= 1e-15)) throw std::invalid_argument("ml_scalar: tol must be >= 1e-15");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("ml_scalar: z must be finite");
}

ScalarMLResult dispatch(Complex z, MLParams p, double tol);

Complex reduce_alpha(Complex z, MLParams p, double tol, double* est_out) {
    const int m0 = static_cast<int>(std::ceil(p.alpha));
    const MLParams inner{p.alpha / m0, p.beta};
    const Complex root0 = (z == Complex(0.0, 0.0)) ? Complex(0.0, 0.0)
                                                   : std::exp(std::log(z) / double(m0));
    Complex acc = 0.0;
    double est = 0.0;
    for (int h = 0; h < m0; ++h) {
        const Complex zr = root0 * std::exp(Complex(0.0, 2.0 * kPi * h / m0));
        const ScalarMLResult r = dispatch(zr, inner, tol);
        acc += r.value;
        est = std::max(est, r.est_error);
    }
    if (est_out) *est_out = est;
    return acc / double(m0);
}

ScalarMLResult dispatch(Complex z, MLParams p, double tol) {
    const TaylorPlan plan = taylor_plan(std::abs(z), p, clamp_gate_eps(tol));
    if (plan.accepted) {
        const TaylorSum ts = taylor_sum(z, p, plan.k2);
        const double rounding = 4.0 * kUnitRoundoff * ts.abs_sum;
        const double scale = std::max(1.0, std::abs(ts.value));
        if (rounding <= tol * scale) {
            const double trunc = truncation_bound_prop3(plan.b, plan.k2);
            return {ts.value, ScalarMethod::taylor, std::max(trunc, rounding) / scale};
        }
        // cancellation too severe at this tolerance: fall through to the
        // integral representation
    }
    if (p.alpha <= 1.0) {
        const ContourResult c = contour_eval(z, p, tol);
        return {c.value, ScalarMethod::contour, c.err / std::max(1.0, std::abs(c.value))};
    }
    double est = 0.0;
    const Complex v = reduce_alpha(z, p, tol, &est);
    return {v, ScalarMethod::reduction, est};
}

} // namespace

ScalarMLResult ml_scalar(Complex z, MLParams params, double tol) {
    validate_inputs(z, params, tol);
    return dispatch(z, params, tol);
}

Complex ml_scalar_taylor(Complex z, MLParams params, double tol) {
    validate_inputs(z, params, tol);
    const TaylorPlan plan = taylor_plan(std::abs(z), params, clamp_gate_eps(tol));
    if (!plan.accepted)
        throw TaylorNotApplicable("the Taylor gate rejects |z| for these parameters");
    return taylor_sum(z, params, plan.k2).value;
}

Complex ml_scalar_contour(Complex z, MLParams params, double tol) {
    validate_inputs(z, params, tol);
    if (!(params.alpha <= 1.0))
        throw std::invalid_argument("ml_scalar_contour requires 0 < alpha <= 1");
    return contour_eval(z, params, tol).value;
}

Complex ml_scalar_reduce_alpha(Complex z, MLParams params, double tol) {
    validate_inputs(z, params, tol);
    if (!(params.alpha > 1.0))
        throw std::invalid_argument("ml_scalar_reduce_alpha requires alpha > 1");
    return reduce_alpha(z, params, tol, nullptr);
}

Complex ml_scalar_derivative(Complex z, MLParams params, int order, double tol) {
    validate_inputs(z, params, std::max(tol, 1e-15));
    if (order != 1 && order != 2)
        throw std::invalid_argument("ml_scalar_derivative supports orders 1 and 2 only");

    const TaylorPlan plan = taylor_plan(std::abs(z), params, 1e-15);
    if (plan.accepted) {
        Complex s = 0.0, zk = 1.0;
        for (int k = order; k <= plan.k2; ++k) {
            double fact = 1.0;
            for (int j = 0; j < order; ++j) fact *= double(k - j);
            s += fact * std::exp(-std::lgamma(params.alpha * k + params.beta)) * zk;
            zk *= z;
        }
        return s;
    }
    const double h = 1e-3 * std::max(1.0, std::abs(z));
    const double inner_tol = 1e-10;
    const Complex fp = dispatch(z + h, params, inner_tol).value;
    const Complex fm = dispatch(z - h, params, inner_tol).value;
    if (order == 1) return (fp - fm) / (2.0 * h);
    const Complex f0 = dispatch(z, params, inner_tol).value;
    return (fp - 2.0 * f0 + fm) / (h * h);
}

std::vector<double> ml_scalar_grid(GridRect rect, std::size_t n_re, std::size_t n_im,
                                   MLParams params, double tol) {
    params.validate();
    if (n_re < 2 || n_im < 2)
        throw std::invalid_argument("ml_scalar_grid: steps must be >= 2 in each direction");
    const double dre = (n_re > 1) ? (rect.re_max - rect.re_min) / double(n_re - 1) : 0.0;
    const double dim = (n_im > 1) ? (rect.im_max - rect.im_min) / double(n_im - 1) : 0.0;
    std::vector<double> grid(n_re * n_im);
    for (std::size_t i = 0; i < n_im; ++i) {
        for (std::size_t j = 0; j < n_re; ++j) {
            const Complex z(rect.re_min + dre * double(j), rect.im_min + dim * double(i));
            try {
                grid[i * n_re + j] = std::abs(ml_scalar(z, params, tol).value);
            } catch (const Overflow&) {
                grid[i * n_re + j] = std::numeric_limits<double>::infinity();
            }
        }
    }
    return grid;
}

} // namespace mlmat
