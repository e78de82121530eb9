#pragma once

// Shared helpers for the test suites: deterministic generators and
// independent reference evaluations (kept free of the library's own
// computation paths wherever they serve as oracles).

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "mlmat/linalg.hpp"
#include "mlmat/matrix.hpp"
#include "mlmat/testgen.hpp"

namespace testsup {

using mlmat::Complex;
using mlmat::ComplexMatrix;

// ---------- deterministic sampling ----------

inline double halton(std::size_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * double(index % base);
        index /= base;
    }
    return r;
}

/// Quasi-random points in the closed disk |z| <= radius.
inline std::vector<Complex> halton_disk(std::size_t count, double radius) {
    std::vector<Complex> pts;
    std::size_t i = 1;
    while (pts.size() < count) {
        const double x = radius * (2.0 * halton(i, 2) - 1.0);
        const double y = radius * (2.0 * halton(i, 3) - 1.0);
        ++i;
        if (x * x + y * y <= radius * radius) pts.emplace_back(x, y);
    }
    return pts;
}

inline ComplexMatrix random_complex_matrix(std::size_t n, std::uint64_t seed) {
    std::uint64_t state = seed;
    ComplexMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A(i, j) = Complex(mlmat::det_rng::gaussian(state), mlmat::det_rng::gaussian(state));
    return A;
}

inline ComplexMatrix random_upper_triangular(std::size_t n, std::uint64_t seed, double diag_scale,
                                             double upper_scale) {
    std::uint64_t state = seed;
    ComplexMatrix T(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double s = (i == j) ? diag_scale : upper_scale;
            T(i, j) = s * Complex(mlmat::det_rng::gaussian(state), mlmat::det_rng::gaussian(state));
        }
    return T;
}

// ---------- double-double arithmetic (for cancellation-proof scalar oracles) ----------

struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_renorm(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_renorm(s.hi, s.lo + a.lo + b.lo);
}

inline dd dd_mul_d(dd a, double b) {
    const double p = a.hi * b;
    const double e = std::fma(a.hi, b, -p);
    return quick_renorm(p, e + a.lo * b);
}

inline dd dd_div_d(dd a, double b) {
    const double q1 = a.hi / b;
    const double p = q1 * b;
    const double e = std::fma(q1, b, -p);
    const dd r = dd_add(a, {-p, -e});
    return quick_renorm(q1, (r.hi + r.lo) / b);
}

struct ddc {
    dd re, im;
};

inline ddc ddc_add(ddc a, ddc b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline ddc ddc_mul_c(ddc a, Complex z) { // (a) * (x + iy), x,y double
    const double x = z.real(), y = z.imag();
    const dd re = dd_add(dd_mul_d(a.re, x), dd_mul_d(a.im, -y));
    const dd im = dd_add(dd_mul_d(a.re, y), dd_mul_d(a.im, x));
    return {re, im};
}

inline ddc ddc_div_d(ddc a, double b) { return {dd_div_d(a.re, b), dd_div_d(a.im, b)}; }

/// E_{1/2, beta}(z) by direct summation in double-double arithmetic. The
/// Gamma coefficients follow the exact half-step recurrence
/// Gamma(x+1) = x Gamma(x), so per-term argument rounding never enters; the
/// two base values 1/Gamma(beta), 1/Gamma(beta + 1/2) are ordinary doubles
/// and only scale the even/odd sub-series uniformly.
inline Complex ml_half_alpha_dd(Complex z, double beta, int terms) {
    ddc even{{std::exp(-std::lgamma(beta)), 0.0}, {0.0, 0.0}};
    ddc odd{{std::exp(-std::lgamma(beta + 0.5)), 0.0}, {0.0, 0.0}};
    odd = ddc_mul_c(odd, z);
    ddc sum = ddc_add(even, odd);
    for (int k = 2; k <= terms; ++k) {
        // t_k = t_{k-2} * z / (alpha (k-2) + beta) with alpha = 1/2
        const double div = 0.5 * (k - 2) + beta;
        ddc& chain = (k % 2 == 0) ? even : odd;
        chain = ddc_div_d(ddc_mul_c(chain, z), div);
        sum = ddc_add(sum, chain);
    }
    return {sum.re.hi, sum.im.hi};
}

/// Plain compensated long series in double precision; adequate when the
/// terms carry no destructive cancellation (|arg| small or z >= 0).
inline Complex ml_series_kahan(Complex z, double alpha, double beta, int terms) {
    Complex s = 0.0, comp = 0.0, zk = 1.0;
    for (int k = 0; k <= terms; ++k) {
        const double arg = alpha * k + beta;
        if (arg > 700.0) break;
        const Complex term = zk * std::exp(-std::lgamma(arg));
        const Complex y = term - comp;
        const Complex t = s + y;
        comp = (t - s) - y;
        s = t;
        zk *= z;
    }
    return s;
}

// ---------- matrix helpers ----------

inline double rel_fro(const ComplexMatrix& X, const ComplexMatrix& R) {
    return mlmat::frobenius_norm(R - X) / mlmat::frobenius_norm(R);
}

inline ComplexMatrix scale_to_two_norm(ComplexMatrix A, double target) {
    const double cur = mlmat::norm_estimate(A, mlmat::NormKind::two);
    A *= Complex(target / cur, 0.0);
    return A;
}

/// ||(I - |N|)^{-1}||_F for the strictly upper part N of T (used to check
/// the resolvent-power bound directly).
inline double inv_one_minus_absn_fro(const ComplexMatrix& T) {
    const std::size_t n = T.rows();
    // back-substitute (I - |N|) X = I; the system is unit upper triangular
    std::vector<std::vector<double>> X(n, std::vector<double>(n, 0.0));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = n; i-- > 0;) {
            double s = (i == c) ? 1.0 : 0.0;
            for (std::size_t j = i + 1; j < n; ++j)
                s += std::abs(T(i, j)) * X[j][c];
            X[i][c] = s;
        }
    }
    double fr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fr += X[i][j] * X[i][j];
    return std::sqrt(fr);
}

} // namespace testsup
