#include "mlmat/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mlmat/linalg.hpp"

namespace mlmat {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex contour_center(const ComplexMatrix& T) {
    const std::size_t n = T.rows();
    if (!T.is_square() || n == 0) throw std::invalid_argument("contour_center: square T required");
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += T(i, i);
    return tr / double(n);
}

double eigen_radius(const ComplexMatrix& T, Complex z0) {
    double d = 0.0;
    for (std::size_t i = 0; i < T.rows(); ++i) d = std::max(d, std::abs(T(i, i) - z0));
    return d;
}

double g2pp_bound(double r, double t, const ContourCircle& circle, std::size_t n,
                  MLParams params) {
    const double base = r - circle.eig_radius;
    if (!(base > 0.0)) throw std::invalid_argument("g2pp_bound: r must exceed the eigenvalue radius");

    const Complex e_it = std::exp(Complex(0.0, t));
    const Complex z = circle.center + r * e_it;
    const Complex E = ml_scalar(z, params, 1e-6).value;
    const Complex E1 = ml_scalar_derivative(z, params, 1, 1e-4);
    const Complex E2 = ml_scalar_derivative(z, params, 2, 1e-4);

    const Complex g1 = r * e_it;
    const Complex g1p = Complex(0.0, 1.0) * r * e_it;
    const Complex g1pp = -r * e_it;
    const Complex g2 = E;
    const Complex g2p = E1 * g1p;
    const Complex g2pp = E2 * g1p * g1p + E1 * g1pp;

    const double a1 = std::abs(g1pp * g2 + 2.0 * g1p * g2p + g1 * g2pp);
    const double a2 = std::abs(g1p * g2 + g1 * g2p);
    const double a3 = std::abs(g1 * g2);

    double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;
    double bj = 1.0; // base^{-j}
    for (std::size_t j = 1; j <= n; ++j) {
        bj /= base;
        gamma1 = std::max(gamma1, bj);
        gamma2 = std::max(gamma2, double(j) * bj / base);
        gamma3 = std::max(gamma3, 0.5 * double(j) * double(j + 1) * bj / (base * base));
    }
    return a1 * gamma1 + 2.0 * r * a2 * gamma2 + r * a3 * (gamma2 + 2.0 * r * gamma3);
}

ContourCircle select_radius(const ComplexMatrix& T, MLParams params) {
    const std::size_t n = T.rows();
    const Complex z0 = contour_center(T);
    const double d = eigen_radius(T, z0);
    const double margin = 0.05 * std::max(d, 1.0);
    const double lo = d + margin;
    const double hi = std::max(std::max(3.0, d + 1.0), lo + 1.0);

    ContourCircle circle{z0, 0.0, d};
    double best_bound = std::numeric_limits<double>::infinity();
    double best_r = 0.0;
    for (int j = 1; j <= 20; ++j) {
        const double r = lo + j * (hi - lo) / 20.0;
        double worst = 0.0;
        bool viable = true;
        for (int k = 0; k < 32; ++k) {
            const double t = 2.0 * kPi * k / 32.0;
            try {
                worst = std::max(worst, g2pp_bound(r, t, circle, n, params));
            } catch (const Overflow&) {
                viable = false;
                break;
            }
        }
        if (viable && worst < best_bound) {
            best_bound = worst;
            best_r = r;
        }
    }
    if (best_r == 0.0) throw NoViableRadius("every candidate radius overflowed the scalar ML");
    circle.radius = best_r;
    return circle;
}

ComplexMatrix integrand_g(double t, const ContourCircle& circle, const ComplexMatrix& T,
                          MLParams params, const std::function<Complex(Complex)>& scalar_factor) {
    const std::size_t n = T.rows();
    const Complex re_it = circle.radius * std::exp(Complex(0.0, t));
    const Complex z = circle.center + re_it;
    const Complex s = scalar_factor ? scalar_factor(z) : ml_scalar(z, params, 1e-15).value;
    ComplexMatrix B(n, n);
    for (std::size_t i = 0; i < n; ++i) B(i, i) = re_it * s;
    return shifted_triangular_solve(T, z, B);
}

namespace {

ComplexMatrix real_part_doubled(const ComplexMatrix& S) {
    ComplexMatrix R(S.rows(), S.cols());
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j) R(i, j) = 2.0 * S(i, j).real();
    return R;
}

} // namespace

QuadratureResult trapezoid_adaptive(const std::function<ComplexMatrix(double)>& g, double tol,
                                    int initial_m, int max_doublings, QuadStop stop,
                                    bool conjugate_symmetric) {
    if (initial_m < 2) throw std::invalid_argument("trapezoid_adaptive: initial_m must be >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("trapezoid_adaptive: tol must be positive");
    const bool half = conjugate_symmetric && initial_m % 2 == 0;

    long m = initial_m;
    // Running node sum. In half mode it holds g(0)/2 + g(pi)/2 + the nodes in
    // (0, pi); the full-circle sum is then S + conj(S).
    ComplexMatrix S;
    if (half) {
        S = Complex(0.5, 0.0) * g(0.0);
        S += Complex(0.5, 0.0) * g(kPi);
        for (long k = 1; k < m / 2; ++k) S += g(2.0 * kPi * double(k) / double(m));
    } else {
        S = g(0.0);
        for (long k = 1; k < m; ++k) S += g(2.0 * kPi * double(k) / double(m));
    }
    auto value = [&]() {
        ComplexMatrix full = half ? real_part_doubled(S) : S;
        full *= 2.0 * kPi / double(m);
        return full;
    };

    ComplexMatrix prev = value();
    for (int j = 0; j < max_doublings; ++j) {
        if (half) {
            // the refined odd nodes in (0, pi); their mirror images are
            // accounted for by the conjugate half
            for (long k = 0; k < m / 2; ++k) S += g(kPi * double(2 * k + 1) / double(m));
        } else {
            for (long k = 0; k < m; ++k) S += g(kPi * double(2 * k + 1) / double(m));
        }
        m *= 2;
        ComplexMatrix cur = value();
        if (!cur.is_finite()) throw Overflow("trapezoid sum left the double range");
        ComplexMatrix diff = cur - prev;
        const double err = frobenius_norm(diff);
        const double scale = stop == QuadStop::scaled ? std::max(1.0, frobenius_norm(cur)) : 1.0;
        if (err <= tol * scale)
            return {std::move(cur), static_cast<int>(m), err};
        prev = std::move(cur);
    }
    throw NoConvergence("trapezoidal rule did not reach the tolerance before max_doublings");
}

ComplexMatrix atomic_block_ml(const ComplexMatrix& T, MLParams params, double tol, int initial_m,
                              int max_doublings, ContourCircle* circle_out,
                              QuadratureResult* quad_out) {
    const std::size_t n = T.rows();
    if (!T.is_square() || n == 0) throw std::invalid_argument("atomic_block_ml: square T required");
    if (n == 1) {
        ComplexMatrix F(1, 1);
        F(0, 0) = ml_scalar(T(0, 0), params, std::max(tol, 1e-15)).value;
        return F;
    }
    const ContourCircle circle = select_radius(T, params);
    if (circle_out) *circle_out = circle;

    const double scalar_tol = std::max(1e-15, tol * 1e-2);
    auto g = [&](double t) { return integrand_g(t, circle, T, params,
                                                [&](Complex z) { return ml_scalar(z, params, scalar_tol).value; }); };
    const bool conj_sym = T.is_real() && circle.center.imag() == 0.0;
    QuadratureResult qr =
        trapezoid_adaptive(g, tol, initial_m, max_doublings, QuadStop::scaled, conj_sym);
    // normalize per block so every F block is E-scaled before the Parlett fill
    qr.integral *= 1.0 / (2.0 * kPi);
    qr.err_est /= 2.0 * kPi;
    ComplexMatrix F = qr.integral;
    if (quad_out) *quad_out = std::move(qr);
    return F;
}

} // namespace mlmat
