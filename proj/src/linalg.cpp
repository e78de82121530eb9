#include "mlmat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mlmat {

namespace {

// Deterministic unit start vector for the power iteration.
std::vector<Complex> power_start(std::size_t n) {
    std::mt19937_64 rng(0x6d6c6d6174ULL);
    std::vector<Complex> v(n);
    double nrm = 0.0;
    for (auto& x : v) {
        const double re = static_cast<double>(rng()) / static_cast<double>(rng.max()) - 0.5;
        const double im = static_cast<double>(rng()) / static_cast<double>(rng.max()) - 0.5;
        x = Complex(re, im);
        nrm += std::norm(x);
    }
    nrm = std::sqrt(nrm);
    for (auto& x : v) x /= nrm;
    return v;
}

std::vector<Complex> apply(const ComplexMatrix& A, const std::vector<Complex>& v, bool adjoint) {
    const std::size_t m = adjoint ? A.cols() : A.rows();
    const std::size_t k = adjoint ? A.rows() : A.cols();
    std::vector<Complex> w(m, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            s += (adjoint ? std::conj(A(j, i)) : A(i, j)) * v[j];
        w[i] = s;
    }
    return w;
}

double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double two_norm_power(const ComplexMatrix& A) {
    const std::size_t n = A.cols();
    if (n == 0 || A.rows() == 0) return 0.0;
    auto v = power_start(n);
    double sigma = 0.0;
    for (int it = 0; it < 500; ++it) {
        auto u = apply(A, v, false);
        auto w = apply(A, u, true); // w = A* A v
        const double nw = vec_norm(w);
        if (nw == 0.0) return 0.0;
        const double next = std::sqrt(nw);
        const double change = std::abs(next - sigma) / std::max(next, 1e-300);
        sigma = next;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
        if (it >= 20 && change < 1e-6) break;
    }
    return sigma;
}

} // namespace

double norm_estimate(const ComplexMatrix& A, NormKind kind) {
    if (A.empty()) return 0.0;
    switch (kind) {
        case NormKind::frobenius: return frobenius_norm(A);
        case NormKind::one: return one_norm(A);
        case NormKind::two: return two_norm_power(A);
    }
    return 0.0;
}

ComplexMatrix shifted_triangular_solve(const ComplexMatrix& T, Complex z, const ComplexMatrix& B) {
    const std::size_t n = T.rows();
    if (!T.is_square() || B.rows() != n)
        throw std::invalid_argument("shifted_triangular_solve: shape mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(z - T(i, i)) < 1e-14 * std::max(1.0, std::abs(z)))
            throw SingularShift("shift z is numerically an eigenvalue of T");

    ComplexMatrix X(n, B.cols());
    for (std::size_t c = 0; c < B.cols(); ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = B(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) s += T(ii, j) * X(j, c); // M(ii,j) = -T(ii,j)
            X(ii, c) = s / (z - T(ii, ii));
        }
    }
    return X;
}

namespace {

struct Givens {
    double c;  // real
    Complex s; // [c s; -conj(s) c] [f; g] = [r; 0]
};

Givens make_givens(Complex f, Complex g) {
    if (g == Complex(0.0, 0.0)) return {1.0, Complex(0.0, 0.0)};
    if (f == Complex(0.0, 0.0)) return {0.0, std::conj(g) / std::abs(g)};
    const double af = std::abs(f), ag = std::abs(g);
    const double d = std::hypot(af, ag);
    const Complex ph = f / af;
    return {af / d, ph * std::conj(g) / d};
}

// Apply G to rows (k, k+1) of H over columns [c0, c1).
void rotate_rows(ComplexMatrix& H, std::size_t k, const Givens& G, std::size_t c0, std::size_t c1) {
    for (std::size_t j = c0; j < c1; ++j) {
        const Complex a = H(k, j), b = H(k + 1, j);
        H(k, j) = G.c * a + G.s * b;
        H(k + 1, j) = -std::conj(G.s) * a + G.c * b;
    }
}

// Apply G^H to columns (k, k+1) of H over rows [r0, r1).
void rotate_cols(ComplexMatrix& H, std::size_t k, const Givens& G, std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
        const Complex a = H(i, k), b = H(i, k + 1);
        H(i, k) = a * G.c + b * G.s;
        H(i, k + 1) = -a * std::conj(G.s) + b * G.c;
    }
}

void hessenberg_reduce(ComplexMatrix& H, ComplexMatrix& U) {
    const std::size_t n = H.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(H(i, k));
        if (tail == 0.0) continue;
        const std::size_t m = n - k - 1;
        std::vector<Complex> v(m);
        double nx = std::norm(H(k + 1, k)) + tail;
        nx = std::sqrt(nx);
        for (std::size_t i = 0; i < m; ++i) v[i] = H(k + 1 + i, k);
        const Complex phase = (v[0] != Complex(0.0, 0.0)) ? v[0] / std::abs(v[0]) : Complex(1.0, 0.0);
        v[0] += phase * nx;
        double nv = 0.0;
        for (const Complex& x : v) nv += std::norm(x);
        nv = std::sqrt(nv);
        if (nv == 0.0) continue;
        for (Complex& x : v) x /= nv;

        // H <- P H P with P = I - 2 v v*
        for (std::size_t j = k; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(v[i]) * H(k + 1 + i, j);
            dot *= 2.0;
            for (std::size_t i = 0; i < m; ++i) H(k + 1 + i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += H(i, k + 1 + j) * v[j];
            dot *= 2.0;
            for (std::size_t j = 0; j < m; ++j) H(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += U(i, k + 1 + j) * v[j];
            dot *= 2.0;
            for (std::size_t j = 0; j < m; ++j) U(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) H(i, k) = 0.0;
    }
}

Complex wilkinson_shift(const ComplexMatrix& H, std::size_t hi) {
    const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
    const Complex c = H(hi, hi - 1), d = H(hi, hi);
    const Complex tr = a + d, det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex m1 = 0.5 * (tr + disc), m2 = 0.5 * (tr - disc);
    return (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
}

} // namespace

SchurFactors schur_decompose(const ComplexMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("schur_decompose: matrix must be square");
    if (!A.is_finite()) throw std::invalid_argument("schur_decompose: matrix has non-finite entries");
    const std::size_t n = A.rows();
    SchurFactors f{ComplexMatrix::identity(n), A};
    if (n <= 1) return f;

    ComplexMatrix& H = f.T;
    ComplexMatrix& U = f.U;
    hessenberg_reduce(H, U);

    const double scale = frobenius_norm(H);
    const long max_sweeps = 50 * static_cast<long>(n);
    long sweeps = 0;
    int stall = 0;
    std::size_t hi = n - 1;
    while (hi > 0) {
        // find the active window [lo, hi]
        std::size_t lo = hi;
        while (lo > 0) {
            double tol = kUnitRoundoff * (std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo)));
            if (tol == 0.0) tol = kUnitRoundoff * scale;
            if (std::abs(H(lo, lo - 1)) <= tol) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            stall = 0;
            continue;
        }
        if (++sweeps > max_sweeps)
            throw NoConvergence("QR iteration exceeded 50*n sweeps");
        ++stall;
        Complex mu = wilkinson_shift(H, hi);
        if (stall % 12 == 0) mu = H(hi, hi) + 1.5 * std::abs(H(hi, hi - 1)); // exceptional shift

        Complex x = H(lo, lo) - mu;
        Complex y = H(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens G = make_givens(x, y);
            rotate_rows(H, k, G, (k == 0) ? 0 : k - 1, n);
            rotate_cols(H, k, G, 0, std::min(hi, k + 2) + 1);
            rotate_cols(U, k, G, 0, n);
            if (k + 1 < hi) {
                x = H(k + 1, k);
                y = H(k + 2, k);
            }
        }
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) H(i, j) = 0.0;
    return f;
}

void swap_adjacent(SchurFactors& factors, std::size_t k) {
    ComplexMatrix& T = factors.T;
    ComplexMatrix& U = factors.U;
    const std::size_t n = T.rows();
    if (k + 1 >= n) throw std::invalid_argument("swap_adjacent: index out of range");

    const Complex t11 = T(k, k), t12 = T(k, k + 1), t22 = T(k + 1, k + 1);
    if (std::abs(t11 - t22) < 1e-14 * frobenius_norm(T)) return; // same cluster, exchange unnecessary

    // First column of the rotation is the unit eigenvector of [[t11,t12],[0,t22]]
    // for eigenvalue t22.
    const Complex x = t12 / (t22 - t11);
    const double nv = std::sqrt(std::norm(x) + 1.0);
    const Complex a = x / nv, b = Complex(1.0 / nv, 0.0);
    // G = [[a, -conj(b)], [b, conj(a)]], unitary with G e1 = eigenvector.
    for (std::size_t j = k; j < n; ++j) { // rows k,k+1 <- G^H * rows
        const Complex r1 = T(k, j), r2 = T(k + 1, j);
        T(k, j) = std::conj(a) * r1 + std::conj(b) * r2;
        T(k + 1, j) = -b * r1 + a * r2;
    }
    for (std::size_t i = 0; i <= k + 1; ++i) { // cols k,k+1 <- cols * G
        const Complex c1 = T(i, k), c2 = T(i, k + 1);
        T(i, k) = c1 * a + c2 * b;
        T(i, k + 1) = -c1 * std::conj(b) + c2 * std::conj(a);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Complex c1 = U(i, k), c2 = U(i, k + 1);
        U(i, k) = c1 * a + c2 * b;
        U(i, k + 1) = -c1 * std::conj(b) + c2 * std::conj(a);
    }
    T(k + 1, k) = 0.0;
    T(k, k) = t22;
    T(k + 1, k + 1) = t11;
}

ComplexMatrix sylvester_solve_triangular(const ComplexMatrix& M, const ComplexMatrix& N,
                                         const ComplexMatrix& P) {
    const std::size_t m = M.rows(), n = N.rows();
    if (!M.is_square() || !N.is_square() || P.rows() != n || P.cols() != m)
        throw std::invalid_argument("sylvester_solve_triangular: shape mismatch");

    const double sep_floor = 1e-8 * std::max({frobenius_norm(M), frobenius_norm(N), 1.0});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(M(i, i) - N(j, j)) <= sep_floor)
                throw EigenvalueOverlap("sigma(M) and sigma(N) are not separated");

    ComplexMatrix X(n, m);
    ComplexMatrix rhs(n, 1);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = P(i, j);
            for (std::size_t c = 0; c < j; ++c) s -= X(i, c) * M(c, j);
            rhs(i, 0) = s;
        }
        const ComplexMatrix col = shifted_triangular_solve(N, M(j, j), rhs);
        for (std::size_t i = 0; i < n; ++i) X(i, j) = col(i, 0);
    }
    return X;
}

} // namespace mlmat
