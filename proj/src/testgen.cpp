#include "mlmat/testgen.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mlmat {

namespace det_rng {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

double uniform(std::uint64_t& state) {
    return double(splitmix64(state) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t& state) {
    const double u1 = std::max(uniform(state), 0x1.0p-60);
    const double u2 = uniform(state);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace det_rng

ComplexMatrix gen_redheffer(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gen_redheffer: n >= 1 required");
    ComplexMatrix A(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            if (j == 1 || j % i == 0) A(i - 1, j - 1) = 1.0;
    return A;
}

std::size_t SpectrumSpec::order() const {
    if (eigenvalues.size() != multiplicities.size())
        throw std::invalid_argument("SpectrumSpec: list length mismatch");
    return std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0},
                           [](std::size_t acc, int m) { return acc + std::size_t(m); });
}

namespace {

// Real orthogonal factor of a seeded Gaussian matrix, R-diagonal signs
// normalized so Q is a deterministic function of the seed.
std::vector<double> random_orthogonal(std::size_t n, std::uint64_t seed) {
    std::uint64_t state = seed ^ 0x5DEECE66DULL;
    std::vector<double> G(n * n);
    for (double& g : G) g = det_rng::gaussian(state);

    std::vector<double> Q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) Q[i * n + i] = 1.0;

    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double nx = 0.0;
        for (std::size_t i = k; i < n; ++i) nx += G[i * n + k] * G[i * n + k];
        nx = std::sqrt(nx);
        if (nx == 0.0) continue;
        const double sign = G[k * n + k] >= 0.0 ? 1.0 : -1.0;
        double nv = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = G[i * n + k] + (i == k ? sign * nx : 0.0);
            nv += v[i] * v[i];
        }
        nv = std::sqrt(nv);
        if (nv == 0.0) continue;
        for (std::size_t i = k; i < n; ++i) v[i] /= nv;
        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * G[i * n + j];
            dot *= 2.0;
            for (std::size_t i = k; i < n; ++i) G[i * n + j] -= dot * v[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += Q[j * n + i] * v[i];
            dot *= 2.0;
            for (std::size_t i = k; i < n; ++i) Q[j * n + i] -= dot * v[i];
        }
        // Q now accumulates the product of reflectors applied from the right
    }
    // flip columns where diag(R) came out negative, making Q unique
    for (std::size_t k = 0; k < n; ++k) {
        if (G[k * n + k] < 0.0)
            for (std::size_t i = 0; i < n; ++i) Q[i * n + k] = -Q[i * n + k];
    }
    return Q;
}

} // namespace

ComplexMatrix gen_prescribed_spectrum(const SpectrumSpec& spec) {
    const std::size_t n = spec.order();
    std::vector<Complex> diag;
    diag.reserve(n);
    for (std::size_t s = 0; s < spec.eigenvalues.size(); ++s)
        for (int m = 0; m < spec.multiplicities[s]; ++m) diag.push_back(spec.eigenvalues[s]);

    const std::vector<double> Q = random_orthogonal(n, spec.seed);
    ComplexMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += Q[i * n + k] * diag[k] * Q[j * n + k];
            A(i, j) = s;
        }
    return A;
}

std::vector<ComplexMatrix> gen_atomic_suite(std::uint64_t seed) {
    constexpr std::size_t n = 40;
    const Complex jordan_lambdas[8] = {{0.0, 0.0},   {-0.5, 0.0},  {-0.9, 0.0},   {0.1, 0.0},
                                       {-0.2, 0.6},  {-0.6, -0.3}, {0.05, 0.45},  {-0.35, -0.75}};
    const Complex cluster_centers[8] = {{-1.6, 0.4}, {-2.2, 0.0},  {-1.8, -0.9},  {-1.5, 1.1},
                                        {-2.6, 0.2}, {-1.4, -0.5}, {-2.0, -1.2},  {-1.7, 0.8}};
    std::vector<ComplexMatrix> suite;
    suite.reserve(16);
    for (const Complex lambda : jordan_lambdas) {
        ComplexMatrix J(n, n);
        for (std::size_t i = 0; i < n; ++i) J(i, i) = lambda;
        for (std::size_t i = 0; i + 1 < n; ++i) J(i, i + 1) = 1.0;
        suite.push_back(std::move(J));
    }
    std::uint64_t state = seed ^ 0xA70A1C5u;
    for (const Complex c : cluster_centers) {
        ComplexMatrix T(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double rho = 0.1 * std::sqrt(det_rng::uniform(state));
            const double th = 2.0 * std::numbers::pi * det_rng::uniform(state);
            T(i, i) = c + rho * Complex(std::cos(th), std::sin(th));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                T(i, j) = Complex(2.0 * det_rng::uniform(state) - 1.0,
                                  2.0 * det_rng::uniform(state) - 1.0);
        suite.push_back(std::move(T));
    }
    return suite;
}

ComplexMatrix oracle_series(const ComplexMatrix& A, MLParams params, int terms) {
    params.validate();
    if (!A.is_square()) throw std::invalid_argument("oracle_series: square matrix required");
    const std::size_t n = A.rows();

    ComplexMatrix S = ComplexMatrix::identity(n);
    S *= std::exp(-std::lgamma(params.beta));
    ComplexMatrix comp(n, n); // Kahan compensation, elementwise
    ComplexMatrix P = ComplexMatrix::identity(n);
    bool decayed = false;
    for (int k = 1; k <= terms; ++k) {
        P = P * A;
        if (!P.is_finite()) break;
        const double coef = std::exp(-std::lgamma(params.alpha * k + params.beta));
        ComplexMatrix term = P;
        term *= coef;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Complex y = term(i, j) - comp(i, j);
                const Complex t = S(i, j) + y;
                comp(i, j) = (t - S(i, j)) - y;
                S(i, j) = t;
            }
        if (frobenius_norm(term) < 1e-20) {
            decayed = true;
            break;
        }
    }
    if (!decayed)
        throw SeriesNotDecayed("series terms did not fall below 1e-20 within the term budget");
    return S;
}

std::array<SpectrumSpec, 4> table1_specs(std::uint64_t seed) {
    auto pm = [](double re, double im, int mult, SpectrumSpec& s) {
        s.eigenvalues.push_back({re, im});
        s.multiplicities.push_back(mult);
        s.eigenvalues.push_back({-re, -im});
        s.multiplicities.push_back(mult);
    };
    std::array<SpectrumSpec, 4> specs;

    SpectrumSpec& a1 = specs[0];
    pm(1.0, 0, 5, a1);
    pm(1.0001, 0, 4, a1);
    pm(1.001, 0, 4, a1);
    pm(1.01, 0, 4, a1);
    pm(1.1, 0, 3, a1);

    SpectrumSpec& a2 = specs[1];
    pm(1.0, 0, 8, a2);
    a2.eigenvalues.insert(a2.eigenvalues.end(), {{2, 0}, {-5, 0}, {-10, 0}});
    a2.multiplicities.insert(a2.multiplicities.end(), {8, 8, 8});

    SpectrumSpec& a3 = specs[2];
    a3.eigenvalues.insert(a3.eigenvalues.end(), {{-1, 0}, {-5, 0}});
    a3.multiplicities.insert(a3.multiplicities.end(), {2, 2});
    for (auto [re, im] : {std::pair{1.0, 10.0}, std::pair{-4.0, 1.5}, std::pair{0.0, 5.0}}) {
        a3.eigenvalues.insert(a3.eigenvalues.end(), {{re, im}, {re, -im}});
        a3.multiplicities.insert(a3.multiplicities.end(), {6, 6});
    }

    SpectrumSpec& a4 = specs[3];
    a4.eigenvalues.insert(a4.eigenvalues.end(), {{1, 0}, {1.0001, 0}, {1.001, 0}});
    a4.multiplicities.insert(a4.multiplicities.end(), {4, 4, 4});
    for (auto [re, im] : {std::pair{1.0, 10.0}, std::pair{-4.0, 1.5}}) {
        a4.eigenvalues.insert(a4.eigenvalues.end(), {{re, im}, {re, -im}});
        a4.multiplicities.insert(a4.multiplicities.end(), {7, 7});
    }

    for (std::size_t i = 0; i < specs.size(); ++i) specs[i].seed = seed + i;
    return specs;
}

} // namespace mlmat
