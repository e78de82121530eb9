#include "mlmat/taylor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mlmat {

TaylorPlan taylor_plan(double matrix_norm, MLParams params, double eps) {
    params.validate();
    if (!(matrix_norm >= 0.0) || !std::isfinite(matrix_norm))
        throw std::invalid_argument("taylor_plan: matrix_norm must be finite and nonnegative");
    if (!(eps >= 1e-16 && eps <= 1e-8))
        throw std::invalid_argument("taylor_plan: eps out of [1e-16, 1e-8]");

    TaylorPlan plan;
    plan.matrix_norm = matrix_norm;
    plan.m_max = static_cast<int>(std::floor((kGammaArgMax - params.beta) / params.alpha));
    plan.a = 2.0 * matrix_norm;
    plan.b = 0.5;
    plan.k2 = static_cast<int>(std::ceil(std::log(eps * (1.0 - plan.b)) / std::log(plan.b) - 1.0));
    if (plan.m_max < 1) return plan; // beta too close to the Gamma range: reject

    plan.norm_max =
        std::exp((std::log(eps) + std::lgamma(params.alpha * plan.m_max + params.beta)) /
                 plan.m_max);

    const double log_a = (plan.a > 0.0) ? std::log(plan.a)
                                        : -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= plan.m_max; ++m) {
        if (std::lgamma(params.alpha * m + params.beta) > m * log_a) {
            plan.k1 = m;
            break;
        }
    }
    // The classical step-9 conditions, plus k2 <= m_max: evaluating k2 terms
    // needs Gamma arguments up to alpha*k2 + beta within the double range.
    plan.accepted = matrix_norm <= plan.norm_max && plan.k1.has_value() &&
                    *plan.k1 <= plan.k2 && plan.k2 <= plan.m_max;
    return plan;
}

int min_terms_prop1(double matrix_norm, MLParams params, double eps) {
    params.validate();
    if (!(matrix_norm < 1.0)) throw NormTooLarge("min_terms_prop1 requires ||A|| < 1");
    const double m1 = std::ceil((2.0 - params.beta) / params.alpha + 1.0);
    const double m2 = std::ceil(std::log(eps * (1.0 - matrix_norm)) / std::log(matrix_norm)) + 1.0;
    return static_cast<int>(std::max(m1, m2));
}

double truncation_bound_prop2(double matrix_norm, double mu) {
    if (!(matrix_norm < 1.0)) throw NormTooLarge("truncation_bound_prop2 requires ||A|| < 1");
    return mu * matrix_norm / (1.0 - matrix_norm);
}

double truncation_bound_prop3(double b, int m) {
    if (!(b > 0.0 && b < 1.0)) throw InvalidRatio("truncation_bound_prop3 requires 0 < b < 1");
    return std::pow(b, m + 1) / (1.0 - b);
}

ComplexMatrix taylor_eval_ps(const ComplexMatrix& A, MLParams params, int degree, int* mults) {
    params.validate();
    if (!A.is_square()) throw std::invalid_argument("taylor_eval_ps: matrix must be square");
    if (degree < 0) throw std::invalid_argument("taylor_eval_ps: negative degree");
    if (params.alpha * degree + params.beta > kGammaArgMax)
        throw GammaOverflow("alpha*degree + beta exceeds the Gamma range 171.624");

    const std::size_t n = A.rows();
    int count = 0;

    // coefficients 1/Gamma(alpha k + beta), exponentiated from log space
    std::vector<double> c(degree + 1);
    for (int k = 0; k <= degree; ++k)
        c[k] = std::exp(-std::lgamma(params.alpha * k + params.beta));

    if (degree == 0 || n == 0) {
        ComplexMatrix F = ComplexMatrix::identity(n);
        F *= c[0];
        if (mults) *mults = count;
        return F;
    }

    const int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(degree))));
    const int r = degree / s;

    // powers A^0 .. A^s
    std::vector<ComplexMatrix> P;
    P.reserve(s + 1);
    P.push_back(ComplexMatrix::identity(n));
    P.push_back(A);
    for (int i = 2; i <= s; ++i) {
        P.push_back(P[i - 1] * A);
        ++count;
    }

    auto block = [&](int j) {
        ComplexMatrix B(n, n);
        const int top = std::min(s - 1, degree - j * s);
        for (int i = 0; i <= top; ++i) {
            const double coef = c[j * s + i];
            if (coef == 0.0) continue;
            const ComplexMatrix& Pi = P[i];
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) B(p, q) += coef * Pi(p, q);
        }
        return B;
    };

    ComplexMatrix F = block(r);
    for (int j = r - 1; j >= 0; --j) {
        F = F * P[s];
        ++count;
        F += block(j);
    }
    if (mults) *mults = count;
    return F;
}

} // namespace mlmat
