#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mlmat {

using Complex = std::complex<double>;

// Largest argument for which Gamma(x) is finite in IEEE binary64.
inline constexpr double kGammaArgMax = 171.624;

// Unit roundoff (half of machine epsilon).
inline constexpr double kUnitRoundoff = 1.1102230246251565e-16;

/// Parameter pair (alpha, beta) selecting the function family E_{alpha,beta}.
struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("MLParams: alpha and beta must be positive");
    }
};

/// Base class for all numerical failures. `name()` is a stable,
/// machine-parseable identifier used by the CLI error reporting.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define MLMAT_DEFINE_ERROR(E)                                        \
    class E : public Error {                                         \
    public:                                                          \
        explicit E(const std::string& what) : Error(#E, what) {}     \
    }

MLMAT_DEFINE_ERROR(SingularShift);
MLMAT_DEFINE_ERROR(NoConvergence);
MLMAT_DEFINE_ERROR(EigenvalueOverlap);
MLMAT_DEFINE_ERROR(ConfluentBlock);
MLMAT_DEFINE_ERROR(Overflow);
MLMAT_DEFINE_ERROR(NoViableRadius);
MLMAT_DEFINE_ERROR(GammaOverflow);
MLMAT_DEFINE_ERROR(TaylorNotApplicable);
MLMAT_DEFINE_ERROR(NormTooLarge);
MLMAT_DEFINE_ERROR(InvalidRatio);
MLMAT_DEFINE_ERROR(PathUnavailable);
MLMAT_DEFINE_ERROR(ZeroReference);
MLMAT_DEFINE_ERROR(SeriesNotDecayed);

#undef MLMAT_DEFINE_ERROR

} // namespace mlmat
