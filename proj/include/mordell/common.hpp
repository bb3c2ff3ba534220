#ifndef MORDELL_COMMON_HPP
#define MORDELL_COMMON_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mordell {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Error kinds used across the library. Quadrature routines signal failure
// through QuadratureResult::converged; these exceptions are for contract
// violations and for high-level operations that have no result channel.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};
struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& msg) : Error(msg) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// signum with sgn(0) = 0
inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Scaled complementary error function e^{x^2} erfc(x), x >= 0.
// Below the switch point the direct product is exact enough (the exp
// rounding contributes ~x^2*eps relative error); above it the asymptotic
// series converges to full precision.
inline double erfcx(double x) {
    if (x < 0.0) throw DomainError("erfcx: negative argument");
    if (x <= 25.0) return std::exp(x * x) * std::erfc(x);
    const double z = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2 * k - 1) * z;
        sum += term;
    }
    return sum / (x * 1.77245385090551602729816748334114518);
}

}  // namespace mordell

#endif
