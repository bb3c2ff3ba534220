#include "mordell/kernel.hpp"

#include <cmath>

namespace mordell {
namespace {

constexpr double kIntBand = 1e-12;
constexpr double kRegroupEps = 1e-3;   // switch to the regrouped case form
constexpr double kDerivEps = 1e-7;     // replace the difference quotient

bool alpha_is_integer(double alpha) { return std::abs(alpha - std::round(alpha)) < kIntBand; }
bool alpha_is_half_integer(double alpha) {
    return std::abs(2.0 * alpha - std::round(2.0 * alpha)) < kIntBand;
}

// beyond this the direct cosh/sinh forms overflow; the e^{-2 pi |x|}-scaled
// forms take over (they cancel digits at small |x| but are exact out here)
constexpr double kFarX = 50.0;

}  // namespace

double sinh_kernel(double alpha, double x) {
    const bool a_int = alpha_is_integer(alpha);
    if (a_int && x == 0.0) throw DomainError("sinh_kernel: pole at integral alpha, x = 0");
    if (a_int) {
        if (std::abs(x) > kFarX) return sgn(x);
        return std::cosh(kPi * x) / std::sinh(kPi * x);  // F_0 = coth(pi x)
    }
    if (std::abs(x) > kFarX) {
        const double t = std::exp(-2.0 * kPi * std::abs(x));
        return sgn(x) * (1.0 - t * t) / (1.0 + t * t - 2.0 * std::cos(2.0 * kPi * alpha) * t);
    }
    return std::sinh(2.0 * kPi * x) / (std::cosh(2.0 * kPi * x) - std::cos(2.0 * kPi * alpha));
}

double sin_kernel(double alpha, double x) {
    const bool a_int = alpha_is_integer(alpha);
    if (a_int && x == 0.0) throw DomainError("sin_kernel: pole at integral alpha, x = 0");
    if (alpha_is_half_integer(alpha)) return 0.0;  // sin(2 pi alpha) vanishes exactly
    const double s = std::sin(2.0 * kPi * alpha), c = std::cos(2.0 * kPi * alpha);
    if (std::abs(x) > kFarX) {
        const double t = std::exp(-2.0 * kPi * std::abs(x));
        return s * 2.0 * t / (1.0 + t * t - 2.0 * c * t);
    }
    return s / (std::cosh(2.0 * kPi * x) - c);
}

double sinh_kernel_deriv(double alpha, double x) {
    const bool a_int = alpha_is_integer(alpha);
    if (a_int && x == 0.0) throw DomainError("sinh_kernel_deriv: pole at integral alpha, x = 0");
    const double c = a_int ? 1.0 : std::cos(2.0 * kPi * alpha);
    if (std::abs(x) > kFarX) {
        const double t = std::exp(-2.0 * kPi * std::abs(x));
        const double den = 1.0 + t * t - 2.0 * c * t;
        return 2.0 * kPi * (4.0 * t * t - 2.0 * c * t * (1.0 + t * t)) / (den * den);
    }
    const double ch = std::cosh(2.0 * kPi * x);
    return 2.0 * kPi * (1.0 - c * ch) / ((ch - c) * (ch - c));
}

double coth_minus_inv(double y) {
    if (y == 0.0) return 0.0;
    if (std::abs(y) < 0.3) {
        const double y2 = y * y;
        return y * (1.0 / 3.0 +
                    y2 * (-1.0 / 45.0 + y2 * (2.0 / 945.0 + y2 * (-1.0 / 4725.0 +
                                                                  y2 * 2.0 / 93555.0))));
    }
    return std::cosh(y) / std::sinh(y) - 1.0 / y;
}

std::pair<double, double> cot_split(double x, double y) {
    const double den = std::cos(2.0 * x) - std::cosh(2.0 * y);
    if (den == 0.0) throw DomainError("cot_split: pole of cot");
    return {-std::sin(2.0 * x) / den, std::sinh(2.0 * y) / den};
}

namespace {

// -2 F_0(ws) F_a(wo) + (2/(pi ws)) F_a(wo + c ws), regrouped inside the
// removable-singularity window so both groups stay separately finite:
//   -2 (F_0(ws) - 1/(pi ws)) F_a(wo) + (2/(pi ws)) (F_a(wo + c ws) - F_a(wo)).
double integral_case(double alpha_other, double c, double ws, double wo) {
    if (std::abs(ws) >= kRegroupEps)
        return -2.0 * sinh_kernel(0.0, ws) * sinh_kernel(alpha_other, wo) +
               2.0 / (kPi * ws) * sinh_kernel(alpha_other, wo + c * ws);
    const double g1 = -2.0 * coth_minus_inv(kPi * ws) * sinh_kernel(alpha_other, wo);
    double g2;
    if (std::abs(ws) < kDerivEps)
        g2 = 2.0 * c / kPi * sinh_kernel_deriv(alpha_other, wo);
    else
        g2 = 2.0 / (kPi * ws) *
             (sinh_kernel(alpha_other, wo + c * ws) - sinh_kernel(alpha_other, wo));
    return g1 + g2;
}

}  // namespace

double mordell_kernel(const QuadraticForm& Q, const AlphaShift& alpha, double w1, double w2) {
    switch (alpha.shift_case()) {
        case ShiftCase::Generic: {
            const double a1 = alpha.a1d(), a2 = alpha.a2d();
            return 2.0 * sin_kernel(a1, w1) * sin_kernel(a2, w2) -
                   2.0 * sinh_kernel(a1, w1) * sinh_kernel(a2, w2);
        }
        case ShiftCase::Alpha1Integral:
            return integral_case(alpha.a2d(), static_cast<double>(Q.a2()) / (2.0 * Q.a3()), w1, w2);
        case ShiftCase::Alpha2Integral:
            return integral_case(alpha.a1d(), static_cast<double>(Q.a2()) / (2.0 * Q.a1()), w2, w1);
        case ShiftCase::BothIntegral:
            break;
    }
    throw DomainError("mordell_kernel: alpha in Z^2 has no kernel formula");
}

QuadratureResult h_alpha_kernel(const QuadraticForm& Q, const AlphaShift& alpha, double v,
                                const Tolerance& tol) {
    if (alpha.shift_case() == ShiftCase::BothIntegral)
        throw DomainError("h_alpha_kernel: alpha in Z^2 has no kernel formula; rejected");
    if (!(v > 0.0)) throw DomainError("h_alpha_kernel: v must be positive");
    auto f = [&](double x1, double x2) -> Complex {
        return Complex(mordell_kernel(Q, alpha, x1, x2), 0.0);
    };
    return integrate_plane_gaussian(f, v, Q, tol);
}

}  // namespace mordell
