#include "mordell/theta.hpp"

#include <algorithm>
#include <cmath>

namespace mordell {
namespace {

constexpr int kHardCapUnary = 200000;
constexpr int kHardCapBinary = 4000;

}  // namespace

ThetaTruncation plan_unary_truncation(double a, double im_tau, double tol) {
    // |n e^{2 pi i b n} q^{n^2/2}| = |n| e^{-pi y n^2}; sum the majorant
    // outward until the remainder is provably below tol.
    const double y = im_tau;
    const double af = a - std::floor(a);
    auto shell_bound = [&](int k) {
        // both lattice points at integer offset +-k from the reduced a
        const double lo = std::min(std::abs(af + k), std::abs(af - k));
        const double hi = std::max(std::abs(af + k), std::abs(af - k)) ;
        return (hi + 1.0) * 2.0 * std::exp(-kPi * y * lo * lo);
    };
    int N = 1;
    while (N < kHardCapUnary) {
        // tail = sum_{k > N} shell_bound(k); the terms decay superexponentially,
        // so a short explicit scan bounds it
        double tail = 0.0;
        for (int k = N + 1; k <= N + 64; ++k) {
            tail += shell_bound(k);
            if (shell_bound(k) < tol * 1e-6) break;
        }
        if (tail < tol) return {N, tail};
        N = std::max(N + 1, static_cast<int>(N * 1.3));
    }
    throw ConvergenceError("unary_theta: truncation cap exceeded (Im tau too small)");
}

Complex unary_theta(double a, double b, const ModularPoint& tau, const Tolerance& tol) {
    const double y = tau.v();
    const double goal = std::max(tol.abs_tol, 1e-16);
    ThetaTruncation plan = plan_unary_truncation(a, y, goal);
    const long long base = static_cast<long long>(std::floor(a));
    Complex sum{0.0, 0.0};
    // symmetric in the integer offset about the reduced characteristic
    for (int k = -plan.n_max; k <= plan.n_max; ++k) {
        const double n = (a - static_cast<double>(base)) + k;
        if (n == 0.0) continue;
        const Complex expo =
            Complex(0.0, 2.0 * kPi * b * n) + Complex(0.0, kPi * n * n) * tau.tau;
        sum += n * std::exp(expo);
    }
    // restore the phase lost by shifting a -> a - floor(a): none, the lattice
    // a + Z is identical; b-phases depend on n itself which we kept exact
    return sum;
}

ThetaTruncation plan_binary_truncation(const QuadraticForm& Q, const AlphaShift& alpha,
                                       double im_w1, double im_w2, double tol) {
    // every retained term obeys |coef * e^{...}| <=
    //   C(n) e^{-2 pi min(Im w) Q(n)}   (since l1^2 + D n2^2 = 4 a1 Q(n)),
    // and Q(n) >= lambda_min (r - |alpha|)^2 on the sup-norm shell r.
    const double y = std::min(im_w1, im_w2);
    if (!(y > 0.0)) throw DomainError("theta_12: requires Im w1, Im w2 > 0");
    const AlphaShift red = alpha.reduced();
    const double amax = std::max(std::abs(red.a1d()), std::abs(red.a2d()));
    const double lam = Q.lambda_min();
    const double coef_scale =
        (2.0 * Q.a1() + std::abs(static_cast<double>(Q.a2())) + 2.0 * Q.a3()) *
        (1.0 / Q.a1() + 1.0 / Q.a3());
    auto shell_bound = [&](int r) {
        const double rad = std::max(0.0, r - amax);
        const double c = coef_scale * (r + 1.0) * (r + 1.0);
        return 8.0 * r * c * std::exp(-2.0 * kPi * y * lam * rad * rad);
    };
    int N = 1;
    while (N < kHardCapBinary) {
        double tail = 0.0;
        for (int r = N + 1; r <= N + 64; ++r) {
            tail += shell_bound(r);
            if (shell_bound(r) < tol * 1e-6) break;
        }
        if (tail < tol) return {N, tail};
        ++N;
    }
    throw ConvergenceError("theta_12: truncation cap exceeded (Im w too small)");
}

namespace {

Complex binary_theta_sum(const QuadraticForm& Q, const AlphaShift& alpha, Complex w1, Complex w2,
                         const Tolerance& tol, bool swapped) {
    const double goal = std::max(tol.abs_tol, 1e-16);
    ThetaTruncation plan = plan_binary_truncation(Q, alpha, w1.imag(), w2.imag(), goal);
    const AlphaShift red = alpha.reduced();
    const double a1 = static_cast<double>(Q.a1());
    const double a2 = static_cast<double>(Q.a2());
    const double a3 = static_cast<double>(Q.a3());
    const double D = static_cast<double>(Q.D());

    Complex sum{0.0, 0.0};
    for (const LatticePoint& p : lattice_box(red, plan.n_max)) {
        const double n1 = p.n1d(), n2 = p.n2d();
        double ell, factor, denom;
        if (!swapped) {
            if (p.n2.numerator() == 0) continue;  // n2 factor kills the term exactly
            ell = 2.0 * a1 * n1 + a2 * n2;
            factor = ell * n2 / a1;
            denom = 2.0 * a1;
        } else {
            if (p.n1.numerator() == 0) continue;
            ell = a2 * n1 + 2.0 * a3 * n2;
            factor = ell * n1 / a3;
            denom = 2.0 * a3;
        }
        const double other = swapped ? n1 : n2;
        const Complex expo = Complex(0.0, kPi / denom) * (ell * ell * w1 + D * other * other * w2);
        sum += factor * std::exp(expo);
    }
    return sum;
}

}  // namespace

Complex theta_1(const QuadraticForm& Q, const AlphaShift& alpha, Complex w1, Complex w2,
                const Tolerance& tol) {
    return binary_theta_sum(Q, alpha, w1, w2, tol, false);
}

Complex theta_2(const QuadraticForm& Q, const AlphaShift& alpha, Complex w1, Complex w2,
                const Tolerance& tol) {
    return binary_theta_sum(Q, alpha, w1, w2, tol, true);
}

}  // namespace mordell
