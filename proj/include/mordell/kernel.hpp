#ifndef MORDELL_KERNEL_HPP
#define MORDELL_KERNEL_HPP

#include "mordell/quad.hpp"

namespace mordell {

// F_alpha(x) = sinh(2 pi x) / (cosh(2 pi x) - cos(2 pi alpha));
// odd in x, 1-periodic and even in alpha; F_0(x) = coth(pi x).
double sinh_kernel(double alpha, double x);

// G_alpha(x) = sin(2 pi alpha) / (cosh(2 pi x) - cos(2 pi alpha));
// even in x, identically 0 for integral alpha.
double sin_kernel(double alpha, double x);

// d/dx F_alpha(x) = 2 pi (1 - cos(2 pi alpha) cosh(2 pi x)) / (cosh(2 pi x) - cos(2 pi alpha))^2
double sinh_kernel_deriv(double alpha, double x);

// coth(y) - 1/y, series-stabilized near 0
double coth_minus_inv(double y);

// cot(x + i y) split into (-sin 2x, sinh 2y)/(cos 2x - cosh 2y);
// matches cot(pi alpha + pi i w) = G_alpha(w) - i F_alpha(w).
std::pair<double, double> cot_split(double x, double y);

// Theorem integrand g_alpha(w); the alpha1-in-Z / alpha2-in-Z cases carry an
// apparent 1/w pole that cancels between their two terms, evaluated through
// the regrouped form inside |w| < 1e-3 (first-order completion at w = 0).
double mordell_kernel(const QuadraticForm& Q, const AlphaShift& alpha, double w1, double w2);

// H_alpha(iv) = \int_{R^2} g_alpha(w) e^{-2 pi v Q(w)} dw
QuadratureResult h_alpha_kernel(const QuadraticForm& Q, const AlphaShift& alpha, double v,
                                const Tolerance& tol);

}  // namespace mordell

#endif
