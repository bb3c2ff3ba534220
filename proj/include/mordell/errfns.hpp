#ifndef MORDELL_ERRFNS_HPP
#define MORDELL_ERRFNS_HPP

#include "mordell/quad.hpp"

namespace mordell {

// Argument bundle for the two-dimensional M-functions, with the
// discontinuity-locus flags (u2 = 0 and u1 - kappa u2 = 0). When the
// arguments come from a lattice point the flags are exact (n2 = 0, n1 = 0);
// otherwise a |.| < 1e-12 band is used.
struct M2Args {
    double kappa = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
    bool on_locus_u2 = false;
    bool on_locus_diag = false;

    static M2Args from_values(double kappa, double u1, double u2);
    static M2Args from_lattice(const QuadraticForm& Q, const LatticePoint& n, double scale);
    double diag() const { return u1 - kappa * u2; }
};

// E(u) = 2 \int_0^u e^{-pi w^2} dw = erf(sqrt(pi) u)
double err_e(double u);

// M(u) = E(u) - sgn(u) for u != 0 (primary path)
double err_m(double u);

// Contour form of M(u): (i/pi) \int_{R-iu} e^{-pi w^2 - 2 pi i u w} / w dw,
// parametrized w = t - iu. Secondary path kept for cross-checks.
double err_m_contour(double u, const Tolerance& tol);

// E_2(kappa; u1, u2) = \int_{R^2} sgn(w1) sgn(w2 + kappa w1)
//   e^{-pi((w1-u1)^2 + (w2-u2)^2)} dw.
// The w2 half-plane split on each side of w1 = 0 integrates in closed form,
// leaving \int sgn(w1) E(kappa w1 + u2) e^{-pi (w1-u1)^2} dw1.
double err_e2(double kappa, double u1, double u2, const Tolerance& tol);

// M_2 via its defining double contour, w_j = t_j - i u_j. Requires both
// loci avoided; the 1e-12 band around them is rejected because the poles
// approach the contour.
double err_m2_contour(double kappa, double u1, double u2, const Tolerance& tol);
double err_m2_contour(const M2Args& a, const Tolerance& tol);

// Extended M_2 (E_2/M/sgn relation), total on R^2:
//   E_2 - sgn(u2) M(u1) - sgn(u1 - kappa u2) M((u2 + kappa u1)/sqrt(1+kappa^2))
//       - sgn(u1) sgn(u2 + kappa u1),
// with sgn(0) = 0 and zero-weight M-terms dropped unevaluated. M at an exact
// zero argument contributes 0 (the symmetric value of E(u) - sgn(u)).
double err_m2(double kappa, double u1, double u2, const Tolerance& tol);
double err_m2(const M2Args& a, const Tolerance& tol);

// contour M_2 before discarding the (numerically tiny) imaginary part;
// err_out, when non-null, receives the quadrature error estimate
Complex err_m2_contour_complex(double kappa, double u1, double u2, const Tolerance& tol,
                               double* err_out);

// e^{pi(u1^2+u2^2)} M_2(kappa; u1, u2) through the contour integral, where
// the Gaussian prefactor cancels analytically; this stays well-conditioned
// for large |u| where the relation combination loses all digits.
double err_m2_contour_scaled(double kappa, double u1, double u2, const Tolerance& tol);

// e^{pi|u|^2} M_2 computed from the E_2/M/sgn relation. cond_err receives a
// bound on the amplification of double-precision cancellation noise; the
// value is meaningless when that bound exceeds the caller's tolerance.
double err_m2_relation_scaled(const M2Args& a, const Tolerance& tol, double* cond_err);

}  // namespace mordell

#endif
