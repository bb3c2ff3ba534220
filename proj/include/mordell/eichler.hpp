#ifndef MORDELL_EICHLER_HPP
#define MORDELL_EICHLER_HPP

#include <vector>

#include "mordell/errfns.hpp"
#include "mordell/quad.hpp"

namespace mordell {

// h(z; tau) = \int_R cosh(2 pi z w)/cosh(pi w) e^{pi i tau w^2} dw
Complex mordell_h(Complex z, const ModularPoint& tau, const Tolerance& tol);

// One per-lattice-term double integral
//   \int_L^{i inf} e^{pi i c1 w1}/sqrt(-i(w1+tau))
//       \int_{w1}^{i inf} e^{pi i c2 w2}/sqrt(-i(w2+tau)) dw2 dw1
// in the vertical parametrization w1 = L + i t1, w2 = w1 + i t2 (t_j >= 0),
// with the two i dt factors stripped, so the value is the plain iterated
// t-integral. On every path used here the sqrt argument stays in the right
// half plane, so the principal branch never crosses a cut. The inner
// integral reduces to a scaled complementary error function, leaving a
// single 1D quadrature.
struct EichlerTermSpec {
    enum class Lower { MinusConjTau, Zero };
    double c1 = 0.0;  // exponent coefficients, >= 0
    double c2 = 0.0;
    Lower lower = Lower::MinusConjTau;
    ModularPoint tau;

    EichlerTermSpec(double c1_, double c2_, Lower l, ModularPoint t)
        : c1(c1_), c2(c2_), lower(l), tau(t) {}
};
Complex eichler_term(const EichlerTermSpec& spec, const Tolerance& tol);

// Right-hand side of the per-term identity: for n1, n2 != 0 at tau = iv this
// equals M_2(kappa; sqrt(v) u(n)). Prefactors proportional to n1 or n2
// vanish exactly, and the corresponding (divergent, c2 = 0) integral is
// skipped before evaluation.
Complex m2_eichler_term(const QuadraticForm& Q, const LatticePoint& n, const ModularPoint& tau,
                        const Tolerance& tol);

enum class M2Path { Contour, Relation, Eichler };

struct LatticeSumReport {
    std::vector<double> partial_sums;  // S_1..S_{r_max}
    double value_raw = 0.0;            // S_{r_max}
    double value_extrapolated = 0.0;   // Richardson (Neville in 1/r) limit
    double value_aitken = 0.0;
    double tail_estimate = 0.0;
    long n_evals = 0;
    int r_used = 0;
    bool converged = false;  // increments eventually decreasing
    // locus bookkeeping (terms with n1 = 0 or n2 = 0)
    int n_locus_terms = 0;
    double max_locus_mismatch = 0.0;  // |eichler-form - relation| where measurable
    int n_fallback_contour = 0;  // relation requests served by the contour form
    int n_fallback_eichler = 0;  // relation requests served by the per-term form
};

// H_alpha(iv) = 2 lim_r sum_{|n_j - alpha_j| <= r} M_2(kappa; sqrt(v/2) u(n)) e^{2 pi v Q(n)}.
// Each scaled term is evaluated without the (overflowing) exponential split:
// the Eichler form and the contour form cancel e^{2 pi v Q} analytically.
// Terms decay only like 1/(n1 n2) with sign cancellation, so the partial
// sums converge O(1/r); the report carries both the raw sum and the
// extrapolated limit.
LatticeSumReport h_alpha_lattice(const QuadraticForm& Q, const AlphaShift& alpha, double v,
                                 int r_max, const Tolerance& tol, M2Path path);

// E_alpha(tau) = -(sqrt(D)/4) \int_{-conj tau}^{i inf} \int_{w1}^{i inf}
//   (theta_1 + theta_2) / (sqrt(-i(w1+tau)) sqrt(-i(w2+tau))) dw2 dw1,
// evaluated termwise over the lattice box (the theta series diverges on the
// wedge boundary, the per-term exchange does not).
Complex double_eichler(const QuadraticForm& Q, const AlphaShift& alpha, const ModularPoint& tau,
                       const Tolerance& tol, int r_max);

// \int_0^{i inf} g_{a+1/2, b+1/2}(w) / sqrt(-i(w + tau)) dw.
// Primary path at tau = iv sums the termwise incomplete-gamma integrals
// I(n^2) with the conditionally convergent leading part replaced by its
// closed form; the direct path integrates the truncated series on
// [delta, T] with a rigorous bound for the [0, delta) remainder.
Complex eichler_1d(double a, double b, const ModularPoint& tau, const Tolerance& tol);
Complex eichler_1d_direct(double a, double b, const ModularPoint& tau, const Tolerance& tol);

// The value of eichler_1d approached from the interior of the cell
// a, b in (-1/2, 1/2): identical inside, and at half-integral a or b it adds
// the one-sided jump terms. This is the reading under which the classical
// h(a tau - b) identity extends to the cell boundary.
Complex eichler_1d_cell_limit(double a, double b, const ModularPoint& tau, const Tolerance& tol);

// detail: exposed for the parametrization cross-checks in tests
double eichler_wedge_core(double c1, double c2, double shift, const Tolerance& tol, long* evals);

}  // namespace mordell

#endif
