#ifndef MORDELL_THETA_HPP
#define MORDELL_THETA_HPP

#include "mordell/quad.hpp"

namespace mordell {

// Truncation plan: sum over |n - a| <= n_max with the omitted terms bounded
// by tail_bound (a rigorous majorant of the discarded series).
struct ThetaTruncation {
    int n_max = 0;
    double tail_bound = 0.0;
};

// g_{a,b}(tau) = sum_{n in a+Z} n e^{2 pi i b n} q^{n^2/2}, q = e^{2 pi i tau}
Complex unary_theta(double a, double b, const ModularPoint& tau, const Tolerance& tol);
ThetaTruncation plan_unary_truncation(double a, double im_tau, double tol);

// theta_1(alpha; w1, w2) =
//   (1/a1) sum_{n in alpha+Z^2} (2 a1 n1 + a2 n2) n2
//     e^{pi i (2 a1 n1 + a2 n2)^2 w1 / (2 a1) + pi i D n2^2 w2 / (2 a1)}
// Requires Im w1, Im w2 > 0 (the raw series diverges on the real axis;
// the wedge integrals that need that boundary go through the per-term
// pipeline in the eichler module instead).
Complex theta_1(const QuadraticForm& Q, const AlphaShift& alpha, Complex w1, Complex w2,
                const Tolerance& tol);

// mirror of theta_1 with (a1 <-> a3, n1 <-> n2):
//   (1/a3) sum (a2 n1 + 2 a3 n2) n1 e^{pi i (a2 n1 + 2 a3 n2)^2 w1/(2 a3) + pi i D n1^2 w2/(2 a3)}
Complex theta_2(const QuadraticForm& Q, const AlphaShift& alpha, Complex w1, Complex w2,
                const Tolerance& tol);

ThetaTruncation plan_binary_truncation(const QuadraticForm& Q, const AlphaShift& alpha,
                                       double im_w1, double im_w2, double tol);

}  // namespace mordell

#endif
