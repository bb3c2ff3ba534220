#ifndef MORDELL_QUAD_HPP
#define MORDELL_QUAD_HPP

#include <functional>

#include "mordell/common.hpp"
#include "mordell/forms.hpp"

namespace mordell {

// Accuracy request shared by all integration routines. At least one of
// abs_tol / rel_tol must be positive and max_evals >= 100.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_evals = 10'000'000;

    Tolerance() = default;
    Tolerance(double abs, double rel, long evals) : abs_tol(abs), rel_tol(rel), max_evals(evals) {
        validate();
    }
    void validate() const {
        if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
            throw DomainError("Tolerance: abs_tol and rel_tol must be >= 0");
        if (abs_tol == 0.0 && rel_tol == 0.0)
            throw DomainError("Tolerance: at least one of abs_tol, rel_tol must be positive");
        if (max_evals < 100) throw DomainError("Tolerance: max_evals must be >= 100");
    }
    [[nodiscard]] Tolerance scaled(double abs_factor, double rel_factor) const {
        Tolerance t = *this;
        t.abs_tol *= abs_factor;
        t.rel_tol *= rel_factor;
        if (t.abs_tol == 0.0 && t.rel_tol == 0.0) t.abs_tol = 1e-300;
        return t;
    }
    [[nodiscard]] double target(double value_scale) const {
        return std::max(abs_tol, rel_tol * value_scale);
    }
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double err_est = 0.0;
    long n_evals = 0;
    bool converged = false;
};

using Integrand1D = std::function<Complex(double)>;
using Integrand2D = std::function<Complex(double, double)>;

// Adaptive Gauss-Kronrod (G7,K15) with bisection on [a,b]. Endpoint nodes
// are never evaluated, so integrable endpoint singularities of type x^{-1/2}
// are handled by the bisection cascade.
QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, const Tolerance& tol);

// \int_a^\infty f, assuming |f(x)| <~ C e^{-(x-a)/decay_scale} eventually.
// C is estimated by sampling; the analytic tail bound C*decay_scale*e^{-T/d}
// for the discarded region is folded into err_est.
QuadratureResult integrate_halfline(const Integrand1D& f, double a, double decay_scale,
                                    const Tolerance& tol);

// \int_{R^2} f(w) e^{-2 pi v Q(w)} dw. The positive definite form confines
// the mass to the ellipse 2 pi v Q(w) <= L; integration runs over a box that
// contains it, iterated adaptively in each variable.
QuadratureResult integrate_plane_gaussian(const Integrand2D& f, double v, const QuadraticForm& Q,
                                          const Tolerance& tol);

// \int_0^\infty \int_{w1}^\infty f(w1,w2) dw2 dw1 for wedge-decaying f
// (|f| <= C e^{-w1/d1 - w2/d2}), via the substitution w2 = w1 + t.
QuadratureResult integrate_wedge(const Integrand2D& f, double decay1, double decay2,
                                 const Tolerance& tol);

}  // namespace mordell

#endif
