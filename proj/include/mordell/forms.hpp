#ifndef MORDELL_FORMS_HPP
#define MORDELL_FORMS_HPP

#include <boost/rational.hpp>
#include <vector>

#include "mordell/common.hpp"

namespace mordell {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}
inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// Reduce r into (-1/2, 1/2] by an exact integer shift.
Rational reduce_mod_one(const Rational& r);

// Positive definite integral binary quadratic form
// Q(x) = a1 x1^2 + a2 x1 x2 + a3 x2^2.
class QuadraticForm {
  public:
    QuadraticForm(long long a1, long long a2, long long a3);

    long long a1() const { return a1_; }
    long long a2() const { return a2_; }
    long long a3() const { return a3_; }
    long long D() const { return D_; }  // 4 a1 a3 - a2^2 > 0

    double sqrt_D() const { return sqrt_D_; }
    double kappa() const { return kappa_; }  // a2 / sqrt(D)
    double m() const { return m_; }          // sqrt(4 a3 - a2^2/a1)
    // smallest eigenvalue of [[a1, a2/2], [a2/2, a3]]
    double lambda_min() const { return lambda_min_; }

    double eval(double x1, double x2) const {
        return (a1_ * x1 + a2_ * x2) * x1 + a3_ * x2 * x2;
    }
    Rational eval(const Rational& x1, const Rational& x2) const {
        return x1 * x1 * a1_ + x1 * x2 * a2_ + x2 * x2 * a3_;
    }

  private:
    long long a1_, a2_, a3_, D_;
    double sqrt_D_, kappa_, m_, lambda_min_;
};

inline double eval_Q(const QuadraticForm& Q, double x1, double x2) { return Q.eval(x1, x2); }

enum class ShiftCase { Generic, Alpha1Integral, Alpha2Integral, BothIntegral };

// Rational shift vector alpha with its Theorem-case classification held
// exactly; the integrality split must never be a floating-point test.
struct AlphaShift {
    Rational alpha1;
    Rational alpha2;

    AlphaShift(Rational a1, Rational a2) : alpha1(std::move(a1)), alpha2(std::move(a2)) {}

    ShiftCase shift_case() const {
        const bool i1 = is_integer(alpha1), i2 = is_integer(alpha2);
        if (i1 && i2) return ShiftCase::BothIntegral;
        if (i1) return ShiftCase::Alpha1Integral;
        if (i2) return ShiftCase::Alpha2Integral;
        return ShiftCase::Generic;
    }
    // representative in (-1/2, 1/2]^2; the lattice alpha + Z^2 is unchanged
    AlphaShift reduced() const { return {reduce_mod_one(alpha1), reduce_mod_one(alpha2)}; }
    double a1d() const { return to_double(alpha1); }
    double a2d() const { return to_double(alpha2); }
};

struct ModularPoint {
    Complex tau;

    explicit ModularPoint(Complex t) : tau(t) {
        if (!(tau.imag() > 0.0)) throw DomainError("ModularPoint: Im(tau) must be positive");
    }
    static ModularPoint pure_imaginary(double v) { return ModularPoint(Complex(0.0, v)); }
    bool is_pure_imaginary() const { return tau.real() == 0.0; }
    double v() const { return tau.imag(); }
};

// Point of the shifted lattice alpha + Z^2, kept exact so that the locus
// predicates n1 = 0, n2 = 0 are decided without floating point.
struct LatticePoint {
    Rational n1;
    Rational n2;

    double n1d() const { return to_double(n1); }
    double n2d() const { return to_double(n2); }
};

// u(n) = (2 sqrt(a1) n1 + a2/sqrt(a1) n2, m n2); satisfies |u|^2 = 4 Q(n)
// and u1 - kappa u2 = 2 sqrt(a1) n1.
std::pair<double, double> u_of_n(const QuadraticForm& Q, const LatticePoint& n);

// All n in alpha + Z^2 with |n_j - alpha_j| <= r, row-major in the integer
// offsets (deterministic order).
std::vector<LatticePoint> lattice_box(const AlphaShift& alpha, int r);

// Offsets with sup-norm exactly r (the boundary ring of the box), row-major.
std::vector<LatticePoint> lattice_ring(const AlphaShift& alpha, int r);

}  // namespace mordell

#endif
