#include "mordell/forms.hpp"

#include <cmath>

namespace mordell {

Rational reduce_mod_one(const Rational& r) {
    // shift by ceil(r - 1/2) so the result lands in (-1/2, 1/2]
    const Rational shifted = r - Rational(1, 2);
    const long long p = shifted.numerator(), q = shifted.denominator();
    const long long c = (p >= 0) ? (p + q - 1) / q : p / q;
    return r - Rational(c, 1);
}

QuadraticForm::QuadraticForm(long long a1, long long a2, long long a3)
    : a1_(a1), a2_(a2), a3_(a3), D_(4 * a1 * a3 - a2 * a2) {
    if (a1_ <= 0 || a3_ <= 0 || D_ <= 0)
        throw DomainError("form not positive definite (requires a1 > 0, a3 > 0, 4 a1 a3 - a2^2 > 0)");
    sqrt_D_ = std::sqrt(static_cast<double>(D_));
    kappa_ = static_cast<double>(a2_) / sqrt_D_;
    m_ = std::sqrt(4.0 * static_cast<double>(a3_) -
                   static_cast<double>(a2_) * static_cast<double>(a2_) / static_cast<double>(a1_));
    const double tr = static_cast<double>(a1_ + a3_);
    const double gap = std::hypot(static_cast<double>(a1_ - a3_), static_cast<double>(a2_));
    lambda_min_ = 0.5 * (tr - gap);
}

std::pair<double, double> u_of_n(const QuadraticForm& Q, const LatticePoint& n) {
    const double sa1 = std::sqrt(static_cast<double>(Q.a1()));
    const double u1 = 2.0 * sa1 * n.n1d() + static_cast<double>(Q.a2()) / sa1 * n.n2d();
    const double u2 = Q.m() * n.n2d();
    return {u1, u2};
}

std::vector<LatticePoint> lattice_box(const AlphaShift& alpha, int r) {
    if (r < 1) throw DomainError("lattice_box: r must be >= 1");
    std::vector<LatticePoint> pts;
    pts.reserve(static_cast<size_t>(2 * r + 1) * (2 * r + 1));
    for (long long k1 = -r; k1 <= r; ++k1)
        for (long long k2 = -r; k2 <= r; ++k2)
            pts.push_back({alpha.alpha1 + k1, alpha.alpha2 + k2});
    return pts;
}

std::vector<LatticePoint> lattice_ring(const AlphaShift& alpha, int r) {
    if (r < 1) throw DomainError("lattice_ring: r must be >= 1");
    std::vector<LatticePoint> pts;
    pts.reserve(static_cast<size_t>(8 * r));
    for (long long k1 = -r; k1 <= r; ++k1)
        for (long long k2 = -r; k2 <= r; ++k2) {
            if (std::max(std::llabs(k1), std::llabs(k2)) != r) continue;
            pts.push_back({alpha.alpha1 + k1, alpha.alpha2 + k2});
        }
    return pts;
}

}  // namespace mordell
