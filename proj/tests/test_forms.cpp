#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mordell/forms.hpp"

using namespace mordell;

TEST_CASE("eval_Q direct substitution") {
    const QuadraticForm q111(1, 1, 1);
    CHECK(q111.eval(1.0, 0.0) == 1.0);
    CHECK(q111.eval(1.0, -1.0) == 1.0);
    const QuadraticForm q213(2, 1, 3);
    CHECK(q213.eval(0.5, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("positive definiteness rejected at construction") {
    CHECK_THROWS_AS(QuadraticForm(1, 3, 1), DomainError);   // D = -5
    CHECK_THROWS_AS(QuadraticForm(-1, 0, 1), DomainError);
    CHECK_THROWS_AS(QuadraticForm(1, 2, 1), DomainError);   // D = 0
    CHECK_NOTHROW(QuadraticForm(1, 0, 1));
}

TEST_CASE("u_of_n examples") {
    {
        const QuadraticForm Q(1, 0, 1);
        auto [u1, u2] = u_of_n(Q, {Rational(1), Rational(0)});
        CHECK(u1 == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(u2 == doctest::Approx(0.0));
    }
    {
        const QuadraticForm Q(1, 1, 1);
        const LatticePoint n{Rational(0), Rational(1)};
        auto [u1, u2] = u_of_n(Q, n);
        CHECK(u1 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(u2 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
        // |u|^2 = 4 Q(n), oracle = eval_Q
        CHECK(u1 * u1 + u2 * u2 ==
              doctest::Approx(4.0 * Q.eval(n.n1d(), n.n2d())).epsilon(1e-14));
    }
    {
        const QuadraticForm Q(2, 1, 3);
        auto [u1, u2] = u_of_n(Q, {Rational(0), Rational(0)});
        CHECK(u1 == 0.0);
        CHECK(u2 == 0.0);
    }
}

TEST_CASE("derived constants and |u|^2 = 4Q property over random forms") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> da(1, 9), db(-5, 5), dn(-6, 6), dd(1, 4);
    int forms_done = 0;
    while (forms_done < 20) {
        const long long a1 = da(rng), a3 = da(rng), a2 = db(rng);
        if (4 * a1 * a3 - a2 * a2 <= 0) continue;
        ++forms_done;
        const QuadraticForm Q(a1, a2, a3);
        CHECK(std::abs(Q.m() * Q.m() - static_cast<double>(Q.D()) / a1) <=
              1e-14 * std::abs(static_cast<double>(Q.D()) / a1));
        for (int i = 0; i < 3; ++i) {
            const LatticePoint n{Rational(dn(rng), dd(rng)), Rational(dn(rng), dd(rng))};
            auto [u1, u2] = u_of_n(Q, n);
            const double lhs = u1 * u1 + u2 * u2;
            const double rhs = 4.0 * Q.eval(n.n1d(), n.n2d());
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("locus predicates are exact on rationals") {
    const QuadraticForm Q(2, 1, 3);
    const LatticePoint on_diag{Rational(0), Rational(5, 3)};
    auto [u1, u2] = u_of_n(Q, on_diag);
    // u1 - kappa u2 = 2 sqrt(a1) n1 vanishes iff n1 = 0
    CHECK(std::abs(u1 - Q.kappa() * u2) < 1e-13);
    CHECK(on_diag.n1.numerator() == 0);

    const LatticePoint off{Rational(1, 3), Rational(5, 3)};
    auto [w1, w2] = u_of_n(Q, off);
    CHECK(std::abs(w1 - Q.kappa() * w2) > 0.1);
    CHECK(off.n1.numerator() != 0);

    const LatticePoint on_u2{Rational(7, 2), Rational(0)};
    CHECK(u_of_n(Q, on_u2).second == 0.0);
}

TEST_CASE("lattice_box counts and contents") {
    const AlphaShift a_half(Rational(1, 2), Rational(1, 2));
    CHECK(lattice_box(a_half, 1).size() == 9);

    const AlphaShift a_mixed(Rational(0), Rational(1, 2));
    const auto box2 = lattice_box(a_mixed, 2);
    CHECK(box2.size() == 25);
    int with_n1_zero = 0;
    for (const auto& p : box2)
        if (p.n1.numerator() == 0) ++with_n1_zero;
    CHECK(with_n1_zero == 5);

    const AlphaShift a_third(Rational(1, 3), Rational(1, 3));
    const auto box1 = lattice_box(a_third, 1);
    bool has_center = false, has_corner = false;
    for (const auto& p : box1) {
        if (p.n1 == Rational(1, 3) && p.n2 == Rational(1, 3)) has_center = true;
        if (p.n1 == Rational(-2, 3) && p.n2 == Rational(-2, 3)) has_corner = true;
    }
    CHECK(has_center);
    CHECK(has_corner);
}

TEST_CASE("lattice_ring covers the box boundary") {
    const AlphaShift a(Rational(1, 3), Rational(1, 4));
    CHECK(lattice_ring(a, 1).size() == 8);
    CHECK(lattice_ring(a, 3).size() == 24);
}

TEST_CASE("AlphaShift case classification is exact") {
    CHECK(AlphaShift(Rational(1, 3), Rational(1, 3)).shift_case() == ShiftCase::Generic);
    CHECK(AlphaShift(Rational(0), Rational(1, 2)).shift_case() == ShiftCase::Alpha1Integral);
    CHECK(AlphaShift(Rational(2), Rational(1, 2)).shift_case() == ShiftCase::Alpha1Integral);
    CHECK(AlphaShift(Rational(1, 3), Rational(-3)).shift_case() == ShiftCase::Alpha2Integral);
    CHECK(AlphaShift(Rational(5), Rational(0)).shift_case() == ShiftCase::BothIntegral);
    // 4/2 reduces to 2: integral, never a float test
    CHECK(AlphaShift(Rational(4, 2), Rational(1, 2)).shift_case() == ShiftCase::Alpha1Integral);
}

TEST_CASE("reduce_mod_one lands in (-1/2, 1/2]") {
    CHECK(reduce_mod_one(Rational(1, 2)) == Rational(1, 2));
    CHECK(reduce_mod_one(Rational(-1, 2)) == Rational(1, 2));
    CHECK(reduce_mod_one(Rational(2, 3)) == Rational(-1, 3));
    CHECK(reduce_mod_one(Rational(4, 3)) == Rational(1, 3));
    CHECK(reduce_mod_one(Rational(-7, 3)) == Rational(-1, 3));
    CHECK(reduce_mod_one(Rational(5)) == Rational(0));
    const AlphaShift a(Rational(4, 3), Rational(-5, 2));
    const AlphaShift r = a.reduced();
    CHECK(r.alpha1 == Rational(1, 3));
    CHECK(r.alpha2 == Rational(1, 2));
    CHECK(a.shift_case() == r.shift_case());
}

TEST_CASE("ModularPoint requires upper half plane") {
    CHECK_THROWS_AS(ModularPoint(Complex(0.0, -1.0)), DomainError);
    CHECK_THROWS_AS(ModularPoint(Complex(1.0, 0.0)), DomainError);
    CHECK(ModularPoint::pure_imaginary(2.0).is_pure_imaginary());
    CHECK(ModularPoint(Complex(0.3, 1.0)).v() == 1.0);
}
