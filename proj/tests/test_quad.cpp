#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mordell/quad.hpp"

using namespace mordell;

namespace {

const Tolerance kTight(1e-12, 1e-12, 2'000'000);

double closed_form_plane_gaussian(const QuadraticForm& Q, double v) {
    // 1D reduction: a1 x^2 + (D/(4 a1)) y^2 after completing the square,
    // each factor integrating to sqrt(pi / (2 pi v c)) = 1/sqrt(2 v c)
    const double c1 = static_cast<double>(Q.a1());
    const double c2 = static_cast<double>(Q.D()) / (4.0 * c1);
    return 1.0 / std::sqrt(2.0 * v * c1) / std::sqrt(2.0 * v * c2);
}

}  // namespace

TEST_CASE("integrate_1d: constant") {
    auto r = integrate_1d([](double) { return Complex(1.0, 0.0); }, 0.0, 1.0, kTight);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 1.0) < 1e-14);
}

TEST_CASE("integrate_1d: Gaussian normalization") {
    auto f = [](double x) { return Complex(std::exp(-kPi * x * x), 0.0); };
    auto r = integrate_1d(f, -8.0, 8.0, kTight);
    // oracle: closed form via erf, \int_{-8}^{8} e^{-pi x^2} dx = erf(8 sqrt(pi))
    const double oracle = std::erf(8.0 * std::sqrt(kPi));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - oracle) < 1e-12);
    CHECK(std::abs(r.value.real() - 1.0) < 1e-12);
}

TEST_CASE("integrate_1d: endpoint singularity x^{-1/2}") {
    auto f = [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); };
    auto r = integrate_1d(f, 0.0, 1.0, Tolerance(1e-9, 1e-9, 2'000'000));
    CHECK(std::abs(r.value.real() - 2.0) < 1e-8);  // antiderivative 2 sqrt(x)
}

TEST_CASE("integrate_1d: error honesty on the example set") {
    auto g = [](double x) { return Complex(std::exp(-kPi * x * x), 0.0); };
    auto r = integrate_1d(g, -8.0, 8.0, Tolerance(1e-10, 0.0, 1'000'000));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - std::erf(8.0 * std::sqrt(kPi))) <= 10.0 * r.err_est);

    auto s = integrate_1d([](double x) { return Complex(1.0 / std::sqrt(x), 0.0); }, 0.0, 1.0,
                          Tolerance(1e-8, 0.0, 2'000'000));
    if (s.converged) CHECK(std::abs(s.value.real() - 2.0) <= 10.0 * s.err_est);
}

TEST_CASE("integrate_1d: non-finite integrand reported") {
    auto f = [](double x) { return Complex(1.0 / (x - 0.5), 0.0); };  // pole inside
    CHECK_THROWS_AS(
        (void)integrate_1d([](double) { return Complex(std::nan(""), 0.0); }, 0.0, 1.0, kTight),
        NonFiniteError);
    (void)f;
}

TEST_CASE("integrate_1d: linearity property") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dc(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double c1 = dc(rng), c2 = dc(rng), c3 = dc(rng), c4 = dc(rng);
        auto f = [&](double x) { return Complex(std::exp(-x * x) * (c1 + c2 * x * x), 0.0); };
        auto g = [&](double x) { return Complex(std::cos(c3 * x) * std::exp(-0.5 * x * x), 0.0); };
        const double al = dc(rng), be = dc(rng);
        auto combo = [&](double x) { return al * f(x) + be * g(x); };
        auto rf = integrate_1d(f, -3.0, 3.0, kTight);
        auto rg = integrate_1d(g, -3.0, 3.0, kTight);
        auto rc = integrate_1d(combo, -3.0, 3.0, kTight);
        const double lhs = rc.value.real();
        const double rhs = al * rf.value.real() + be * rg.value.real();
        CHECK(std::abs(lhs - rhs) <=
              10.0 * (rc.err_est + std::abs(al) * rf.err_est + std::abs(be) * rg.err_est) + 1e-13);
        (void)c4;
    }
}

TEST_CASE("integrate_halfline: exponential") {
    auto r = integrate_halfline([](double x) { return Complex(std::exp(-x), 0.0); }, 0.0, 1.0,
                                Tolerance(1e-11, 1e-11, 1'000'000));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 1.0) < 1e-10);
}

TEST_CASE("integrate_halfline: half Gaussian") {
    auto r = integrate_halfline([](double x) { return Complex(std::exp(-kPi * x * x), 0.0); }, 0.0,
                                1.0, Tolerance(1e-11, 1e-11, 1'000'000));
    CHECK(std::abs(r.value.real() - 0.5) < 1e-10);
}

TEST_CASE("integrate_halfline: Gamma(1/2)") {
    auto f = [](double x) { return Complex(std::exp(-x) / std::sqrt(x), 0.0); };
    auto r = integrate_halfline(f, 0.0, 1.0, Tolerance(1e-9, 0.0, 4'000'000));
    CHECK(std::abs(r.value.real() - std::sqrt(kPi)) < 1e-8);
}

TEST_CASE("integrate_halfline: consistency with truncated integrate_1d") {
    auto f = [](double x) { return Complex(std::exp(-x * x), 0.0); };
    auto rh = integrate_halfline(f, 0.0, 1.0, Tolerance(1e-11, 1e-11, 1'000'000));
    auto r1 = integrate_1d(f, 0.0, 20.0, kTight);
    CHECK(std::abs(rh.value.real() - r1.value.real()) < rh.err_est + r1.err_est + 1e-12);
}

TEST_CASE("integrate_plane_gaussian: closed form and parity") {
    const Tolerance tol(1e-11, 1e-11, 4'000'000);
    {
        const QuadraticForm Q(1, 0, 1);
        auto r = integrate_plane_gaussian([](double, double) { return Complex(1.0, 0.0); }, 1.0, Q,
                                          tol);
        CHECK(std::abs(r.value.real() - 0.5) < 1e-10);  // 1/(v sqrt(D)), D = 4
        CHECK(std::abs(r.value.real() - closed_form_plane_gaussian(Q, 1.0)) < 1e-10);
    }
    {
        const QuadraticForm Q(1, 0, 1);
        auto r = integrate_plane_gaussian([](double w1, double) { return Complex(w1, 0.0); }, 1.0,
                                          Q, tol);
        CHECK(std::abs(r.value.real()) < 1e-12);
    }
    {
        const QuadraticForm Q(1, 1, 1);
        auto r = integrate_plane_gaussian([](double, double) { return Complex(1.0, 0.0); }, 1.0, Q,
                                          tol);
        CHECK(std::abs(r.value.real() - closed_form_plane_gaussian(Q, 1.0)) < 1e-8);
    }
}

TEST_CASE("integrate_plane_gaussian: closed-form family over random forms") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> da(1, 5), db(-4, 4);
    const Tolerance tol(1e-11, 1e-11, 4'000'000);
    int done = 0;
    while (done < 10) {
        const long long a1 = da(rng), a3 = da(rng), a2 = db(rng);
        if (4 * a1 * a3 - a2 * a2 <= 0) continue;
        ++done;
        const QuadraticForm Q(a1, a2, a3);
        const double v = 0.5 + 0.1 * done;
        auto r = integrate_plane_gaussian([](double, double) { return Complex(1.0, 0.0); }, v, Q,
                                          tol);
        const double oracle = closed_form_plane_gaussian(Q, v);
        CHECK(std::abs(r.value.real() - oracle) / oracle < 1e-8);
    }
}

TEST_CASE("integrate_wedge: closed form and zero") {
    const Tolerance tol(1e-11, 1e-11, 4'000'000);
    auto r = integrate_wedge(
        [](double w1, double w2) { return Complex(std::exp(-w1 - w2), 0.0); }, 1.0, 1.0, tol);
    CHECK(std::abs(r.value.real() - 0.5) < 1e-10);

    auto z = integrate_wedge([](double, double) { return Complex(0.0, 0.0); }, 1.0, 1.0, tol);
    CHECK(std::abs(z.value.real()) < 1e-14);
}

TEST_CASE("integrate_wedge: vs Richardson trapezoid oracle") {
    auto f = [](double w1, double w2) {
        return Complex(std::exp(-kPi * (w1 + w2)) / (std::sqrt(w1 + 1.0) * std::sqrt(w2 + 1.0)),
                       0.0);
    };
    auto r = integrate_wedge(f, 1.0 / kPi, 1.0 / kPi, Tolerance(1e-10, 1e-10, 6'000'000));

    // trapezoid on the (w1, t) rectangle, Richardson-refined
    auto grid_sum = [&](double h, double T) {
        double s = 0.0;
        const int N = static_cast<int>(T / h);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) {
                const double w1 = i * h, t = j * h;
                double w = 1.0;
                if (i == 0 || i == N) w *= 0.5;
                if (j == 0 || j == N) w *= 0.5;
                s += w * f(w1, w1 + t).real();
            }
        return s * h * h;
    };
    const double T = 8.0;
    const double s1 = grid_sum(0.02, T), s2 = grid_sum(0.01, T);
    const double oracle = s2 + (s2 - s1) / 3.0;
    CHECK(std::abs(r.value.real() - oracle) < 1e-7);
}

TEST_CASE("Tolerance invariants enforced") {
    CHECK_THROWS_AS(Tolerance(0.0, 0.0, 1000), DomainError);
    CHECK_THROWS_AS(Tolerance(1e-10, 1e-10, 10), DomainError);
    CHECK_NOTHROW(Tolerance(0.0, 1e-8, 100));
}

TEST_CASE("QuadratureResult converged respects budget") {
    // an integrand needing many panels with a tiny budget must report
    // converged = false rather than lie
    auto g = [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); };
    auto r = integrate_1d(g, 0.0, 1.0, Tolerance(1e-14, 0.0, 200));
    CHECK_FALSE(r.converged);
}
