#include "mordell/errfns.hpp"

#include <algorithm>
#include <cmath>

namespace mordell {
namespace {

constexpr double kLocusBand = 1e-12;
const double kSqrtPi = std::sqrt(kPi);

// M(u) with the exact-zero convention M(0) = 0 used by the extended M_2.
double m_ext(double u) { return (u == 0.0) ? 0.0 : err_e(u) - sgn(u); }

}  // namespace

M2Args M2Args::from_values(double kappa, double u1, double u2) {
    M2Args a;
    a.kappa = kappa;
    a.u1 = u1;
    a.u2 = u2;
    a.on_locus_u2 = std::abs(u2) < kLocusBand;
    a.on_locus_diag = std::abs(u1 - kappa * u2) < kLocusBand;
    return a;
}

M2Args M2Args::from_lattice(const QuadraticForm& Q, const LatticePoint& n, double scale) {
    M2Args a;
    a.kappa = Q.kappa();
    auto [u1, u2] = u_of_n(Q, n);
    a.u1 = scale * u1;
    a.u2 = scale * u2;
    a.on_locus_u2 = n.n2.numerator() == 0;   // u2 = m n2
    a.on_locus_diag = n.n1.numerator() == 0;  // u1 - kappa u2 = 2 sqrt(a1) n1
    if (a.on_locus_u2) a.u2 = 0.0;
    if (a.on_locus_diag) a.u1 = a.kappa * a.u2;
    return a;
}

double err_e(double u) { return std::erf(kSqrtPi * u); }

double err_m(double u) {
    if (u == 0.0) throw DomainError("err_m: undefined at u = 0");
    return err_e(u) - sgn(u);
}

double err_m_contour(double u, const Tolerance& tol) {
    if (u == 0.0) throw DomainError("err_m_contour: undefined at u = 0");
    const double T = std::sqrt(std::max(-std::log(std::max(tol.abs_tol, 1e-18)), 10.0) / kPi) + 1.0;
    auto f = [u](double t) -> Complex {
        return std::exp(-kPi * t * t) / Complex(t, -u);
    };
    QuadratureResult r = integrate_1d(f, -T, T, tol);
    const Complex val = Complex(0.0, 1.0 / kPi) * std::exp(-kPi * u * u) * r.value;
    return val.real();
}

double err_e2(double kappa, double u1, double u2, const Tolerance& tol) {
    auto f = [&](double w) -> Complex {
        return err_e(kappa * w + u2) * std::exp(-kPi * (w - u1) * (w - u1));
    };
    // Gaussian centered at u1; the sgn(w1) kink sits at 0. Mass outside
    // [u1 - R, u1 + R] is below the tolerance by choice of R.
    const double R =
        std::sqrt(std::max(-std::log(std::max(tol.abs_tol * 0.1, 1e-18)), 10.0) / kPi) + 0.5;
    const double lo = u1 - R, hi = u1 + R;
    const Tolerance half = tol.scaled(0.5, 0.5);
    if (lo >= 0.0) return integrate_1d(f, lo, hi, half).value.real();
    if (hi <= 0.0) return -integrate_1d(f, lo, hi, half).value.real();
    QuadratureResult pos = integrate_1d(f, 0.0, hi, half);
    QuadratureResult neg = integrate_1d(f, lo, 0.0, half);
    return pos.value.real() - neg.value.real();
}

namespace {

// shared core of the contour M_2; returns the double integral
//   I = \int\int e^{-pi(t1^2+t2^2)} / ((t2 - i u2)((t1 - kappa t2) - i B)) dt1 dt2
Complex m2_contour_core(double kappa, double u1, double u2, const Tolerance& tol, double* err_out) {
    const double B = u1 - kappa * u2;
    const double T =
        std::sqrt(std::max(-std::log(std::max(tol.abs_tol * 1e-2, 1e-18)), 10.0) / kPi) + 0.7;
    const Tolerance inner_tol = tol.scaled(1.0 / (8.0 * T), 0.1);
    long evals = 0;
    double inner_err = 0.0;
    auto outer = [&](double t2) -> Complex {
        const Complex den2(t2, -u2);
        const double g2 = std::exp(-kPi * t2 * t2);
        auto inner = [&](double t1) -> Complex {
            return g2 * std::exp(-kPi * t1 * t1) / (den2 * Complex(t1 - kappa * t2, -B));
        };
        QuadratureResult r = integrate_1d(inner, -T, T, inner_tol);
        evals += r.n_evals;
        inner_err = std::max(inner_err, r.err_est);
        return r.value;
    };
    QuadratureResult r = integrate_1d(outer, -T, T, tol.scaled(0.5, 0.5));
    if (err_out) *err_out = r.err_est + 2.0 * T * inner_err;
    return r.value;
}

}  // namespace

double err_m2_contour(double kappa, double u1, double u2, const Tolerance& tol) {
    return err_m2_contour(M2Args::from_values(kappa, u1, u2), tol);
}

double err_m2_contour(const M2Args& a, const Tolerance& tol) {
    if (a.on_locus_u2 || a.on_locus_diag)
        throw DomainError("err_m2_contour: requires u2 != 0 and u1 - kappa u2 != 0");
    double err = 0.0;
    const Complex core = m2_contour_core(a.kappa, a.u1, a.u2, tol, &err);
    const Complex val = -(1.0 / (kPi * kPi)) * std::exp(-kPi * (a.u1 * a.u1 + a.u2 * a.u2)) * core;
    return val.real();
}

Complex err_m2_contour_complex(double kappa, double u1, double u2, const Tolerance& tol,
                               double* err_out) {
    const M2Args a = M2Args::from_values(kappa, u1, u2);
    if (a.on_locus_u2 || a.on_locus_diag)
        throw DomainError("err_m2_contour: requires u2 != 0 and u1 - kappa u2 != 0");
    double err = 0.0;
    const Complex core = m2_contour_core(kappa, u1, u2, tol, &err);
    const double pref = std::exp(-kPi * (u1 * u1 + u2 * u2)) / (kPi * kPi);
    if (err_out) *err_out = err * pref;
    return -pref * core;
}

double err_m2_contour_scaled(double kappa, double u1, double u2, const Tolerance& tol) {
    const M2Args a = M2Args::from_values(kappa, u1, u2);
    if (a.on_locus_u2 || a.on_locus_diag)
        throw DomainError("err_m2_contour_scaled: requires u2 != 0 and u1 - kappa u2 != 0");
    const Complex core = m2_contour_core(kappa, u1, u2, tol, nullptr);
    return (-(1.0 / (kPi * kPi)) * core).real();
}

double err_m2(double kappa, double u1, double u2, const Tolerance& tol) {
    return err_m2(M2Args::from_values(kappa, u1, u2), tol);
}

double err_m2(const M2Args& a, const Tolerance& tol) {
    double t = err_e2(a.kappa, a.u1, a.u2, tol);
    const double w_u2 = a.on_locus_u2 ? 0.0 : sgn(a.u2);
    if (w_u2 != 0.0) t -= w_u2 * m_ext(a.u1);
    const double w_diag = a.on_locus_diag ? 0.0 : sgn(a.diag());
    if (w_diag != 0.0)
        t -= w_diag * m_ext((a.u2 + a.kappa * a.u1) / std::sqrt(1.0 + a.kappa * a.kappa));
    t -= sgn(a.u1) * sgn(a.u2 + a.kappa * a.u1);
    return t;
}

double err_m2_relation_scaled(const M2Args& a, const Tolerance& tol, double* cond_err) {
    const double usq = a.u1 * a.u1 + a.u2 * a.u2;
    const double diag_n = std::abs(a.diag()) / std::sqrt(1.0 + a.kappa * a.kappa);
    const double cross = std::abs(a.u2 + a.kappa * a.u1) / std::sqrt(1.0 + a.kappa * a.kappa);
    // largest term in the relation combination decays like the nearest of
    // these single-coordinate Gaussians; everything beyond it cancels
    const double piece = std::min({a.u1 * a.u1, cross * cross, diag_n * diag_n, a.u2 * a.u2});
    const double amp_log = kPi * (usq - piece);
    if (cond_err) *cond_err = 1e-15 * std::exp(std::min(amp_log, 700.0));
    const double m2 = err_m2(a, tol);
    if (m2 == 0.0) return 0.0;
    if (kPi * usq > 700.0)
        return static_cast<double>(static_cast<long double>(m2) *
                                   expl(static_cast<long double>(kPi) * usq));
    return m2 * std::exp(kPi * usq);
}

}  // namespace mordell
