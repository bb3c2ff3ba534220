#include "mordell/eichler.hpp"

#include <algorithm>
#include <cmath>

#include "mordell/theta.hpp"

namespace mordell {
namespace {

// cosh(2 pi z w)/cosh(pi w) e^{pi i tau w^2} with every exponential folded
// into one exponent, so neither factor overflows before the Gaussian wins.
Complex mordell_integrand(Complex z, Complex tau, double w) {
    const Complex a = 2.0 * kPi * z * w;
    const Complex as = (a.real() >= 0.0) ? a : -a;
    const double b = kPi * std::abs(w);
    const Complex expo = as - b + Complex(0.0, kPi) * tau * (w * w);
    return std::exp(expo) * (1.0 + std::exp(-2.0 * as)) / (1.0 + std::exp(-2.0 * b));
}

}  // namespace

Complex mordell_h(Complex z, const ModularPoint& tau, const Tolerance& tol) {
    const double y = tau.v();
    const double r = std::abs(z.real());
    const double lambda = std::max(-std::log(std::max(tol.abs_tol * 0.25, 1e-18)), 10.0) + 2.0;
    const double W = (r + std::sqrt(r * r + y * lambda / kPi)) / y + 1.0;
    auto f = [&](double w) { return mordell_integrand(z, tau.tau, w); };
    QuadratureResult q = integrate_1d(f, -W, W, tol);
    if (!q.converged) throw ConvergenceError("mordell_h: quadrature did not converge");
    return q.value;
}

double eichler_wedge_core(double c1, double c2, double shift, const Tolerance& tol, long* evals) {
    // \int_0^inf e^{-pi(c1+c2)t} erfcx(sqrt(pi c2 (t+shift))) / sqrt(c2 (t+shift)) dt
    const double ctot = c1 + c2;
    auto f = [&](double t) -> Complex {
        const double A = c2 * (t + shift);
        return std::exp(-kPi * ctot * t) * erfcx(std::sqrt(kPi * A)) / std::sqrt(A);
    };
    QuadratureResult q = integrate_halfline(f, 0.0, 1.0 / (kPi * ctot), tol);
    if (evals) *evals += q.n_evals;
    if (!q.converged) throw ConvergenceError("eichler_term: wedge quadrature did not converge");
    return q.value.real();
}

Complex eichler_term(const EichlerTermSpec& spec, const Tolerance& tol) {
    if (spec.c1 < 0.0 || spec.c2 < 0.0) throw DomainError("eichler_term: c1, c2 must be >= 0");
    if (spec.c2 == 0.0)
        throw DomainError("eichler_term: c2 = 0 makes the inner integral diverge");
    const double ctot = spec.c1 + spec.c2;
    if (spec.lower == EichlerTermSpec::Lower::Zero) {
        if (!spec.tau.is_pure_imaginary())
            throw DomainError("eichler_term: lower limit 0 is supported on tau = iv only");
        return eichler_wedge_core(spec.c1, spec.c2, spec.tau.v(), tol, nullptr);
    }
    const double x = spec.tau.tau.real();
    const double y = spec.tau.v();
    const double core = eichler_wedge_core(spec.c1, spec.c2, 2.0 * y, tol, nullptr);
    return std::exp(Complex(-kPi * ctot * y, -kPi * ctot * x)) * core;
}

namespace {

// prefactor/coefficient bundle of the two per-term wedge integrals for n
struct TermPair {
    bool has1 = false, has2 = false;
    double p1 = 0.0, c1a = 0.0, c1b = 0.0;  // P1, exponent coefficients
    double p2 = 0.0, c2a = 0.0, c2b = 0.0;
};

TermPair term_pair(const QuadraticForm& Q, const LatticePoint& n) {
    TermPair t;
    const double a1 = static_cast<double>(Q.a1());
    const double a3 = static_cast<double>(Q.a3());
    const double D = static_cast<double>(Q.D());
    // prefactor-vanishing predicates decided exactly on rationals
    const Rational l1_exact = n.n1 * (2 * Q.a1()) + n.n2 * Q.a2();
    const Rational l2_exact = n.n1 * Q.a2() + n.n2 * (2 * Q.a3());
    const double l1 = to_double(l1_exact);
    const double l2 = to_double(l2_exact);
    const double n1 = n.n1d(), n2 = n.n2d();
    if (n.n2.numerator() != 0 && l1_exact.numerator() != 0) {
        t.has1 = true;
        t.p1 = Q.sqrt_D() * n2 * l1 / (2.0 * a1);
        t.c1a = l1 * l1 / (2.0 * a1);
        t.c1b = D * n2 * n2 / (2.0 * a1);
    }
    if (n.n1.numerator() != 0 && l2_exact.numerator() != 0) {
        t.has2 = true;
        t.p2 = Q.sqrt_D() * n1 * l2 / (2.0 * a3);
        t.c2a = l2 * l2 / (2.0 * a3);
        t.c2b = D * n1 * n1 / (2.0 * a3);
    }
    return t;
}

}  // namespace

Complex m2_eichler_term(const QuadraticForm& Q, const LatticePoint& n, const ModularPoint& tau,
                        const Tolerance& tol) {
    const TermPair t = term_pair(Q, n);
    if (!t.has1 && !t.has2) return {0.0, 0.0};
    const double Qn = Q.eval(n.n1d(), n.n2d());
    const Complex qQ = std::exp(Complex(0.0, 2.0 * kPi) * tau.tau * Qn);
    Complex sum{0.0, 0.0};
    if (t.has1)
        sum += t.p1 * eichler_term({t.c1a, t.c1b, EichlerTermSpec::Lower::MinusConjTau, tau}, tol);
    if (t.has2)
        sum += t.p2 * eichler_term({t.c2a, t.c2b, EichlerTermSpec::Lower::MinusConjTau, tau}, tol);
    return qQ * sum;
}

namespace {

// scaled lattice term M_2(kappa; sqrt(v/2) u(n)) e^{2 pi v Q(n)} through the
// per-term wedge form; the two e^{+-2 pi v Q} factors cancel analytically.
double lattice_term_eichler(const QuadraticForm& Q, const LatticePoint& n, double v,
                            const Tolerance& tol, long* evals) {
    const TermPair t = term_pair(Q, n);
    double sum = 0.0;
    if (t.has1) sum += t.p1 * eichler_wedge_core(t.c1a, t.c1b, v, tol, evals);
    if (t.has2) sum += t.p2 * eichler_wedge_core(t.c2a, t.c2b, v, tol, evals);
    return sum;
}

double neville_at_zero(const std::vector<double>& S, int n_points, double* step_err) {
    const int n = std::min<int>(n_points, static_cast<int>(S.size()));
    const int r0 = static_cast<int>(S.size()) - n + 1;
    std::vector<double> x(n), t(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 1.0 / static_cast<double>(r0 + i);
        t[i] = S[r0 + i - 1];
    }
    double prev = t[n - 1];
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n - j; ++i)
            t[i] = (t[i + 1] * (0.0 - x[i]) - t[i] * (0.0 - x[i + j])) / (x[i + j] - x[i]);
        if (j == n - 2) prev = t[0];
    }
    if (step_err) *step_err = std::abs(t[0] - prev);
    return t[0];
}

double aitken_limit(std::vector<double> s) {
    while (s.size() >= 3) {
        std::vector<double> t;
        for (size_t i = 0; i + 2 < s.size(); ++i) {
            const double d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
            if (d2 == 0.0)
                t.push_back(s[i + 2]);
            else
                t.push_back(s[i + 2] - (s[i + 2] - s[i + 1]) * (s[i + 2] - s[i + 1]) / d2);
        }
        if (t.size() < 3) return t.back();
        s = std::move(t);
    }
    return s.back();
}

}  // namespace

LatticeSumReport h_alpha_lattice(const QuadraticForm& Q, const AlphaShift& alpha, double v,
                                 int r_max, const Tolerance& tol, M2Path path) {
    if (alpha.shift_case() == ShiftCase::BothIntegral)
        throw DomainError("h_alpha_lattice: alpha in Z^2 has no kernel formula; rejected");
    if (!(v > 0.0)) throw DomainError("h_alpha_lattice: v must be positive");
    if (r_max < 1) throw DomainError("h_alpha_lattice: r_max must be >= 1");

    const AlphaShift red = alpha.reduced();
    const double scale = std::sqrt(v / 2.0);
    const int n_terms = (2 * r_max + 1) * (2 * r_max + 1);
    const Tolerance term_tol(std::max(tol.abs_tol / (8.0 * n_terms), 1e-15), 1e-11,
                             std::max<long>(tol.max_evals / n_terms, 20000));

    LatticeSumReport rep;
    rep.r_used = r_max;
    long evals = 0;
    double term_err_budget = 0.0;

    auto scaled_term = [&](const LatticePoint& n) -> double {
        const bool locus = n.n1.numerator() == 0 || n.n2.numerator() == 0;
        const M2Args args = M2Args::from_lattice(Q, n, scale);
        double cond = 0.0;
        term_err_budget += term_tol.abs_tol;
        if (locus) {
            ++rep.n_locus_terms;
            // the sgn-extended relation is the defining value on the loci;
            // Eichler form is measured against it where the relation is
            // well-conditioned, and replaces it where it is not.
            double rel = 0.0;
            bool rel_ok = false;
            {
                double ce = 0.0;
                rel = err_m2_relation_scaled(args, term_tol, &ce);
                rel_ok = ce < term_tol.abs_tol * 8.0;
            }
            const double eich = lattice_term_eichler(Q, n, v, term_tol, &evals);
            if (rel_ok) {
                rep.max_locus_mismatch = std::max(rep.max_locus_mismatch, std::abs(eich - rel));
                if (path == M2Path::Eichler) return eich;
                return rel;
            }
            ++rep.n_fallback_eichler;
            return eich;
        }
        switch (path) {
            case M2Path::Eichler:
                return lattice_term_eichler(Q, n, v, term_tol, &evals);
            case M2Path::Contour:
                return err_m2_contour_scaled(args.kappa, args.u1, args.u2, term_tol);
            case M2Path::Relation: {
                const double rel = err_m2_relation_scaled(args, term_tol, &cond);
                if (cond < term_tol.abs_tol * 8.0) return rel;
                ++rep.n_fallback_contour;
                return err_m2_contour_scaled(args.kappa, args.u1, args.u2, term_tol);
            }
        }
        return 0.0;
    };

    double total = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        if (r == 1)
            for (const LatticePoint& n : lattice_box(red, 1)) total += scaled_term(n);
        else
            for (const LatticePoint& n : lattice_ring(red, r)) total += scaled_term(n);
        rep.partial_sums.push_back(2.0 * total);
    }

    rep.value_raw = rep.partial_sums.back();
    double extrap_err = 0.0;
    rep.value_extrapolated = neville_at_zero(rep.partial_sums, 6, &extrap_err);
    rep.value_aitken = aitken_limit(rep.partial_sums);
    rep.tail_estimate = extrap_err + term_err_budget;
    rep.n_evals = evals;

    if (rep.partial_sums.size() >= 4) {
        // non-convergence (increments failing to decrease) is reported
        // through the flag so callers still see the partial sums
        const auto& S = rep.partial_sums;
        const size_t k = S.size();
        const double d1 = std::abs(S[k - 1] - S[k - 2]);
        const double d2 = std::abs(S[k - 2] - S[k - 3]);
        const double d3 = std::abs(S[k - 3] - S[k - 4]);
        rep.converged = d1 <= d2 && d2 <= d3;
    } else {
        rep.converged = true;
    }
    return rep;
}

Complex double_eichler(const QuadraticForm& Q, const AlphaShift& alpha, const ModularPoint& tau,
                       const Tolerance& tol, int r_max) {
    if (r_max < 1) throw DomainError("double_eichler: r_max must be >= 1");
    const AlphaShift red = alpha.reduced();
    const int n_terms = (2 * r_max + 1) * (2 * r_max + 1);
    const Tolerance term_tol(std::max(tol.abs_tol / (8.0 * n_terms), 1e-15), 1e-11,
                             std::max<long>(tol.max_evals / n_terms, 20000));
    const double x = tau.tau.real(), y = tau.v();

    // E-term(n) = (1/2) q^{-Q(n)} m2_eichler_term(n); written out, the q
    // factors cancel and each wedge integral carries e^{-2 pi y Q(n)}.
    auto term = [&](const LatticePoint& n) -> Complex {
        const TermPair t = term_pair(Q, n);
        if (!t.has1 && !t.has2) return {0.0, 0.0};
        Complex sum{0.0, 0.0};
        if (t.has1) {
            const double ctot = t.c1a + t.c1b;
            sum += t.p1 * std::exp(Complex(-kPi * ctot * y, -kPi * ctot * x)) *
                   eichler_wedge_core(t.c1a, t.c1b, 2.0 * y, term_tol, nullptr);
        }
        if (t.has2) {
            const double ctot = t.c2a + t.c2b;
            sum += t.p2 * std::exp(Complex(-kPi * ctot * y, -kPi * ctot * x)) *
                   eichler_wedge_core(t.c2a, t.c2b, 2.0 * y, term_tol, nullptr);
        }
        return 0.5 * sum;
    };

    Complex total{0.0, 0.0};
    double prev_ring = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= r_max; ++r) {
        Complex ring{0.0, 0.0};
        if (r == 1)
            for (const LatticePoint& n : lattice_box(red, 1)) ring += term(n);
        else
            for (const LatticePoint& n : lattice_ring(red, r)) ring += term(n);
        total += ring;
        const double mag = std::abs(ring);
        if (r == r_max && mag > std::max(tol.abs_tol, 1e-14) && mag > prev_ring)
            throw ConvergenceError("double_eichler: ring contributions not decreasing at r_max");
        prev_ring = mag;
    }
    return total;
}

// ---------------------------------------------------------------------------
// one-dimensional Eichler integral
// ---------------------------------------------------------------------------

namespace {

constexpr double kCharBand = 1e-12;

bool near_integer(double x) { return std::abs(x - std::round(x)) < kCharBand; }

// L(a', b') = sum_{n in a'+Z} e^{2 pi i b' n} / n (symmetric limit; n = 0
// skipped when a' is integral). jump_dir = -1/+1 selects the one-sided value
// at integral b' (limit of frac(b') -> 1^- / 0^+); 0 gives the midpoint.
Complex lattice_harmonic_sum(double ap, double bp, int jump_dir) {
    const bool a_int = near_integer(ap);
    const bool b_int = near_integer(bp);
    const double x = bp - std::floor(bp);  // frac(b') in [0,1)
    if (a_int) {
        if (b_int) return (jump_dir == 0) ? Complex(0.0, 0.0) : Complex(0.0, -kPi * jump_dir);
        return Complex(0.0, kPi * (1.0 - 2.0 * x));
    }
    const Complex phase = std::exp(Complex(0.0, 2.0 * kPi * ap * bp));
    if (b_int) {
        const Complex mid(kPi / std::tan(kPi * ap), 0.0);
        if (jump_dir == 0) return phase * mid;
        return phase * (mid + Complex(0.0, -kPi * jump_dir));
    }
    const Complex num = Complex(0.0, 2.0 * kPi) * std::exp(Complex(0.0, -2.0 * kPi * ap * x));
    const Complex den = 1.0 - std::exp(Complex(0.0, -2.0 * kPi * ap));
    return phase * num / den;
}

// J(c; s) = \int_0^inf e^{-pi c t} (t+s)^{-3/2} dt = 2/sqrt(s) - 2 pi c I(c;s),
// with the asymptotic series taking over when the difference would cancel.
double j_correction(double c, double s) {
    const double pcs = kPi * c * s;
    if (pcs > 1e4) {
        // J = (2/sqrt(s)) sum_{k>=1} (-1)^{k+1} (2k-1)!!/(2 pcs)^k
        double acc = 0.0, t = 1.0;
        for (int k = 1; k <= 6; ++k) {
            t *= static_cast<double>(2 * k - 1) / (2.0 * pcs);
            acc += ((k % 2) ? t : -t);
        }
        return 2.0 / std::sqrt(s) * acc;
    }
    const double I = erfcx(std::sqrt(pcs)) / std::sqrt(c);
    return 2.0 / std::sqrt(s) - 2.0 * kPi * c * I;
}

// termwise sum S = sum_n n e^{2 pi i b' n} I(n^2; s) at real s = v > 0
Complex eichler_termwise_sum(double ap, double bp, double s, const Tolerance& tol, int jump_dir) {
    const double tol4 = std::max(tol.abs_tol * 0.25, 1e-13);
    const double K_real = std::sqrt(std::pow(s, -1.5) / (2.0 * kPi * kPi * tol4));
    const long K = std::clamp<long>(static_cast<long>(K_real) + 1, 32, 5'000'000);

    Complex S = lattice_harmonic_sum(ap, bp, jump_dir) / (kPi * std::sqrt(s));
    const double a_red = ap - std::floor(ap);
    Complex corr{0.0, 0.0};
    for (long k = -K; k <= K; ++k) {
        const double n = a_red + static_cast<double>(k);
        if (n == 0.0) continue;
        corr += std::exp(Complex(0.0, 2.0 * kPi * bp * n)) * (j_correction(n * n, s) / n);
    }
    S -= corr / (2.0 * kPi);
    return S;
}

// bound for |int_0^delta g_{a',b'}(it)/sqrt(t+s) dt| via the modular image
// g(it) = i e^{2 pi i a'b'} t^{-3/2} g_{b',-a'}(i/t)
double small_t_remainder_bound(double ap, double bp, double s_re, double delta) {
    (void)ap;
    const double b_red = bp - std::floor(bp);
    double m0 = std::min(b_red, 1.0 - b_red);
    if (m0 < kCharBand) m0 = 1.0;  // dual n = 0 term carries factor 0
    // shell factor sum_m |m| e^{-pi (m^2 - m0^2)/delta}, walking both arms
    // of the dual lattice b' + Z
    double F = 0.0;
    for (int j = 0; j < 200; ++j) {
        for (double m : {b_red + j, b_red - 1.0 - j}) {
            const double am = std::abs(m);
            if (am < kCharBand) continue;
            F += am * std::exp(-kPi * (am * am - m0 * m0) / delta);
        }
    }
    const double c = kPi * m0 * m0;
    const double gamma_tail = 2.0 * std::sqrt(delta) / c * std::exp(-c / delta);
    return F * gamma_tail / std::sqrt(s_re);
}

}  // namespace

Complex eichler_1d_direct(double a, double b, const ModularPoint& tau, const Tolerance& tol) {
    const double ap = a + 0.5, bp = b + 0.5;
    const Complex s = Complex(0.0, -1.0) * tau.tau;  // Re s = Im tau > 0

    const double b_red = bp - std::floor(bp);
    double m0_dual = std::min(b_red, 1.0 - b_red);
    if (m0_dual < kCharBand) m0_dual = 1.0;
    double delta = std::min(1e-3, kPi * m0_dual * m0_dual / 45.0);
    double rem = small_t_remainder_bound(ap, bp, s.real(), delta);
    while (rem > tol.abs_tol * 0.25 && delta > 1e-8) {
        delta *= 0.5;
        rem = small_t_remainder_bound(ap, bp, s.real(), delta);
    }

    const double a_red = ap - std::floor(ap);
    double n0 = std::min(a_red, 1.0 - a_red);
    if (n0 < kCharBand) n0 = 1.0;  // n = 0 term vanishes
    const Tolerance theta_tol(std::max(tol.abs_tol * 1e-2, 1e-15), 0.0, tol.max_evals);
    auto f = [&](double t) -> Complex {
        return unary_theta(ap, bp, ModularPoint(Complex(0.0, t)), theta_tol) /
               std::sqrt(Complex(t, 0.0) + s);
    };
    QuadratureResult q = integrate_halfline(f, delta, 1.0 / (kPi * n0 * n0), tol.scaled(0.5, 0.5));
    if (!q.converged) throw ConvergenceError("eichler_1d: t-quadrature did not converge");
    return Complex(0.0, 1.0) * q.value;  // dw = i dt
}

Complex eichler_1d(double a, double b, const ModularPoint& tau, const Tolerance& tol) {
    const double ap = a + 0.5, bp = b + 0.5;
    if (tau.is_pure_imaginary())
        return Complex(0.0, 1.0) * eichler_termwise_sum(ap, bp, tau.v(), tol, 0);
    return eichler_1d_direct(a, b, tau, tol);
}

Complex eichler_1d_cell_limit(double a, double b, const ModularPoint& tau, const Tolerance& tol) {
    if (std::abs(a) > 0.5 + kCharBand || std::abs(b) > 0.5 + kCharBand)
        throw DomainError("eichler_1d_cell_limit: requires a, b in [-1/2, 1/2]");
    const double ap = a + 0.5, bp = b + 0.5;
    const bool a_boundary = near_integer(ap);  // a = +-1/2
    const bool b_boundary = near_integer(bp);  // b = +-1/2
    if (!a_boundary && !b_boundary) return eichler_1d(a, b, tau, tol);

    const int dir_b = b_boundary ? ((b > 0.0) ? +1 : -1) : 0;
    const Complex s = Complex(0.0, -1.0) * tau.tau;

    Complex S;
    if (tau.is_pure_imaginary()) {
        S = eichler_termwise_sum(ap, bp, tau.v(), tol, dir_b);
    } else {
        S = eichler_1d_direct(a, b, tau, tol) / Complex(0.0, 1.0);
        if (dir_b != 0) {
            // replace the midpoint value of the conditional part by the
            // one-sided limit: L shifts by -i pi e^{2 pi i a' b'} dir_b
            const Complex dL = lattice_harmonic_sum(ap, bp, dir_b) -
                               lattice_harmonic_sum(ap, bp, 0);
            S += dL / (kPi * std::sqrt(s));
        }
    }
    if (a_boundary) {
        // the n -> 0 term n I(n^2) tends to sgn(n) erfcx(0) = +-1 from the
        // interior side while vanishing on the boundary itself
        S += (a > 0.0) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
    }
    return Complex(0.0, 1.0) * S;
}

}  // namespace mordell
