#include "mordell/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "mordell/eichler.hpp"
#include "mordell/errfns.hpp"
#include "mordell/kernel.hpp"

namespace mordell {
namespace {

struct SuiteBuilder {
    VerifyReport& rep;
    double tol_scale;

    void add(const std::string& name, double lhs, double rhs, double tolerance) {
        CheckResult c;
        c.name = name;
        c.lhs = lhs;
        c.rhs = rhs;
        c.abs_diff = std::abs(lhs - rhs);
        c.tolerance = tolerance * tol_scale;
        c.pass = c.abs_diff < c.tolerance;
        rep.checks.push_back(c);
    }
    void add_bound(const std::string& name, double value, double bound) {
        CheckResult c;
        c.name = name;
        c.lhs = value;
        c.rhs = 0.0;
        c.abs_diff = std::abs(value);
        c.tolerance = bound * tol_scale;
        c.pass = c.abs_diff < c.tolerance;
        rep.checks.push_back(c);
    }
};

// M(u): relation path vs contour path
void suite_errfns(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-13, 1e-13, opts.max_evals);
    for (double u : {0.25, -0.25, 1.0, -1.0, 2.5, -2.5}) {
        std::ostringstream name;
        name << "M relation vs contour, u=" << u;
        b.add(name.str(), err_m(u), err_m_contour(u, tol), 1e-10);
    }

    // extended M_2 vs contour M_2 at random off-locus points
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dk(-2.0, 2.0), du(-3.0, 3.0);
    const Tolerance tol2(1e-10, 1e-10, opts.max_evals);
    int produced = 0;
    while (produced < 25) {
        const double kappa = dk(rng), u1 = du(rng), u2 = du(rng);
        if (std::abs(u2) < 0.05 || std::abs(u1 - kappa * u2) < 0.05) continue;
        ++produced;
        std::ostringstream name;
        name << "M2 contour vs relation #" << produced;
        b.add(name.str(), err_m2_contour(kappa, u1, u2, tol2), err_m2(kappa, u1, u2, tol2), 1e-6);
    }

    // separability at kappa = 0 on a 5x5 grid
    const Tolerance tol3(1e-11, 1e-11, opts.max_evals);
    double worst = 0.0;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
            const double u1 = i, u2 = j;
            worst = std::max(worst,
                             std::abs(err_e2(0.0, u1, u2, tol3) - err_e(u1) * err_e(u2)));
        }
    b.add_bound("E2(0;u) = E(u1)E(u2), worst of 5x5 grid", worst, 1e-8);
}

// 1D identity h(a tau - b) = -e^{-2 pi i a(b+1/2)} q^{a^2/2} * eichler_1d
void suite_onedim(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-9, 1e-9, opts.max_evals);
    const std::vector<std::tuple<double, double, Complex>> tuples = {
        {1.0 / 3.0, 0.5, {0.0, 1.0}},   {0.25, 0.25, {0.0, 2.0}}, {0.0, 0.0, {0.0, 1.0}},
        {0.5, 0.0, {0.0, 0.5}},         {0.4, 1.0 / 3.0, {0.0, 1.0}}};
    for (const auto& [a, bb, tc] : tuples) {
        const ModularPoint tau(tc);
        const Complex z = a * tau.tau - bb;
        const Complex lhs = mordell_h(z, tau, tol);
        const Complex pref = -std::exp(Complex(0.0, -2.0 * kPi * a * (bb + 0.5))) *
                             std::exp(Complex(0.0, kPi * a * a) * tau.tau);
        const Complex rhs = pref * eichler_1d_cell_limit(a, bb, tau, tol);
        std::ostringstream name;
        name << "mordell-eichler identity a=" << a << " b=" << bb << " tau=(" << tc.real() << ","
             << tc.imag() << ")";
        b.add_bound(name.str(), std::abs(lhs - rhs), 1e-6);
    }
}

struct TheoremConfig {
    long long a1, a2, a3;
    Rational al1, al2;
    double v;
};

// per-term wedge identity at off-locus lattice points
void check_per_term_identity(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-10, 1e-10, opts.max_evals);
    struct P {
        long long a1, a2, a3;
        Rational n1, n2;
        double v;
    };
    const std::vector<P> pts = {
        {1, 1, 1, {1, 3}, {1, 3}, 1.0},    {1, 1, 1, {4, 3}, {-2, 3}, 0.5},
        {1, 1, 1, {-2, 3}, {1, 3}, 1.0},   {1, 0, 1, {1, 2}, {1, 2}, 1.0},
        {1, 0, 1, {3, 2}, {-1, 2}, 0.5},   {1, 0, 1, {-1, 2}, {1, 2}, 1.0},
        {2, 1, 3, {1, 4}, {2, 3}, 0.5},    {2, 1, 3, {-3, 4}, {-1, 3}, 0.5},
        {2, 1, 3, {5, 4}, {2, 3}, 1.0},    {2, 1, 3, {1, 4}, {-1, 3}, 1.0}};
    int idx = 0;
    for (const auto& p : pts) {
        ++idx;
        const QuadraticForm Q(p.a1, p.a2, p.a3);
        const LatticePoint n{p.n1, p.n2};
        const ModularPoint tau = ModularPoint::pure_imaginary(p.v);
        const Complex lhs = m2_eichler_term(Q, n, tau, tol);
        const M2Args args = M2Args::from_lattice(Q, n, std::sqrt(p.v));
        const double rhs = err_m2(args, tol);
        std::ostringstream name;
        name << "per-term M2 identity #" << idx << " Q=(" << p.a1 << "," << p.a2 << "," << p.a3
             << ") v=" << p.v;
        b.add(name.str(), lhs.real(), rhs, 1e-5);
        b.add_bound("per-term M2 identity #" + std::to_string(idx) + " Im", std::abs(lhs.imag()), 1e-9);
    }
}

// main-theorem triangle and imaginary-part vanishing
void check_theorem_triangle(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-9, 1e-9, opts.max_evals);
    const std::vector<TheoremConfig> configs = {
        {1, 1, 1, {1, 3}, {1, 3}, 1.0},
        {1, 0, 1, {1, 2}, {1, 2}, 1.0},
        {2, 1, 3, {1, 4}, {2, 3}, 0.5}};
    for (const auto& cfg : configs) {
        const QuadraticForm Q(cfg.a1, cfg.a2, cfg.a3);
        const AlphaShift alpha(cfg.al1, cfg.al2);
        std::ostringstream base;
        base << "Q=(" << cfg.a1 << "," << cfg.a2 << "," << cfg.a3 << ") alpha=("
             << cfg.al1 << "," << cfg.al2 << ") v=" << cfg.v;

        const QuadratureResult hk = h_alpha_kernel(Q, alpha, cfg.v, tol);
        const LatticeSumReport lc = h_alpha_lattice(Q, alpha, cfg.v, 6, tol, M2Path::Contour);
        const LatticeSumReport lr = h_alpha_lattice(Q, alpha, cfg.v, 6, tol, M2Path::Relation);
        const LatticeSumReport le = h_alpha_lattice(Q, alpha, cfg.v, 6, tol, M2Path::Eichler);

        b.add("thm lattice(contour) vs kernel " + base.str(), lc.value_extrapolated,
              hk.value.real(), 1e-4);
        b.add("thm lattice(relation) vs kernel " + base.str(), lr.value_extrapolated,
              hk.value.real(), 1e-4);
        b.add("thm lattice(eichler) vs kernel " + base.str(), le.value_extrapolated,
              hk.value.real(), 1e-4);
        const double mutual = std::max({std::abs(lc.value_extrapolated - lr.value_extrapolated),
                                        std::abs(lc.value_extrapolated - le.value_extrapolated),
                                        std::abs(lr.value_extrapolated - le.value_extrapolated)});
        b.add_bound("thm M2-path mutual agreement " + base.str(), mutual, 2e-5);
        b.add_bound("im-part |Im h_kernel| < 10 err " + base.str(), std::abs(hk.value.imag()),
                    10.0 * std::max(hk.err_est, 1e-12));
    }
}

// integral-alpha cases: relation-path lattice vs kernel
void check_integral_alpha(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-9, 1e-9, opts.max_evals);
    const std::vector<TheoremConfig> configs = {
        {2, 1, 3, {0, 1}, {1, 2}, 0.5},
        {1, 1, 1, {1, 3}, {0, 1}, 1.0}};
    for (const auto& cfg : configs) {
        const QuadraticForm Q(cfg.a1, cfg.a2, cfg.a3);
        const AlphaShift alpha(cfg.al1, cfg.al2);
        std::ostringstream base;
        base << "Q=(" << cfg.a1 << "," << cfg.a2 << "," << cfg.a3 << ") alpha=("
             << cfg.al1 << "," << cfg.al2 << ") v=" << cfg.v;
        const QuadratureResult hk = h_alpha_kernel(Q, alpha, cfg.v, tol);
        const LatticeSumReport lr = h_alpha_lattice(Q, alpha, cfg.v, 6, tol, M2Path::Relation);
        b.add("integral-alpha lattice vs kernel " + base.str(), lr.value_extrapolated,
              hk.value.real(), 1e-3);
        b.add_bound("im-part |Im h_kernel| < 10 err " + base.str(), std::abs(hk.value.imag()),
                    10.0 * std::max(hk.err_est, 1e-12));
    }
}

// exact shift invariance of the lattice pipeline
void check_shift_invariance(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-9, 1e-9, opts.max_evals);
    const QuadraticForm Q(1, 1, 1);
    const double v = 1.0;
    const AlphaShift a0(Rational(1, 3), Rational(1, 3));
    const AlphaShift a10(Rational(4, 3), Rational(1, 3));
    const AlphaShift a01(Rational(1, 3), Rational(4, 3));
    const double h0 = h_alpha_lattice(Q, a0, v, 4, tol, M2Path::Eichler).value_extrapolated;
    const double h1 = h_alpha_lattice(Q, a10, v, 4, tol, M2Path::Eichler).value_extrapolated;
    const double h2 = h_alpha_lattice(Q, a01, v, 4, tol, M2Path::Eichler).value_extrapolated;
    b.add("shift invariance alpha+(1,0)", h1, h0, 1e-10);
    b.add("shift invariance alpha+(0,1)", h2, h0, 1e-10);
}

// case continuity of the kernel value toward alpha1 = 0
void check_case_continuity(SuiteBuilder& b, const VerifyOptions& opts) {
    const Tolerance tol(1e-10, 1e-10, opts.max_evals);
    const QuadraticForm Q(2, 1, 3);
    const double v = 0.5;
    const double h_limit =
        h_alpha_kernel(Q, AlphaShift(Rational(0), Rational(1, 2)), v, tol).value.real();
    std::vector<double> gaps;
    for (long long q : {8, 16, 32}) {
        const double h =
            h_alpha_kernel(Q, AlphaShift(Rational(1, q), Rational(1, 2)), v, tol).value.real();
        gaps.push_back(std::abs(h - h_limit));
    }
    b.add_bound("case continuity final gap (alpha1=1/32)", gaps[2], 1e-3);
    const bool monotone = gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
    b.add_bound("case continuity monotone approach", monotone ? 0.0 : 1.0, 0.5);
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite, const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = suite;
    SuiteBuilder b{rep, opts.tol_scale};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (suite == "errfns" || suite == "all") suite_errfns(b, opts);
        if (suite == "onedim" || suite == "all") suite_onedim(b, opts);
        if (suite == "theorem" || suite == "all") {
            check_per_term_identity(b, opts);
            check_theorem_triangle(b, opts);
            check_integral_alpha(b, opts);
            check_shift_invariance(b, opts);
            check_case_continuity(b, opts);
        }
    } catch (const ConvergenceError&) {
        rep.convergence_failure = true;
    }
    if (rep.checks.empty() && !rep.convergence_failure)
        throw DomainError("run_verify_suite: unknown suite '" + suite + "'");
    rep.pass = !rep.convergence_failure;
    for (const CheckResult& c : rep.checks) rep.pass = rep.pass && c.pass;
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace mordell

#include <json.hpp>

namespace mordell {

std::string verify_report_json(const VerifyReport& report) {
    nlohmann::json j;
    j["schema_version"] = report.schema_version;
    j["suite"] = report.suite;
    j["pass"] = report.pass;
    j["convergence_failure"] = report.convergence_failure;
    j["wall_time_s"] = report.wall_time_s;
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"lhs", c.lhs},
                               {"rhs", c.rhs},
                               {"abs_diff", c.abs_diff},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    return j.dump(2);
}

}  // namespace mordell
