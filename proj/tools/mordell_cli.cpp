// Command-line surface for the higher-Mordell-integral library: single
// evaluations, the verification suites, and parameter sweeps with
// machine-readable CSV/JSON output.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "mordell/job.hpp"
#include "mordell/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConverge = 3;

long env_max_evals() {
    if (const char* s = std::getenv("MORDELL_MAX_EVALS")) {
        const long v = std::atol(s);
        if (v >= 100) return v;
    }
    return 10'000'000;
}

struct CommonFlags {
    std::string form, alpha, tau, config;
    double v = -1.0;
    double tol = -1.0;
    int r_max = -1;
    std::string method, out;
    long long seed = -1;

    void attach(CLI::App* app) {
        app->add_option("--form", form, "quadratic form 'a1,a2,a3'");
        app->add_option("--alpha", alpha, "shift 'p/q,r/s' (exact rationals)");
        app->add_option("--v", v, "imaginary part of tau = iv");
        app->add_option("--tau", tau, "modular point 're,im' (eval only)");
        app->add_option("--tol", tol, "absolute tolerance");
        app->add_option("--r-max", r_max, "lattice box radius");
        app->add_option("--method", method,
                        "lattice-contour | lattice-relation | lattice-eichler | kernel");
        app->add_option("--out", out, "csv | json");
        app->add_option("--config", config, "JSON config file (flags override)");
        app->add_option("--seed", seed, "seed for randomized diagnostics");
    }

    mordell::JobConfig to_config() const {
        mordell::JobConfig cfg;
        if (!config.empty()) cfg = mordell::load_job_config(config);
        cfg.tol.max_evals = env_max_evals();
        if (!form.empty()) mordell::apply_form_string(cfg, form);
        if (!alpha.empty()) mordell::apply_alpha_string(cfg, alpha);
        if (v > 0.0) cfg.v = v;
        if (!tau.empty()) {
            const auto c = tau.find(',');
            if (c == std::string::npos) throw mordell::DomainError("--tau expects 're,im'");
            cfg.tau = mordell::Complex(std::stod(tau.substr(0, c)), std::stod(tau.substr(c + 1)));
        }
        if (tol > 0.0) cfg.tol = mordell::Tolerance(tol, tol, cfg.tol.max_evals);
        if (r_max > 0) cfg.r_max = r_max;
        if (!method.empty()) cfg.method = mordell::parse_method(method);
        if (!out.empty()) cfg.output = out;
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
        return cfg;
    }
};

int cmd_eval_h(const CommonFlags& flags) {
    const mordell::JobConfig cfg = flags.to_config();
    const mordell::HRecord rec = mordell::run_h_eval(cfg);
    if (cfg.output == "json") {
        std::cout << mordell::h_json(rec) << "\n";
    } else {
        std::cout << mordell::h_csv_header() << "\n" << mordell::h_csv_row(rec) << "\n";
    }
    return rec.converged ? kExitOk : kExitNoConverge;
}

int cmd_eval_double_eichler(const CommonFlags& flags) {
    const mordell::JobConfig cfg = flags.to_config();
    if (cfg.output != "json" && cfg.tau && cfg.tau->real() != 0.0)
        throw mordell::DomainError(
            "CSV rows carry only v = Im(tau); use --out json for general tau");
    const mordell::HRecord rec = mordell::run_double_eichler_eval(cfg);
    if (cfg.output == "json") {
        std::cout << mordell::h_json(rec) << "\n";
    } else {
        std::cout << mordell::h_csv_header() << "\n" << mordell::h_csv_row(rec) << "\n";
    }
    return rec.converged ? kExitOk : kExitNoConverge;
}

int cmd_eval_errfn(const CommonFlags& flags, const std::string& kind, double kappa,
                   const std::string& u) {
    mordell::Tolerance tol(1e-10, 1e-10, env_max_evals());
    if (flags.tol > 0.0) tol = mordell::Tolerance(flags.tol, flags.tol, tol.max_evals);
    double u1 = 0.0, u2 = 0.0;
    const auto comma = u.find(',');
    if (comma == std::string::npos) {
        u1 = std::stod(u);
    } else {
        u1 = std::stod(u.substr(0, comma));
        u2 = std::stod(u.substr(comma + 1));
    }
    const mordell::ErrfnRecord rec = mordell::run_errfn_eval(kind, kappa, u1, u2, tol);
    if (flags.out == "json") {
        std::cout << mordell::errfn_json(rec) << "\n";
    } else {
        std::cout << mordell::errfn_csv_header() << "\n" << mordell::errfn_csv_row(rec) << "\n";
    }
    return rec.converged ? kExitOk : kExitNoConverge;
}

int cmd_verify(const std::string& suite, double tol_scale, long long seed) {
    mordell::VerifyOptions opts;
    opts.tol_scale = tol_scale;
    if (seed >= 0) opts.seed = static_cast<unsigned long long>(seed);
    opts.max_evals = env_max_evals();
    const mordell::VerifyReport rep = mordell::run_verify_suite(suite, opts);
    std::cout << mordell::verify_report_json(rep) << "\n";
    if (rep.convergence_failure) return kExitNoConverge;
    return rep.pass ? kExitOk : kExitVerifyFail;
}

int cmd_sweep(const CommonFlags& flags, const std::string& param, const std::string& range,
              int steps, const std::string& values) {
    mordell::JobConfig cfg = flags.to_config();
    std::vector<mordell::JobConfig> grid;

    auto split2 = [](const std::string& s) {
        const auto c = s.find(',');
        if (c == std::string::npos) throw mordell::DomainError("--range expects 'lo,hi'");
        return std::make_pair(s.substr(0, c), s.substr(c + 1));
    };

    if (param == "v") {
        if (steps < 2) throw mordell::DomainError("sweep: steps must be >= 2");
        const auto [lo_s, hi_s] = split2(range);
        const double lo = std::stod(lo_s), hi = std::stod(hi_s);
        for (int i = 0; i < steps; ++i) {
            cfg.v = lo + (hi - lo) * i / (steps - 1);
            grid.push_back(cfg);
        }
    } else if (param == "alpha1") {
        if (!values.empty()) {
            std::stringstream ss(values);
            std::string item;
            while (std::getline(ss, item, ',')) {
                cfg.alpha1 = mordell::parse_rational(item);
                grid.push_back(cfg);
            }
        } else {
            if (steps < 2) throw mordell::DomainError("sweep: steps must be >= 2");
            const auto [lo_s, hi_s] = split2(range);
            const mordell::Rational lo = mordell::parse_rational(lo_s);
            const mordell::Rational hi = mordell::parse_rational(hi_s);
            for (int i = 0; i < steps; ++i) {
                cfg.alpha1 = lo + (hi - lo) * mordell::Rational(i, steps - 1);
                grid.push_back(cfg);
            }
        }
    } else if (param == "r") {
        const auto [lo_s, hi_s] = split2(range);
        const int lo = std::stoi(lo_s), hi = std::stoi(hi_s);
        if (lo < 1 || hi < lo) throw mordell::DomainError("sweep: bad r range");
        for (int r = lo; r <= hi; ++r) {
            cfg.r_max = r;
            grid.push_back(cfg);
        }
    } else {
        throw mordell::DomainError("sweep: param must be one of v, alpha1, r");
    }

    std::cout << mordell::h_csv_header() << "\n";
    bool all_converged = true;
    for (const mordell::JobConfig& g : grid) {
        const mordell::HRecord rec = mordell::run_h_eval(g);
        std::cout << mordell::h_csv_row(rec) << "\n";
        all_converged = all_converged && rec.converged;
    }
    return all_converged ? kExitOk : kExitNoConverge;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher Mordell integrals H_alpha and their special functions"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->require_subcommand(1);
    auto* eval_h = eval->add_subcommand("H", "H_alpha(iv) through a chosen pipeline");
    flags.attach(eval_h);
    auto* eval_e = eval->add_subcommand("E", "double Eichler integral E_alpha(tau)");
    flags.attach(eval_e);

    std::string errfn_kind = "M2", errfn_u = "0,0";
    double errfn_kappa = 0.0;
    auto* eval_errfn = eval->add_subcommand("errfn", "error functions E, M, E2, M2");
    eval_errfn->add_option("--kind", errfn_kind, "E | M | E2 | M2 | M2-contour");
    eval_errfn->add_option("--kappa", errfn_kappa, "kappa parameter");
    eval_errfn->add_option("--u", errfn_u, "'u1,u2' (or single u for E, M)");
    eval_errfn->add_option("--tol", flags.tol, "absolute tolerance");
    eval_errfn->add_option("--out", flags.out, "csv | json");

    std::string suite = "all";
    double tol_scale = 1.0;
    long long verify_seed = -1;
    auto* verify = app.add_subcommand("verify", "run a verification suite, print JSON report");
    verify->add_option("--suite", suite, "errfns | onedim | theorem | all");
    verify->add_option("--tol-scale", tol_scale, "multiply all tolerances");
    verify->add_option("--seed", verify_seed, "seed for randomized checks");

    std::string sweep_param, sweep_range, sweep_values;
    int sweep_steps = 0;
    auto* sweep = app.add_subcommand("sweep", "evaluate H over a parameter grid (CSV stream)");
    flags.attach(sweep);
    sweep->add_option("--param", sweep_param, "v | alpha1 | r")->required();
    sweep->add_option("--range", sweep_range, "'lo,hi'");
    sweep->add_option("--steps", sweep_steps, "grid size (>= 2)");
    sweep->add_option("--values", sweep_values, "explicit rational list for alpha1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval_h->parsed()) return cmd_eval_h(flags);
        if (eval_e->parsed()) return cmd_eval_double_eichler(flags);
        if (eval_errfn->parsed()) return cmd_eval_errfn(flags, errfn_kind, errfn_kappa, errfn_u);
        if (verify->parsed()) return cmd_verify(suite, tol_scale, verify_seed);
        if (sweep->parsed()) return cmd_sweep(flags, sweep_param, sweep_range, sweep_steps,
                                              sweep_values);
    } catch (const mordell::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConverge;
    } catch (const mordell::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
