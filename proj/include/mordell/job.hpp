#ifndef MORDELL_JOB_HPP
#define MORDELL_JOB_HPP

#include <optional>
#include <string>

#include "mordell/eichler.hpp"

namespace mordell {

// Evaluation methods exposed on the command line.
enum class EvalMethod { LatticeContour, LatticeRelation, LatticeEichler, Kernel };

EvalMethod parse_method(const std::string& s);
std::string method_name(EvalMethod m);

Rational parse_rational(const std::string& s);  // "p/q" or "p"

struct JobConfig {
    long long a1 = 1, a2 = 0, a3 = 1;
    Rational alpha1{0};
    Rational alpha2{0};
    double v = 1.0;
    std::optional<Complex> tau;  // overrides v when present (pure eval use)
    Tolerance tol{1e-10, 1e-10, 10'000'000};
    int r_max = 6;
    EvalMethod method = EvalMethod::Kernel;
    std::string output = "csv";  // csv | json
    unsigned long long seed = 12345;
};

// JSON config file; command-line flags override fields afterwards.
JobConfig load_job_config(const std::string& path);
void apply_form_string(JobConfig& cfg, const std::string& s);   // "a1,a2,a3"
void apply_alpha_string(JobConfig& cfg, const std::string& s);  // "p/q,r/s"

struct HRecord {
    std::string method;
    long long a1, a2, a3;
    Rational alpha1, alpha2;
    double v;           // Im(tau)
    double tau_re = 0;  // Re(tau); nonzero only for double-eichler evaluations
    Complex value;
    double err_est;
    long n_evals;
    int r_used;
    bool converged;
};

HRecord run_h_eval(const JobConfig& cfg);

// double Eichler integral E_alpha(tau); tau from cfg.tau, or iv with v from
// cfg.v. Returned with method = "double-eichler" and v = Im(tau); CSV output
// requires a pure-imaginary tau (the row schema has no tau_re column).
HRecord run_double_eichler_eval(const JobConfig& cfg);

std::string h_csv_header();
std::string h_csv_row(const HRecord& r);
std::string h_json(const HRecord& r);

struct ErrfnRecord {
    std::string kind;
    double kappa, u1, u2;
    Complex value;
    double err_est;
    long n_evals;
    bool converged;
};

// kind in {E, M, E2, M2, M2-contour}
ErrfnRecord run_errfn_eval(const std::string& kind, double kappa, double u1, double u2,
                           const Tolerance& tol);
std::string errfn_csv_header();
std::string errfn_csv_row(const ErrfnRecord& r);
std::string errfn_json(const ErrfnRecord& r);

// RFC-4180 quoting for one field
std::string csv_escape(const std::string& field);

}  // namespace mordell

#endif
