#include "mordell/job.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mordell/errfns.hpp"
#include "mordell/kernel.hpp"

namespace mordell {
namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_rational(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

long long parse_ll(const std::string& s) {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw DomainError("invalid integer: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

EvalMethod parse_method(const std::string& s) {
    if (s == "lattice-contour") return EvalMethod::LatticeContour;
    if (s == "lattice-relation") return EvalMethod::LatticeRelation;
    if (s == "lattice-eichler") return EvalMethod::LatticeEichler;
    if (s == "kernel") return EvalMethod::Kernel;
    throw DomainError("unknown method '" + s + "'");
}

std::string method_name(EvalMethod m) {
    switch (m) {
        case EvalMethod::LatticeContour: return "lattice-contour";
        case EvalMethod::LatticeRelation: return "lattice-relation";
        case EvalMethod::LatticeEichler: return "lattice-eichler";
        case EvalMethod::Kernel: return "kernel";
    }
    return "?";
}

Rational parse_rational(const std::string& s) {
    const auto parts = split(s, '/');
    if (parts.empty() || parts.size() > 2) throw DomainError("invalid rational: '" + s + "'");
    const long long num = parse_ll(parts[0]);
    const long long den = parts.size() == 2 ? parse_ll(parts[1]) : 1;
    if (den == 0) throw DomainError("invalid rational (zero denominator): '" + s + "'");
    return {num, den};
}

void apply_form_string(JobConfig& cfg, const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw DomainError("--form expects 'a1,a2,a3'");
    cfg.a1 = parse_ll(parts[0]);
    cfg.a2 = parse_ll(parts[1]);
    cfg.a3 = parse_ll(parts[2]);
}

void apply_alpha_string(JobConfig& cfg, const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw DomainError("--alpha expects 'p/q,r/s'");
    cfg.alpha1 = parse_rational(parts[0]);
    cfg.alpha2 = parse_rational(parts[1]);
}

JobConfig load_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    nlohmann::json j;
    in >> j;
    JobConfig cfg;
    if (j.contains("form")) apply_form_string(cfg, j["form"].get<std::string>());
    if (j.contains("alpha")) apply_alpha_string(cfg, j["alpha"].get<std::string>());
    if (j.contains("v")) cfg.v = j["v"].get<double>();
    if (j.contains("r_max")) cfg.r_max = j["r_max"].get<int>();
    if (j.contains("method")) cfg.method = parse_method(j["method"].get<std::string>());
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    if (j.contains("tol")) {
        const auto& t = j["tol"];
        cfg.tol = Tolerance(t.value("abs", 1e-10), t.value("rel", 1e-10),
                            t.value("max_evals", static_cast<long>(10'000'000)));
    }
    return cfg;
}

HRecord run_h_eval(const JobConfig& cfg) {
    const QuadraticForm Q(cfg.a1, cfg.a2, cfg.a3);
    const AlphaShift alpha(cfg.alpha1, cfg.alpha2);
    double v = cfg.v;
    if (cfg.tau) {
        if (cfg.tau->real() != 0.0)
            throw DomainError("the H pipelines evaluate at tau = iv; --tau must be '0,v'");
        v = cfg.tau->imag();
    }
    HRecord rec;
    rec.method = method_name(cfg.method);
    rec.a1 = cfg.a1;
    rec.a2 = cfg.a2;
    rec.a3 = cfg.a3;
    rec.alpha1 = cfg.alpha1;
    rec.alpha2 = cfg.alpha2;
    rec.v = v;
    if (cfg.method == EvalMethod::Kernel) {
        const QuadratureResult q = h_alpha_kernel(Q, alpha, v, cfg.tol);
        rec.value = q.value;
        rec.err_est = q.err_est;
        rec.n_evals = q.n_evals;
        rec.r_used = 0;
        rec.converged = q.converged;
        return rec;
    }
    const M2Path path = cfg.method == EvalMethod::LatticeContour    ? M2Path::Contour
                        : cfg.method == EvalMethod::LatticeRelation ? M2Path::Relation
                                                                    : M2Path::Eichler;
    const LatticeSumReport rep = h_alpha_lattice(Q, alpha, v, cfg.r_max, cfg.tol, path);
    rec.value = Complex(rep.value_extrapolated, 0.0);
    rec.err_est = rep.tail_estimate;
    rec.n_evals = rep.n_evals;
    rec.r_used = rep.r_used;
    rec.converged = rep.converged;
    return rec;
}

HRecord run_double_eichler_eval(const JobConfig& cfg) {
    const QuadraticForm Q(cfg.a1, cfg.a2, cfg.a3);
    const AlphaShift alpha(cfg.alpha1, cfg.alpha2);
    const Complex tau_c = cfg.tau ? *cfg.tau : Complex(0.0, cfg.v);
    const ModularPoint tau(tau_c);
    HRecord rec;
    rec.tau_re = tau_c.real();
    rec.method = "double-eichler";
    rec.a1 = cfg.a1;
    rec.a2 = cfg.a2;
    rec.a3 = cfg.a3;
    rec.alpha1 = cfg.alpha1;
    rec.alpha2 = cfg.alpha2;
    rec.v = tau.v();
    rec.value = double_eichler(Q, alpha, tau, cfg.tol, cfg.r_max);
    rec.err_est = cfg.tol.abs_tol;
    rec.n_evals = 0;
    rec.r_used = cfg.r_max;
    rec.converged = true;
    return rec;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::string h_csv_header() {
    return "method,a1,a2,a3,alpha1,alpha2,v,value_re,value_im,err_est,n_evals,r_used,converged";
}

std::string h_csv_row(const HRecord& r) {
    std::ostringstream os;
    os << csv_escape(r.method) << ',' << r.a1 << ',' << r.a2 << ',' << r.a3 << ','
       << csv_escape(fmt_rational(r.alpha1)) << ',' << csv_escape(fmt_rational(r.alpha2)) << ','
       << fmt_double(r.v) << ',' << fmt_double(r.value.real()) << ','
       << fmt_double(r.value.imag()) << ',' << fmt_double(r.err_est) << ',' << r.n_evals << ','
       << r.r_used << ',' << (r.converged ? "true" : "false");
    return os.str();
}

std::string h_json(const HRecord& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["method"] = r.method;
    j["form"] = {r.a1, r.a2, r.a3};
    j["alpha"] = {fmt_rational(r.alpha1), fmt_rational(r.alpha2)};
    j["v"] = r.v;
    if (r.tau_re != 0.0) j["tau_re"] = r.tau_re;
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["err_est"] = r.err_est;
    j["n_evals"] = r.n_evals;
    j["r_used"] = r.r_used;
    j["converged"] = r.converged;
    return j.dump(2);
}

ErrfnRecord run_errfn_eval(const std::string& kind, double kappa, double u1, double u2,
                           const Tolerance& tol) {
    ErrfnRecord rec;
    rec.kind = kind;
    rec.kappa = kappa;
    rec.u1 = u1;
    rec.u2 = u2;
    rec.err_est = 1e-14;
    rec.n_evals = 0;
    rec.converged = true;
    if (kind == "E") {
        rec.value = err_e(u1);
    } else if (kind == "M") {
        rec.value = err_m(u1);
    } else if (kind == "E2") {
        rec.value = err_e2(kappa, u1, u2, tol);
        rec.err_est = tol.abs_tol;
    } else if (kind == "M2") {
        rec.value = err_m2(kappa, u1, u2, tol);
        rec.err_est = tol.abs_tol;
    } else if (kind == "M2-contour") {
        rec.value = err_m2_contour(kappa, u1, u2, tol);
        rec.err_est = tol.abs_tol;
    } else {
        throw DomainError("unknown errfn kind '" + kind + "' (use E, M, E2, M2, M2-contour)");
    }
    return rec;
}

std::string errfn_csv_header() {
    return "kind,kappa,u1,u2,value_re,value_im,err_est,n_evals,converged";
}

std::string errfn_csv_row(const ErrfnRecord& r) {
    std::ostringstream os;
    os << csv_escape(r.kind) << ',' << fmt_double(r.kappa) << ',' << fmt_double(r.u1) << ','
       << fmt_double(r.u2) << ',' << fmt_double(r.value.real()) << ','
       << fmt_double(r.value.imag()) << ',' << fmt_double(r.err_est) << ',' << r.n_evals << ','
       << (r.converged ? "true" : "false");
    return os.str();
}

std::string errfn_json(const ErrfnRecord& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = r.kind;
    j["kappa"] = r.kappa;
    j["u"] = {r.u1, r.u2};
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["err_est"] = r.err_est;
    j["n_evals"] = r.n_evals;
    j["converged"] = r.converged;
    return j.dump(2);
}

}  // namespace mordell
