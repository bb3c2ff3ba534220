// Black-box tests of the command-line surface: exit codes, CSV schema,
// determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "mordell/errfns.hpp"
#include "mordell/job.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MORDELL_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("eval H kernel: one CSV row, exit 0, stable header") {
    const RunResult r = run_cli("eval H --form 1,1,1 --alpha 1/3,1/3 --v 1 --method kernel");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] ==
          "method,a1,a2,a3,alpha1,alpha2,v,value_re,value_im,err_est,n_evals,r_used,converged");
    const auto f = csv_fields(ls[1]);
    REQUIRE(f.size() == 13);
    CHECK(f[0] == "kernel");
    CHECK(f[4] == "1/3");
    CHECK(std::stod(f[7]) == doctest::Approx(0.3849).epsilon(1e-3));
    CHECK(f[12] == "true");
}

TEST_CASE("eval errfn M2 row matches the library call") {
    const RunResult r = run_cli("eval errfn --kind M2 --kappa 1 --u 1,1");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "kind,kappa,u1,u2,value_re,value_im,err_est,n_evals,converged");
    const auto f = csv_fields(ls[1]);
    const mordell::Tolerance tol(1e-10, 1e-10, 10'000'000);
    const double lib = mordell::err_m2(1.0, 1.0, 1.0, tol);
    CHECK(std::stod(f[4]) == doctest::Approx(lib).epsilon(1e-10));
}

TEST_CASE("non positive definite form: exit 2 with message") {
    const RunResult r = run_cli("eval H --form 1,3,1 --alpha 1/3,1/3 --v 1 --method kernel");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("form not positive definite") != std::string::npos);
}

TEST_CASE("verify onedim with absurd tol-scale fails with exit 1") {
    // identity residuals sit at ~1e-14, so forcing a failure needs a much
    // harder squeeze than the nominal tolerances
    const RunResult r = run_cli("verify --suite onedim --tol-scale 1e-12");
    CHECK(r.exit_code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["pass"] == false);
}

TEST_CASE("verify errfns passes and reports JSON") {
    const RunResult r = run_cli("verify --suite errfns");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["suite"] == "errfns");
    CHECK(j["checks"].size() >= 32);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("sweep v: deterministic grid rows") {
    const std::string cmd =
        "sweep --param v --range 0.5,2 --steps 4 --form 1,1,1 --alpha 1/3,1/3 --method kernel";
    const RunResult r1 = run_cli(cmd);
    CHECK(r1.exit_code == 0);
    const auto ls = lines_of(r1.out);
    REQUIRE(ls.size() == 5);  // header + 4 rows
    CHECK(csv_fields(ls[1])[6] == "0.5");
    CHECK(csv_fields(ls[4])[6] == "2");

    const RunResult r2 = run_cli(cmd);
    CHECK(r1.out == r2.out);  // byte-identical
}

TEST_CASE("sweep r: lattice increments shrink") {
    const RunResult r = run_cli(
        "sweep --param r --range 1,4 --form 1,1,1 --alpha 1/3,1/3 --v 1 "
        "--method lattice-relation --tol 1e-8");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 5);
    std::vector<double> vals;
    for (size_t i = 1; i < ls.size(); ++i) vals.push_back(std::stod(csv_fields(ls[i])[7]));
    // successive r_max agree better and better with the limit; the raw jumps
    // between consecutive extrapolated values shrink
    CHECK(std::abs(vals[3] - vals[2]) < std::abs(vals[1] - vals[0]));
}

TEST_CASE("sweep alpha1 over explicit rational values") {
    const RunResult r = run_cli(
        "sweep --param alpha1 --values 1/8,1/16,1/32 --form 2,1,3 --alpha 0,1/2 --v 0.5 "
        "--method kernel");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(csv_fields(ls[1])[4] == "1/8");
    CHECK(csv_fields(ls[3])[4] == "1/32");
}

TEST_CASE("json output parses and carries the record") {
    const RunResult r =
        run_cli("eval H --form 1,0,1 --alpha 1/2,1/2 --v 1 --method lattice-eichler --r-max 4 "
                "--out json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["method"] == "lattice-eichler");
    CHECK(j["r_used"] == 4);
    // H vanishes for this configuration; r_max = 4 extrapolation gets within a few e-3
    CHECK(std::abs(j["value_re"].get<double>()) < 5e-3);
}

TEST_CASE("config file with flag override") {
    const std::string path = "/tmp/mordell_test_config.json";
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("{\"form\":\"1,1,1\",\"alpha\":\"1/3,1/3\",\"v\":1.0,\"method\":\"kernel\"}", f);
    fclose(f);
    const RunResult base = run_cli("eval H --config " + path);
    CHECK(base.exit_code == 0);
    CHECK(lines_of(base.out).size() == 2);
    // flag overrides the file
    const RunResult ov = run_cli("eval H --config " + path + " --v 2");
    const auto flds = csv_fields(lines_of(ov.out)[1]);
    CHECK(flds[6] == "2");
}

TEST_CASE("unknown method: exit 2") {
    const RunResult r = run_cli("eval H --form 1,1,1 --alpha 1/3,1/3 --method bogus");
    CHECK(r.exit_code == 2);
}
