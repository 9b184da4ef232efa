#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(S3GEO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("ricci: text values and exit codes") {
    const RunResult round = run_cli("ricci --rho 1");
    CHECK(round.exit_code == 0);
    CHECK(round.output.find("2 2 2") != std::string::npos);
    CHECK(round.output.find("scalar curvature: 6") != std::string::npos);

    const RunResult squashed = run_cli("ricci --rho 1.2 --format json");
    CHECK(squashed.exit_code == 0);
    const json j = json::parse(squashed.output);
    CHECK(j["schema_version"] == 1);
    CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(2.88));
    CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(1.12));
    CHECK(j["positive_ricci"] == true);

    const RunResult wide = run_cli("ricci --rho 2 --format json");
    const json jw = json::parse(wide.output);
    CHECK(jw["eigenvalues"][0].get<double>() == doctest::Approx(8.0));
    CHECK(jw["eigenvalues"][1].get<double>() == doctest::Approx(-4.0));
    CHECK(jw["positive_ricci"] == false);

    const RunResult diagonal = run_cli("ricci --lambda 1,2,3 --format json");
    CHECK(diagonal.exit_code == 0);
    const json jd = json::parse(diagonal.output);
    CHECK(jd["lambda"] == json({1.0, 2.0, 3.0}));
    CHECK(jd["scalar_curvature"].get<double>() ==
          doctest::Approx(jd["eigenvalues"][0].get<double>() +
                          jd["eigenvalues"][1].get<double>() +
                          jd["eigenvalues"][2].get<double>()));

    CHECK(run_cli("ricci --rho -1").exit_code == 2);
    CHECK(run_cli("ricci --lambda 1,0,1").exit_code == 2);
    CHECK(run_cli("ricci --lambda 1,2").exit_code == 2);
    CHECK(run_cli("ricci --frobnicate").exit_code == 2);
}

TEST_CASE("area: values, berger cross-check, convergence gate") {
    const RunResult r = run_cli("area --rho 2 --ns 48 --ntheta 48");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["converged"] == true);
    CHECK(j["area"].get<double>() == doctest::Approx(j["area_1d"].get<double>()).epsilon(1e-9));
    CHECK(j["two_systole_rp3"].get<double>() ==
          doctest::Approx(0.5 * j["area_1d"].get<double>()).epsilon(1e-12));

    // an unreachable tolerance must surface as exit code 4
    CHECK(run_cli("area --rho 2 --tol 1e-30").exit_code == 4);
}

TEST_CASE("systole-curve: csv contract") {
    const RunResult r = run_cli("systole-curve --min 0.5 --max 2 --points 11 --spacing log");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "rho,area_sigma0,volume,F,normalized_systole");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 11);
    CHECK(r.output.find("\r") == std::string::npos);

    const RunResult svg = run_cli("systole-curve --min 0.5 --max 2 --points 11 --format svg");
    CHECK(svg.exit_code == 0);
    CHECK(svg.output.rfind("<svg", 0) == 0);
    CHECK(svg.output.find("<path") != std::string::npos);

    CHECK(run_cli("systole-curve --min -1 --max 2 --points 5").exit_code == 2);
    CHECK(run_cli("systole-curve --min 1 --max 2 --points 5 --spacing cubic").exit_code == 2);
}

TEST_CASE("verify-formula: json report and pass flag") {
    const RunResult r =
        run_cli("verify-formula --rho 2 --field bump --n 2000 --seed 7 --ns 12 --ntheta 12");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["schema_version"] == 1);
    CHECK(j["field"] == "bump:1.000000");
    CHECK(j["report"]["seed"] == 7);
    CHECK(j["pass_3sigma"] == true);
    CHECK(j["report"]["rel_error"].get<double>() < 0.2);
    CHECK(run_cli("verify-formula --rho 2 --field nope --n 2000").exit_code == 2);

    // an explicit tolerance far below the statistical floor must fail with 3
    CHECK(run_cli("verify-formula --rho 2 --field bump --n 2000 --seed 7 --ns 12 --ntheta 12 "
                  "--tol 1e-9")
              .exit_code == 3);
}

TEST_CASE("unimodularity: json report") {
    const RunResult r = run_cli("unimodularity --rho 0.8 --field bump:3 --n 5000 --seed 3");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["pass_3sigma"] == true);
    CHECK(j["q"].size() == 4);
}

TEST_CASE("stabilizer-test: antipodal collapse, translates separate") {
    const RunResult r = run_cli("stabilizer-test --ns 48 --ntheta 48 --n 5 --seed 11");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["pass"] == true);
    CHECK(j["antipodal_distance"].get<double>() < j["mesh"].get<double>());
    CHECK(j["min_noncentral_distance"].get<double>() > j["mesh"].get<double>());
}

TEST_CASE("conformal-demo: equality for constants, gap for the frozen factor") {
    const RunResult constant = run_cli("conformal-demo --rho 1 --factor constant:3.5 --n 200 --seed 5");
    CHECK(constant.exit_code == 0);
    const json jc = json::parse(constant.output);
    CHECK(jc["equality"] == true);
    CHECK(jc["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));

    const RunResult quad = run_cli("conformal-demo --rho 1 --factor quad:0.5 --n 2000 --seed 5");
    CHECK(quad.exit_code == 0);
    const json jq = json::parse(quad.output);
    CHECK(jq["equality"] == false);
    CHECK(jq["ratio"].get<double>() < 0.95);
    CHECK(run_cli("conformal-demo --rho 1 --factor quad:-2 --n 100").exit_code == 2);
}

TEST_CASE("derivatives: critical point report") {
    const RunResult r = run_cli("derivatives --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j["F_prime_at_1"].get<double>()) < 1e-6);
    CHECK(j["F_second_at_1"].get<double>() == doctest::Approx(32.0 / 45.0).epsilon(1e-4));
    CHECK(j["pass"] == true);
}

TEST_CASE("determinism: equal seeds give byte-identical json files") {
    const std::string out1 = "/tmp/s3geo_cli_det_1.json";
    const std::string out2 = "/tmp/s3geo_cli_det_2.json";
    const std::string args =
        "verify-formula --rho 0.5 --field bump --n 1500 --seed 99 --ns 12 --ntheta 12 --out ";
    CHECK(run_cli(args + out1).exit_code == 0);
    CHECK(run_cli(args + out2).exit_code == 0);
    const std::string a = read_file(out1);
    const std::string b = read_file(out2);
    CHECK(!a.empty());
    CHECK(a == b);

    // a different seed must change the stochastic content
    CHECK(run_cli("verify-formula --rho 0.5 --field bump --n 1500 --seed 100 --ns 12 --ntheta 12 --out " +
                  out2)
              .exit_code == 0);
    CHECK(a != read_file(out2));
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}
