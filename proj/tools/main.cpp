// s3geo: geometry of homogeneous three-spheres from the command line.
//
// Subcommands cover left-invariant (Berger) metrics on S^3: curvature
// spectra, areas of the minimal two-sphere and its translates, the
// volume-normalized two-systole curve F with its critical point at the round
// metric, Monte Carlo verification of the integral-geometric averaging
// identity over the space of minimal spheres, and the sharp conformal
// systolic inequality experiment.
//
// Exit codes: 0 success, 2 bad input, 3 verification tolerance violated,
// 4 quadrature non-convergence.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "s3geo/fields.hpp"
#include "s3geo/integral_geometry.hpp"
#include "s3geo/metric.hpp"
#include "s3geo/quadrature.hpp"
#include "s3geo/rng.hpp"
#include "s3geo/surfaces.hpp"
#include "s3geo/systole.hpp"

using nlohmann::json;
using namespace s3geo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitToleranceViolated = 3;
constexpr int kExitNotConverged = 4;

std::string format_full(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct MetricChoice {
    double rho = 1.0;
    std::vector<double> lambda;

    HomogeneousMetric resolve() const {
        if (!lambda.empty()) {
            if (lambda.size() != 3)
                throw std::invalid_argument("--lambda needs exactly three values a,b,c");
            return {lambda[0], lambda[1], lambda[2]};
        }
        return berger(rho);
    }

    void describe(json& j) const {
        if (!lambda.empty())
            j["lambda"] = lambda;
        else
            j["rho"] = rho;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--rho", rho, "Berger parameter rho (metric lambda = (rho^2,1,1))");
        cmd->add_option("--lambda", lambda, "metric eigenvalues lambda1,lambda2,lambda3")
            ->delimiter(',');
    }
};

// ---------------------------------------------------------------- ricci

int run_ricci(const MetricChoice& metric, const std::string& format, const std::string& out) {
    const HomogeneousMetric m = metric.resolve();
    const RicciSpectrum r = ricci_eigenvalues(m);
    std::string content;
    if (format == "json") {
        json j;
        j["schema_version"] = 1;
        j["command"] = "ricci";
        metric.describe(j);
        j["eigenvalues"] = {r.r1, r.r2, r.r3};
        j["scalar_curvature"] = r.scalar();
        j["positive_ricci"] = r.positive();
        content = dump(j);
    } else {
        char buffer[256];
        std::snprintf(buffer, sizeof(buffer),
                      "ricci eigenvalues: %.12g %.12g %.12g\nscalar curvature: %.12g\n%s\n", r.r1,
                      r.r2, r.r3, r.scalar(), r.positive() ? "positive Ricci" : "not positive Ricci");
        content = buffer;
    }
    write_output(out, content);
    return kExitOk;
}

// ----------------------------------------------------------------- area

int run_area(const MetricChoice& metric, int ns, int ntheta, double tol,
             const std::string& factor_spec, const std::string& out) {
    const HomogeneousMetric m = metric.resolve();
    ConformalFactor factor;
    const bool weighted = !factor_spec.empty();
    if (weighted) factor = parse_conformal_factor(factor_spec);

    const ParametrizedSphere s0 = ParametrizedSphere::sigma0();
    const AreaRefinement refinement =
        area_refined(s0, m, SurfaceGrid{ns, ntheta}, tol, weighted ? &factor : nullptr);

    json j;
    j["schema_version"] = 1;
    j["command"] = "area";
    metric.describe(j);
    j["ns"] = ns;
    j["ntheta"] = ntheta;
    j["tol"] = tol;
    if (weighted) j["factor"] = factor.name;
    j["area"] = refinement.value;
    j["area_coarse"] = refinement.coarse_value;
    j["refinement_delta"] = refinement.relative_delta;
    j["converged"] = refinement.converged;
    if (m.is_berger() && !weighted) {
        const double rho = std::sqrt(m.lambda1());
        j["area_1d"] = berger_minimal_area(rho, 1e-12);
        j["two_systole_rp3"] = two_systole_rp3(rho, 1e-12);
    }
    write_output(out, dump(j));
    return refinement.converged ? kExitOk : kExitNotConverged;
}

// -------------------------------------------------------- systole-curve

std::string curve_csv(const std::vector<SystoleCurvePoint>& points) {
    std::string csv = "rho,area_sigma0,volume,F,normalized_systole\n";
    for (const auto& pt : points) {
        csv += format_full(pt.rho) + "," + format_full(pt.area_sigma0) + "," +
               format_full(pt.volume) + "," + format_full(pt.F) + "," +
               format_full(pt.normalized_systole) + "\n";
    }
    return csv;
}

std::string curve_svg(const std::vector<SystoleCurvePoint>& points, bool log_x) {
    const double width = 800.0, height = 500.0, margin = 60.0;
    double x_min = points.front().rho, x_max = points.back().rho;
    if (log_x) {
        x_min = std::log10(x_min);
        x_max = std::log10(x_max);
    }
    double y_min = points.front().normalized_systole, y_max = y_min;
    for (const auto& pt : points) {
        y_min = std::min(y_min, pt.normalized_systole);
        y_max = std::max(y_max, pt.normalized_systole);
    }
    if (y_max == y_min) y_max = y_min + 1.0;
    const auto x_of = [&](double rho) {
        const double t = log_x ? std::log10(rho) : rho;
        return margin + (t - x_min) / (x_max - x_min) * (width - 2 * margin);
    };
    const auto y_of = [&](double v) {
        return height - margin - (v - y_min) / (y_max - y_min) * (height - 2 * margin);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "  <line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                  "  <line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                  margin, height - margin, width - margin, height - margin, margin, margin, margin,
                  height - margin);
    svg += buffer;
    svg += "  <path fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buffer, sizeof(buffer), "%s%.3f %.3f", i == 0 ? "M" : " L",
                      x_of(points[i].rho), y_of(points[i].normalized_systole));
        svg += buffer;
    }
    svg += "\"/>\n";
    std::snprintf(buffer, sizeof(buffer),
                  "  <text x=\"%g\" y=\"%g\" font-size=\"12\">rho = %.6g</text>\n", margin,
                  height - margin + 20.0, points.front().rho);
    svg += buffer;
    std::snprintf(buffer, sizeof(buffer),
                  "  <text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"end\">rho = %.6g</text>\n",
                  width - margin, height - margin + 20.0, points.back().rho);
    svg += buffer;
    std::snprintf(buffer, sizeof(buffer),
                  "  <text x=\"%g\" y=\"%g\" font-size=\"12\">normalized two-systole in [%.6g, %.6g]</text>\n",
                  margin, margin - 10.0, y_min, y_max);
    svg += buffer;
    svg += "</svg>\n";
    return svg;
}

int run_systole_curve(double min, double max, int n_points, const std::string& spacing,
                      double tol, const std::string& format, const std::string& out) {
    if (spacing != "linear" && spacing != "log")
        throw std::invalid_argument("--spacing must be 'linear' or 'log'");
    const auto points = systole_curve(min, max, n_points,
                                      spacing == "log" ? Spacing::logarithmic : Spacing::linear,
                                      tol);
    bool all_converged = true;
    for (const auto& pt : points) all_converged = all_converged && pt.converged;

    std::string content;
    if (format == "csv") {
        content = curve_csv(points);
    } else if (format == "svg") {
        content = curve_svg(points, spacing == "log");
    } else if (format == "json") {
        json rows = json::array();
        for (const auto& pt : points)
            rows.push_back({{"rho", pt.rho},
                            {"area_sigma0", pt.area_sigma0},
                            {"volume", pt.volume},
                            {"F", pt.F},
                            {"normalized_systole", pt.normalized_systole},
                            {"converged", pt.converged}});
        json j;
        j["schema_version"] = 1;
        j["command"] = "systole-curve";
        j["spacing"] = spacing;
        j["tol"] = tol;
        j["points"] = rows;
        content = dump(j);
    } else {
        throw std::invalid_argument("--format must be csv, json or svg");
    }
    write_output(out, content);
    if (!all_converged) {
        std::cerr << "systole-curve: some points did not reach the quadrature tolerance\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

// ------------------------------------------------------- verify-formula

json report_json(const MonteCarloReport& r) {
    return json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"rel_error", r.rel_error},
                {"std_error", r.std_error},
                {"lhs_std_error", r.lhs_std_error},
                {"rhs_std_error", r.rhs_std_error},
                {"n", r.n},
                {"seed", r.seed}};
}

int run_verify_formula(const MetricChoice& metric, const std::string& field_spec,
                       std::uint64_t n, std::uint64_t seed, int ns, int ntheta, double tol,
                       const std::string& out) {
    const HomogeneousMetric m = metric.resolve();
    const ScalarField f = parse_scalar_field(field_spec);
    const MonteCarloReport r = verify_averaging_formula(m, f, ParametrizedSphere::sigma0(), n,
                                                        SurfaceGrid{ns, ntheta}, seed);
    const bool pass_sigma = r.within_sigma(3.0);
    const bool pass_tol = (tol <= 0.0) || (r.rel_error <= tol);

    json j;
    j["schema_version"] = 1;
    j["command"] = "verify-formula";
    metric.describe(j);
    j["field"] = f.name;
    j["ns"] = ns;
    j["ntheta"] = ntheta;
    j["report"] = report_json(r);
    j["pass_3sigma"] = pass_sigma;
    if (tol > 0.0) j["tol"] = tol;
    j["pass"] = pass_sigma && pass_tol;
    write_output(out, dump(j));
    return (pass_sigma && pass_tol) ? kExitOk : kExitToleranceViolated;
}

// -------------------------------------------------------- unimodularity

int run_unimodularity(const MetricChoice& metric, const std::string& field_spec, std::uint64_t n,
                      std::uint64_t seed, const std::string& out) {
    const HomogeneousMetric m = metric.resolve();
    const ScalarField f = parse_scalar_field(field_spec);
    const UnitQuaternion q = haar_sample_at(mix_seed(seed, 0x71CE), 0);
    const MonteCarloReport r = verify_unimodularity(m, f, q, n, seed);
    const bool pass = r.within_sigma(3.0);

    json j;
    j["schema_version"] = 1;
    j["command"] = "unimodularity";
    metric.describe(j);
    j["field"] = f.name;
    j["q"] = {q.coord(0), q.coord(1), q.coord(2), q.coord(3)};
    j["report"] = report_json(r);
    j["pass_3sigma"] = pass;
    write_output(out, dump(j));
    return pass ? kExitOk : kExitToleranceViolated;
}

// ------------------------------------------------------ stabilizer-test

int run_stabilizer_test(int ns, int ntheta, std::uint64_t n, std::uint64_t seed,
                        const std::string& out) {
    const SurfaceGrid grid{ns, ntheta};
    const ParametrizedSphere s0 = ParametrizedSphere::sigma0();
    const double mesh = sphere_distance_mesh(grid);

    const double antipodal_distance =
        sphere_set_distance(s0, translate_sphere(UnitQuaternion::minus_identity(), s0), grid);

    double min_random = std::numeric_limits<double>::infinity();
    std::uint64_t kept = 0;
    std::uint64_t index = 0;
    while (kept < n) {
        const UnitQuaternion a = haar_sample_at(seed, index++);
        if (std::min(a.distance_to(UnitQuaternion::identity()),
                     a.distance_to(UnitQuaternion::minus_identity())) < 0.2)
            continue;
        ++kept;
        min_random = std::min(min_random, sphere_set_distance(s0, translate_sphere(a, s0), grid));
    }

    const bool pass = antipodal_distance < mesh && min_random > mesh;
    json j;
    j["schema_version"] = 1;
    j["command"] = "stabilizer-test";
    j["ns"] = ns;
    j["ntheta"] = ntheta;
    j["n"] = n;
    j["seed"] = seed;
    j["mesh"] = mesh;
    j["antipodal_distance"] = antipodal_distance;
    j["min_noncentral_distance"] = min_random;
    j["pass"] = pass;
    write_output(out, dump(j));
    return pass ? kExitOk : kExitToleranceViolated;
}

// ------------------------------------------------------- conformal-demo

int run_conformal_demo(const MetricChoice& metric, const std::string& factor_spec,
                       std::uint64_t n, std::uint64_t seed, int ns, int ntheta, double tol,
                       const std::string& out) {
    const HomogeneousMetric m = metric.resolve();
    const ConformalFactor phi = parse_conformal_factor(factor_spec);
    const ConformalExperimentReport r = conformal_experiment(
        m, phi, ConformalSearchConfig{n, n, true}, SurfaceGrid{ns, ntheta}, tol, seed);

    const double stat_tol = 2.0 * r.conformal_volume_std_error / r.conformal_volume + tol;
    const bool pass = r.ratio <= 1.0 + 3.0 * stat_tol;

    json j;
    j["schema_version"] = 1;
    j["command"] = "conformal-demo";
    metric.describe(j);
    j["factor"] = phi.name;
    j["n"] = n;
    j["seed"] = seed;
    j["ns"] = ns;
    j["ntheta"] = ntheta;
    j["tol"] = tol;
    j["min_area"] = r.min_area;
    j["reference_area"] = r.reference_area;
    j["conformal_volume"] = r.conformal_volume;
    j["conformal_volume_std_error"] = r.conformal_volume_std_error;
    j["bound"] = r.bound;
    j["ratio"] = r.ratio;
    j["equality"] = r.equality;
    j["optimizer_converged"] = r.optimizer_converged;
    j["best_translation"] = {r.best_translation.coord(0), r.best_translation.coord(1),
                             r.best_translation.coord(2), r.best_translation.coord(3)};
    j["pass"] = pass;
    write_output(out, dump(j));
    return pass ? kExitOk : kExitToleranceViolated;
}

// ---------------------------------------------------------- derivatives

int run_derivatives(double h, int levels, const std::string& format, const std::string& out) {
    const FDerivatives d = F_derivatives_at_one(h, levels);
    const double expected_second = 32.0 / 45.0;
    const bool pass = std::abs(d.first) < 1e-6 && std::abs(d.second - expected_second) < 1e-4;
    // the value of the normalized systole at the minimum, exact and numeric
    const double minimum_value = berger_F(1.0, 1e-13) / std::cbrt(std::numbers::pi);
    const double minimum_exact = 2.0 / std::cbrt(std::numbers::pi);

    std::string content;
    if (format == "json") {
        json j;
        j["schema_version"] = 1;
        j["command"] = "derivatives";
        j["h"] = h;
        j["richardson_levels"] = levels;
        j["F_prime_at_1"] = d.first;
        j["F_prime_error"] = d.first_error;
        j["F_second_at_1"] = d.second;
        j["F_second_error"] = d.second_error;
        j["expected_second"] = "32/45";
        j["expected_second_value"] = expected_second;
        j["normalized_minimum"] = "2/cbrt(pi)";
        j["normalized_minimum_value"] = minimum_exact;
        j["normalized_minimum_quadrature"] = minimum_value;
        j["pass"] = pass;
        content = dump(j);
    } else {
        char buffer[640];
        std::snprintf(buffer, sizeof(buffer),
                      "F'(1)  = %.6e  (error estimate %.1e, expected 0)\n"
                      "F''(1) = %.12g (error estimate %.1e, expected 32/45 = %.12g)\n"
                      "normalized two-systole at the minimum: 2/cbrt(pi) = %.12g (quadrature %.12g)\n"
                      "%s\n",
                      d.first, d.first_error, d.second, d.second_error, expected_second,
                      minimum_exact, minimum_value,
                      pass ? "PASS: strict local minimum at the round metric" : "FAIL");
        content = buffer;
    }
    write_output(out, content);
    return pass ? kExitOk : kExitToleranceViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "s3geo: left-invariant metrics on the three-sphere, minimal-sphere areas,\n"
        "the averaging identity over the space of minimal spheres, and the Berger\n"
        "two-systole curve"};
    app.require_subcommand(1);

    // Each subcommand owns its option storage; options are shared nowhere.
    struct RicciOpts {
        MetricChoice metric;
        std::string format = "text", out;
    } ricci_opts;
    auto* ricci = app.add_subcommand(
        "ricci", "Ricci eigenvalues, scalar curvature and the positivity verdict of a "
                 "left-invariant metric");
    ricci_opts.metric.attach(ricci);
    ricci->add_option("--format", ricci_opts.format, "text or json")->capture_default_str();
    ricci->add_option("--out", ricci_opts.out, "output file (default stdout)");

    struct AreaOpts {
        MetricChoice metric;
        int ns = 64, ntheta = 64;
        double tol = 1e-8;
        std::string factor, out;
    } area_opts;
    auto* area_cmd = app.add_subcommand(
        "area", "area of the minimal two-sphere Sigma_0 by pullback quadrature, with a "
                "grid-doubling convergence check");
    area_opts.metric.attach(area_cmd);
    area_cmd->add_option("--ns", area_opts.ns, "Gauss-Legendre nodes in s")->capture_default_str();
    area_cmd->add_option("--ntheta", area_opts.ntheta, "trapezoid nodes in theta")
        ->capture_default_str();
    area_cmd->add_option("--tol", area_opts.tol, "relative convergence tolerance")
        ->capture_default_str();
    area_cmd->add_option("--factor", area_opts.factor,
                         "optional conformal weight (constant:<c>, quad:<eta>, exp:<a>)");
    area_cmd->add_option("--out", area_opts.out, "output file (default stdout)");

    struct CurveOpts {
        double min = 0.1, max = 10.0;
        int points = 100;
        std::string spacing = "log";
        double tol = 1e-10;
        std::string format = "csv", out;
    } curve_opts;
    auto* curve = app.add_subcommand(
        "systole-curve", "the normalized two-systole curve F over a range of Berger parameters");
    curve->add_option("--min", curve_opts.min, "smallest rho")->capture_default_str();
    curve->add_option("--max", curve_opts.max, "largest rho")->capture_default_str();
    curve->add_option("--points", curve_opts.points, "number of grid points")
        ->capture_default_str();
    curve->add_option("--spacing", curve_opts.spacing, "linear or log")->capture_default_str();
    curve->add_option("--tol", curve_opts.tol, "quadrature tolerance per point")
        ->capture_default_str();
    curve->add_option("--format", curve_opts.format, "csv, json or svg")->capture_default_str();
    curve->add_option("--out", curve_opts.out, "output file (default stdout)");

    struct VerifyOpts {
        MetricChoice metric;
        std::string field = "bump:1";
        std::uint64_t n = 10000, seed = 1;
        int ns = 16, ntheta = 16;
        double tol = 0.0;
        std::string out;
    } verify_opts;
    auto* verify = app.add_subcommand(
        "verify-formula",
        "Monte Carlo check of the averaging identity: the mean over translated minimal "
        "spheres of the surface average of f equals the volume integral of f");
    verify_opts.metric.attach(verify);
    verify->add_option("--field", verify_opts.field,
                       "scalar field (one, constant:<c>, coord:<i>, sq:<i>, prod:<i>,<j>, "
                       "bump[:<k>])")
        ->capture_default_str();
    verify->add_option("--n", verify_opts.n, "translation samples per side")
        ->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "random seed")->capture_default_str();
    verify->add_option("--ns", verify_opts.ns, "surface quadrature nodes in s")
        ->capture_default_str();
    verify->add_option("--ntheta", verify_opts.ntheta, "surface quadrature nodes in theta")
        ->capture_default_str();
    verify->add_option("--tol", verify_opts.tol,
                       "optional relative-error bound (checked on top of 3 sigma)");
    verify->add_option("--out", verify_opts.out, "output file (default stdout)");

    struct UnimodOpts {
        MetricChoice metric;
        std::string field = "bump:1";
        std::uint64_t n = 20000, seed = 1;
        std::string out;
    } unimod_opts;
    auto* unimod = app.add_subcommand(
        "unimodularity", "Monte Carlo check that the volume form is right-translation invariant");
    unimod_opts.metric.attach(unimod);
    unimod->add_option("--field", unimod_opts.field, "scalar field")->capture_default_str();
    unimod->add_option("--n", unimod_opts.n, "samples per side")->capture_default_str();
    unimod->add_option("--seed", unimod_opts.seed, "random seed")->capture_default_str();
    unimod->add_option("--out", unimod_opts.out, "output file (default stdout)");

    struct StabOpts {
        int ns = 64, ntheta = 64;
        std::uint64_t n = 20, seed = 1;
        std::string out;
    } stab_opts;
    auto* stab = app.add_subcommand(
        "stabilizer-test",
        "set distances between Sigma_0 and its translates: the antipodal translate "
        "coincides with Sigma_0, every other tested translate moves it");
    stab->add_option("--ns", stab_opts.ns, "sample rows")->capture_default_str();
    stab->add_option("--ntheta", stab_opts.ntheta, "sample columns")->capture_default_str();
    stab->add_option("--n", stab_opts.n, "number of non-central random translates")
        ->capture_default_str();
    stab->add_option("--seed", stab_opts.seed, "random seed")->capture_default_str();
    stab->add_option("--out", stab_opts.out, "output file (default stdout)");

    struct ConformalOpts {
        MetricChoice metric;
        std::string factor = "quad:0.5";
        std::uint64_t n = 10000, seed = 1;
        int ns = 32, ntheta = 32;
        double tol = 1e-6;
        std::string out;
    } conformal_opts;
    auto* conformal = app.add_subcommand(
        "conformal-demo",
        "conformal systolic inequality on a Berger base: the smallest translate area under "
        "phi*g against the Hoelder bound; equality iff phi is constant");
    conformal_opts.metric.attach(conformal);
    conformal->add_option("--factor", conformal_opts.factor,
                          "conformal factor (constant:<c>, quad:<eta>, exp:<a>)")
        ->capture_default_str();
    conformal->add_option("--n", conformal_opts.n, "translation and volume sample count")
        ->capture_default_str();
    conformal->add_option("--seed", conformal_opts.seed, "random seed")->capture_default_str();
    conformal->add_option("--ns", conformal_opts.ns, "surface quadrature nodes in s")
        ->capture_default_str();
    conformal->add_option("--ntheta", conformal_opts.ntheta, "surface quadrature nodes in theta")
        ->capture_default_str();
    conformal->add_option("--tol", conformal_opts.tol, "equality detection tolerance")
        ->capture_default_str();
    conformal->add_option("--out", conformal_opts.out, "output file (default stdout)");

    struct DerivOpts {
        double step = 1e-2;
        int levels = 4;
        std::string format = "text", out;
    } deriv_opts;
    auto* derivatives = app.add_subcommand(
        "derivatives", "F'(1) and F''(1) of the systole curve by Richardson-extrapolated central "
                       "differences; the round metric is a strict local minimum");
    derivatives->add_option("--step", deriv_opts.step, "base step for the central differences")
        ->capture_default_str();
    derivatives->add_option("--levels", deriv_opts.levels, "Richardson levels")
        ->capture_default_str();
    derivatives->add_option("--format", deriv_opts.format, "text or json")->capture_default_str();
    derivatives->add_option("--out", deriv_opts.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (ricci->parsed()) return run_ricci(ricci_opts.metric, ricci_opts.format, ricci_opts.out);
        if (area_cmd->parsed())
            return run_area(area_opts.metric, area_opts.ns, area_opts.ntheta, area_opts.tol,
                            area_opts.factor, area_opts.out);
        if (curve->parsed())
            return run_systole_curve(curve_opts.min, curve_opts.max, curve_opts.points,
                                     curve_opts.spacing, curve_opts.tol, curve_opts.format,
                                     curve_opts.out);
        if (verify->parsed())
            return run_verify_formula(verify_opts.metric, verify_opts.field, verify_opts.n,
                                      verify_opts.seed, verify_opts.ns, verify_opts.ntheta,
                                      verify_opts.tol, verify_opts.out);
        if (unimod->parsed())
            return run_unimodularity(unimod_opts.metric, unimod_opts.field, unimod_opts.n,
                                     unimod_opts.seed, unimod_opts.out);
        if (stab->parsed())
            return run_stabilizer_test(stab_opts.ns, stab_opts.ntheta, stab_opts.n,
                                       stab_opts.seed, stab_opts.out);
        if (conformal->parsed())
            return run_conformal_demo(conformal_opts.metric, conformal_opts.factor,
                                      conformal_opts.n, conformal_opts.seed, conformal_opts.ns,
                                      conformal_opts.ntheta, conformal_opts.tol,
                                      conformal_opts.out);
        if (derivatives->parsed())
            return run_derivatives(deriv_opts.step, deriv_opts.levels, deriv_opts.format,
                                   deriv_opts.out);
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
