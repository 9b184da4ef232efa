#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3geo {

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n; accurate to ~1e-15 for n up to several
/// hundred.
GaussLegendreRule gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
/// Stops when the accumulated error estimate drops below
/// max(abs_tol, rel_tol * |value|).
AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-12,
                                  int max_intervals = 4000);

/// As adaptive_integrate, but throws QuadratureError instead of returning a
/// non-converged result.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12);

/// Summation with pairwise splitting; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> values);

struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and its standard error (sd / sqrt(n)).
MeanStdError mean_and_std_error(std::span<const double> values);

struct DerivativeEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Richardson-extrapolated central differences. order = 1 gives f'(x),
/// order = 2 gives f''(x); both base stencils have even error series, so each
/// extrapolation level gains two orders.
DerivativeEstimate richardson_derivative(const std::function<double(double)>& f, double x,
                                         double h, int levels, int order);

}  // namespace s3geo
