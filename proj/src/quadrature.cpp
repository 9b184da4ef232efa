#include "s3geo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace s3geo {

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P'_n(x)
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(k)] = x;
        rule.weights[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

namespace {

// QUADPACK dqk15 nodes and weights.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469};

struct Segment {
    double a, b;
    double integral;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - hl * kKronrodNodes[i]);
        fv[14 - i] = f(c + hl * kKronrodNodes[i]);
    }
    fv[7] = f(c);

    double kronrod = kKronrodWeights[7] * fv[7];
    double gauss = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod *= hl;
    gauss *= hl;

    // QUADPACK-style scaled error estimate
    const double center_value = kronrod / (b - a);
    double resasc = kKronrodWeights[7] * std::abs(fv[7] - center_value);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] *
                  (std::abs(fv[i] - center_value) + std::abs(fv[14 - i] - center_value));
    resasc *= std::abs(hl);

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    return Segment{a, b, kronrod, err};
}

}  // namespace

AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_intervals) {
    AdaptiveResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::priority_queue<Segment> queue;
    queue.push(evaluate_segment(f, a, b));
    result.evaluations = 15;

    double total = queue.top().integral;
    double total_err = queue.top().error;
    int intervals = 1;

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && intervals < max_intervals) {
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            queue.push(worst);
            break;
        }
        Segment left = evaluate_segment(f, worst.a, mid);
        Segment right = evaluate_segment(f, mid, worst.b);
        result.evaluations += 30;
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }

    // Re-accumulate from the queue for a cleaner global sum.
    std::vector<double> parts;
    std::vector<double> errs;
    parts.reserve(static_cast<std::size_t>(intervals));
    while (!queue.empty()) {
        parts.push_back(queue.top().integral);
        errs.push_back(queue.top().error);
        queue.pop();
    }
    result.value = pairwise_sum(parts);
    result.error_estimate = pairwise_sum(errs);
    result.converged =
        result.error_estimate <= std::max(abs_tol, rel_tol * std::abs(result.value));
    return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
    const AdaptiveResult r = adaptive_integrate(f, a, b, abs_tol, rel_tol);
    if (!r.converged)
        throw QuadratureError("adaptive quadrature failed to reach tolerance (error estimate " +
                              std::to_string(r.error_estimate) + ")");
    return r.value;
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 32) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanStdError mean_and_std_error(std::span<const double> values) {
    MeanStdError r;
    const std::size_t n = values.size();
    if (n == 0) return r;
    r.mean = pairwise_sum(values) / static_cast<double>(n);
    if (n == 1) return r;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - r.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    r.std_error = std::sqrt(var / static_cast<double>(n));
    return r;
}

DerivativeEstimate richardson_derivative(const std::function<double(double)>& f, double x,
                                         double h, int levels, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("richardson_derivative: order must be 1 or 2");
    if (!(h > 0.0)) throw std::invalid_argument("richardson_derivative: h must be positive");
    if (levels < 1) levels = 1;

    const double fx = (order == 2) ? f(x) : 0.0;
    auto stencil = [&](double step) {
        if (order == 1) return (f(x + step) - f(x - step)) / (2.0 * step);
        return (f(x + step) - 2.0 * fx + f(x - step)) / (step * step);
    };

    // T[i][j]: step h/2^i extrapolated j times (error series in h^2)
    std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
    double step = h;
    for (int i = 0; i < levels; ++i, step *= 0.5) {
        table[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
        table[static_cast<std::size_t>(i)][0] = stencil(step);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            table[ui][uj] = (factor * table[ui][uj - 1] - table[ui - 1][uj - 1]) / (factor - 1.0);
        }
    }

    DerivativeEstimate est;
    const auto last = static_cast<std::size_t>(levels - 1);
    est.value = table[last][last];
    est.error_estimate = (levels >= 2)
                             ? std::abs(table[last][last] - table[last][last - 1])
                             : std::abs(est.value) * 1e-6;
    return est;
}

}  // namespace s3geo
