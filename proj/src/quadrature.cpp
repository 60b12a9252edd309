#include "vdwmirror/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace vdwmirror::quadrature {

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double composite(const std::function<double(double)>& f, double a, double b,
                 const GaussLegendreRule& rule, int panels) {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      sum += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
    }
    total += 0.5 * width * sum;
  }
  return total;
}

Result refine_until_converged(const std::function<double(double)>& f, double a,
                              double b, const GaussLegendreRule& rule,
                              double rel_tol, int max_doublings) {
  Result res;
  int panels = 1;
  double prev = composite(f, a, b, rule, panels);
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const double cur = composite(f, a, b, rule, panels);
    res.value = cur;
    res.panels = panels;
    res.last_change = std::abs(cur - prev);
    if (res.last_change <= rel_tol * std::abs(cur) ||
        res.last_change <= 1e-300) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  return res;
}

}  // namespace vdwmirror::quadrature
