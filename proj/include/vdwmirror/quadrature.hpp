#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vdwmirror::quadrature {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Nodes and weights of the n-point Gauss-Legendre rule (Newton iteration on
// P_n from Chebyshev initial guesses). Accurate to a few ulp for n <= 1000.
GaussLegendreRule gauss_legendre(int n);

// Composite rule: [a, b] split into `panels` equal panels, each integrated
// with `rule`.
double composite(const std::function<double(double)>& f, double a, double b,
                 const GaussLegendreRule& rule, int panels);

struct Result {
  double value = 0.0;
  double last_change = 0.0;  // |I_k - I_{k-1}| at termination
  int panels = 0;
  bool converged = false;
};

// Doubles the panel count until the relative change drops below rel_tol or
// max_doublings is reached.
Result refine_until_converged(const std::function<double(double)>& f, double a,
                              double b, const GaussLegendreRule& rule,
                              double rel_tol, int max_doublings);

}  // namespace vdwmirror::quadrature
