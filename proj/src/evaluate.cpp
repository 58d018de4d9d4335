#include "thetasum/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace thetasum {

EvalResult eval_auto(Complex z, double eps, SummingMethod method,
                     const TruncationPolicy& policy) {
  if (method != SummingMethod::Theta) return eval_direct(z, eps, method, policy);
  if (std::abs(z) <= 1.0 || theta_peak_log(z, eps) <= policy.peak_log_budget)
    return eval_direct(z, eps, method, policy);
  return eval_dual_f(z, eps, policy.tol);
}

EvalResult eval_with_strategy(Complex z, double eps, StrategyChoice choice,
                              SummingMethod method, const TruncationPolicy& policy,
                              const QuadratureSpec& quad) {
  switch (choice) {
    case StrategyChoice::Auto:
      return eval_auto(z, eps, method, policy);
    case StrategyChoice::Series:
      return eval_direct(z, eps, method, policy);
    case StrategyChoice::Dual:
      if (method != SummingMethod::Theta)
        throw std::invalid_argument("dual strategy exists for the theta method only");
      return eval_dual_f(z, eps, policy.tol);
    case StrategyChoice::Contour:
      if (method != SummingMethod::Theta)
        throw std::invalid_argument("contour strategy exists for the theta method only");
      return eval_contour_f(z, eps, quad);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace thetasum
