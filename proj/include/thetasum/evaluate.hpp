#pragma once

#include "thetasum/continuation.hpp"
#include "thetasum/summation.hpp"
#include "thetasum/thetadual.hpp"

namespace thetasum {

enum class StrategyChoice { Auto, Series, Dual, Contour };

/// Auto picks the direct series when |z| <= 1 or the theta peak fits the
/// budget, the dual route otherwise; the contour route is explicit-only.
/// Classical methods always go through the direct series.
EvalResult eval_auto(Complex z, double eps, SummingMethod method = SummingMethod::Theta,
                     const TruncationPolicy& policy = {});

/// Fixed-strategy evaluation. Dual and Contour are defined for the theta
/// method only (std::invalid_argument otherwise); infeasibility surfaces as
/// the strategy's own error type.
EvalResult eval_with_strategy(Complex z, double eps, StrategyChoice choice,
                              SummingMethod method = SummingMethod::Theta,
                              const TruncationPolicy& policy = {},
                              const QuadratureSpec& quad = {});

}  // namespace thetasum
