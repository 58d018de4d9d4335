#pragma once

#include <stdexcept>
#include <string>

namespace thetasum {

// Direct summation would require cancelling terms larger than the configured
// peak budget; the caller should switch to the dual or contour strategy.
struct InfeasibleCancellation : std::runtime_error {
  double predicted_peak_log;
  double budget;
  InfeasibleCancellation(double peak, double budget_)
      : std::runtime_error("direct summation infeasible: predicted peak log-magnitude " +
                           std::to_string(peak) + " exceeds budget " + std::to_string(budget_)),
        predicted_peak_log(peak),
        budget(budget_) {}
};

// No rotation angle gives the requested clearance from both spiral curves.
struct NoValidAngle : std::runtime_error {
  explicit NoValidAngle(const std::string& what) : std::runtime_error(what) {}
};

struct MarginTooSmall : std::runtime_error {
  explicit MarginTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyZ1 : std::logic_error {
  explicit EmptyZ1(const std::string& what) : std::logic_error(what) {}
};

// The requested value is finite but exceeds double range; use the log-domain
// companions (eval_H_log, growth_envelope_log) instead.
struct EvalOverflow : std::runtime_error {
  double log_magnitude;
  explicit EvalOverflow(double logmag)
      : std::runtime_error("value magnitude exp(" + std::to_string(logmag) +
                           ") exceeds double range"),
        log_magnitude(logmag) {}
};

}  // namespace thetasum
