#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thetasum/errors.hpp"
#include "thetasum/numerics.hpp"

namespace thetasum {

// gamma_n(eps) families. Theta is the subject of the dual/contour machinery;
// the other three are classical comparison methods, evaluated by direct
// summation only.
//   Theta:         exp(-eps n^2)
//   GammaRatio:    Gamma(1+(1-eps)n)/Gamma(1+n)   (Le Roy; see note below)
//   Lindelof:      exp(-eps n ln n), gamma_0 = 1
//   MittagLeffler: 1/Gamma(1+eps n)
//
// GammaRatio note: the classical Le Roy sequence sums at delta -> 1- with
// coefficients Gamma(1+delta n)/Gamma(1+n); we use eps = 1-delta so that all
// four families share the eps -> +0 limit convention (pointwise -> 1).
enum class SummingMethod { Theta, GammaRatio, Lindelof, MittagLeffler };

enum class Strategy { DirectSeries, DualTheta, Contour };

const char* strategy_name(Strategy s);

struct EvalResult {
  Complex value;
  double abs_error_estimate = 0.0;
  Strategy strategy = Strategy::DirectSeries;
  std::size_t terms_or_nodes_used = 0;
  // max_n ln|gamma_n(eps) z^n| actually encountered (largest series-term
  // log-magnitude for the dual route; not meaningful for Contour).
  double peak_log_term = 0.0;
};

struct TruncationPolicy {
  double tol = 1e-12;                       // absolute truncation target
  double peak_log_budget = 27.631021115928552;  // ln 1e12
  std::size_t max_terms = 10'000'000;
};

/// gamma_n(eps) for the given method; eps > 0 (GammaRatio additionally
/// requires eps <= 1).
double gamma_coefficient(SummingMethod method, std::size_t n, double eps);

/// ln gamma_n(eps), in double precision (witness/diagnostic use).
double log_gamma_coefficient(SummingMethod method, std::size_t n, double eps);

enum class CheckOutcome { Pass, Fail, Inconclusive };

// Finite-scale verification of the three summing-sequence conditions:
//  (a) uniform boundedness over sampled (eps, n),
//  (b) gamma_n(eps) -> 1 as eps decreases, for each n <= 10,
//  (c) gamma_n(eps)^{1/n} decays below 0.5 by n_max (or, when the sampled
//      range ends above 0.5, a fitted log-log slope certifies a finite
//      projected crossing; too-short ranges report Inconclusive).
struct SummingConditionsReport {
  CheckOutcome bounded = CheckOutcome::Fail;
  CheckOutcome pointwise_limit = CheckOutcome::Fail;
  CheckOutcome root_decay = CheckOutcome::Fail;
  // witnesses
  double sup_gamma = 0.0;
  std::size_t sup_n = 0;
  double sup_eps = 0.0;
  double worst_limit_gap = 0.0;
  std::size_t worst_limit_n = 0;
  double last_root = 0.0;
  std::size_t root_cross_n = 0;  // observed or projected crossing index; 0 = none

  bool all_pass() const {
    return bounded == CheckOutcome::Pass && pointwise_limit == CheckOutcome::Pass &&
           root_decay == CheckOutcome::Pass;
  }
};

SummingConditionsReport check_summing_conditions(SummingMethod method, double eps,
                                                 std::size_t n_max);

/// Partial sum of sum_{n>=0} gamma_n(eps) z^n with certified truncation.
/// Stops past the peak index once terms fall below policy.tol; the tail is
/// bounded by the ratio test and folded into abs_error_estimate. Throws
/// InfeasibleCancellation when the peak term magnitude would exceed
/// policy.peak_log_budget.
EvalResult eval_direct(Complex z, double eps, SummingMethod method = SummingMethod::Theta,
                       const TruncationPolicy& policy = {});

/// sum_{m>=1} e^{-eps m^2} z^{-m}; needs no cancellation guard for |z| > 1,
/// guards like eval_direct for |z| < 1. z != 0.
EvalResult negative_tail(Complex z, double eps, const TruncationPolicy& policy = {});

/// Bilateral sum over all integers n, as eval_direct + negative_tail with a
/// single final rounding. z != 0.
EvalResult eval_bilateral(Complex z, double eps, const TruncationPolicy& policy = {});

/// ln ln M(r) / ln r for each radius, in the log domain (all Taylor
/// coefficients are positive, so M(r) = f_eps(r)). Radii must be increasing
/// and each > e.
std::vector<double> order_probe(double eps, std::span<const double> radii);

/// Predicted peak log-magnitude of the Theta series, (ln|z|)^2/(4 eps) for
/// |z| > 1, else 0.
double theta_peak_log(Complex z, double eps);

}  // namespace thetasum
