#pragma once

#include <utility>
#include <vector>

#include "thetasum/numerics.hpp"
#include "thetasum/summation.hpp"

namespace thetasum {

// zeta = ln z / (2i), principal branch: Re zeta = arg(z)/2 in (-pi/2, pi/2],
// Im zeta = -ln|z|/2. source_z is retained so downstream evaluation can
// re-derive zeta at working precision.
struct DualPoint {
  Complex zeta;
  Complex source_z;
};

// Z1/Z2 index split at a dual point, with the growth envelope data:
// lambda_k = -(zeta - n pi)^2 over n in Z1, deduplicated with multiplicities
// (at most 2), mu = max Re lambda_k, and the Z2 decay constant c_zeta with
// Re(zeta - n pi)^2 >= c_zeta (n^2 + 1) for all n in Z2.
struct DualDecomposition {
  std::vector<int> z1;
  int z2_window = 0;  // scanned window: |n| <= z2_window
  std::vector<std::pair<Complex, int>> lambdas;
  double mu = 0.0;
  double c_zeta = 0.0;
};

/// Throws std::domain_error on z = 0.
DualPoint dual_coordinate(Complex z);

/// H_eps(zeta) = sqrt(pi/eps) sum_n exp(-(zeta - n pi)^2 / eps), truncated
/// with a certified tail <= tol. Throws EvalOverflow if the value exceeds
/// double range (possible for divergent zeta at small eps).
Complex eval_H(Complex zeta, double eps, double tol = 1e-12);

/// Same sum, but zeta re-derived from dp.source_z at working precision; this
/// is the form whose output agrees bit-for-bit with eval_bilateral.
Complex eval_H(const DualPoint& dp, double eps, double tol = 1e-12);

/// Log-domain |H_eps|; never overflows.
LogMagnitude eval_H_log(Complex zeta, double eps, double tol = 1e-12);
LogMagnitude eval_H_log(const DualPoint& dp, double eps, double tol = 1e-12);

DualDecomposition index_split(Complex zeta);

/// Printed bound on |H^2_eps(zeta)|: sqrt(pi/eps) e^{-c/eps} + (pi/sqrt(c)) e^{-c/eps}.
double h2_bound(const DualDecomposition& decomp, double eps);

/// Exact magnitude of the divergent part, sqrt(pi/eps) |sum_k n_k e^{lambda_k/eps}|.
/// Throws EmptyZ1 when Z1 is empty, EvalOverflow past double range.
double growth_envelope(const DualDecomposition& decomp, double eps);

/// ln of the same; -infinity when the oscillating sum vanishes.
double growth_envelope_log(const DualDecomposition& decomp, double eps);

/// f_eps(z) = H_eps(ln z / 2i) - negative_tail(z) for |z| > 1; numerically
/// stable at any eps because every H term is a single exponential and the
/// negative tail has decreasing terms. Strategy tag DualTheta.
EvalResult eval_dual_f(Complex z, double eps, double tol = 1e-12);

}  // namespace thetasum
