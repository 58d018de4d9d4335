#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace thetasum {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Wraps into (-pi, pi]; the point -e^pi carries phase exactly +pi under this
// convention, which keeps the heart-curve membership predicate closed-form.
double normalize_phase(double phi);

/// Principal complex logarithm, ln|z| + i*arg(z) with arg in (-pi, pi].
/// Throws std::domain_error on z = 0.
Complex principal_log(Complex z);

// w = exp(log_abs) * exp(i*phase). Used wherever magnitudes exceed double
// range (maximum-modulus probes, divergence envelopes).
struct LogMagnitude {
  double log_abs = 0.0;
  double phase = 0.0;  // in (-pi, pi]

  static LogMagnitude from_complex(Complex w);
  double log10_abs() const { return log_abs / 2.30258509299404568402; }
};

// Neumaier-compensated accumulator; drop-in for += / value().
template <typename T>
struct KahanAccumulator {
  T sum{};
  T comp{};

  void add(T v) {
    T t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  T value() const { return sum + comp; }
};

/// Compensated sum of a complex sequence; error O(machine-eps * sum|term|)
/// independent of length at first order. Empty input sums to 0.
Complex compensated_sum(std::span<const Complex> terms);

/// ln(sum exp(t_k)) with the usual max-shift; empty input returns -infinity.
double log_sum_exp(std::span<const double> log_terms);

/// ln Gamma(x) for x > 0 via a fixed-coefficient Lanczos rational kernel.
/// Relative error <= 1e-12 on [0.5, 1e4]. Throws std::domain_error on x <= 0.
double log_gamma(double x);

}  // namespace thetasum
