#include "thetasum/numerics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace thetasum {

double normalize_phase(double phi) {
  double p = std::remainder(phi, 2.0 * kPi);  // lands in [-pi, pi]
  if (p <= -kPi) p = kPi;
  return p;
}

Complex principal_log(Complex z) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    throw std::domain_error("principal_log: z = 0");
  }
  Complex w = std::log(z);
  return {w.real(), normalize_phase(w.imag())};
}

LogMagnitude LogMagnitude::from_complex(Complex w) {
  if (w.real() == 0.0 && w.imag() == 0.0) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return {std::log(std::abs(w)), normalize_phase(std::arg(w))};
}

Complex compensated_sum(std::span<const Complex> terms) {
  KahanAccumulator<double> re, im;
  for (const Complex& t : terms) {
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.value(), im.value()};
}

double log_sum_exp(std::span<const double> log_terms) {
  if (log_terms.empty()) return -std::numeric_limits<double>::infinity();
  double m = *std::max_element(log_terms.begin(), log_terms.end());
  if (std::isinf(m)) return m;  // all -inf, or a +inf entry dominates
  KahanAccumulator<double> acc;
  for (double t : log_terms) acc.add(std::exp(t - m));
  return m + std::log(acc.value());
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  // Lanczos, g = 7, 9 coefficients.
  static constexpr double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const double zm1 = x - 1.0;
  double a = c[0];
  for (int k = 1; k < 9; ++k) a += c[k] / (zm1 + k);
  const double t = zm1 + 7.5;
  // 0.5*ln(2*pi) = 0.91893853320467274178
  return 0.91893853320467274178 + (zm1 + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace thetasum
