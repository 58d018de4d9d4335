#pragma once

// Internal extended-precision series kernels shared by summation.cpp and
// thetadual.cpp. Results are combined in xfloat and rounded to double once,
// so algebraically identical routes land on the same double.

#include <cstddef>

#include "thetasum/summation.hpp"
#include "xfloat.hpp"

namespace thetasum::detail {

struct XSeries {
  xcomplex value{};
  xfloat abs_sum{0};     // sum of term magnitudes (rounding-error accounting)
  double tail_bound = 0.0;
  std::size_t terms = 0;
  double peak_log = 0.0;
};

// Polar decomposition of z taken at extended precision from its double parts.
struct XPolarZ {
  xfloat log_r;
  xfloat phi;
};
XPolarZ xpolar_of(Complex z);

XSeries xeval_direct(Complex z, double eps, SummingMethod method, const TruncationPolicy& policy);
XSeries xnegative_tail(Complex z, double eps, const TruncationPolicy& policy);

inline double xrounding_error(const XSeries& s) {
  return static_cast<double>(s.abs_sum) * kXEps * 8.0;
}

}  // namespace thetasum::detail
