#pragma once

// Extended-precision scalar for series accumulation. The alternating sums can
// carry peak terms up to ~e^60 while the results stay O(1); the accumulator
// needs ~30 significant digits for the cancellation to leave a trustworthy
// value, and term exponents must be formed at the same precision.

#include <cmath>
#include <cstddef>

#if defined(THETASUM_USE_FLOAT128)
#include <quadmath.h>

namespace thetasum::detail {
using xfloat = __float128;
inline xfloat xexp(xfloat a) { return expq(a); }
inline xfloat xlog(xfloat a) { return logq(a); }
inline xfloat xsqrt(xfloat a) { return sqrtq(a); }
inline xfloat xcos(xfloat a) { return cosq(a); }
inline xfloat xsin(xfloat a) { return sinq(a); }
inline xfloat xfabs(xfloat a) { return fabsq(a); }
inline xfloat xlgamma(xfloat a) { return lgammaq(a); }
inline xfloat xatan2(xfloat y, xfloat x) { return atan2q(y, x); }
inline xfloat xhypot(xfloat a, xfloat b) { return hypotq(a, b); }
inline xfloat xremainder(xfloat a, xfloat b) { return remainderq(a, b); }
inline xfloat xpi() { return M_PIq; }
inline constexpr double kXEps = 1.93e-34;
}  // namespace thetasum::detail

#else

namespace thetasum::detail {
using xfloat = long double;
inline xfloat xexp(xfloat a) { return std::exp(a); }
inline xfloat xlog(xfloat a) { return std::log(a); }
inline xfloat xsqrt(xfloat a) { return std::sqrt(a); }
inline xfloat xcos(xfloat a) { return std::cos(a); }
inline xfloat xsin(xfloat a) { return std::sin(a); }
inline xfloat xfabs(xfloat a) { return std::fabs(a); }
inline xfloat xlgamma(xfloat a) { return std::lgamma(a); }
inline xfloat xatan2(xfloat y, xfloat x) { return std::atan2(y, x); }
inline xfloat xhypot(xfloat a, xfloat b) { return std::hypot(a, b); }
inline xfloat xremainder(xfloat a, xfloat b) { return std::remainder(a, b); }
inline xfloat xpi() { return 3.141592653589793238462643383279502884L; }
inline constexpr double kXEps = 1.1e-19;  // x87 worst case; binary128 on aarch64
}  // namespace thetasum::detail

#endif

namespace thetasum::detail {

struct xcomplex {
  xfloat re{0};
  xfloat im{0};
};

inline xcomplex operator+(const xcomplex& a, const xcomplex& b) { return {a.re + b.re, a.im + b.im}; }
inline xcomplex operator-(const xcomplex& a, const xcomplex& b) { return {a.re - b.re, a.im - b.im}; }
inline xcomplex operator*(const xcomplex& a, const xcomplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline xcomplex operator*(xfloat s, const xcomplex& a) { return {s * a.re, s * a.im}; }
inline xfloat xabs(const xcomplex& a) { return xhypot(a.re, a.im); }

// exp(logmag + i*phase)
inline xcomplex xpolar(xfloat logmag, xfloat phase) {
  xfloat m = xexp(logmag);
  return {m * xcos(phase), m * xsin(phase)};
}

inline xfloat xreduce_phase(xfloat a) { return xremainder(a, 2 * xpi()); }

template <typename T>
struct XKahan {
  T s{0};
  T c{0};
  void add(T v) {
    T t = s + v;
    if (xfabs(s) >= xfabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  T value() const { return s + c; }
};

struct XComplexKahan {
  XKahan<xfloat> re, im;
  void add(const xcomplex& v) {
    re.add(v.re);
    im.add(v.im);
  }
  xcomplex value() const { return {re.value(), im.value()}; }
};

}  // namespace thetasum::detail
