#include "thetasum/thetadual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "series_detail.hpp"

namespace thetasum {

using detail::xcomplex;
using detail::xfloat;

namespace {

constexpr double kLnDblMax = 709.0;

// H series in log-polar pieces: value = sqrt(pi/eps) * e^{scale} * S with
// scale = max Re of the term exponents, so S is O(1) regardless of how
// divergent the point is. The prefactor must be reconstituted at extended
// precision: a double round trip through its logarithm costs ~2e-16
// relative, which the Jacobi-identity residual can see at |H| ~ 1e6.
struct XH {
  double eps;
  double log_prefactor;  // 0.5 ln(pi/eps), for log-domain consumers
  double scale;          // max_n Re(-(zeta - n pi)^2 / eps)
  xcomplex scaled_sum;
  double tail_bound;     // absolute, on sqrt(pi/eps) * sum_{|n|>N} |term|
  std::size_t terms;
};

xfloat xprefactor_times_scale(const XH& h) {
  return detail::xsqrt(detail::xpi() / static_cast<xfloat>(h.eps)) *
         detail::xexp(static_cast<xfloat>(h.scale));
}

int stser_window(double abs_zeta) {
  return static_cast<int>(std::ceil(4.0 * abs_zeta / kPi));
}

XH xeval_H(xcomplex zeta, double abs_zeta, double eps, double tol) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");

  const double pref = 0.5 * std::log(kPi / eps);
  // Window: at least the Lemma-StSer bound, grown until the certified tail
  // (via Re(zeta - n pi)^2 >= (n pi)^2 / 2 beyond the window) is <= tol.
  int N = std::max(1, stser_window(abs_zeta));
  auto tail_at = [&](int M) {
    double a = (M + 1.0) * (M + 1.0) * kPi * kPi / (2.0 * eps);
    double la = pref + std::log(2.0) - a;
    if (la < -745.0) return 0.0;
    double ratio = std::exp(-(2.0 * M + 3.0) * kPi * kPi / (2.0 * eps));
    return std::exp(la) / (1.0 - ratio);
  };
  while (tail_at(N) > tol && N < 100000) ++N;

  const xfloat xeps = eps;
  const xfloat xp = detail::xpi();

  // exponents w_n = -(zeta - n pi)^2 / eps; scale by max Re w_n
  double scale = -std::numeric_limits<double>::infinity();
  for (int n = -N; n <= N; ++n) {
    xcomplex d{zeta.re - n * xp, zeta.im};
    double rew = static_cast<double>(-(d.re * d.re - d.im * d.im) / xeps);
    scale = std::max(scale, rew);
  }

  detail::XComplexKahan acc;
  for (int n = -N; n <= N; ++n) {
    xcomplex d{zeta.re - n * xp, zeta.im};
    xfloat re_w = -(d.re * d.re - d.im * d.im) / xeps;
    xfloat im_w = -(2 * d.re * d.im) / xeps;
    acc.add(detail::xpolar(re_w - static_cast<xfloat>(scale), detail::xreduce_phase(im_w)));
  }

  XH out;
  out.eps = eps;
  out.log_prefactor = pref;
  out.scale = scale;
  out.scaled_sum = acc.value();
  out.tail_bound = tail_at(N);
  out.terms = static_cast<std::size_t>(2 * N + 1);
  return out;
}

xcomplex xzeta_of(Complex z) {
  // zeta = (phi + i ln r) / (2i) = phi/2 - i ln(r)/2 at working precision
  detail::XPolarZ p = detail::xpolar_of(z);
  return {p.phi / 2, -p.log_r / 2};
}

LogMagnitude log_of(const XH& h) {
  xfloat m = detail::xabs(h.scaled_sum);
  if (m == 0) return {-std::numeric_limits<double>::infinity(), 0.0};
  double log_abs = h.log_prefactor + h.scale + static_cast<double>(detail::xlog(m));
  double phase = normalize_phase(
      static_cast<double>(detail::xatan2(h.scaled_sum.im, h.scaled_sum.re)));
  return {log_abs, phase};
}

Complex value_of(const XH& h) {
  LogMagnitude lm = log_of(h);
  if (lm.log_abs > kLnDblMax) throw EvalOverflow(lm.log_abs);
  xfloat f = xprefactor_times_scale(h);
  return {static_cast<double>(f * h.scaled_sum.re), static_cast<double>(f * h.scaled_sum.im)};
}

}  // namespace

DualPoint dual_coordinate(Complex z) {
  Complex lg = principal_log(z);  // throws on z = 0
  // divide by 2i: (a + bi)/(2i) = b/2 - (a/2) i
  return {{lg.imag() / 2.0, -lg.real() / 2.0}, z};
}

Complex eval_H(Complex zeta, double eps, double tol) {
  xcomplex xz{zeta.real(), zeta.imag()};
  return value_of(xeval_H(xz, std::abs(zeta), eps, tol));
}

Complex eval_H(const DualPoint& dp, double eps, double tol) {
  return value_of(xeval_H(xzeta_of(dp.source_z), std::abs(dp.zeta), eps, tol));
}

LogMagnitude eval_H_log(Complex zeta, double eps, double tol) {
  xcomplex xz{zeta.real(), zeta.imag()};
  return log_of(xeval_H(xz, std::abs(zeta), eps, tol));
}

LogMagnitude eval_H_log(const DualPoint& dp, double eps, double tol) {
  return log_of(xeval_H(xzeta_of(dp.source_z), std::abs(dp.zeta), eps, tol));
}

DualDecomposition index_split(Complex zeta) {
  DualDecomposition d;
  const int N = stser_window(std::abs(zeta));
  d.z2_window = N;
  double cmin = kPi * kPi / 8.0;  // valid beyond the window (Lemma-H2 constant)
  for (int n = -N; n <= N; ++n) {
    Complex w = (zeta - static_cast<double>(n) * kPi);
    w *= w;
    if (w.real() <= 0.0) {
      d.z1.push_back(n);
      Complex lambda = -w;
      bool merged = false;
      for (auto& [lk, mult] : d.lambdas) {
        if (std::abs(lk - lambda) <= 1e-12) {
          ++mult;
          merged = true;
          break;
        }
      }
      if (!merged) d.lambdas.emplace_back(lambda, 1);
    } else {
      cmin = std::min(cmin, w.real() / (static_cast<double>(n) * n + 1.0));
    }
  }
  d.c_zeta = cmin;
  d.mu = 0.0;
  for (const auto& [lk, mult] : d.lambdas) {
    if (mult > 2) throw std::logic_error("index_split: representative multiplicity above 2");
    d.mu = std::max(d.mu, lk.real());
  }
  return d;
}

double h2_bound(const DualDecomposition& decomp, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  double c = decomp.c_zeta;
  double e = std::exp(-c / eps);
  return std::sqrt(kPi / eps) * e + kPi / std::sqrt(c) * e;
}

double growth_envelope_log(const DualDecomposition& decomp, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  if (decomp.z1.empty()) throw EmptyZ1("growth_envelope: Z1 is empty");
  const xfloat xeps = eps;
  detail::XComplexKahan acc;
  for (const auto& [lk, mult] : decomp.lambdas) {
    xfloat re = (static_cast<xfloat>(lk.real()) - static_cast<xfloat>(decomp.mu)) / xeps;
    xfloat im = static_cast<xfloat>(lk.imag()) / xeps;
    acc.add(static_cast<xfloat>(mult) * detail::xpolar(re, detail::xreduce_phase(im)));
  }
  xfloat m = detail::xabs(acc.value());
  if (m == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(kPi / eps) + decomp.mu / eps + static_cast<double>(detail::xlog(m));
}

double growth_envelope(const DualDecomposition& decomp, double eps) {
  double lg = growth_envelope_log(decomp, eps);
  if (lg > kLnDblMax) throw EvalOverflow(lg);
  return std::exp(lg);
}

EvalResult eval_dual_f(Complex z, double eps, double tol) {
  if (!(std::abs(z) > 1.0))
    throw std::domain_error("eval_dual_f: requires |z| > 1");
  TruncationPolicy policy;
  policy.tol = tol;

  XH h = xeval_H(xzeta_of(z), std::abs(dual_coordinate(z).zeta), eps, tol);
  detail::XSeries nt = detail::xnegative_tail(z, eps, policy);

  LogMagnitude hl = log_of(h);
  if (hl.log_abs > kLnDblMax) throw EvalOverflow(hl.log_abs);

  xfloat f = xprefactor_times_scale(h);
  xcomplex v{f * h.scaled_sum.re - nt.value.re, f * h.scaled_sum.im - nt.value.im};

  EvalResult r;
  r.value = {static_cast<double>(v.re), static_cast<double>(v.im)};
  r.abs_error_estimate = h.tail_bound + nt.tail_bound + detail::xrounding_error(nt) +
                         std::exp(std::min(hl.log_abs, kLnDblMax)) * detail::kXEps * 8.0 +
                         std::abs(r.value) * 2.3e-16;
  r.strategy = Strategy::DualTheta;
  r.terms_or_nodes_used = h.terms + nt.terms;
  // largest single-term log-magnitude across both series
  r.peak_log_term = std::max(h.log_prefactor + h.scale, nt.peak_log);
  return r;
}

}  // namespace thetasum
