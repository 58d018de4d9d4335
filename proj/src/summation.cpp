#include "thetasum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "series_detail.hpp"

namespace thetasum {

namespace detail {

XPolarZ xpolar_of(Complex z) {
  // |z| and arg(z) formed at extended precision from the exact double parts,
  // so term exponents n*ln|z| stay accurate after multiplication by n.
  xfloat re = z.real(), im = z.imag();
  xfloat r = xhypot(re, im);
  return {xlog(r), xatan2(im, re)};
}

namespace {

xfloat xlog_gamma_coeff(SummingMethod m, std::size_t n, xfloat eps) {
  xfloat xn = static_cast<xfloat>(static_cast<double>(n));
  switch (m) {
    case SummingMethod::Theta:
      return -eps * xn * xn;
    case SummingMethod::GammaRatio:
      if (n == 0) return 0;
      return xlgamma(1 + (1 - eps) * xn) - xlgamma(1 + xn);
    case SummingMethod::Lindelof:
      return n <= 1 ? xfloat(0) : -eps * xn * xlog(xn);
    case SummingMethod::MittagLeffler:
      return -xlgamma(1 + eps * xn);
  }
  return 0;
}

void validate(double eps, SummingMethod m, const TruncationPolicy& policy) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  if (m == SummingMethod::GammaRatio && eps > 1.0)
    throw std::domain_error("GammaRatio coefficients are defined for eps in (0, 1]");
  if (!(policy.tol > 0.0)) throw std::domain_error("policy.tol must be > 0");
  if (!(policy.peak_log_budget > 0.0)) throw std::domain_error("policy.peak_log_budget must be > 0");
}

// Shared loop: sums gamma_n(eps) * w^n for n in [n_begin, ...) where w is
// given in log-polar form. Stops past the peak once |term| < tol with a
// contracting ratio; tail bounded geometrically by that ratio.
XSeries xsum_series(SummingMethod method, double eps, xfloat log_r, xfloat phi,
                    std::size_t n_begin, const TruncationPolicy& policy) {
  XSeries out;
  xfloat xeps = eps;
  XComplexKahan acc;
  XKahan<xfloat> absacc;

  const double tol = policy.tol;
  const double budget = policy.peak_log_budget;
  double peak = -1e300;
  double prev_lt = 1e300;
  bool past_peak = false;
  // Theta peak index is closed-form; others are detected by scanning.
  double n_star = 0.0;
  if (method == SummingMethod::Theta && log_r > 0)
    n_star = static_cast<double>(log_r) / (2.0 * eps);

  std::size_t n = n_begin;
  for (;; ++n) {
    if (n - n_begin >= policy.max_terms)
      throw NonConvergence("series truncation did not reach tol within max_terms");
    xfloat xn = static_cast<xfloat>(static_cast<double>(n));
    xfloat lt = xlog_gamma_coeff(method, n, xeps) + xn * log_r;
    double lt_d = static_cast<double>(lt);
    if (lt_d > peak) peak = lt_d;
    if (peak > budget) throw InfeasibleCancellation(peak, budget);

    xfloat mag = xexp(lt);
    xfloat psi = xreduce_phase(xn * phi);
    acc.add({mag * xcos(psi), mag * xsin(psi)});
    absacc.add(mag);

    if (!past_peak) {
      if (method == SummingMethod::Theta) {
        past_peak = static_cast<double>(n) > n_star;
      } else {
        past_peak = n > n_begin && lt_d < prev_lt && lt_d < peak;
      }
    }
    if (past_peak && n > n_begin) {
      double q = std::exp(lt_d - prev_lt);
      if (static_cast<double>(mag) < tol && q < 0.99) {
        out.tail_bound = static_cast<double>(mag) * q / (1.0 - q);
        break;
      }
    }
    prev_lt = lt_d;
  }

  out.value = acc.value();
  out.abs_sum = absacc.value();
  out.terms = n - n_begin + 1;
  out.peak_log = peak;
  return out;
}

EvalResult round_result(const XSeries& s, Strategy strat) {
  EvalResult r;
  r.value = {static_cast<double>(s.value.re), static_cast<double>(s.value.im)};
  // tail + accumulator rounding + the final double quantization
  r.abs_error_estimate =
      s.tail_bound + xrounding_error(s) + std::abs(r.value) * 2.3e-16;
  r.strategy = strat;
  r.terms_or_nodes_used = s.terms;
  r.peak_log_term = s.peak_log;
  return r;
}

}  // namespace

XSeries xeval_direct(Complex z, double eps, SummingMethod method, const TruncationPolicy& policy) {
  validate(eps, method, policy);
  if (z.real() == 0.0 && z.imag() == 0.0) {
    XSeries s;
    s.value = {1, 0};
    s.abs_sum = 1;
    s.terms = 1;
    s.peak_log = 0.0;
    return s;
  }
  if (method == SummingMethod::Theta) {
    double peak = theta_peak_log(z, eps);
    if (peak > policy.peak_log_budget)
      throw InfeasibleCancellation(peak, policy.peak_log_budget);
  }
  XPolarZ p = xpolar_of(z);
  return xsum_series(method, eps, p.log_r, p.phi, 0, policy);
}

XSeries xnegative_tail(Complex z, double eps, const TruncationPolicy& policy) {
  validate(eps, SummingMethod::Theta, policy);
  if (z.real() == 0.0 && z.imag() == 0.0)
    throw std::domain_error("negative_tail: z = 0");
  double r = std::abs(z);
  if (r < 1.0) {
    double lw = -std::log(r);
    double peak = lw * lw / (4.0 * eps);
    if (peak > policy.peak_log_budget)
      throw InfeasibleCancellation(peak, policy.peak_log_budget);
  }
  XPolarZ p = xpolar_of(z);
  // w = 1/z in exact log-polar form
  return xsum_series(SummingMethod::Theta, eps, -p.log_r, -p.phi, 1, policy);
}

}  // namespace detail

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::DirectSeries: return "series";
    case Strategy::DualTheta: return "dual";
    case Strategy::Contour: return "contour";
  }
  return "?";
}

double theta_peak_log(Complex z, double eps) {
  double r = std::abs(z);
  if (r <= 1.0) return 0.0;
  double lr = std::log(r);
  return lr * lr / (4.0 * eps);
}

double gamma_coefficient(SummingMethod method, std::size_t n, double eps) {
  return std::exp(log_gamma_coefficient(method, n, eps));
}

double log_gamma_coefficient(SummingMethod method, std::size_t n, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  double dn = static_cast<double>(n);
  switch (method) {
    case SummingMethod::Theta:
      return -eps * dn * dn;
    case SummingMethod::GammaRatio:
      if (eps > 1.0) throw std::domain_error("GammaRatio coefficients are defined for eps in (0, 1]");
      if (n == 0) return 0.0;
      return log_gamma(1.0 + (1.0 - eps) * dn) - log_gamma(1.0 + dn);
    case SummingMethod::Lindelof:
      return n <= 1 ? 0.0 : -eps * dn * std::log(dn);
    case SummingMethod::MittagLeffler:
      return -log_gamma(1.0 + eps * dn);
  }
  return 0.0;
}

EvalResult eval_direct(Complex z, double eps, SummingMethod method, const TruncationPolicy& policy) {
  return detail::round_result(detail::xeval_direct(z, eps, method, policy),
                              Strategy::DirectSeries);
}

EvalResult negative_tail(Complex z, double eps, const TruncationPolicy& policy) {
  return detail::round_result(detail::xnegative_tail(z, eps, policy), Strategy::DirectSeries);
}

EvalResult eval_bilateral(Complex z, double eps, const TruncationPolicy& policy) {
  if (z.real() == 0.0 && z.imag() == 0.0)
    throw std::domain_error("eval_bilateral: z = 0");
  detail::XSeries plus = detail::xeval_direct(z, eps, SummingMethod::Theta, policy);
  detail::XSeries minus = detail::xnegative_tail(z, eps, policy);
  detail::XSeries both;
  both.value = plus.value + minus.value;
  both.abs_sum = plus.abs_sum + minus.abs_sum;
  both.tail_bound = plus.tail_bound + minus.tail_bound;
  both.terms = plus.terms + minus.terms;
  both.peak_log = std::max(plus.peak_log, minus.peak_log);
  return detail::round_result(both, Strategy::DirectSeries);
}

std::vector<double> order_probe(double eps, std::span<const double> radii) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  constexpr double kE = 2.71828182845904523536;
  double prev = kE;
  for (double r : radii) {
    if (!(r > prev)) throw std::domain_error("order_probe: radii must be increasing and > e");
    prev = r;
  }
  std::vector<double> out;
  out.reserve(radii.size());
  std::vector<double> exps;
  for (double r : radii) {
    double lr = std::log(r);
    double n_star = lr / (2.0 * eps);
    // carry terms until they are ~e^-50 below the peak
    double spread = std::sqrt(50.0 / eps) + 2.0;
    double n_up_d = n_star + spread;
    if (n_up_d > 2e7) throw std::domain_error("order_probe: radius/eps out of supported range");
    std::size_t n_up = static_cast<std::size_t>(n_up_d) + 1;
    exps.clear();
    exps.reserve(n_up + 1);
    for (std::size_t n = 0; n <= n_up; ++n) {
      double dn = static_cast<double>(n);
      exps.push_back(dn * lr - eps * dn * dn);
    }
    double lnM = log_sum_exp(exps);
    out.push_back(std::log(lnM) / lr);
  }
  return out;
}

namespace {

// Uniform bound (condition a) per method: 1 for Theta/GammaRatio/Lindelof,
// 1/min Gamma(1+x) for MittagLeffler.
double method_bound(SummingMethod m) {
  return m == SummingMethod::MittagLeffler ? 1.0 / 0.8856031944108887 : 1.0;
}

}  // namespace

SummingConditionsReport check_summing_conditions(SummingMethod method, double eps,
                                                 std::size_t n_max) {
  SummingConditionsReport rep;  // never throws: bad inputs report as failures
  if (!(eps > 0.0) || n_max == 0) return rep;
  if (method == SummingMethod::GammaRatio && eps > 1.0) return rep;

  // (a) sampled sup of gamma_n over an eps-descending grid and an n grid
  {
    double sup = 0.0;
    std::size_t sup_n = 0;
    double sup_eps = eps;
    for (int j = 0; j <= 12; ++j) {
      double e = eps * std::pow(2.0, -j);
      std::size_t n = 0;
      std::size_t step = 1;
      while (n <= n_max) {
        double g = gamma_coefficient(method, n, e);
        if (g > sup) {
          sup = g;
          sup_n = n;
          sup_eps = e;
        }
        if (n >= 64) step = std::max<std::size_t>(step + step / 4, step + 1);
        n += step;
      }
    }
    rep.sup_gamma = sup;
    rep.sup_n = sup_n;
    rep.sup_eps = sup_eps;
    rep.bounded = sup <= method_bound(method) + 1e-9 ? CheckOutcome::Pass : CheckOutcome::Fail;
  }

  // (b) gamma_n -> 1 as eps decreases, n <= 10: final gap small and gaps
  // non-increasing over the last few halvings
  {
    bool ok = true;
    double worst = 0.0;
    std::size_t worst_n = 0;
    for (std::size_t n = 0; n <= 10; ++n) {
      double gaps[15];
      for (int j = 0; j < 15; ++j)
        gaps[j] = std::abs(gamma_coefficient(method, n, eps * std::pow(2.0, -j)) - 1.0);
      if (gaps[14] > worst) {
        worst = gaps[14];
        worst_n = n;
      }
      if (gaps[14] > 1e-2) ok = false;
      for (int j = 10; j < 14; ++j)
        if (gaps[j + 1] > gaps[j] + 1e-14) ok = false;
    }
    rep.worst_limit_gap = worst;
    rep.worst_limit_n = worst_n;
    rep.pointwise_limit = ok ? CheckOutcome::Pass : CheckOutcome::Fail;
  }

  // (c) n-th roots decay below 0.5 by n_max, or project a finite crossing
  {
    std::vector<std::pair<double, double>> samples;  // (ln n, ln root)
    std::size_t n = 1;
    std::size_t step = 1;
    std::size_t crossed = 0;
    while (n <= n_max) {
      double lr = log_gamma_coefficient(method, n, eps) / static_cast<double>(n);
      samples.emplace_back(std::log(static_cast<double>(n)), lr);
      if (crossed == 0 && lr < std::log(0.5)) crossed = n;
      if (n >= 64) step = std::max<std::size_t>(step + step / 4, step + 1);
      n += step;
    }
    rep.last_root = std::exp(samples.back().second);
    bool monotone_tail = true;
    for (std::size_t i = samples.size() / 2; i + 1 < samples.size(); ++i)
      if (samples[i + 1].second > samples[i].second + 1e-12) monotone_tail = false;

    if (n_max < 100 || samples.size() < 8) {
      rep.root_decay = crossed && monotone_tail ? CheckOutcome::Pass : CheckOutcome::Inconclusive;
      rep.root_cross_n = crossed;
    } else if (!monotone_tail) {
      rep.root_decay = CheckOutcome::Fail;
    } else if (crossed) {
      rep.root_decay = CheckOutcome::Pass;
      rep.root_cross_n = crossed;
    } else {
      // fit the tail slope in log-log; a negative slope bounded away from 0
      // certifies a finite crossing beyond the sampled range
      auto [lx1, ly1] = samples[samples.size() / 2];
      auto [lx2, ly2] = samples.back();
      double slope = (ly2 - ly1) / (lx2 - lx1);
      if (slope < -1e-4) {
        double lncross = lx2 + (std::log(0.5) - ly2) / slope;
        rep.root_decay = CheckOutcome::Pass;
        rep.root_cross_n = static_cast<std::size_t>(std::exp(std::min(lncross, 40.0)));
      } else {
        rep.root_decay = CheckOutcome::Inconclusive;
      }
    }
  }
  return rep;
}

}  // namespace thetasum
