#include "thetasum/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace thetasum {

namespace {

void validate_spec(const SpiralSpec& spec) {
  if (!(spec.theta > 0.0) || spec.theta > kPi / 4.0 + 1e-12)
    throw std::domain_error("SpiralSpec: theta must lie in (0, pi/4]");
}

// distance from z to the Plus spiral at parameter t
double dist_at(Complex z, double tan_theta, double t) {
  double m = std::exp(tan_theta * t);
  return std::abs(z - Complex{m * std::cos(t), -m * std::sin(t)});
}

double golden_min(Complex z, double tan_theta, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = dist_at(z, tan_theta, x1);
  double f2 = dist_at(z, tan_theta, x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = dist_at(z, tan_theta, x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = dist_at(z, tan_theta, x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

Complex spiral_point(const SpiralSpec& spec, double t) {
  validate_spec(spec);
  if (!(t >= 0.0)) throw std::domain_error("spiral_point: t must be >= 0");
  double m = std::exp(std::tan(spec.theta) * t);
  double s = spec.sign == SpiralSign::Plus ? -1.0 : 1.0;
  return {m * std::cos(t), s * m * std::sin(t)};
}

double spiral_distance(const SpiralSpec& spec, Complex z) {
  validate_spec(spec);
  // the Minus spiral is the conjugate family
  if (spec.sign == SpiralSign::Minus) z = std::conj(z);
  const double tan_theta = std::tan(spec.theta);
  const double r = std::abs(z);
  const double t_max =
      (std::max(0.0, std::log(std::max(r, 1e-300))) + 2.0 * kPi * tan_theta + 5.0) / tan_theta;

  // one local minimum per winding; grid then polish
  const int per_winding = 256;
  const int count = std::max(64, static_cast<int>(t_max / (2.0 * kPi) * per_winding));
  const double dt = t_max / count;
  double best = dist_at(z, tan_theta, 0.0);
  double prev2 = best;
  double prev = dist_at(z, tan_theta, dt);
  best = std::min(best, prev);
  for (int i = 2; i <= count; ++i) {
    double d = dist_at(z, tan_theta, i * dt);
    if (prev <= prev2 && prev <= d) {
      best = std::min(best, golden_min(z, tan_theta, (i - 2) * dt, i * dt));
    }
    best = std::min(best, d);
    prev2 = prev;
    prev = d;
  }
  return best;
}

double first_winding_radius(const SpiralSpec& spec, Complex z) {
  validate_spec(spec);
  double phi = (z.real() == 0.0 && z.imag() == 0.0) ? 0.0 : normalize_phase(std::arg(z));
  double tau;
  if (spec.sign == SpiralSign::Plus) {
    tau = phi <= 0.0 ? -phi : 2.0 * kPi - phi;
  } else {
    tau = phi >= 0.0 ? phi : 2.0 * kPi + phi;
  }
  return std::exp(std::tan(spec.theta) * tau);
}

bool in_origin_winding(const SpiralSpec& spec, Complex z) {
  return std::abs(z) < first_winding_radius(spec, z);
}

bool in_G_theta(const SpiralSpec& spec, Complex z, double margin) {
  if (!(margin >= 0.0)) throw std::domain_error("in_G_theta: margin must be >= 0");
  return in_origin_winding(spec, z) && spiral_distance(spec, z) > margin;
}

ThetaSelection select_theta(Complex z, double min_margin) {
  if (!(min_margin > 0.0)) throw std::domain_error("select_theta: min_margin must be > 0");
  const double lo = 0.01;
  const double hi = kPi / 4.0 - 0.01;

  auto objective = [&](double th) {
    SpiralSpec plus{SpiralSign::Plus, th};
    SpiralSpec minus{SpiralSign::Minus, th};
    if (!in_origin_winding(plus, z) || !in_origin_winding(minus, z)) return 0.0;
    return std::min(spiral_distance(plus, z), spiral_distance(minus, z));
  };

  // coarse bracket, then golden section inside it
  const int kCoarse = 48;
  double best_th = lo, best = -1.0;
  for (int i = 0; i <= kCoarse; ++i) {
    double th = lo + (hi - lo) * i / kCoarse;
    double v = objective(th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  double a = std::max(lo, best_th - (hi - lo) / kCoarse);
  double b = std::min(hi, best_th + (hi - lo) / kCoarse);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 > f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2);
    }
  }
  if (std::max(f1, f2) > best) {
    best = std::max(f1, f2);
    best_th = f1 > f2 ? x1 : x2;
  }
  if (best < min_margin)
    throw NoValidAngle("select_theta: no angle reaches the requested margin (best " +
                       std::to_string(best) + ")");
  return {best_th, best};
}

namespace {

// Gauss7 / Kronrod15 on [-1, 1]
constexpr double kKNodes[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                               0.741531185599394, 0.586087235467691, 0.405845151377397,
                               0.207784955007898, 0.0};
constexpr double kKWeights[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
constexpr double kGWeights[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};

struct Integrand {
  Complex z;
  double sqrt_eps;
  double s;  // +1 / -1
  Complex rot;       // e^{i s theta}
  Complex gauss_rot; // e^{2 i s theta}
  Complex pref;      // e^{i s theta} / (2 sqrt(pi))

  Complex operator()(double xi) const {
    Complex e2 = -xi * xi * gauss_rot / 4.0;
    Complex g = std::exp(e2);
    Complex w = Complex{0.0, s} * (sqrt_eps * xi) * rot;
    return pref * g / (1.0 - z * std::exp(w));
  }
};

struct Panel {
  double a, b;
};

}  // namespace

HalfContourResult eval_half_contour_full(Complex z, double eps, const SpiralSpec& spec,
                                         const QuadratureSpec& quad) {
  validate_spec(spec);
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  if (!(quad.tol > 0.0 && quad.tol < 1.0)) throw std::domain_error("quad.tol must be in (0,1)");
  const double c = std::cos(2.0 * spec.theta);
  if (!(c > 1e-12))
    throw std::domain_error("eval_half_contour: integral requires theta strictly below pi/4");
  if (!in_origin_winding(spec, z))
    throw std::domain_error("eval_half_contour: z outside the origin-side region of this spiral");
  const double dist = spiral_distance(spec, z);
  if (dist < 1e-6)
    throw MarginTooSmall("eval_half_contour: spiral distance below 1e-6");

  // e^{-cutoff^2 c/4} strictly below tol
  const double cutoff = quad.cutoff > 0.0
                            ? quad.cutoff
                            : std::sqrt(4.0 * (std::log(1.0 / quad.tol) + 0.5) / c);
  // tail certified by the denominator bound 1 + |z|/dist and the Gaussian
  // modulus e^{-xi^2 cos(2 theta)/4}
  const double tail =
      (1.0 + std::abs(z) / dist) / (2.0 * std::sqrt(kPi)) * std::sqrt(kPi / c) *
      std::erfc(0.5 * std::sqrt(c) * cutoff);

  const double s = spec.sign == SpiralSign::Plus ? 1.0 : -1.0;
  Integrand f{z,
              std::sqrt(eps),
              s,
              std::polar(1.0, s * spec.theta),
              std::polar(1.0, 2.0 * s * spec.theta),
              std::polar(1.0, s * spec.theta) / (2.0 * std::sqrt(kPi))};

  // initial panels resolve the denominator's oscillation scale
  int n0 = std::clamp(static_cast<int>(cutoff * std::sqrt(eps) * std::cos(spec.theta) / kPi) + 4,
                      4, 64);
  std::vector<Panel> stack;
  stack.reserve(64);
  for (int i = 0; i < n0; ++i)
    stack.push_back({cutoff * i / n0, cutoff * (i + 1) / n0});

  KahanAccumulator<double> sum_re, sum_im;
  double err = 0.0;
  std::size_t nodes = 0, panels = 0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    if (++panels > quad.max_panels)
      throw NonConvergence("eval_half_contour: max_panels exhausted");

    const double mid = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    Complex y0 = f(mid);
    Complex k15 = kKWeights[7] * y0;
    Complex g7 = kGWeights[3] * y0;
    for (int i = 0; i < 7; ++i) {
      double dx = h * kKNodes[i];
      Complex y = f(mid + dx) + f(mid - dx);
      k15 += kKWeights[i] * y;
      if (i % 2 == 1) g7 += kGWeights[i / 2] * y;
    }
    k15 *= h;
    g7 *= h;
    nodes += 15;

    double perr = std::abs(k15 - g7);
    double budget = quad.tol * ((p.b - p.a) / cutoff) * 0.5;
    if (perr <= budget || (p.b - p.a) < 1e-13 * cutoff) {
      sum_re.add(k15.real());
      sum_im.add(k15.imag());
      err += perr;
    } else {
      stack.push_back({p.a, mid});
      stack.push_back({mid, p.b});
    }
  }

  return {{sum_re.value(), sum_im.value()}, err + tail, nodes};
}

Complex eval_half_contour(Complex z, double eps, const SpiralSpec& spec,
                          const QuadratureSpec& quad) {
  return eval_half_contour_full(z, eps, spec, quad).value;
}

bool check_uniform_bound(Complex z, const SpiralSpec& spec, Complex value) {
  validate_spec(spec);
  double c = std::cos(2.0 * spec.theta);
  if (c <= 0.0) return true;  // bound diverges as theta -> pi/4
  double dist = spiral_distance(spec, z);
  if (dist <= 0.0) return false;
  double bound = std::sqrt(1.0 / c) * (1.0 + std::abs(z) / dist);
  return std::abs(value) <= bound;
}

EvalResult eval_contour_f(Complex z, double eps, const QuadratureSpec& quad, double min_margin) {
  ThetaSelection sel = select_theta(z, min_margin);
  HalfContourResult plus = eval_half_contour_full(z, eps, sel.plus(), quad);
  HalfContourResult minus = eval_half_contour_full(z, eps, sel.minus(), quad);
  EvalResult r;
  r.value = plus.value + minus.value;
  r.abs_error_estimate = plus.abs_error_estimate + minus.abs_error_estimate;
  r.strategy = Strategy::Contour;
  r.terms_or_nodes_used = plus.nodes + minus.nodes;
  r.peak_log_term = 0.0;  // no series terms on this route
  return r;
}

}  // namespace thetasum
