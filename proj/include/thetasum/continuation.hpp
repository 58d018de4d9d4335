#pragma once

#include <cstddef>

#include "thetasum/numerics.hpp"
#include "thetasum/summation.hpp"

namespace thetasum {

enum class SpiralSign { Plus, Minus };

// S+_theta = { e^{(tan(theta) - i) t} : t >= 0 }, S-_theta its conjugate.
// theta in (0, pi/4]; the half-line integral additionally needs theta < pi/4.
struct SpiralSpec {
  SpiralSign sign = SpiralSign::Plus;
  double theta = 0.0;
};

struct QuadratureSpec {
  double tol = 1e-9;       // absolute target for one half-integral
  double cutoff = 0.0;     // upper integration limit; 0 = derive from tol and theta
  std::size_t max_panels = 1 << 14;
};

Complex spiral_point(const SpiralSpec& spec, double t);

/// min_{t>=0} |z - spiral_point(t)| to relative accuracy ~1e-6 (grid over the
/// windings, then local refinement).
double spiral_distance(const SpiralSpec& spec, Complex z);

/// Radius at which the spiral's first winding crosses the ray through z:
/// e^{tan(theta) * tau} with tau = (-arg z mod 2pi) for Plus, mirrored for
/// Minus. Points with |z| below this radius lie in the origin-side region
/// bounded by the first turn (plus the unit disc), where the half-line
/// integral evaluates the branch glued from the origin.
double first_winding_radius(const SpiralSpec& spec, Complex z);

bool in_origin_winding(const SpiralSpec& spec, Complex z);

/// true iff z is in the origin-side region of G(sign,theta) with clearance:
/// in_origin_winding && spiral_distance > margin.
bool in_G_theta(const SpiralSpec& spec, Complex z, double margin);

struct ThetaSelection {
  double theta = 0.0;
  double margin = 0.0;  // min over both signs of the spiral distance at theta
  SpiralSpec plus() const { return {SpiralSign::Plus, theta}; }
  SpiralSpec minus() const { return {SpiralSign::Minus, theta}; }
};

/// Picks one angle for both signs, maximizing min(dist+, dist-) over
/// theta in [0.01, pi/4 - 0.01] (coarse scan + golden section). Throws
/// NoValidAngle when no angle reaches min_margin (z outside or too near the
/// boundary of the heart domain).
ThetaSelection select_theta(Complex z, double min_margin);

struct HalfContourResult {
  Complex value;
  double abs_error_estimate = 0.0;
  std::size_t nodes = 0;
};

/// Rotated half-line integral
///   f(sign=+) = (e^{i theta}/2 sqrt(pi)) Int_0^inf e^{-xi^2 e^{2 i theta}/4}
///               / (1 - z e^{ i sqrt(eps) xi e^{ i theta}}) dxi,
/// mirrored for sign=-. Adaptive Gauss-Kronrod on [0, cutoff] plus a
/// certified Gaussian tail bound. Requires z in the origin-side region;
/// throws MarginTooSmall when spiral_distance < 1e-6, NonConvergence when
/// max_panels is exhausted.
HalfContourResult eval_half_contour_full(Complex z, double eps, const SpiralSpec& spec,
                                         const QuadratureSpec& quad = {});
Complex eval_half_contour(Complex z, double eps, const SpiralSpec& spec,
                          const QuadratureSpec& quad = {});

/// |value| <= sqrt(1/cos 2theta) * (1 + |z|/dist(z, S_theta)); trivially true
/// as theta -> pi/4 where the bound diverges.
bool check_uniform_bound(Complex z, const SpiralSpec& spec, Complex value);

/// f_eps(z) by both half-contours at a select_theta angle; strategy Contour.
EvalResult eval_contour_f(Complex z, double eps, const QuadratureSpec& quad = {},
                          double min_margin = 1e-3);

}  // namespace thetasum
