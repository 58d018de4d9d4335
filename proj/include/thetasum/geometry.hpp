#pragma once

#include <optional>
#include <vector>

#include "thetasum/numerics.hpp"

namespace thetasum {

enum class RegionLabel { InsideG, OutsideG, BoundaryBand };

const char* region_label_name(RegionLabel label);

// margin is the signed distance proxy e^{|phi|} - r (positive inside).
// Verdicts with |margin| <= band_width are reported as BoundaryBand; exact
// curve points diverge in theory, but floating point cannot resolve the
// curve, so the band is a numerical category. Outside verdicts carry the
// dual-plane witness Z1.
struct RegionVerdict {
  RegionLabel label = RegionLabel::BoundaryBand;
  double margin = 0.0;
  std::optional<std::vector<int>> witness_z1;
};

struct ConePlanePoint {
  double xi = 0.0;
  double eta = 0.0;
};

struct ConePlaneClass {
  bool in_gamma_plus = false;   // eta >= min_n |xi - n pi|   (closed cone)
  bool in_gamma_minus = false;  // eta <= -min_n |xi - n pi|
  bool in_all_Q = false;        // Re((xi + i eta) - n pi)^2 > 0 for all n
  bool in_some_T = false;       // inside an open square T_0 + n pi
};

/// Heart curve point e^{|t|} e^{it}, t in [-pi, pi].
Complex heart_curve_point(double t);

/// Closed-form classification against r < e^{|phi|}.
RegionVerdict in_heart(Complex z, double band_width);

ConePlaneClass cone_plane_classify(ConePlanePoint p);

/// Divergence-set classification by the dual route (z = 1, or |z| > 1 with a
/// nonempty Z1 at the dual point); margin and the boundary band come from the
/// closed form. Agrees with in_heart outside the band.
RegionVerdict classify_f(Complex z, double band_width);

/// 1e-9 * max(1, |z|)
double default_band_width(Complex z);

}  // namespace thetasum
