#include "thetasum/geometry.hpp"

#include <cmath>

#include "thetasum/thetadual.hpp"

namespace thetasum {

namespace {

double heart_margin(Complex z) {
  double r = std::abs(z);
  if (r == 0.0) return 1.0;  // e^{|phi|} - 0 with phi = 0
  double phi = normalize_phase(std::arg(z));
  return std::exp(std::abs(phi)) - r;
}

std::vector<int> dual_witness(Complex z) {
  return index_split(dual_coordinate(z).zeta).z1;
}

}  // namespace

const char* region_label_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::InsideG: return "InsideG";
    case RegionLabel::OutsideG: return "OutsideG";
    case RegionLabel::BoundaryBand: return "BoundaryBand";
  }
  return "?";
}

Complex heart_curve_point(double t) {
  if (!(t >= -kPi && t <= kPi)) throw std::domain_error("heart_curve_point: t in [-pi, pi]");
  double m = std::exp(std::abs(t));
  return {m * std::cos(t), m * std::sin(t)};
}

RegionVerdict in_heart(Complex z, double band_width) {
  if (!(band_width >= 0.0)) throw std::domain_error("band_width must be >= 0");
  RegionVerdict v;
  v.margin = heart_margin(z);
  if (v.margin > band_width) {
    v.label = RegionLabel::InsideG;
  } else if (v.margin < -band_width) {
    v.label = RegionLabel::OutsideG;
    v.witness_z1 = dual_witness(z);
  } else {
    v.label = RegionLabel::BoundaryBand;
  }
  return v;
}

ConePlaneClass cone_plane_classify(ConePlanePoint p) {
  ConePlaneClass c;
  // nearest two lattice multiples of pi suffice by monotonicity of |xi - n pi|
  double k = std::floor(p.xi / kPi);
  double mind = std::min(std::abs(p.xi - k * kPi), std::abs(p.xi - (k + 1) * kPi));
  c.in_gamma_plus = p.eta >= mind;
  c.in_gamma_minus = p.eta <= -mind;
  c.in_all_Q = mind > std::abs(p.eta);
  // T_0 is the open square with vertices 0, pi, (1 +/- i) pi/2:
  // |eta| + |xi' - pi/2| < pi/2 with xi' = xi mod pi
  double xr = p.xi - kPi * std::floor(p.xi / kPi);
  c.in_some_T = std::abs(p.eta) + std::abs(xr - kPi / 2.0) < kPi / 2.0;
  return c;
}

RegionVerdict classify_f(Complex z, double band_width) {
  if (!(band_width >= 0.0)) throw std::domain_error("band_width must be >= 0");
  RegionVerdict v;
  v.margin = heart_margin(z);
  if (z == Complex{1.0, 0.0}) {
    // the one boundary point the theorems pin down exactly
    v.label = RegionLabel::OutsideG;
    v.witness_z1 = dual_witness(z);
    return v;
  }
  if (std::abs(v.margin) <= band_width) {
    v.label = RegionLabel::BoundaryBand;
    return v;
  }
  // dual route: {1} plus the h-divergent points outside the closed unit disc
  bool outside;
  double r = std::abs(z);
  if (z == Complex{1.0, 0.0}) {
    outside = true;
  } else if (r > 1.0) {
    outside = !index_split(dual_coordinate(z).zeta).z1.empty();
  } else {
    outside = false;
  }
  if (outside) {
    v.label = RegionLabel::OutsideG;
    v.witness_z1 = dual_witness(z);
  } else {
    v.label = RegionLabel::InsideG;
  }
  return v;
}

double default_band_width(Complex z) { return 1e-9 * std::max(1.0, std::abs(z)); }

}  // namespace thetasum
