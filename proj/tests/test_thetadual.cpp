#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "thetasum/continuation.hpp"
#include "thetasum/thetadual.hpp"

using namespace thetasum;

namespace {

// brute-force H over an index window, in long double
std::complex<long double> brute_H(Complex zeta, double eps, int N) {
  std::complex<long double> z{zeta.real(), zeta.imag()};
  std::complex<long double> s = 0;
  for (int n = -N; n <= N; ++n) {
    std::complex<long double> d = z - static_cast<long double>(n) * 3.141592653589793238L;
    s += std::exp(-d * d / static_cast<long double>(eps));
  }
  return std::sqrt(3.141592653589793238L / static_cast<long double>(eps)) * s;
}

}  // namespace

TEST_CASE("dual_coordinate") {
  CHECK(dual_coordinate({1.0, 0.0}).zeta == Complex{0.0, 0.0});

  DualPoint di = dual_coordinate({0.0, 1.0});
  CHECK(di.zeta.real() == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(std::abs(di.zeta.imag()) <= 1e-16);

  DualPoint dr = dual_coordinate({1.2, 0.0});
  CHECK(dr.zeta.real() == 0.0);
  CHECK(dr.zeta.imag() == doctest::Approx(-std::log(1.2) / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(dual_coordinate({0.0, 0.0}), std::domain_error);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ur(0.1, 10.0), uphi(-kPi, kPi);
  for (int i = 0; i < 300; ++i) {
    Complex zeta = dual_coordinate(std::polar(ur(rng), uphi(rng))).zeta;
    CHECK(zeta.real() > -kPi / 2.0);
    CHECK(zeta.real() <= kPi / 2.0);
  }
}

TEST_CASE("eval_H at zeta = 0 is a positive real above sqrt(pi/eps)") {
  // the n = +/-1 correction 2 e^{-pi^2/eps} is visible in double down to
  // eps ~ 0.3 and vanishes below the ulp for smaller eps
  for (double eps : {0.5, 0.3}) {
    Complex h = eval_H(Complex{0.0, 0.0}, eps);
    CHECK(h.real() > std::sqrt(kPi / eps));
    CHECK(std::abs(h.imag()) <= 1e-14 * h.real());
  }
  CHECK(eval_H(Complex{0.0, 0.0}, 0.05).real() >= std::sqrt(kPi / 0.05));
}

TEST_CASE("eval_H periodicity and evenness") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(-1.2, 1.2), ue(0.05, 1.0);
  for (int i = 0; i < 60; ++i) {
    Complex zeta{ux(rng), uy(rng)};
    double eps = ue(rng);
    Complex a = eval_H(zeta, eps);
    double scale = 1.0 + std::abs(a);
    CHECK(std::abs(eval_H(zeta + Complex{kPi, 0.0}, eps) - a) <= 1e-10 + 4e-15 * scale);
    CHECK(std::abs(eval_H(-zeta, eps) - a) <= 1e-10 + 4e-15 * scale);
  }
}

TEST_CASE("Jacobi identity: bilateral series vs dual sum") {
  // the spec's worked example, both sides independent
  Complex z{0.3, 0.4};
  Complex lhs = eval_bilateral(z, 0.5).value;
  Complex rhs = eval_H(dual_coordinate(z), 0.5);
  CHECK(std::abs(lhs - rhs) <= 1e-10);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ur(0.2, 5.0), uphi(-kPi, kPi), ue(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    Complex zz = std::polar(ur(rng), uphi(rng));
    double eps = ue(rng);
    Complex a = eval_bilateral(zz, eps).value;
    Complex b = eval_H(dual_coordinate(zz), eps);
    CHECK(std::abs(a - b) <= 1e-10);
  }
}

TEST_CASE("eval_H split consistency H = H1 + H2 (brute force over Z1/Z2)") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> ux(-1.8, 1.8), uy(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    Complex zeta{ux(rng), uy(rng)};
    double eps = 0.25;
    DualDecomposition d = index_split(zeta);
    std::complex<long double> h1 = 0, h2 = 0;
    int N = d.z2_window + 60;
    for (int n = -N; n <= N; ++n) {
      std::complex<long double> zl{zeta.real(), zeta.imag()};
      std::complex<long double> w = zl - static_cast<long double>(n) * 3.141592653589793238L;
      std::complex<long double> t = std::exp(-w * w / static_cast<long double>(eps));
      if (std::find(d.z1.begin(), d.z1.end(), n) != d.z1.end())
        h1 += t;
      else
        h2 += t;
    }
    long double pref = std::sqrt(3.141592653589793238L / static_cast<long double>(eps));
    Complex h = eval_H(zeta, eps, 1e-13);
    std::complex<long double> sum = pref * (h1 + h2);
    CHECK(std::abs(std::complex<long double>{h.real(), h.imag()} - sum) <=
          1e-12 * (1.0L + std::abs(sum)));
  }
}

TEST_CASE("index_split worked examples") {
  DualDecomposition d0 = index_split({0.0, 0.0});
  CHECK(d0.z1 == std::vector<int>{0});
  REQUIRE(d0.lambdas.size() == 1);
  CHECK(d0.lambdas[0].first == Complex{0.0, 0.0});
  CHECK(d0.lambdas[0].second == 1);
  CHECK(d0.mu == 0.0);
  CHECK(d0.c_zeta == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-15));

  DualDecomposition dh = index_split({kPi / 2.0, 0.0});
  CHECK(dh.z1.empty());

  DualDecomposition dc = index_split({kPi / 2.0, kPi / 2.0});
  CHECK(dc.z1 == std::vector<int>{0, 1});
  REQUIRE(dc.lambdas.size() == 2);
  CHECK(dc.lambdas[0].second == 1);
  CHECK(dc.lambdas[1].second == 1);
  CHECK(std::abs(dc.lambdas[0].first - Complex{0.0, -kPi * kPi / 2.0}) <= 1e-12);
  CHECK(std::abs(dc.lambdas[1].first - Complex{0.0, kPi * kPi / 2.0}) <= 1e-12);
  CHECK(dc.mu == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("index_split against a wide brute-force scan") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> ux(-8.0, 8.0), uy(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    Complex zeta{ux(rng), uy(rng)};
    DualDecomposition d = index_split(zeta);
    std::vector<int> brute;
    int wide = d.z2_window + 150;
    for (int n = -wide; n <= wide; ++n) {
      Complex w = zeta - static_cast<double>(n) * kPi;
      if ((w * w).real() <= 0.0) brute.push_back(n);
    }
    CHECK(d.z1 == brute);

    // c_zeta certificate over scanned Z2 and the Lemma-StSer range beyond
    for (int n = -wide; n <= wide; ++n) {
      Complex w = zeta - static_cast<double>(n) * kPi;
      double re = (w * w).real();
      if (re > 0.0) {
        if (std::abs(n) <= d.z2_window)
          CHECK(re >= d.c_zeta * (static_cast<double>(n) * n + 1.0) - 1e-12);
        if (std::abs(n) > 4.0 * std::abs(zeta) / kPi)
          CHECK(re >= (n * kPi) * (n * kPi) / 2.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("h2_bound formula and soundness") {
  DualDecomposition d;
  d.c_zeta = 1.0;
  double expected = std::sqrt(10.0 * kPi) * std::exp(-10.0) + kPi * std::exp(-10.0);
  CHECK(h2_bound(d, 0.1) == doctest::Approx(expected).epsilon(1e-15));

  std::mt19937 rng(53);
  std::uniform_real_distribution<double> ux(-1.8, 1.8), uy(-1.3, 1.3);
  for (int i = 0; i < 50; ++i) {
    Complex zeta{ux(rng), uy(rng)};
    DualDecomposition dec = index_split(zeta);
    for (double eps : {0.5, 0.1, 0.02}) {
      // brute |H2| over Z2 only
      std::complex<long double> h2 = 0;
      int N = dec.z2_window + 60;
      for (int n = -N; n <= N; ++n) {
        if (std::find(dec.z1.begin(), dec.z1.end(), n) != dec.z1.end()) continue;
        std::complex<long double> zl{zeta.real(), zeta.imag()};
        std::complex<long double> w = zl - static_cast<long double>(n) * 3.141592653589793238L;
        h2 += std::exp(-w * w / static_cast<long double>(eps));
      }
      h2 *= std::sqrt(3.141592653589793238L / static_cast<long double>(eps));
      CHECK(static_cast<double>(std::abs(h2)) <= h2_bound(dec, eps) * (1.0 + 1e-12));
    }
    // decreasing in 1/eps once eps < c
    double c = dec.c_zeta;
    CHECK(h2_bound(dec, c / 4.0) < h2_bound(dec, c / 2.0));
  }
}

TEST_CASE("growth_envelope") {
  // dual of z = 1.2: single real lambda = (ln 1.2)^2/4
  DualDecomposition d = index_split(dual_coordinate({1.2, 0.0}).zeta);
  REQUIRE(d.z1 == std::vector<int>{0});
  double lambda = std::pow(std::log(1.2), 2) / 4.0;
  for (double eps : {0.01, 0.001}) {
    double expected = std::sqrt(kPi / eps) * std::exp(lambda / eps);
    CHECK(growth_envelope(d, eps) == doctest::Approx(expected).epsilon(1e-12));
  }

  // zeta = 0: pure sqrt(pi/eps) growth
  DualDecomposition d0 = index_split({0.0, 0.0});
  CHECK(growth_envelope(d0, 0.04) == doctest::Approx(std::sqrt(kPi / 0.04)).epsilon(1e-14));

  // empty Z1
  DualDecomposition dh = index_split({kPi / 2.0, 0.0});
  CHECK_THROWS_AS(growth_envelope(dh, 0.1), EmptyZ1);

  // purely imaginary lambdas: oscillating almost-periodic factor
  DualDecomposition dc = index_split({kPi / 2.0, kPi / 2.0});
  double sampled_sup = 0.0;
  for (int k = 1; k <= 40; ++k) {
    double eps = std::pow(2.0, -k / 4.0);
    double env = growth_envelope(dc, eps);
    double formula = std::sqrt(kPi / eps) * std::abs(2.0 * std::cos(kPi * kPi / (2.0 * eps)));
    CHECK(std::abs(env - formula) <= 1e-9 * (1.0 + formula));
    sampled_sup = std::max(sampled_sup, env);
  }
  CHECK(sampled_sup > 0.0);

  // log companion survives where the plain value overflows
  CHECK_THROWS_AS(growth_envelope(d, 1e-7), EvalOverflow);
  CHECK(growth_envelope_log(d, 1e-7) == doctest::Approx(lambda / 1e-7 +
        0.5 * std::log(kPi / 1e-7)).epsilon(1e-12));
}

TEST_CASE("divergence criterion along the eps schedule") {
  // Z1 nonempty: sampled max of |H| along eps = 2^-k must exceed 1e3
  for (Complex z : {Complex{1.2, 0.0}, Complex{3.0, 0.5}, Complex{1.0, 0.0}}) {
    DualPoint dp = dual_coordinate(z);
    if (index_split(dp.zeta).z1.empty()) continue;
    double max_log = -1e300;
    for (int k = 1; k <= 20; ++k)
      max_log = std::max(max_log, eval_H_log(dp, std::pow(2.0, -k)).log_abs);
    CHECK(max_log > std::log(1e3));
  }
  // Z1 empty: |H| -> 0 along the same schedule
  for (Complex z : {Complex{-20.0, 0.0}, Complex{-2.0, 0.0}, Complex{0.5, 0.5}}) {
    DualPoint dp = dual_coordinate(z);
    REQUIRE(index_split(dp.zeta).z1.empty());
    CHECK(std::abs(eval_H(dp, std::pow(2.0, -20))) < 1e-3);
  }
}

TEST_CASE("eval_dual_f") {
  // (-20, 1e-3): converges to 1/21
  EvalResult r = eval_dual_f({-20.0, 0.0}, 1e-3);
  CHECK(r.strategy == Strategy::DualTheta);
  CHECK(std::abs(r.value - Complex{1.0 / 21.0, 0.0}) <= 1e-2);

  // cross-check against the rotated-contour route
  ThetaSelection sel = select_theta({-20.0, 0.0}, 0.05);
  Complex contour = eval_half_contour({-20.0, 0.0}, 1e-3, sel.plus()) +
                    eval_half_contour({-20.0, 0.0}, 1e-3, sel.minus());
  CHECK(std::abs(r.value - contour) <= 1e-6);

  // envelope sharpness at z = 1.2
  EvalResult f12 = eval_dual_f({1.2, 0.0}, 1e-3);
  double env = growth_envelope(index_split(dual_coordinate({1.2, 0.0}).zeta), 1e-3);
  CHECK(std::abs(f12.value) / env > 0.98);
  CHECK(std::abs(f12.value) / env < 1.02);

  // definitional identity at a point where every route is feasible
  Complex z{2.0, 2.0};
  Complex lhs = eval_dual_f(z, 0.3).value;
  Complex rhs = eval_bilateral(z, 0.3).value - negative_tail(z, 0.3).value;
  CHECK(std::abs(lhs - rhs) <= 1e-10);

  CHECK_THROWS_AS(eval_dual_f({0.5, 0.0}, 0.1), std::domain_error);
}

TEST_CASE("brute_H agrees with eval_H at moderate scale") {
  Complex zeta{0.7, -0.4};
  Complex h = eval_H(zeta, 0.3, 1e-13);
  auto b = brute_H(zeta, 0.3, 40);
  CHECK(std::abs(std::complex<long double>{h.real(), h.imag()} - b) <= 1e-12);
}
