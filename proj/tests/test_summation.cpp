#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "thetasum/summation.hpp"

using namespace thetasum;

namespace {

// brute-force partial sum in long double, independent of the library path
std::complex<long double> brute_theta(Complex z, double eps, int terms) {
  std::complex<long double> s = 0, zp = 1;
  std::complex<long double> zl{z.real(), z.imag()};
  for (int n = 0; n < terms; ++n) {
    s += std::exp(static_cast<long double>(-eps) * n * n) * zp;
    zp *= zl;
  }
  return s;
}

std::complex<long double> brute_negative_tail(Complex z, double eps, int terms) {
  std::complex<long double> s = 0;
  std::complex<long double> w = 1.0L / std::complex<long double>{z.real(), z.imag()};
  std::complex<long double> wp = 1;
  for (int m = 1; m <= terms; ++m) {
    wp *= w;
    s += std::exp(static_cast<long double>(-eps) * m * m) * wp;
  }
  return s;
}

double dist(Complex a, std::complex<long double> b) {
  return std::abs(std::complex<long double>{a.real(), a.imag()} - b);
}

}  // namespace

TEST_CASE("gamma_coefficient closed forms") {
  CHECK(gamma_coefficient(SummingMethod::Theta, 0, 0.37) == 1.0);
  CHECK(gamma_coefficient(SummingMethod::Lindelof, 0, 0.2) == 1.0);
  CHECK(gamma_coefficient(SummingMethod::Lindelof, 1, 0.2) == 1.0);
  CHECK(gamma_coefficient(SummingMethod::MittagLeffler, 0, 0.3) == 1.0);
  CHECK(gamma_coefficient(SummingMethod::GammaRatio, 0, 0.5) == 1.0);

  // Le Roy family: eps -> 0 is the identity limit ...
  for (std::size_t n : {1ul, 5ul, 17ul})
    CHECK(gamma_coefficient(SummingMethod::GammaRatio, n, 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-6));
  // ... and eps = 1 collapses to 1/n!
  CHECK(gamma_coefficient(SummingMethod::GammaRatio, 3, 1.0) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_coefficient(SummingMethod::GammaRatio, 2, 1.5), std::domain_error);
  CHECK_THROWS_AS(gamma_coefficient(SummingMethod::Theta, 2, 0.0), std::domain_error);

  CHECK(gamma_coefficient(SummingMethod::Theta, 4, 0.25) ==
        doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(gamma_coefficient(SummingMethod::MittagLeffler, 10, 0.1) ==
        doctest::Approx(1.0).epsilon(1e-12));  // 1/Gamma(2) = 1
}

TEST_CASE("theta n-th roots match the closed form exactly") {
  double eps = 0.3;
  for (std::size_t n = 1; n <= 40; ++n) {
    double root = std::pow(gamma_coefficient(SummingMethod::Theta, n, eps),
                           1.0 / static_cast<double>(n));
    CHECK(root == doctest::Approx(std::exp(-eps * static_cast<double>(n))).epsilon(1e-14));
  }
}

TEST_CASE("check_summing_conditions") {
  CHECK(check_summing_conditions(SummingMethod::Theta, 0.1, 10000).all_pass());
  CHECK(check_summing_conditions(SummingMethod::MittagLeffler, 0.1, 10000).all_pass());
  CHECK(check_summing_conditions(SummingMethod::GammaRatio, 0.1, 10000).all_pass());
  CHECK(check_summing_conditions(SummingMethod::Lindelof, 0.1, 10000).all_pass());

  // degenerate range: condition (c) cannot be concluded
  auto rep = check_summing_conditions(SummingMethod::Theta, 0.1, 1);
  CHECK(rep.root_decay == CheckOutcome::Inconclusive);
}

TEST_CASE("eval_direct at z = 0") {
  EvalResult r = eval_direct({0.0, 0.0}, 0.7);
  CHECK(r.value == Complex{1.0, 0.0});
  CHECK(r.strategy == Strategy::DirectSeries);
}

TEST_CASE("eval_direct (0.5, 0.01) against brute-force oracle") {
  EvalResult r = eval_direct({0.5, 0.0}, 0.01);
  CHECK(dist(r.value, brute_theta({0.5, 0.0}, 0.01, 100000)) <= 1e-12);
  CHECK(std::abs(r.value - Complex{2.0, 0.0}) < 0.06);  // 1/(1-z) up to O(eps)
}

TEST_CASE("eval_direct infeasible at (-20, 0.01)") {
  try {
    eval_direct({-20.0, 0.0}, 0.01);
    FAIL("expected InfeasibleCancellation");
  } catch (const InfeasibleCancellation& e) {
    double expected = std::pow(std::log(20.0), 2) / 0.04;
    CHECK(e.predicted_peak_log == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("the scanning guard also covers the classical families") {
  // MittagLeffler terms at (-1.5, 0.1) peak near e^54.7, far past the default
  // budget; the guard must fire during the scan rather than sum garbage
  CHECK_THROWS_AS(eval_direct({-1.5, 0.0}, 0.1, SummingMethod::MittagLeffler),
                  InfeasibleCancellation);
}

TEST_CASE("conjugate symmetry of eval_direct") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ur(0.1, 3.0), uphi(-kPi, kPi), ue(0.05, 1.0);
  for (int i = 0; i < 50; ++i) {
    Complex z = std::polar(ur(rng), uphi(rng));
    double eps = ue(rng);
    if (theta_peak_log(z, eps) > 25.0) continue;
    EvalResult a = eval_direct(z, eps);
    EvalResult b = eval_direct(std::conj(z), eps);
    CHECK(std::abs(b.value - std::conj(a.value)) <= 1e-13 * (1.0 + std::abs(a.value)));
  }
}

TEST_CASE("tail bound is sound") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> ur(0.1, 2.5), uphi(-kPi, kPi), ue(0.05, 1.0);
  TruncationPolicy loose;
  loose.tol = 1e-6;
  TruncationPolicy tight;
  tight.tol = 1e-14;
  for (int i = 0; i < 50; ++i) {
    Complex z = std::polar(ur(rng), uphi(rng));
    double eps = ue(rng);
    if (theta_peak_log(z, eps) > 25.0) continue;
    EvalResult a = eval_direct(z, eps, SummingMethod::Theta, loose);
    EvalResult b = eval_direct(z, eps, SummingMethod::Theta, tight);
    CHECK(std::abs(a.value - b.value) <= a.abs_error_estimate);
  }
}

TEST_CASE("peak_log_term tracks the analytic theta peak") {
  for (double r : {1.5, 3.0, 8.0}) {
    for (double eps : {0.1, 0.4}) {
      Complex z{-r, 0.0};
      if (theta_peak_log(z, eps) > 25.0) continue;
      EvalResult res = eval_direct(z, eps);
      double analytic = std::pow(std::log(r), 2) / (4.0 * eps);
      CHECK(std::abs(res.peak_log_term - analytic) <= std::max(1.0, eps));
    }
  }
}

TEST_CASE("negative_tail") {
  // geometric limit at z = 2: sum 2^-m -> 1 as eps -> 0
  CHECK(std::abs(negative_tail({2.0, 0.0}, 1e-4).value - Complex{1.0, 0.0}) <= 1e-3);

  // (-20, 0.001): brute oracle and the geometric value 1/(z-1) = -1/21
  EvalResult nt = negative_tail({-20.0, 0.0}, 0.001);
  CHECK(dist(nt.value, brute_negative_tail({-20.0, 0.0}, 0.001, 10000)) <= 1e-12);
  CHECK(std::abs(nt.value - Complex{-1.0 / 21.0, 0.0}) <= 1e-3);

  // purely 4-periodic phase at z = i
  EvalResult ni = negative_tail({0.0, 1.0}, 0.5);
  CHECK(dist(ni.value, brute_negative_tail({0.0, 1.0}, 0.5, 10000)) <= 1e-12);

  CHECK_THROWS_AS(negative_tail({0.0, 0.0}, 0.5), std::domain_error);
  CHECK_THROWS_AS(negative_tail({0.05, 0.0}, 0.001), InfeasibleCancellation);
}

TEST_CASE("eval_bilateral at z = 1") {
  // 1 + 2 sum_{m>=1} e^{-m^2}
  long double oracle = 1;
  for (int m = 1; m <= 20; ++m) oracle += 2 * std::exp(static_cast<long double>(-m * m));
  EvalResult h = eval_bilateral({1.0, 0.0}, 1.0);
  CHECK(h.value.imag() == 0.0);
  CHECK(std::abs(h.value.real() - static_cast<double>(oracle)) <= 1e-15 * oracle);
}

TEST_CASE("bilateral symmetry h(z) = h(1/z)") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ur(0.2, 5.0), uphi(-kPi, kPi), ue(0.2, 1.0);
  for (int i = 0; i < 100; ++i) {
    Complex z = std::polar(ur(rng), uphi(rng));
    double eps = ue(rng);
    EvalResult a = eval_bilateral(z, eps);
    EvalResult b = eval_bilateral(1.0 / z, eps);
    // 1/z carries its own rounding, which the result estimates cannot see
    double input_slack = 1e-14 * (1.0 + std::abs(a.value) + std::abs(b.value));
    CHECK(std::abs(a.value - b.value) <=
          a.abs_error_estimate + b.abs_error_estimate + input_slack);
  }
}

TEST_CASE("eval_bilateral definitional split") {
  Complex z{0.5, 0.0};
  double eps = 0.5;
  EvalResult h = eval_bilateral(z, eps);
  EvalResult f = eval_direct(z, eps);
  EvalResult nt = negative_tail(z, eps);
  CHECK(std::abs(h.value - (f.value + nt.value)) <= 1e-15);
  CHECK_THROWS_AS(eval_bilateral({0.0, 0.0}, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_bilateral({0.05, 0.0}, 0.001), InfeasibleCancellation);
}

TEST_CASE("max_terms exhaustion reports NonConvergence") {
  TruncationPolicy tiny;
  tiny.max_terms = 10;
  CHECK_THROWS_AS(eval_direct({0.99, 0.0}, 1e-6, SummingMethod::Theta, tiny), NonConvergence);
}

TEST_CASE("order_probe") {
  const double radii[] = {1e3, 1e6, 1e9, 1e12};
  std::vector<double> p = order_probe(0.1, radii);
  REQUIRE(p.size() == 4);
  // frozen from the log-domain oracle
  CHECK(p[0] == doctest::Approx(0.694281).epsilon(2e-5));
  CHECK(p[1] == doctest::Approx(0.446707).epsilon(2e-5));
  CHECK(p[2] == doctest::Approx(0.336839).epsilon(2e-5));
  CHECK(p[3] == doctest::Approx(0.273427).epsilon(2e-5));
  CHECK(p[0] > p[1]);
  CHECK(p[1] > p[2]);
  CHECK(p[2] > p[3]);

  // peak-term (Laplace) model: ln M ~ (ln r)^2/(4 eps) + ln sqrt(pi/eps)
  for (std::size_t i = 0; i < 4; ++i) {
    double lr = std::log(radii[i]);
    double model = std::log(lr * lr / 0.4 + std::log(std::sqrt(kPi / 0.1))) / lr;
    CHECK(std::abs(p[i] - model) <= 1e-3 * p[i]);
  }

  // larger eps gives a smaller probe at fixed r
  const double r6[] = {1e6};
  CHECK(order_probe(0.2, r6)[0] < order_probe(0.1, r6)[0]);

  const double bad1[] = {2.0, 1e3};
  CHECK_THROWS_AS(order_probe(0.1, bad1), std::domain_error);
  const double bad2[] = {1e3, 1e3};
  CHECK_THROWS_AS(order_probe(0.1, bad2), std::domain_error);
}

TEST_CASE("classical methods sum toward 1/(1-z) at moderate eps") {
  // brute long-double oracles at z = -0.5 where every method is feasible
  Complex z{-0.5, 0.0};
  TruncationPolicy policy;
  for (SummingMethod m : {SummingMethod::GammaRatio, SummingMethod::Lindelof,
                          SummingMethod::MittagLeffler}) {
    std::complex<long double> oracle = 0;
    for (int n = 0; n < 4000; ++n) {
      double g = gamma_coefficient(m, static_cast<std::size_t>(n), 0.2);
      oracle += static_cast<long double>(g) *
                std::pow(std::complex<long double>{-0.5L, 0.0L}, n);
      if (n > 50 && g < 1e-18) break;
    }
    EvalResult r = eval_direct(z, 0.2, m, policy);
    CHECK(dist(r.value, oracle) <= 1e-10);
  }
}
