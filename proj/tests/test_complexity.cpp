#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "randnet/complexity.hpp"
#include "randnet/rng.hpp"

using namespace randnet;

TEST_CASE("closed-form complexity") {
  CHECK(c_closed_form(0.3) == 0.0);
  CHECK(c_closed_form(1.0) == 0.0);
  CHECK(c_closed_form(2.0) == doctest::Approx(std::log(2.0) - 0.375).epsilon(1e-15));
  CHECK(c_closed_form(2.0) == doctest::Approx(0.3181471805599453).epsilon(1e-12));
  // quadratic onset: c(1.1) ~ (0.1)^2 within 20%
  CHECK(c_closed_form(1.1) == doctest::Approx(0.00853332).epsilon(1e-5));
  CHECK(std::abs(c_closed_form(1.1) - 0.01) < 0.2 * 0.01);
  CHECK_THROWS_AS(c_closed_form(-1.0), std::invalid_argument);
}

TEST_CASE("closed form is continuous and flat at the transition") {
  CHECK(c_closed_form(1.0 + 1e-4) < 1e-7);
  const double deriv_above = (c_closed_form(1.0 + 2e-4) - c_closed_form(1.0)) / 2e-4;
  CHECK(std::abs(deriv_above) < 1e-3);
  const double deriv_below = (c_closed_form(1.0) - c_closed_form(1.0 - 2e-4)) / 2e-4;
  CHECK(deriv_below == 0.0);
}

TEST_CASE("quadrature agrees with the closed form") {
  for (double sigma : {1.2, 1.5, 2.0, 3.0}) {
    const auto e = c_quadrature(sigma, 400000, 555);
    CHECK(e.stderr_ > 0.0);
    CHECK(std::abs(e.value - c_closed_form(sigma)) < 3.0 * e.stderr_);
  }
}

TEST_CASE("quadrature vanishes below criticality") {
  const auto e = c_quadrature(0.5, 200000, 700);
  CHECK(std::abs(e.value) < 3.0 * e.stderr_ + 1e-12);
}

TEST_CASE("quadrature determinism and conjugation symmetry") {
  const auto a = c_quadrature(1.7, 10000, 42);
  const auto b = c_quadrature(1.7, 10000, 42);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
  // the integrand only sees |z - 1|, which is conjugation invariant
  Counter64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const double re = rng.next_uniform(-2, 2), im = rng.next_uniform(-2, 2);
    const double d1 = std::hypot(re - 1.0, im);
    const double d2 = std::hypot(re - 1.0, -im);
    CHECK(d1 == d2);
  }
}

TEST_CASE("harmonic circle integral") {
  // singularity inside the circle of integration: mean-value gives log(a)=0
  CHECK(harmonic_circle_integral(1.0, 0.5, 4096) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  // b > a: 2 pi log(b)
  CHECK(harmonic_circle_integral(1.0, 2.0, 4096) ==
        doctest::Approx(2.0 * 3.14159265358979324 * std::log(2.0)).epsilon(1e-10));
  CHECK(harmonic_circle_integral(1.0, 2.0, 4096) == doctest::Approx(4.355172180607204).epsilon(1e-9));
  // swap symmetry
  CHECK(harmonic_circle_integral(0.7, 1.9, 2048) ==
        doctest::Approx(harmonic_circle_integral(1.9, 0.7, 2048)).epsilon(1e-10));
  // integrable singularity at a = b: midpoint nodes straddle it
  CHECK(harmonic_circle_integral(1.3, 1.3, 8192) ==
        doctest::Approx(2.0 * 3.14159265358979324 * std::log(1.3)).epsilon(5e-4));
}

TEST_CASE("rho of epsilon") {
  CHECK(rho_of_epsilon(1.0) == 0.0);
  CHECK(rho_of_epsilon(0.8) == 0.0);

  // independent oracle: sign scan + bisection on tanh(x) - x/sigma
  auto oracle = [](double sigma) {
    auto g = [&](double x) { return std::tanh(x) - x / sigma; };
    double lo = 1e-12, hi = 20.0;
    for (int i = 0; i < 300; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(rho_of_epsilon(1.1) == doctest::Approx(oracle(1.1)).epsilon(1e-10));
  CHECK(rho_of_epsilon(1.1) == doctest::Approx(0.5532346324391).epsilon(1e-9));
  CHECK(rho_of_epsilon(2.0) == doctest::Approx(oracle(2.0)).epsilon(1e-10));

  // cubic Taylor limit: rho(1+eps) / sqrt(3 eps) -> 1
  const double r3 = rho_of_epsilon(1.001) / std::sqrt(3.0 * 0.001);
  const double r4 = rho_of_epsilon(1.0001) / std::sqrt(3.0 * 0.0001);
  CHECK(std::abs(r3 - 1.0) < 0.01);
  CHECK(std::abs(r4 - 1.0) < std::abs(r3 - 1.0));
}

TEST_CASE("modified sigmoid: exact zones and C1 blend") {
  for (double sigma : {1.05, 1.1, 1.2, 1.3}) {
    const auto s = build_modified_sigmoid(sigma);
    const double rho = s.rho, eta = s.eta;
    REQUIRE(rho > 0);
    REQUIRE(eta > 0);
    CHECK(sigmoid_eval(s, rho / 2) == rho / 2 / sigma);
    CHECK(sigmoid_eval(s, rho + 2 * eta) == std::tanh(rho + 2 * eta));

    // odd
    for (double x : {0.1, rho * 0.9, rho + 0.5 * eta, rho + 3 * eta})
      CHECK(sigmoid_eval(s, -x) == doctest::Approx(-sigmoid_eval(s, x)).epsilon(1e-15));

    // slope bounded by 1/sigma everywhere (this powers the no-fixed-point argument)
    for (int i = 0; i <= 2000; ++i) {
      const double x = -2.0 * (rho + eta) + 4.0 * (rho + eta) * i / 2000.0;
      CHECK(sigmoid_deriv(s, x) <= 1.0 / sigma + 1e-9);
      CHECK(sigmoid_deriv(s, x) >= 0.0);
    }

    // C1 across both blend boundaries: finite differences stay continuous
    for (double x0 : {rho, rho + eta}) {
      const double h = 1e-7;
      const double left = (sigmoid_eval(s, x0) - sigmoid_eval(s, x0 - h)) / h;
      const double right = (sigmoid_eval(s, x0 + h) - sigmoid_eval(s, x0)) / h;
      CHECK(std::abs(left - right) < 1e-6);
    }
  }
}

TEST_CASE("kac-rice monte carlo near and below criticality") {
  const auto below = kac_rice_mc(300, 0.5, 50, 101, 2);
  CHECK(std::abs(below.value) < 0.02);
  CHECK(below.samples == 50);

  const auto above = kac_rice_mc(500, 1.5, 50, 102, 2);
  CHECK(std::abs(above.value - c_closed_form(1.5)) < 0.02);
  CHECK(above.stderr_ > 0.0);
}

TEST_CASE("kac-rice estimates are deterministic and thread-count independent") {
  const auto a = kac_rice_mc(100, 1.5, 12, 7, 1);
  const auto b = kac_rice_mc(100, 1.5, 12, 7, 2);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("kac-rice converges toward c(sigma) with n") {
  // median over repetitions of the distance at n in {100, 300, 1000}
  const double target = c_closed_form(1.5);
  auto median_dist = [&](int n) {
    std::vector<double> d;
    for (std::uint64_t rep = 0; rep < 5; ++rep)
      d.push_back(std::abs(kac_rice_mc(n, 1.5, 20, 900 + rep, 2).value - target));
    std::sort(d.begin(), d.end());
    return d[2];
  };
  const double d100 = median_dist(100);
  const double d300 = median_dist(300);
  const double d1000 = median_dist(1000);
  CHECK(d300 <= d100);
  CHECK(d1000 <= d300);
}

TEST_CASE("edge thickness") {
  CHECK(edge_thickness(100, 1.0) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(edge_thickness(10000, 1.0) == doctest::Approx(1.01).epsilon(1e-15));
  const double t = 0.7;
  CHECK(edge_thickness(4 * 500, t) - 1.0 ==
        doctest::Approx((edge_thickness(500, t) - 1.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(edge_thickness(0, 1.0), std::invalid_argument);
}
