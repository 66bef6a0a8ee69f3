#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gpbound/elliptic.hpp"

using namespace gpbound;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: adaptive Simpson quadrature of the defining integrand
// 1/sqrt(1 - m^2 sin^2 theta).
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + (b - a) * i / n) * (i % 2 ? 4 : 2);
  return sum * (b - a) / n / 3;
}

double ellip_f_quadrature(double phi, double m) {
  const auto f = [m](double t) {
    const double s = std::sin(t);
    return 1.0 / std::sqrt(1.0 - m * m * s * s);
  };
  double prev = simpson(f, 0.0, phi, 64);
  for (int n = 128; n <= 1 << 20; n *= 2) {
    const double cur = simpson(f, 0.0, phi, n);
    if (std::abs(cur - prev) < 1e-14) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

TEST_CASE("ellip_f basics and quadrature oracle") {
  CHECK(ellip_f(0.0, 0.7) == 0.0);
  CHECK(ellip_f(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

  // K(0.6) against the defining integral
  const double k06 = ellip_f_quadrature(kPi / 2, 0.6);
  CHECK(ellip_f(kPi / 2, 0.6) == doctest::Approx(k06).epsilon(1e-13));
  CHECK(complete_k(0.6) == doctest::Approx(k06).epsilon(1e-13));

  // generic arguments
  for (double m : {0.1, 0.35, 0.8, 0.99}) {
    for (double phi : {0.2, 0.9, 1.4}) {
      CHECK(ellip_f(phi, m) ==
            doctest::Approx(ellip_f_quadrature(phi, m)).epsilon(1e-12));
    }
  }

  // odd in phi, increasing in phi
  CHECK(ellip_f(-0.8, 0.5) == doctest::Approx(-ellip_f(0.8, 0.5)).epsilon(1e-15));
  CHECK(ellip_f(1.0, 0.5) > ellip_f(0.9, 0.5));

  // quarter-period recurrence for large phi
  const double K = complete_k(0.4);
  CHECK(ellip_f(0.3 + 3 * kPi, 0.4) ==
        doctest::Approx(ellip_f(0.3, 0.4) + 6 * K).epsilon(1e-13));
}

TEST_CASE("ellip_f domain errors") {
  CHECK_THROWS_AS(ellip_f(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(ellip_f(0.5, 1.1), std::domain_error);
  CHECK_THROWS_AS(ellip_f(kPi / 2, 1.0), std::domain_error);  // divergent
  CHECK(ellip_f(0.5, 1.0) ==
        doctest::Approx(std::atanh(std::sin(0.5))).epsilon(1e-15));
}

TEST_CASE("complete_k values and divergence guard") {
  CHECK(complete_k(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(complete_k(0.5) ==
        doctest::Approx(ellip_f_quadrature(kPi / 2, 0.5)).epsilon(1e-13));
  CHECK(complete_k(0.5) == doctest::Approx(ellip_f(kPi / 2, 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(complete_k(1.0 - 1e-15), std::domain_error);
  CHECK_THROWS_AS(complete_k(1.0), std::domain_error);
  // still finite just inside the guard
  CHECK(complete_k(1.0 - 1e-8) > 9.0);
}

TEST_CASE("jacobi_am inverse pair and extension") {
  CHECK(jacobi_am(0.0, 0.5) == 0.0);
  CHECK(jacobi_am(1.3, 0.0) == doctest::Approx(1.3).epsilon(1e-15));

  CHECK(jacobi_am(ellip_f(0.9, 0.4), 0.4) == doctest::Approx(0.9).epsilon(1e-12));

  std::mt19937_64 rng(20250810);
  std::uniform_real_distribution<double> mdist(0.0, 1.0 - 1e-8);
  std::uniform_real_distribution<double> pdist(-kPi / 2, kPi / 2);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double m = mdist(rng);
    const double phi = pdist(rng);
    worst = std::max(worst, std::abs(jacobi_am(ellip_f(phi, m), m) - phi));
  }
  CHECK(worst < 1e-10);

  // am(u + 2K) = am(u) + pi
  const double K = complete_k(0.66);
  for (double u : {-3.0, 0.4, 7.7})
    CHECK(jacobi_am(u + 2 * K, 0.66) ==
          doctest::Approx(jacobi_am(u, 0.66) + kPi).epsilon(1e-12));

  // d am/du = dn via central differences
  const double h = 1e-5;
  for (double u : {-2.0, 0.3, 5.0}) {
    const double der = (jacobi_am(u + h, 0.8) - jacobi_am(u - h, 0.8)) / (2 * h);
    CHECK(der == doctest::Approx(jacobi_sn_cn_dn(u, 0.8).dn).epsilon(1e-8));
  }
}

TEST_CASE("jacobi_sn_cn_dn special values and identities") {
  const auto origin = jacobi_sn_cn_dn(0.0, 0.3);
  CHECK(origin.sn == 0.0);
  CHECK(origin.cn == 1.0);
  CHECK(origin.dn == 1.0);

  const auto circ = jacobi_sn_cn_dn(1.2, 0.0);
  CHECK(circ.sn == doctest::Approx(std::sin(1.2)).epsilon(1e-15));
  CHECK(circ.cn == doctest::Approx(std::cos(1.2)).epsilon(1e-15));
  CHECK(circ.dn == 1.0);

  const auto hyp = jacobi_sn_cn_dn(0.8, 1.0);
  CHECK(hyp.sn == doctest::Approx(std::tanh(0.8)).epsilon(1e-15));
  CHECK(hyp.cn == doctest::Approx(1.0 / std::cosh(0.8)).epsilon(1e-15));
  CHECK(hyp.dn == doctest::Approx(1.0 / std::cosh(0.8)).epsilon(1e-15));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mdist(0.0, 1.0);
  std::uniform_real_distribution<double> udist(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const double m = mdist(rng);
    const double u = udist(rng);
    const auto t = jacobi_sn_cn_dn(u, m);
    CHECK(std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) < 1e-12);
    CHECK(std::abs(t.dn * t.dn + m * m * t.sn * t.sn - 1.0) < 1e-12);
    CHECK(std::abs(t.sn) <= 1.0 + 1e-15);
    CHECK(std::abs(t.cn) <= 1.0 + 1e-15);
    CHECK(std::abs(t.dn) <= 1.0 + 1e-15);
  }
}

TEST_CASE("sn satisfies y'' = 2 m^2 y^3 - (1 + m^2) y") {
  // Second differences in long double keep the stencil noise below the
  // 1e-8 target; h = 1e-4, 5-point stencil.
  const long double h = 1e-4L;
  for (double md : {0.0, 0.3, 0.6, 0.9, 1.0 - 1e-8}) {
    const long double m = md;
    long double worst = 0.0L;
    for (int i = 0; i <= 200; ++i) {
      const long double u = -10.0L + 20.0L * i / 200;
      const auto y = [&](long double x) { return jacobi_sn_cn_dn(x, m).sn; };
      const long double d2 = (-y(u - 2 * h) + 16 * y(u - h) - 30 * y(u) +
                              16 * y(u + h) - y(u + 2 * h)) /
                             (12 * h * h);
      const long double yy = y(u);
      worst = std::max(worst,
                       std::abs(d2 - (2 * m * m * yy * yy * yy - (1 + m * m) * yy)));
    }
    CHECK(double(worst) < 1e-8);
  }
}

TEST_CASE("degenerate limits of sn") {
  for (double u : {-6.0, -1.1, 0.7, 4.2}) {
    CHECK(std::abs(jacobi_sn_cn_dn(u, 1e-8).sn - std::sin(u)) < 1e-6);
    CHECK(std::abs(jacobi_sn_cn_dn(u, 1.0 - 1e-8).sn - std::tanh(u)) < 1e-6);
  }
}
