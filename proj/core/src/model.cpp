#include "gpbound/model.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace gpbound {

namespace {

double phi_eff(double r, double E, double g, double v) {
  const double r2 = r * r;
  return -(g / 4) * r2 * r2 + 0.5 * (E - v) * r2;
}

// Adaptive Simpson with fixed absolute tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2;
  const double rm = (m + b) / 2;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f((a + b) / 2);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double quasi_energy(const StateVector& s, double v_local, const QuasiParams& p) {
  return 0.5 * s.dpsi * s.dpsi + phi_eff(s.psi, p.E, p.g, v_local);
}

JumpResidual delta_jump_residual(const StateVector& left, const StateVector& right,
                                 double strength) {
  return {right.psi - left.psi, right.dpsi - left.dpsi - strength * left.psi};
}

double quadrature_lapse(double r_from, double r_to, double U, const QuasiParams& p,
                        double v_local) {
  if (r_from == r_to) return 0.0;
  const double a = std::min(r_from, r_to);
  const double b = std::max(r_from, r_to);

  const auto radicand = [&](double r) { return 2 * (U - phi_eff(r, p.E, p.g, v_local)); };

  // Scale for deciding that an interior radicand value is truly negative.
  const double mid_rad = radicand((a + b) / 2);
  if (!(mid_rad > 0.0))
    throw std::domain_error(
        "quadrature_lapse: invalid-turning-point (radicand not positive inside "
        "the interval)");

  const auto integrand_of = [&](double r) {
    const double q = radicand(r);
    if (q <= 0.0)
      throw std::domain_error(
          "quadrature_lapse: invalid-turning-point (radicand not positive inside "
          "the interval)");
    return 1.0 / std::sqrt(q);
  };

  // d(radicand)/dr = -2 Phi'(r)
  const auto radicand_slope = [&](double r) {
    return 2 * p.g * r * r * r - 2 * (p.E - v_local) * r;
  };

  // Substitute r = a + s^2 (left half) and r = b - s^2 (right half) so that
  // simple turning points at the endpoints integrate smoothly.  At s = 0 the
  // transformed integrand has the limit 0 away from a turning point and
  // 2/sqrt(|rad'(r_turn)|) at one.
  const auto endpoint_value = [&](double r, double slope_sign) {
    const double slope = slope_sign * radicand_slope(r);
    if (radicand(r) > 1e-10 * std::max(1.0, std::abs(slope))) return 0.0;
    if (slope <= 0.0)
      throw std::domain_error("quadrature_lapse: invalid-turning-point (degenerate)");
    return 2.0 / std::sqrt(slope);
  };

  const double c = (a + b) / 2;
  const std::function<double(double)> left = [&](double s) {
    if (s == 0.0) return endpoint_value(a, +1.0);
    return 2 * s * integrand_of(a + s * s);
  };
  const std::function<double(double)> right = [&](double s) {
    if (s == 0.0) return endpoint_value(b, -1.0);
    return 2 * s * integrand_of(b - s * s);
  };

  const double tol = 1e-12;
  const double lapse = integrate_adaptive(left, 0.0, std::sqrt(c - a), tol) +
                       integrate_adaptive(right, 0.0, std::sqrt(b - c), tol);
  return lapse;
}

std::vector<CriticalPoint> critical_points(const QuasiParams& p, double v_local) {
  std::vector<CriticalPoint> out;
  const double lam2_origin = v_local - p.E;
  out.push_back({0.0, 0.0, CriticalKind::OriginBright,
                 lam2_origin < 0.0 ? Stability::Stable : Stability::Unstable});
  if (p.g != 0.0) {
    const double x2 = (p.E - v_local) / p.g;
    if (x2 > 0.0) {
      const double x = std::sqrt(x2);
      const double lam2 = 2 * (p.E - v_local);
      const Stability st = lam2 < 0.0 ? Stability::Stable : Stability::Unstable;
      out.push_back({x, 0.0, CriticalKind::DarkPairPlus, st});
      out.push_back({-x, 0.0, CriticalKind::DarkPairMinus, st});
    }
  }
  return out;
}

}  // namespace gpbound
