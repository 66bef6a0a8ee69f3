#include "gpbound/square_well.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace gpbound {

namespace {

constexpr double kPi = std::numbers::pi;

double target_angle(Parity parity, int n) {
  return (parity == Parity::Symmetric ? double(n) : double(n) + 0.5) * kPi;
}

int parity_sign(Parity p) { return p == Parity::Symmetric ? +1 : -1; }

// alpha(tau) together with d(alpha)/d(tau); tau in [-tau0, 0].
std::pair<double, double> interior_angle(const WellConfig& cfg, double E, double tau,
                                         const EtaRoots& eta) {
  if (cfg.g > 0.0) {
    if (cfg.phi_b * cfg.phi_b > eta.eta2 * (1 + 1e-12))
      throw std::domain_error(
          "square_well: boundary-amplitude-too-large (phi_b^2 > eta2)");
    const double m = std::sqrt(eta.eta2 / eta.eta3);
    const double ratio = std::min(1.0, cfg.phi_b / std::sqrt(eta.eta2));
    const double rate = std::sqrt(cfg.g * eta.eta3 / 2);
    const double u = rate * (tau + cfg.tau0) + ellip_f(std::asin(ratio), m);
    const double alpha = jacobi_am(u, m) - kPi / 2;
    const double dn = jacobi_sn_cn_dn(u, m).dn;
    return {alpha, rate * dn};
  }
  if (cfg.phi_b * cfg.phi_b > eta.eta3 * (1 + 1e-12))
    throw std::domain_error(
        "square_well: boundary-amplitude-too-large (phi_b^2 > eta3)");
  const double m = std::sqrt(eta.eta3 / (eta.eta3 - eta.eta1));
  const double w2 = std::max(0.0, (eta.eta3 - cfg.phi_b * cfg.phi_b) / eta.eta3);
  const double rate = std::sqrt(-cfg.g * (eta.eta3 - eta.eta1) / 2);
  const double u = rate * (tau + cfg.tau0) - ellip_f(std::asin(std::sqrt(w2)), m);
  const double alpha = jacobi_am(u, m);
  const double dn = jacobi_sn_cn_dn(u, m).dn;
  return {alpha, rate * dn};
}

}  // namespace

EtaRoots eta_roots(const WellConfig& cfg, double E) {
  if (cfg.g == 0.0)
    throw std::invalid_argument("square_well: eta_roots needs g != 0");
  const double c = (E + cfg.v0) / cfg.g;
  const double prod = 2 * cfg.v0 / cfg.g * cfg.phi_b * cfg.phi_b;  // eta2 * eta3
  if (cfg.g > 0.0) {
    const double disc = c * c - prod;
    if (disc < 0.0)
      throw NoTurningPointError(
          "square_well: no-turning-point (negative discriminant, no interior wave "
          "at this E)");
    // the small root via the product form avoids cancellation as g -> 0
    const double eta3 = c + std::sqrt(disc);
    return {0.0, prod / eta3, eta3};
  }
  const double r = std::sqrt(c * c - prod);  // prod < 0 here
  const double eta1 = c - r;
  return {eta1, 0.0, prod / eta1};
}

double eta_cubic(const WellConfig& cfg, double E, double eta) {
  const double u2 = cfg.v0 * cfg.phi_b * cfg.phi_b / 2;
  return 4 * eta * (cfg.g / 2 * eta * eta - (E + cfg.v0) * eta + 2 * u2);
}

double alpha_interior(const WellConfig& cfg, double E, double tau) {
  if (tau < -cfg.tau0 - 1e-12 || tau > 1e-12)
    throw std::invalid_argument("square_well: alpha_interior wants tau in [-tau0, 0]");
  if (cfg.g == 0.0) {
    if (E + cfg.v0 <= 0.0)
      throw std::domain_error("square_well: linear interior needs E > -V0");
    const double k = std::sqrt(E + cfg.v0);
    const double ratio = std::min(1.0, std::sqrt((E + cfg.v0) / cfg.v0));
    return k * (tau + cfg.tau0) + std::asin(ratio) - kPi / 2;
  }
  return interior_angle(cfg, E, tau, eta_roots(cfg, E)).first;
}

double quantization_angle(const WellConfig& cfg, double E) {
  return alpha_interior(cfg, E, 0.0);
}

double exterior_tail(const WellConfig& cfg, double E, double tau) {
  if (std::abs(tau) < cfg.tau0 - 1e-12)
    throw std::invalid_argument("square_well: exterior_tail wants |tau| >= tau0");
  const auto t = detail::make_tail(cfg.v0, cfg.tau0, cfg.g, cfg.phi_b, E);
  return detail::tail_psi(t, -std::abs(tau));
}

WellWave::WellWave(const WellConfig& cfg, double E, Parity parity)
    : cfg_(cfg), E_(E), parity_(parity) {
  if (cfg_.g != 0.0) {
    eta_ = eta_roots(cfg_, E_);
    if (cfg_.g > 0.0 && cfg_.phi_b * cfg_.phi_b > eta_.eta2 * (1 + 1e-12))
      throw std::domain_error(
          "square_well: boundary-amplitude-too-large (phi_b^2 > eta2)");
    (void)detail::make_tail(cfg_.v0, cfg_.tau0, cfg_.g, cfg_.phi_b, E_);
  } else if (E + cfg.v0 <= 0.0) {
    throw std::domain_error("square_well: linear interior needs E > -V0");
  }
}

std::vector<double> linear_well_levels(double v0, double tau0, Parity parity) {
  // Continuous forms of the transcendental conditions: no tan/cot poles.
  const auto f = [&](double k) {
    const double kappa = std::sqrt(std::max(0.0, v0 - k * k));
    return parity == Parity::Symmetric
               ? k * std::sin(k * tau0) - kappa * std::cos(k * tau0)
               : k * std::cos(k * tau0) + kappa * std::sin(k * tau0);
  };
  const double k_max = std::sqrt(v0);
  const int n_scan = 4000;
  std::vector<double> roots;
  double prev_k = k_max * 1e-9;
  double prev_f = f(prev_k);
  for (int i = 1; i <= n_scan; ++i) {
    const double k = k_max * (double(i) / n_scan) * (1 - 1e-12);
    const double fk = f(k);
    if (prev_f == 0.0) roots.push_back(prev_k);
    else if (prev_f * fk < 0.0) {
      double a = prev_k, b = k;
      for (int it = 0; it < 200 && (b - a) > 1e-15 * k_max; ++it) {
        const double m = (a + b) / 2;
        (f(a) * f(m) <= 0.0 ? b : a) = m;
      }
      roots.push_back((a + b) / 2);
    }
    prev_k = k;
    prev_f = fk;
  }
  std::vector<double> energies;
  for (double k : roots) energies.push_back(k * k - v0);
  std::sort(energies.begin(), energies.end());
  return energies;
}

std::vector<WellBoundState> quantization_scan(const WellConfig& cfg, Parity parity,
                                              double e_min, double e_max, int n_grid) {
  if (n_grid < 2)
    throw std::invalid_argument("square_well: quantization_scan needs n_grid >= 2");
  std::vector<WellBoundState> out;
  e_max = std::min(e_max, -1e-12);
  if (!(e_min < e_max)) return out;

  if (cfg.g == 0.0) {
    const auto levels = linear_well_levels(cfg.v0, cfg.tau0, parity);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double E = levels[i];
      if (E < e_min || E > e_max) continue;
      WellBoundState st;
      st.E = E;
      st.n = int(i);
      st.parity = parity;
      st.wave = WellWave(cfg, E, parity);
      st.parity_residual = parity == Parity::Symmetric ? std::abs(st.wave.dpsi(0.0))
                                                       : std::abs(st.wave.psi(0.0));
      out.push_back(std::move(st));
    }
    return out;
  }

  const auto angle_or_nan = [&](double E) {
    try {
      return quantization_angle(cfg, E);
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  const double off = parity == Parity::Symmetric ? 0.0 : kPi / 2;
  std::vector<double> grid(n_grid), q(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    grid[i] = e_min + (e_max - e_min) * double(i) / double(n_grid - 1);
    q[i] = angle_or_nan(grid[i]);
  }

  for (int i = 0; i + 1 < n_grid; ++i) {
    if (std::isnan(q[i]) || std::isnan(q[i + 1])) continue;
    const double lo = std::min(q[i], q[i + 1]);
    const double hi = std::max(q[i], q[i + 1]);
    const int n_first = std::max(0, int(std::ceil((lo - off) / kPi - 1e-12)));
    for (int n = n_first; target_angle(parity, n) <= hi + 1e-12; ++n) {
      const double t = target_angle(parity, n);
      if (t < lo - 1e-12) continue;
      double a = grid[i], b = grid[i + 1];
      double fa = q[i] - t;
      bool failed = false;
      const double width_floor = 4e-16 * std::max(std::abs(a), std::abs(b));
      for (int it = 0; it < 200 && (b - a) > width_floor; ++it) {
        const double m = (a + b) / 2;
        const double qm = angle_or_nan(m);
        if (std::isnan(qm)) {
          failed = true;
          break;
        }
        if (fa * (qm - t) <= 0.0) b = m;
        else {
          a = m;
          fa = qm - t;
        }
      }
      if (failed) continue;
      double E = (a + b) / 2;

      // Polish on the parity condition itself: the mirrored evaluator is
      // only as smooth at tau = 0 as psi'(0) (or psi(0)) is small, so the
      // seam is driven to evaluation noise by a few secant steps.
      const auto parity_f = [&](double e) -> double {
        const WellWave w(cfg, e, parity);
        return parity == Parity::Symmetric ? w.dpsi(0.0) : w.psi(0.0);
      };
      try {
        double e0 = E - 2 * std::max(1e-12, width_floor);
        double e1 = E;
        double f0 = parity_f(e0);
        double f1 = parity_f(e1);
        for (int it = 0; it < 12 && f1 != f0 && std::abs(f1) > 0.0; ++it) {
          const double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
          if (!std::isfinite(e2) || std::abs(e2 - e1) > 10 * (b - a + 1e-9)) break;
          e0 = e1;
          f0 = f1;
          e1 = e2;
          f1 = parity_f(e1);
        }
        if (std::abs(f1) < std::abs(parity_f(E))) E = e1;
      } catch (const std::domain_error&) {
        // keep the bisection value
      }

      WellBoundState st;
      st.E = E;
      st.n = n;
      st.parity = parity;
      try {
        st.wave = WellWave(cfg, E, parity);
      } catch (const std::domain_error&) {
        continue;
      }
      st.parity_residual = parity == Parity::Symmetric ? std::abs(st.wave.dpsi(0.0))
                                                       : std::abs(st.wave.psi(0.0));
      out.push_back(std::move(st));
    }
  }

  std::sort(out.begin(), out.end(),
            [](const WellBoundState& a, const WellBoundState& b) { return a.E < b.E; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const WellBoundState& a, const WellBoundState& b) {
                          return std::abs(a.E - b.E) < 1e-9;
                        }),
            out.end());
  return out;
}

EnergyCurve energy_vs_g_curve(double v0, double tau0, double phi_b, Parity parity,
                              int n, double g_min, double g_max, int n_g) {
  if (n_g < 2 || !(g_min < g_max))
    throw std::invalid_argument("square_well: bad g range");

  const auto level_at = [&](double g) -> std::optional<double> {
    if (g == 0.0) {
      const auto levels = linear_well_levels(v0, tau0, parity);
      if (int(levels.size()) <= n) return std::nullopt;
      return levels[std::size_t(n)];
    }
    WellConfig cfg{v0, tau0, g, phi_b};
    const double extra = 2.0 + std::abs(g) * (phi_b * phi_b + 1.0);
    const auto states = quantization_scan(cfg, parity, -v0 - extra, -1e-9, 800);
    for (const auto& st : states)
      if (st.n == n) return st.E;
    return std::nullopt;
  };

  EnergyCurve curve;
  for (int i = 0; i < n_g; ++i) {
    const double g = g_min + (g_max - g_min) * double(i) / double(n_g - 1);
    const auto E = level_at(g);
    if (!E) {
      curve.truncated = true;
      if (!curve.points.empty()) break;  // level reached E = 0 and unbound
      continue;
    }
    curve.points.push_back({g, *E});
  }

  if (g_min < 0.0 && g_max > 0.0) {
    const auto e0 = level_at(0.0);
    double gp = 0.0, gm = 0.0;
    const double* ep = nullptr;
    const double* em = nullptr;
    double ep_v = 0.0, em_v = 0.0;
    for (const auto& pt : curve.points) {
      if (pt.g > 0.0 && (gp == 0.0 || pt.g < gp)) {
        gp = pt.g;
        ep_v = pt.E;
        ep = &ep_v;
      }
      if (pt.g < 0.0 && (gm == 0.0 || pt.g > gm)) {
        gm = pt.g;
        em_v = pt.E;
        em = &em_v;
      }
    }
    if (e0 && ep && em) {
      curve.has_slopes = true;
      curve.slope_plus = (ep_v - *e0) / gp;
      curve.slope_minus = (*e0 - em_v) / (-gm);
    }
  }
  return curve;
}

}  // namespace gpbound
