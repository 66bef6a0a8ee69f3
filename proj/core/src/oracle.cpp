#include "gpbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpbound/parallel.hpp"
#include "gpbound/propagator.hpp"

namespace gpbound::oracle {

namespace {

constexpr double kOverflowGuard = 1e150;
constexpr double kRenormAt = 1e100;

// One RK4 step over [t, t+h]; V must be smooth inside (t, t+h).  Stage
// evaluations at the endpoints are nudged inward so that a step ending
// exactly on a potential discontinuity samples its own side of it.
inline StateVector rk4_step(const Potential& v, double E, double g, double t,
                            double h, const StateVector& y) {
  const double nudge = 1e-9 * h;
  const double lo = t + nudge;
  const double hi = t + h - nudge;
  const auto f = [&](double tt, const StateVector& s) -> StateVector {
    const double tq = std::min(std::max(tt, lo), hi);
    return {s.dpsi, (v.value(tq) - E + g * s.psi * s.psi) * s.psi};
  };
  const StateVector k1 = f(t, y);
  const StateVector k2 =
      f(t + h / 2, {y.psi + h / 2 * k1.psi, y.dpsi + h / 2 * k1.dpsi});
  const StateVector k3 =
      f(t + h / 2, {y.psi + h / 2 * k2.psi, y.dpsi + h / 2 * k2.dpsi});
  const StateVector k4 = f(t + h, {y.psi + h * k3.psi, y.dpsi + h * k3.dpsi});
  return {y.psi + h / 6 * (k1.psi + 2 * k2.psi + 2 * k3.psi + k4.psi),
          y.dpsi + h / 6 * (k1.dpsi + 2 * k2.dpsi + 2 * k3.dpsi + k4.dpsi)};
}

}  // namespace

Trajectory integrate(const Potential& v, double E, double g, const StateVector& s0,
                     double tau_from, double tau_to, double dtau) {
  if (!(dtau > 0.0)) throw std::invalid_argument("oracle: integrate needs dtau > 0");
  if (tau_to < tau_from)
    throw std::invalid_argument("oracle: backward integration not supported");

  Trajectory out;
  const long n = std::max<long>(1, std::lround(std::ceil((tau_to - tau_from) / dtau)));
  const double h = (tau_to - tau_from) / double(n);
  out.tau.reserve(std::size_t(n) + 1);
  out.states.reserve(std::size_t(n) + 1);
  out.tau.push_back(tau_from);
  out.states.push_back(s0);

  StateVector s = s0;
  for (long i = 0; i < n; ++i) {
    const double a = tau_from + h * double(i);
    const double b = i + 1 == n ? tau_to : tau_from + h * double(i + 1);

    // split the step at segment edges and deltas; jump exactly at deltas
    std::vector<double> cuts = v.breakpoints(a, b);
    double t = a;
    auto advance_to = [&](double tt) {
      if (tt > t) s = rk4_step(v, E, g, t, tt - t, s);
      t = tt;
    };
    for (double c : cuts) {
      advance_to(c);
      for (const auto& d : v.deltas())
        if (std::abs(d.at - c) <= 1e-14 * std::max(1.0, std::abs(c)))
          s.dpsi += d.strength * s.psi;
    }
    advance_to(b);
    for (const auto& d : v.deltas()) {  // delta exactly at the step end
      const double tol = 1e-14 * std::max(1.0, std::abs(b));
      if (std::abs(d.at - b) <= tol && d.at > a + tol) {
        bool already = false;
        for (double c : cuts)
          if (c == d.at) already = true;
        if (!already) s.dpsi += d.strength * s.psi;
      }
    }

    if (!(std::abs(s.psi) < kOverflowGuard) || !(std::abs(s.dpsi) < kOverflowGuard)) {
      out.diverged = true;
      out.tau.push_back(b);
      out.states.push_back(s);
      return out;
    }
    if (g == 0.0) {
      const double norm = std::hypot(s.psi, s.dpsi);
      if (norm > kRenormAt) {
        s.psi /= norm;
        s.dpsi /= norm;
        out.scale_log += std::log(norm);
      }
    }
    out.tau.push_back(b);
    out.states.push_back(s);
  }
  return out;
}

std::vector<double> shooting_eigenvalues(const Potential& v, double g,
                                         double psi_seed, ShootingCondition cond,
                                         double e_min, double e_max, int n_grid,
                                         const ShootingOptions& opt) {
  if (n_grid < 2)
    throw std::invalid_argument("oracle: shooting needs n_grid >= 2");
  if (!(e_min < e_max)) return {};

  const double stop = cond == ShootingCondition::GrowingMode ? opt.tau_max : 0.0;

  const auto residual = [&](double E) -> double {
    const double vl = v.value(-opt.tau_max);
    if (!(E < vl)) throw std::domain_error("oracle: E above exterior floor");
    const double kappa_l = std::sqrt(vl - E);
    double seed = psi_seed;
    if (opt.wall_amplitude)
      seed = matched_seed(*opt.wall_amplitude, g, E,
                          v.empty() ? 0.0 : v.support_lo(), opt.tau_max);
    const StateVector s0{seed, seed * kappa_l};
    const auto traj = integrate(v, E, g, s0, -opt.tau_max, stop, opt.dtau);

    if (cond == ShootingCondition::SymmetricAtZero ||
        cond == ShootingCondition::AntisymmetricAtZero) {
      if (traj.diverged)
        return traj.back().psi > 0 ? kOverflowGuard : -kOverflowGuard;
      const StateVector& s = traj.back();
      return cond == ShootingCondition::SymmetricAtZero ? s.dpsi : s.psi;
    }

    // growing-mode condition at +tau_max
    const double vr = v.value(opt.tau_max);
    if (!(E < vr)) throw std::domain_error("oracle: E above exterior floor");
    const double kappa_r = std::sqrt(vr - E);
    if (traj.diverged)
      return traj.back().psi > 0 ? kOverflowGuard : -kOverflowGuard;
    const StateVector& s = traj.back();
    if (g < 0.0) {
      // exterior quasi-energy at the support exit; see find_spectrum
      const StateVector& e = [&]() -> const StateVector& {
        const double pos = v.empty() ? 0.0 : v.support_hi();
        for (std::size_t i = 0; i < traj.tau.size(); ++i)
          if (traj.tau[i] >= pos - 1e-12) return traj.states[i];
        return traj.states.back();
      }();
      const double p2 = e.psi * e.psi;
      return 0.5 * e.dpsi * e.dpsi + 0.5 * (E - vr) * p2 - g / 4 * p2 * p2;
    }
    const double cg = (s.dpsi + kappa_r * s.psi) / (2 * kappa_r);
    const double cd = (kappa_r * s.psi - s.dpsi) / (2 * kappa_r);
    const double norm = std::hypot(cg, cd);
    return norm > 0.0 ? cg / norm : 0.0;
  };

  std::vector<double> grid(static_cast<std::size_t>(n_grid), 0.0);
  std::vector<double> val(static_cast<std::size_t>(n_grid),
                          std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n_grid; ++i)
    grid[std::size_t(i)] = e_min + (e_max - e_min) * double(i) / double(n_grid - 1);
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      val[i] = residual(grid[i]);
    } catch (const std::domain_error&) {
    }
  });

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::isnan(val[i]) || std::isnan(val[i + 1])) continue;
    if (val[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if ((val[i] < 0.0) == (val[i + 1] < 0.0)) continue;
    double a = grid[i], b = grid[i + 1], fa = val[i];
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
      const double m = (a + b) / 2;
      double fm;
      try {
        fm = residual(m);
      } catch (const std::domain_error&) {
        break;
      }
      if ((fa < 0.0) == (fm < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back((a + b) / 2);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());
  return roots;
}

}  // namespace gpbound::oracle
