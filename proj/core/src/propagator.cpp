#include "gpbound/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpbound/parallel.hpp"

namespace gpbound {

namespace {

constexpr double kOverflowGuard = 1e150;
constexpr double kLargeF = 1e30;

// Walks [from, to] piece by piece between potential breakpoints, calling
// slice(a, b, n_sub) per piece and kick(strength) for every delta with
// position in (from, to].  Returns false if a callback asked to stop.
template <class Slice, class Kick>
bool walk_pieces(const Potential& v, double from, double to, long n_steps,
                 Slice&& slice, Kick&& kick) {
  if (to < from)
    throw std::invalid_argument("propagator: backward propagation not supported");
  if (to == from) return true;  // (from, to] is empty, nothing to cross
  std::vector<double> bounds;
  bounds.push_back(from);
  for (double b : v.breakpoints(from, to)) bounds.push_back(b);
  bounds.push_back(to);

  const double total = to - from;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i];
    const double b = bounds[i + 1];
    const long n_sub = std::max<long>(1, std::lround(double(n_steps) * (b - a) / total));
    if (!slice(a, b, n_sub)) return false;
    for (const auto& d : v.deltas()) {
      const double tol = 1e-14 * std::max(1.0, std::abs(b));
      if (std::abs(d.at - b) <= tol && d.at > from + tol) {
        if (!kick(d.strength)) return false;
      }
    }
  }
  return true;
}

struct ExteriorModes {
  double kappa_l = 0.0;
  double kappa_r = 0.0;
  double v_r = 0.0;
};

ExteriorModes exterior_modes(const Potential& v, double E, double tau_max) {
  const double vl = v.value(-tau_max);
  const double vr = v.value(tau_max);
  if (!(E < vl) || !(E < vr))
    throw std::domain_error(
        "propagator: not-a-bound-state-regime (E must lie below the exterior "
        "potential floor)");
  return {std::sqrt(vl - E), std::sqrt(vr - E), vr};
}

}  // namespace

TransferMatrix interval_propagator(double v_const, double E, double dtau) {
  if (dtau < 0.0)
    throw std::invalid_argument("propagator: interval_propagator needs dtau >= 0");
  if (dtau == 0.0) return TransferMatrix::identity();
  const double w2 = v_const - E;
  const double x = w2 * dtau * dtau;
  if (std::abs(x) < 1e-10) {
    const double c = 1 + x / 2 * (1 + x / 12);
    const double s = dtau * (1 + x / 6 * (1 + x / 20));  // sinh(w t)/w
    return {c, w2 * s, s, c};
  }
  if (w2 > 0.0) {
    const double w = std::sqrt(w2);
    const double ch = std::cosh(w * dtau);
    const double sh = std::sinh(w * dtau);
    return {ch, w * sh, sh / w, ch};
  }
  const double w = std::sqrt(-w2);
  const double cs = std::cos(w * dtau);
  const double sn = std::sin(w * dtau);
  return {cs, -w * sn, sn / w, cs};
}

TransferMatrix delta_kick(double strength) { return {1.0, strength, 0.0, 1.0}; }

CombLayering comb_layering(const Potential& v, double from, double to, int n) {
  if (n < 1) throw std::invalid_argument("propagator: comb needs n >= 1");
  if (!(to > from)) throw std::invalid_argument("propagator: comb needs to > from");
  CombLayering comb;
  comb.dtau = (to - from) / n;
  comb.tau0 = from + comb.dtau / 2;
  comb.strengths.resize(std::size_t(n));
  for (int i = 0; i < n; ++i)
    comb.strengths[std::size_t(i)] = v.value(comb.tau0 + i * comb.dtau) * comb.dtau;
  return comb;
}

TransferMatrix comb_propagator(const CombLayering& comb, const Potential& v, double E,
                               double from, double to) {
  // Merge comb kicks with the potential's native deltas, free flight between.
  struct Event {
    double pos;
    double strength;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < comb.strengths.size(); ++i)
    events.push_back({comb.tau0 + double(i) * comb.dtau, comb.strengths[i]});
  for (const auto& d : v.deltas())
    if (d.at > from && d.at <= to) events.push_back({d.at, d.strength});
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.pos < b.pos; });

  TransferMatrix m = TransferMatrix::identity();
  double t = from;
  for (const auto& e : events) {
    m = interval_propagator(0.0, E, e.pos - t) * m;
    m = delta_kick(e.strength) * m;
    t = e.pos;
  }
  m = interval_propagator(0.0, E, to - t) * m;
  return m;
}

TransferMatrix ordered_exponential(const Potential& v, double E, double tau_from,
                                   double tau_to, long n_steps) {
  if (n_steps < 1) throw std::invalid_argument("propagator: n_steps >= 1 required");
  TransferMatrix m = TransferMatrix::identity();
  walk_pieces(
      v, tau_from, tau_to, n_steps,
      [&](double a, double b, long n_sub) {
        const double dt = (b - a) / double(n_sub);
        for (long j = 0; j < n_sub; ++j) {
          const double mid = a + (double(j) + 0.5) * dt;
          m = interval_propagator(v.value(mid), E, dt) * m;
        }
        return true;
      },
      [&](double strength) {
        m = delta_kick(strength) * m;
        return true;
      });
  return m;
}

namespace {

// Signed, scale-normalised growing-mode coefficient at +tau_max.
double linear_shot(const Potential& v, double E, double tau_max, long n_steps,
                   double seed) {
  if (!(seed > 0.0))
    throw std::invalid_argument("propagator: launch seed must be positive");
  const auto modes = exterior_modes(v, E, tau_max);
  StateVector r{seed, seed * modes.kappa_l};
  walk_pieces(
      v, -tau_max, tau_max, n_steps,
      [&](double a, double b, long n_sub) {
        const double dt = (b - a) / double(n_sub);
        for (long j = 0; j < n_sub; ++j) {
          const double mid = a + (double(j) + 0.5) * dt;
          r = interval_propagator(v.value(mid), E, dt).apply(r);
          const double norm = std::hypot(r.psi, r.dpsi);
          if (norm > 0.0) {
            r.psi /= norm;  // positive rescaling cannot move the zeros
            r.dpsi /= norm;
          }
        }
        return true;
      },
      [&](double strength) {
        r = delta_kick(strength).apply(r);
        return true;
      });
  const double cg = (r.dpsi + modes.kappa_r * r.psi) / (2 * modes.kappa_r);
  const double cd = (modes.kappa_r * r.psi - r.dpsi) / (2 * modes.kappa_r);
  const double norm = std::hypot(cg, cd);
  return norm > 0.0 ? cg / norm : 0.0;
}

}  // namespace

double spectral_function_linear(const Potential& v, double E, double tau_max,
                                long n_steps, double seed) {
  return std::abs(linear_shot(v, E, tau_max, n_steps, seed));
}

StateVector nonlinear_step(const StateVector& s, double v_local, double E, double g,
                           double dtau) {
  if (!(dtau > 0.0)) throw std::invalid_argument("propagator: nonlinear_step dtau > 0");
  StateVector k = s;
  k.dpsi += g * s.psi * s.psi * s.psi * dtau;
  return interval_propagator(v_local, E, dtau).apply(k);
}

const StateVector& PropagationResult::state_at(double pos) const {
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (tau[i] >= pos - 1e-12) return states[i];
  return states.back();
}

PropagationResult trotter_propagate(const StateVector& s0, const Potential& v,
                                    double E, double g, double tau_from, double tau_to,
                                    long n_steps, Splitting splitting) {
  if (n_steps < 1) throw std::invalid_argument("propagator: n_steps >= 1 required");
  PropagationResult out;
  out.tau.push_back(tau_from);
  out.states.push_back(s0);
  StateVector s = s0;

  const auto blown = [&](const StateVector& x) {
    return !(std::abs(x.psi) < kOverflowGuard) || !(std::abs(x.dpsi) < kOverflowGuard);
  };

  walk_pieces(
      v, tau_from, tau_to, n_steps,
      [&](double a, double b, long n_sub) {
        const double dt = (b - a) / double(n_sub);
        for (long j = 0; j < n_sub; ++j) {
          const double mid = a + (double(j) + 0.5) * dt;
          const double v_mid = v.value(mid);
          if (splitting == Splitting::Lie) {
            s = nonlinear_step(s, v_mid, E, g, dt);
          } else {
            s.dpsi += g * s.psi * s.psi * s.psi * (dt / 2);
            s = interval_propagator(v_mid, E, dt).apply(s);
            s.dpsi += g * s.psi * s.psi * s.psi * (dt / 2);
          }
          out.tau.push_back(j + 1 == n_sub ? b : a + double(j + 1) * dt);
          out.states.push_back(s);
          if (blown(s)) {
            out.diverged = true;
            out.escape_sign = s.psi != 0.0 ? (s.psi > 0.0 ? 1.0 : -1.0)
                                           : (s.dpsi > 0.0 ? 1.0 : -1.0);
            return false;
          }
        }
        return true;
      },
      [&](double strength) {
        s.dpsi += strength * s.psi;
        out.states.back() = s;  // kick lands exactly on the recorded boundary
        return true;
      });
  return out;
}

double matched_seed(double wall_amplitude, double g, double E, double wall_pos,
                    double tau_max) {
  if (!(wall_amplitude > 0.0))
    throw std::invalid_argument("propagator: wall amplitude must be positive");
  if (!(E < 0.0)) throw std::domain_error("propagator: matched_seed needs E < 0");
  const double kappa = std::sqrt(-E);
  const double reach = tau_max + wall_pos;  // distance from -tau_max to the wall
  if (g > 0.0) {
    const double amp = std::sqrt(-2 * E / g);
    return 2 * amp * std::exp(-std::asinh(amp / wall_amplitude) - kappa * reach);
  }
  if (g < 0.0) {
    const double amp = std::sqrt(2 * E / g);
    if (wall_amplitude > amp)
      throw std::domain_error(
          "propagator: amplitude-exceeds-soliton-peak (no decaying tail)");
    return 2 * amp * std::exp(-std::acosh(amp / wall_amplitude) - kappa * reach);
  }
  return wall_amplitude * std::exp(-kappa * reach);
}

namespace {

struct NonlinearShot {
  double f = 0.0;     // reported spectral value
  double disc = 0.0;  // signed root discriminator
};

NonlinearShot nonlinear_shot(const Potential& v, double E, double g, double psi_seed,
                             double tau_max, long n_steps, Splitting splitting) {
  if (!(psi_seed > 0.0))
    throw std::invalid_argument("propagator: psi_seed must be positive");
  const auto modes = exterior_modes(v, E, tau_max);
  const StateVector s0{psi_seed, psi_seed * modes.kappa_l};
  const auto res =
      trotter_propagate(s0, v, E, g, -tau_max, tau_max, n_steps, splitting);
  if (res.diverged) return {kLargeF, res.escape_sign * kLargeF};

  const double exit_pos = v.empty() ? 0.0 : v.support_hi();
  const StateVector exit = res.state_at(exit_pos);
  const double wall = std::max(std::abs(exit.psi), 1e-300);

  const StateVector& end = res.back();
  const double cg = (end.dpsi + modes.kappa_r * end.psi) / (2 * modes.kappa_r);
  const double f = std::abs(cg) / wall;

  if (g < 0.0) {
    // Exterior quasi-energy at the support exit: conserved past the support
    // and zero exactly on decaying solutions.  The raw coefficient at
    // +tau_max oscillates once saturating trajectories leave the linear
    // regime, so it cannot drive the bracketing here.
    const double p2 = exit.psi * exit.psi;
    const double u_exit = 0.5 * exit.dpsi * exit.dpsi +
                          0.5 * (E - modes.v_r) * p2 - g / 4 * p2 * p2;
    return {f, u_exit / (wall * wall * modes.kappa_r * modes.kappa_r)};
  }
  return {f, cg / wall};
}

}  // namespace

double spectral_function_nonlinear(const Potential& v, double E, double g,
                                   double psi_seed, double tau_max, long n_steps,
                                   Splitting splitting) {
  return nonlinear_shot(v, E, g, psi_seed, tau_max, n_steps, splitting).f;
}

SpectralScan find_spectrum(const SpectralScanRequest& req) {
  if (req.e_grid.size() < 2)
    throw std::invalid_argument("propagator: spectral scan needs >= 2 grid points");
  if (!std::is_sorted(req.e_grid.begin(), req.e_grid.end()))
    throw std::invalid_argument("propagator: spectral scan grid must be sorted");

  SpectralScan scan;
  scan.kind = req.kind;
  scan.e_grid = req.e_grid;
  scan.f_values.assign(req.e_grid.size(), std::numeric_limits<double>::quiet_NaN());

  const auto eval = [&](double E) -> std::pair<double, double> {  // {f, disc}
    if (req.kind == SpectralKind::Linear) {
      const double s =
          linear_shot(req.potential, E, req.tau_max, req.n_steps, req.psi_seed);
      return {std::abs(s), s};
    }
    double seed = req.psi_seed;
    if (req.wall_amplitude)
      seed = matched_seed(*req.wall_amplitude, req.g, E,
                          req.potential.empty() ? 0.0 : req.potential.support_lo(),
                          req.tau_max);
    const auto shot = nonlinear_shot(req.potential, E, req.g, seed, req.tau_max,
                                     req.n_steps, req.splitting);
    return {shot.f, shot.disc};
  };

  std::vector<double> disc(req.e_grid.size(),
                           std::numeric_limits<double>::quiet_NaN());
  parallel_for(req.e_grid.size(), [&](std::size_t i) {
    try {
      const auto [f, d] = eval(req.e_grid[i]);
      scan.f_values[i] = f;
      disc[i] = d;
    } catch (const std::domain_error&) {
      // outside the bound-state regime at this grid point; leave NaN
    }
  });

  const auto disc_at = [&](double E) -> double {
    try {
      return eval(E).second;
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  const auto refine = [&](double lo, double hi, double f_lo) {
    SpectralRoot root;
    root.bracket_lo = lo;
    root.bracket_hi = hi;
    double a = lo, b = hi, fa = f_lo;
    int it = 0;
    while (b - a > req.root_tol && it < 200) {
      const double m = (a + b) / 2;
      const double fm = disc_at(m);
      ++it;
      if (std::isnan(fm)) break;
      if ((fa <= 0.0) == (fm <= 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    root.E = (a + b) / 2;
    root.iterations = it;
    const double res = disc_at(root.E);
    root.residual = std::isnan(res) ? res : std::abs(res);
    return root;
  };

  for (std::size_t i = 0; i + 1 < disc.size(); ++i) {
    const double da = disc[i];
    const double db = disc[i + 1];
    if (std::isnan(da) || std::isnan(db)) continue;
    if (da == 0.0) {
      SpectralRoot r;
      r.E = req.e_grid[i];
      r.bracket_lo = r.bracket_hi = req.e_grid[i];
      r.residual = 0.0;
      scan.roots.push_back(r);
      continue;
    }
    if ((da < 0.0) != (db < 0.0))
      scan.roots.push_back(refine(req.e_grid[i], req.e_grid[i + 1], da));
  }

  // Even-multiplicity dips: local minima of F already below bracket_tol.
  for (std::size_t i = 1; i + 1 < scan.f_values.size(); ++i) {
    const double f = scan.f_values[i];
    if (std::isnan(f) || f >= req.bracket_tol) continue;
    if (!(f <= scan.f_values[i - 1] && f <= scan.f_values[i + 1])) continue;
    bool covered = false;
    for (const auto& r : scan.roots)
      if (r.E >= req.e_grid[i - 1] && r.E <= req.e_grid[i + 1]) covered = true;
    if (covered) continue;
    double a = req.e_grid[i - 1], b = req.e_grid[i + 1];
    for (int it = 0; it < 100 && (b - a) > req.root_tol; ++it) {
      const double m1 = a + (b - a) / 3;
      const double m2 = b - (b - a) / 3;
      double f1, f2;
      try {
        f1 = eval(m1).first;
        f2 = eval(m2).first;
      } catch (const std::domain_error&) {
        break;
      }
      (f1 <= f2 ? b : a) = (f1 <= f2 ? m2 : m1);
    }
    SpectralRoot r;
    r.E = (a + b) / 2;
    r.bracket_lo = req.e_grid[i - 1];
    r.bracket_hi = req.e_grid[i + 1];
    r.iterations = 100;
    try {
      r.residual = eval(r.E).first;
    } catch (const std::domain_error&) {
      continue;
    }
    if (r.residual <= req.bracket_tol) scan.roots.push_back(r);
  }

  std::sort(scan.roots.begin(), scan.roots.end(),
            [](const SpectralRoot& a, const SpectralRoot& b) { return a.E < b.E; });
  scan.roots.erase(std::unique(scan.roots.begin(), scan.roots.end(),
                               [](const SpectralRoot& a, const SpectralRoot& b) {
                                 return std::abs(a.E - b.E) < 1e-9;
                               }),
                   scan.roots.end());
  return scan;
}

}  // namespace gpbound
