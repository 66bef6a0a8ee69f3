#ifndef GPBOUND_ORACLE_HPP
#define GPBOUND_ORACLE_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "gpbound/potential.hpp"

namespace gpbound::oracle {

/// Fixed-step trajectory of the GP spinor ODE.  The grid is uniform; delta
/// defects are crossed with exact derivative jumps and segment edges split
/// the inner steps so the one-step method never straddles a discontinuity.
struct Trajectory {
  std::vector<double> tau;
  std::vector<StateVector> states;
  double scale_log = 0.0;  // accumulated rescaling exponent, linear runs only
  bool diverged = false;

  const StateVector& back() const { return states.back(); }
};

/// Classical 4th-order one-step integration of
///   psi'' = (V(tau) - E + g psi^2) psi
/// from tau_from to tau_to at step dtau.
Trajectory integrate(const Potential& v, double E, double g, const StateVector& s0,
                     double tau_from, double tau_to, double dtau);

/// Max over the grid of |-psi'' + (V + g psi^2) psi - E psi| with the second
/// derivative from the 5-point stencil at step h.  The grid must keep clear
/// of delta positions and segment edges by at least 2h.
template <class T, class Wave>
T gp_residual(Wave&& wave, const Potential& v, T E, T g, const std::vector<T>& grid,
              T h = T(1e-4)) {
  T worst = T(0);
  for (const T tau : grid) {
    const T f2 = wave(tau - 2 * h);
    const T f1 = wave(tau - h);
    const T f0 = wave(tau);
    const T g1 = wave(tau + h);
    const T g2 = wave(tau + 2 * h);
    const T d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * g1 - g2) / (12 * h * h);
    const T vloc = T(v.value(double(tau)));
    const T r = std::abs(-d2 + (vloc + g * f0 * f0) * f0 - E * f0);
    if (r > worst) worst = r;
  }
  return worst;
}

enum class ShootingCondition {
  GrowingMode,          // decaying-launch growing-coefficient zero at +tau_max
  SymmetricAtZero,      // psi'(0) = 0
  AntisymmetricAtZero,  // psi(0) = 0
};

struct ShootingOptions {
  double tau_max = 20.0;
  double dtau = 1e-3;
  /// When set, the launch amplitude is re-matched at every E so the decaying
  /// tail carries this amplitude at the support edge (nonlinear families).
  std::optional<double> wall_amplitude;
};

/// Independent eigenvalue search: bracket-and-bisect on the shooting
/// residual computed with the 4th-order integrator.  Same policy as
/// find_spectrum, different numerical path.
std::vector<double> shooting_eigenvalues(const Potential& v, double g,
                                         double psi_seed, ShootingCondition cond,
                                         double e_min, double e_max, int n_grid,
                                         const ShootingOptions& opt = {});

struct ParticleNumber {
  double value = 0.0;
  bool tail_warning = false;
};

/// Composite-Simpson integral of psi^2 over [tau_min, tau_max]; purely a
/// diagnostic.  Warns when the estimated tail mass beyond the range exceeds
/// 1e-12 or the wave is not decaying at the ends.
template <class Wave>
ParticleNumber particle_number(Wave&& wave, double tau_min, double tau_max,
                               double dtau) {
  ParticleNumber out;
  long n = std::lround(std::ceil((tau_max - tau_min) / dtau));
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const double h = (tau_max - tau_min) / double(n);
  const auto density = [&](double t) {
    const double p = wave(t);
    return p * p;
  };
  double sum = density(tau_min) + density(tau_max);
  for (long i = 1; i < n; ++i) sum += density(tau_min + h * double(i)) * (i % 2 ? 4 : 2);
  out.value = sum * h / 3;

  for (const double end : {tau_min, tau_max}) {
    const double sign = end == tau_min ? +1.0 : -1.0;
    const double a0 = std::abs(wave(end));
    const double a1 = std::abs(wave(end + sign * h));
    if (a0 >= a1 && a0 > 0.0) {  // not decaying toward the edge
      out.tail_warning = true;
      continue;
    }
    if (a0 == 0.0) continue;
    const double kappa = std::log(a1 / a0) / h;  // positive decay rate
    if (kappa <= 0.0 || a0 * a0 / (2 * kappa) > 1e-12) out.tail_warning = true;
  }
  return out;
}

}  // namespace gpbound::oracle

#endif
