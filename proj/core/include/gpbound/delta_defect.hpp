#ifndef GPBOUND_DELTA_DEFECT_HPP
#define GPBOUND_DELTA_DEFECT_HPP

#include <cmath>
#include <stdexcept>

#include "gpbound/potential.hpp"

namespace gpbound {

/// Raised when the requested parameters admit no bound state (threshold
/// violations, wrong coupling branch and the like).  The CLI maps this
/// family to its no-solution-found exit status.
class NoBoundStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class DeltaBranch { BrightRepulsive, BrightAttractive, LogQuadrature };

/// Closed-form bound state of  -psi'' + gamma psi^3 + alpha_bar delta(tau) psi
/// = E psi.
///
/// Bright branches (gamma < 0) are glued sech solitons,
///   psi(tau) = sqrt(2E/gamma) sech(sqrt|E| (tau -+ tau_bar)),
/// with the shift sign pattern set by the defect sign.  The gamma > 0 branch
/// is the symmetric csch profile obtained by inverting the U = 0 logarithmic
/// quadrature,
///   psi(tau) = sqrt(2|E|/gamma) csch(sqrt|E| (|tau| + tau_bar)).
struct DeltaSolution {
  double alpha_bar = 0.0;
  double gamma = 0.0;
  double E = 0.0;
  double tau_bar = 0.0;
  DeltaBranch branch = DeltaBranch::BrightRepulsive;
  double psi0 = 0.0;  // amplitude at tau = 0

  double psi(double tau) const;
  double dpsi(double tau) const;
  StateVector state(double tau) const { return {psi(tau), dpsi(tau)}; }

  /// Evaluation at a chosen floating precision (same closed form).
  template <class T>
  T psi_at(T tau) const;
  template <class T>
  T dpsi_at(T tau) const;
};

/// Bright-soliton bound state for a repulsive (alpha_bar >= 0) or attractive
/// (alpha_bar < 0) defect; requires gamma < 0, E < 0 and, for the repulsive
/// branch, alpha_bar <= 2 sqrt|E|.
DeltaSolution solve_bright(double alpha_bar, double gamma, double E);

/// E = -alpha_bar^2/4 + (gamma/2) psi0^2.
double energy_relation(double alpha_bar, double gamma, double psi0);

/// Inverts the energy relation for the amplitude at the defect.
double psi0_from_energy(double alpha_bar, double gamma, double E);

/// Logarithmic-quadrature bound state: alpha_bar < 0, gamma > 0, E < 0 with
/// alpha_bar^2 >= 4|E| (threshold alpha_crit = -sqrt(2 gamma) psi0).
DeltaSolution solve_log_quadrature(double alpha_bar, double gamma, double E);

// --- closed-form profile templates -----------------------------------------

template <class T>
T DeltaSolution::psi_at(T tau) const {
  const T kappa = std::sqrt(T(-E));
  const T tb = T(tau_bar);
  if (branch == DeltaBranch::LogQuadrature) {
    const T amp = std::sqrt(2 * T(-E) / T(gamma));
    return amp / std::sinh(kappa * (std::abs(tau) + tb));
  }
  const T amp = std::sqrt(2 * T(-E) / T(-gamma));
  // repulsive: centres at -+tau_bar (maxima pushed outward);
  // attractive: centres at +-tau_bar (single peak at the defect)
  const T shift = (branch == DeltaBranch::BrightRepulsive) ? -tb : tb;
  const T arg = (tau < T(0)) ? kappa * (tau - shift) : kappa * (tau + shift);
  return amp / std::cosh(arg);
}

template <class T>
T DeltaSolution::dpsi_at(T tau) const {
  const T kappa = std::sqrt(T(-E));
  const T tb = T(tau_bar);
  if (branch == DeltaBranch::LogQuadrature) {
    const T amp = std::sqrt(2 * T(-E) / T(gamma));
    const T th = kappa * (std::abs(tau) + tb);
    const T sign = (tau >= T(0)) ? T(1) : T(-1);
    return -sign * amp * kappa * std::cosh(th) / (std::sinh(th) * std::sinh(th));
  }
  const T amp = std::sqrt(2 * T(-E) / T(-gamma));
  const T shift = (branch == DeltaBranch::BrightRepulsive) ? -tb : tb;
  const T arg = (tau < T(0)) ? kappa * (tau - shift) : kappa * (tau + shift);
  return -amp * kappa * std::tanh(arg) / std::cosh(arg);
}

}  // namespace gpbound

#endif
