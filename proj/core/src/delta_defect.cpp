#include "gpbound/delta_defect.hpp"

#include <cmath>
#include <stdexcept>

namespace gpbound {

double DeltaSolution::psi(double tau) const { return psi_at<double>(tau); }
double DeltaSolution::dpsi(double tau) const { return dpsi_at<double>(tau); }

double energy_relation(double alpha_bar, double gamma, double psi0) {
  return -alpha_bar * alpha_bar / 4 + gamma / 2 * psi0 * psi0;
}

double psi0_from_energy(double alpha_bar, double gamma, double E) {
  if (gamma == 0.0)
    throw std::invalid_argument(
        "delta: psi0 undetermined at gamma = 0 (E = -alpha_bar^2/4 for any amplitude)");
  const double s = 2 * (E + alpha_bar * alpha_bar / 4) / gamma;
  if (s < 0.0)
    throw NoBoundStateError("delta: imaginary-amplitude (no real psi0 solves Eq. 8)");
  return std::sqrt(s);
}

DeltaSolution solve_bright(double alpha_bar, double gamma, double E) {
  if (!(gamma < 0.0))
    throw std::domain_error("delta: wrong-branch (bright solitons need gamma < 0)");
  if (!(E < 0.0)) throw std::domain_error("delta: bright solitons need E < 0");

  const double kappa = std::sqrt(-E);
  const double ratio = std::abs(alpha_bar) / (2 * kappa);
  if (ratio > 1.0) {
    if (alpha_bar >= 0.0)
      throw NoBoundStateError(
          "delta: no-bound-state (repulsive branch needs alpha_bar <= 2 sqrt|E|)");
    throw NoBoundStateError(
        "delta: no-bound-state (attractive branch needs |alpha_bar| <= 2 sqrt|E| "
        "at this energy)");
  }

  DeltaSolution sol;
  sol.alpha_bar = alpha_bar;
  sol.gamma = gamma;
  sol.E = E;
  sol.branch =
      alpha_bar >= 0.0 ? DeltaBranch::BrightRepulsive : DeltaBranch::BrightAttractive;
  sol.tau_bar = std::atanh(ratio) / kappa;  // +inf at the threshold, accepted
  sol.psi0 = std::sqrt(2 * E / gamma) / std::cosh(kappa * sol.tau_bar);
  return sol;
}

DeltaSolution solve_log_quadrature(double alpha_bar, double gamma, double E) {
  if (!(gamma > 0.0))
    throw std::domain_error("delta: wrong-branch (log-quadrature needs gamma > 0)");
  if (!(E < 0.0)) throw std::domain_error("delta: log-quadrature needs E < 0");
  if (!(alpha_bar < 0.0))
    throw std::domain_error("delta: log-quadrature needs alpha_bar < 0");

  const double absE = -E;
  const double disc = alpha_bar * alpha_bar - 4 * absE;
  if (disc < 0.0)
    throw NoBoundStateError(
        "delta: imaginary-amplitude (threshold violated, 4|E| > alpha_bar^2)");

  DeltaSolution sol;
  sol.alpha_bar = alpha_bar;
  sol.gamma = gamma;
  sol.E = E;
  sol.branch = DeltaBranch::LogQuadrature;
  sol.psi0 = std::sqrt(disc / (2 * gamma));

  const double alpha_crit = -std::sqrt(2 * gamma) * sol.psi0;
  if (alpha_bar > alpha_crit + 1e-12 * (1 + std::abs(alpha_crit)))
    throw NoBoundStateError("delta: no-bound-state (alpha_bar above alpha_crit)");

  const double kappa = std::sqrt(absE);
  const double amp = std::sqrt(2 * absE / gamma);
  sol.tau_bar = std::asinh(amp / sol.psi0) / kappa;  // +inf when psi0 = 0
  return sol;
}

}  // namespace gpbound
