#ifndef GPBOUND_MODEL_HPP
#define GPBOUND_MODEL_HPP

#include <vector>

#include "gpbound/potential.hpp"

namespace gpbound {

/// Quasi-energy of the spatial dynamical system on a constant-potential
/// stretch,
///   U = psi'^2/2 + (E - V) psi^2/2 - (g/4) psi^4,
/// conserved between defects.
double quasi_energy(const StateVector& s, double v_local, const QuasiParams& p);

struct JumpResidual {
  double psi_gap = 0.0;   // right.psi - left.psi
  double dpsi_gap = 0.0;  // right.dpsi - left.dpsi - strength*left.psi
};

/// Residual of the delta matching conditions at a defect; both components
/// vanish for a valid solution.
JumpResidual delta_jump_residual(const StateVector& left, const StateVector& right,
                                 double strength);

/// Quasi-time elapsed between amplitudes r_from and r_to on a monotone
/// branch, tau = |integral dr / sqrt(2(U - Phi[r]))| with
/// Phi(r) = -(g/4) r^4 + (E - V) r^2 / 2.  Endpoints may be turning points
/// (the 1/sqrt singularity is removed by substituting r = r_turn -+ s^2).
/// Throws std::domain_error if the radicand is non-positive in the
/// interior (invalid-turning-point).
double quadrature_lapse(double r_from, double r_to, double U, const QuasiParams& p,
                        double v_local);

enum class CriticalKind { OriginBright, DarkPairPlus, DarkPairMinus };
enum class Stability { Stable, Unstable };

struct CriticalPoint {
  double x = 0.0;
  double p = 0.0;
  CriticalKind kind = CriticalKind::OriginBright;
  Stability stability = Stability::Stable;
};

/// Critical points of the phase-space flow
///   X' = P,  P' = (V - E + g X^2) X.
/// Always contains the origin; for g != 0 and (E-V)/g > 0 also the pair
/// X = +-sqrt((E-V)/g).  Stability via the linearised flow: eigenvalues
/// lambda^2 = V - E + 3 g X*^2, a centre (stable) when lambda^2 < 0 and a
/// saddle (unstable) otherwise.
std::vector<CriticalPoint> critical_points(const QuasiParams& p, double v_local);

}  // namespace gpbound

#endif
