#ifndef GPBOUND_PROPAGATOR_HPP
#define GPBOUND_PROPAGATOR_HPP

#include <optional>
#include <vector>

#include "gpbound/potential.hpp"

namespace gpbound {

/// 2x2 real matrix propagating the spinor in the (psi', psi) ordering:
/// the first component is the derivative, as in the layered construction.
/// Every interval propagator and delta kick is unimodular, and so is any
/// product of them.
struct TransferMatrix {
  double m11 = 1.0, m12 = 0.0;
  double m21 = 0.0, m22 = 1.0;

  static TransferMatrix identity() { return {}; }

  TransferMatrix operator*(const TransferMatrix& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }

  StateVector apply(const StateVector& s) const {
    return {m21 * s.dpsi + m22 * s.psi, m11 * s.dpsi + m12 * s.psi};
  }

  double det() const { return m11 * m22 - m12 * m21; }
};

/// Exact exponential of the constant-coefficient flow over a lapse dtau:
/// with w^2 = V - E the entries are {cosh, w sinh, sinh/w, cosh}(w dtau)
/// for w^2 > 0, the circular analogues for w^2 < 0, and the shear
/// [[1,0],[dtau,1]] in the w^2 = 0 limit.
TransferMatrix interval_propagator(double v_const, double E, double dtau);

/// Derivative jump across a delta of strength v': [[1, v'],[0, 1]].
TransferMatrix delta_kick(double strength);

/// Dirac-comb layering of the continuous part of a potential over
/// [from, to]: N kicks of strength v_i = V(tau_i) dtau at uniformly spaced
/// midpoints tau_i = tau0 + i dtau.
struct CombLayering {
  double tau0 = 0.0;  // first kick position
  double dtau = 0.0;
  std::vector<double> strengths;
};

CombLayering comb_layering(const Potential& v, double from, double to, int n);

/// Product of free interval propagators and comb kicks over the layering,
/// including the potential's native deltas.  Converges to the exact flow as
/// the layering refines.
TransferMatrix comb_propagator(const CombLayering& comb, const Potential& v,
                               double E, double from, double to);

/// Position-ordered exponential of the linear flow over [from, to]:
/// interval-exact factors between potential breakpoints, midpoint sampling
/// inside each of the n_steps slices, delta kicks inserted at crossings
/// (positions in (from, to] are counted).
TransferMatrix ordered_exponential(const Potential& v, double E, double tau_from,
                                   double tau_to, long n_steps);

/// Linear spectral function: magnitude of the growing-mode coefficient at
/// +tau_max for the state launched on the decaying solution at -tau_max,
/// normalised by the mode-coefficient norm (so the value lies in [0, 1]).
/// Zeros of F are the bound-state energies.  The launch scale `seed` is
/// irrelevant by linearity; the state is renormalised slice by slice.
double spectral_function_linear(const Potential& v, double E, double tau_max,
                                long n_steps, double seed = 1.0);

/// One Lie step: nilpotent nonlinear kick with the current psi^2, then the
/// exact linear interval propagator.
StateVector nonlinear_step(const StateVector& s, double v_local, double E, double g,
                           double dtau);

enum class Splitting { Lie, Strang };

struct PropagationResult {
  std::vector<double> tau;
  std::vector<StateVector> states;
  bool diverged = false;
  double escape_sign = 0.0;  // sign of psi when the overflow guard tripped

  const StateVector& back() const { return states.back(); }
  /// First recorded state at tau >= pos (last state if none).
  const StateVector& state_at(double pos) const;
};

/// Composes nonlinear_step over the comb (slices aligned with segment edges
/// and deltas, native delta kicks exact).  Stops with the divergence flag
/// if |psi| or |psi'| exceeds 1e150; off-eigenvalue growth is expected.
PropagationResult trotter_propagate(const StateVector& s0, const Potential& v,
                                    double E, double g, double tau_from,
                                    double tau_to, long n_steps,
                                    Splitting splitting = Splitting::Lie);

/// Nonlinear spectral function F_g: growing-mode coefficient magnitude at
/// +tau_max of the trajectory launched as psi_seed * (kappa, 1) at
/// -tau_max, normalised by the trajectory's amplitude at the potential's
/// support edge.  A divergence flag is mapped to a large finite value.
/// Zeros locate bound states of the amplitude family selected by the seed.
double spectral_function_nonlinear(const Potential& v, double E, double g,
                                   double psi_seed, double tau_max, long n_steps,
                                   Splitting splitting = Splitting::Lie);

/// Launch amplitude at -tau_max on the linearised decaying tail that the
/// U = 0 exterior solution with the given amplitude at wall_pos asymptotes
/// to.  Lets nonlinear scans hold the wall amplitude fixed across E.
double matched_seed(double wall_amplitude, double g, double E, double wall_pos,
                    double tau_max);

enum class SpectralKind { Linear, Nonlinear };

struct SpectralRoot {
  double E = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;  // discriminator magnitude at the refined root
};

struct SpectralScanRequest {
  Potential potential;
  std::vector<double> e_grid;  // sorted ascending, >= 2 points
  SpectralKind kind = SpectralKind::Linear;
  double g = 0.0;
  double psi_seed = 1.0;
  /// When set (nonlinear scans), the seed is re-matched at every E so the
  /// decaying tail carries this amplitude at the support edge.
  std::optional<double> wall_amplitude;
  double tau_max = 20.0;
  long n_steps = 100000;
  Splitting splitting = Splitting::Lie;
  double bracket_tol = 1e-6;  // sub-threshold local-minimum detection
  double root_tol = 1e-10;    // bisection width in E
};

struct SpectralScan {
  SpectralKind kind = SpectralKind::Linear;
  std::vector<double> e_grid;
  std::vector<double> f_values;
  std::vector<SpectralRoot> roots;
};

/// Evaluates the spectral function on the grid (in parallel), brackets sign
/// changes of the signed discriminator plus sub-tolerance local minima, and
/// refines each bracket by bisection to root_tol in E.
///
/// The discriminator is the signed growing-mode coefficient in the linear
/// case.  Nonlinear scans use the exterior quasi-energy at the support exit
/// (zero exactly on decaying solutions, proportional to the product of the
/// growing and decaying coefficients in the linear limit) with the escape
/// direction supplying the sign when the trajectory diverges; saturating
/// g < 0 trajectories otherwise produce spurious zeros of the raw
/// coefficient at +tau_max.
SpectralScan find_spectrum(const SpectralScanRequest& req);

}  // namespace gpbound

#endif
