#ifndef GPBOUND_SQUARE_WELL_HPP
#define GPBOUND_SQUARE_WELL_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpbound/delta_defect.hpp"
#include "gpbound/elliptic.hpp"
#include "gpbound/potential.hpp"

namespace gpbound {

/// Raised by eta_roots when the g > 0 discriminant is negative: no real
/// turning points, hence no interior wave of the assumed form at this E.
class NoTurningPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Finite square well V = -V0 on |tau| <= tau0, with the boundary amplitude
/// phi_b = psi(-tau0) fixed (the nonlinear problem is not scale invariant,
/// so the amplitude is part of the configuration).
struct WellConfig {
  double v0 = 1.0;
  double tau0 = 1.0;
  double g = 0.0;
  double phi_b = 1.0;
};

/// Turning points of the interior quadrature in eta = psi^2, ordered as in
/// the two coupling regimes: g > 0 has eta1 = 0 <= eta2 <= eta3, g < 0 has
/// eta1 <= 0 = eta2 <= eta3.
struct EtaRoots {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
};

enum class Parity { Symmetric, Antisymmetric };

EtaRoots eta_roots(const WellConfig& cfg, double E);

/// Interior quasi-energy U2 = V0 phi_b^2 / 2 fixed by continuity with the
/// exterior U = 0 tails; P(eta) = 4 eta ((g/2) eta^2 - (E+V0) eta + 2 U2)
/// is the cubic whose roots eta_roots returns.
double eta_cubic(const WellConfig& cfg, double E, double eta);

/// Interior phase angle alpha(tau) for tau in [-tau0, 0]; the interior wave
/// is sqrt(eta2) cos(alpha) for g > 0 and sqrt(eta3) cos(alpha) for g < 0.
/// Monotone in tau.  g = 0 evaluates the circular limit.
double alpha_interior(const WellConfig& cfg, double E, double tau);

/// Quantization angle Q(E) = alpha_interior(cfg, E, 0); bound states occur
/// at Q = n pi (symmetric) and (n + 1/2) pi (antisymmetric).
double quantization_angle(const WellConfig& cfg, double E);

/// Decaying exterior amplitude matching phi_b at the wall, evaluated at
/// |tau| >= tau0 (the right side mirrors the left, without parity sign).
double exterior_tail(const WellConfig& cfg, double E, double tau);

namespace detail {

template <class T>
struct TailParams {
  T kappa;     // sqrt(-E)
  T tau0;
  T phi_b;
  T g;
  T amp;       // soliton scale sqrt(2|E|/|g|); unused for g = 0
  T offset;    // arcsech / arsinh matching constant
};

template <class T>
TailParams<T> make_tail(T v0, T tau0, T g, T phi_b, T E) {
  (void)v0;
  if (!(E < T(0))) throw std::domain_error("square_well: tails require E < 0");
  TailParams<T> t;
  t.kappa = std::sqrt(-E);
  t.tau0 = tau0;
  t.phi_b = phi_b;
  t.g = g;
  t.amp = T(0);
  t.offset = T(0);
  if (g > T(0)) {
    t.amp = std::sqrt(-2 * E / g);
    t.offset = std::asinh(t.amp / phi_b);
  } else if (g < T(0)) {
    t.amp = std::sqrt(2 * E / g);
    if (phi_b > t.amp)
      throw std::domain_error(
          "square_well: amplitude-exceeds-soliton-peak (phi_b > sqrt(2E/g))");
    t.offset = std::acosh(t.amp / phi_b);  // arcsech(phi_b/amp)
  }
  return t;
}

// Left tail, tau <= -tau0.  The g < 0 branch takes the sech shifted so that
// the wave rises into the wall, as derivative continuity with the interior
// requires.
template <class T>
T tail_psi(const TailParams<T>& t, T tau) {
  if (t.g > T(0)) return t.amp / std::sinh(t.kappa * (-tau - t.tau0) + t.offset);
  if (t.g < T(0)) return t.amp / std::cosh(t.kappa * (t.tau0 + tau) - t.offset);
  return t.phi_b * std::exp(t.kappa * (tau + t.tau0));
}

template <class T>
T tail_dpsi(const TailParams<T>& t, T tau) {
  if (t.g > T(0)) {
    const T th = t.kappa * (-tau - t.tau0) + t.offset;
    return t.amp * t.kappa * std::cosh(th) / (std::sinh(th) * std::sinh(th));
  }
  if (t.g < T(0)) {
    const T th = t.kappa * (t.tau0 + tau) - t.offset;
    return -t.amp * t.kappa * std::tanh(th) / std::cosh(th);
  }
  return t.phi_b * t.kappa * std::exp(t.kappa * (tau + t.tau0));
}

// Interior wave and derivative on [-tau0, tau0]; inputs assumed valid.
template <class T>
std::pair<T, T> interior_psi_dpsi(const WellConfig& cfg, double E,
                                  const EtaRoots& eta, Parity parity, T tau) {
  if (cfg.g == 0.0) {
    const T k = std::sqrt(T(E) + T(cfg.v0));
    if (parity == Parity::Symmetric) {
      const T scale = T(cfg.phi_b) / std::cos(k * T(cfg.tau0));
      return {scale * std::cos(k * tau), -scale * k * std::sin(k * tau)};
    }
    const T scale = T(cfg.phi_b) / std::sin(k * T(cfg.tau0));
    return {-scale * std::sin(k * tau), -scale * k * std::cos(k * tau)};
  }
  const T tau0 = T(cfg.tau0);
  const T phib = T(cfg.phi_b);
  T m, rate, u, amp, alpha;
  if (cfg.g > 0.0) {
    const T e2 = T(eta.eta2), e3 = T(eta.eta3);
    m = std::sqrt(e2 / e3);
    rate = std::sqrt(T(cfg.g) * e3 / 2);
    T ratio = phib / std::sqrt(e2);
    if (ratio > T(1)) ratio = T(1);
    u = rate * (tau + tau0) + ellip_f(std::asin(ratio), m);
    amp = std::sqrt(e2);
    alpha = jacobi_am(u, m) - std::numbers::pi_v<T> / 2;
  } else {
    const T e1 = T(eta.eta1), e3 = T(eta.eta3);
    m = std::sqrt(e3 / (e3 - e1));
    rate = std::sqrt(T(-cfg.g) * (e3 - e1) / 2);
    T w2 = (e3 - phib * phib) / e3;
    if (w2 < T(0)) w2 = T(0);
    u = rate * (tau + tau0) - ellip_f(std::asin(std::sqrt(w2)), m);
    amp = std::sqrt(e3);
    alpha = jacobi_am(u, m);
  }
  const T dn = jacobi_sn_cn_dn(u, m).dn;
  return {amp * std::cos(alpha), -amp * std::sin(alpha) * rate * dn};
}

}  // namespace detail

/// Assembled bound-state wave over the three regions.  psi and dpsi are
/// valid on the whole axis; tau > 0 mirrors tau < 0 with the parity sign.
class WellWave {
 public:
  WellWave() = default;
  WellWave(const WellConfig& cfg, double E, Parity parity);

  double psi(double tau) const { return psi_at<double>(tau); }
  double dpsi(double tau) const { return dpsi_at<double>(tau); }
  StateVector state(double tau) const { return {psi(tau), dpsi(tau)}; }

  /// Same closed forms at a chosen floating precision.  The interior
  /// expression covers all of [-tau0, tau0] (the mirrored left half equals
  /// it at an eigenvalue), so the only seams are at the walls.
  template <class T>
  T psi_at(T tau) const {
    const T tau0 = T(cfg_.tau0);
    if (tau >= -tau0 && tau <= tau0)
      return detail::interior_psi_dpsi(cfg_, E_, eta_, parity_, tau).first;
    const auto t =
        detail::make_tail(T(cfg_.v0), tau0, T(cfg_.g), T(cfg_.phi_b), T(E_));
    if (tau < -tau0) return detail::tail_psi(t, tau);
    const T sign = parity_ == Parity::Symmetric ? T(1) : T(-1);
    return sign * detail::tail_psi(t, -tau);
  }

  template <class T>
  T dpsi_at(T tau) const {
    const T tau0 = T(cfg_.tau0);
    if (tau >= -tau0 && tau <= tau0)
      return detail::interior_psi_dpsi(cfg_, E_, eta_, parity_, tau).second;
    const auto t =
        detail::make_tail(T(cfg_.v0), tau0, T(cfg_.g), T(cfg_.phi_b), T(E_));
    if (tau < -tau0) return detail::tail_dpsi(t, tau);
    const T sign = parity_ == Parity::Symmetric ? T(1) : T(-1);
    return -sign * detail::tail_dpsi(t, -tau);
  }

  const WellConfig& config() const { return cfg_; }
  double energy() const { return E_; }
  Parity parity() const { return parity_; }
  const EtaRoots& eta() const { return eta_; }

 private:
  WellConfig cfg_;
  double E_ = -1.0;
  Parity parity_ = Parity::Symmetric;
  EtaRoots eta_;
};

struct WellBoundState {
  double E = 0.0;
  int n = 0;
  Parity parity = Parity::Symmetric;
  WellWave wave;
  double parity_residual = 0.0;  // |psi'(0)| or |psi(0)|, checked a posteriori
};

/// Samples Q(E) = alpha(0) over [e_min, e_max], brackets crossings of the
/// parity targets and refines each to |dE| <= 1e-10 by bisection.  Grid
/// points where the interior wave does not exist (negative discriminant,
/// tail domain violations) are skipped.  For g < 0 the range may extend
/// below -V0: the attractive nonlinearity can push levels under the well
/// bottom.  g = 0 is routed to the closed-form linear solver.
std::vector<WellBoundState> quantization_scan(const WellConfig& cfg, Parity parity,
                                              double e_min, double e_max, int n_grid);

/// Linear finite-well eigenvalues (g = 0): roots of k tan(k tau0) = kappa
/// (symmetric) and k cot(k tau0) = -kappa (antisymmetric).
std::vector<double> linear_well_levels(double v0, double tau0, Parity parity);

struct EnergyCurvePoint {
  double g = 0.0;
  double E = 0.0;
};

struct EnergyCurve {
  std::vector<EnergyCurvePoint> points;
  bool truncated = false;   // level disappeared inside the requested range
  bool has_slopes = false;  // g-range straddles 0
  double slope_plus = 0.0;  // one-sided dE/dg at 0+
  double slope_minus = 0.0; // one-sided dE/dg at 0-
};

/// E(g) for the level with quantum number n at fixed (V0, tau0, phi_b).
EnergyCurve energy_vs_g_curve(double v0, double tau0, double phi_b, Parity parity,
                              int n, double g_min, double g_max, int n_g);

}  // namespace gpbound

#endif
