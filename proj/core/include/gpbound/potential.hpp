#ifndef GPBOUND_POTENTIAL_HPP
#define GPBOUND_POTENTIAL_HPP

#include <optional>
#include <string>
#include <vector>

namespace gpbound {

/// The (psi, psi') spinor evolved in the quasi-time tau.  Real-valued:
/// bound states carry zero phase.
struct StateVector {
  double psi = 0.0;
  double dpsi = 0.0;
};

/// Rescaled problem parameters.  tau = l*x with l = sqrt(2m)/hbar; the
/// library works in units where l = 1 throughout.
struct QuasiParams {
  double E = 0.0;
  double g = 0.0;
  double l = 1.0;
};

struct PotentialSegment {
  double from = 0.0;
  double to = 0.0;
  double v = 0.0;
};

struct DeltaDefect {
  double at = 0.0;
  double strength = 0.0;  // rescaled alpha-bar
};

/// Uniformly sampled potential, interpreted with piecewise-constant
/// midpoint semantics: values[i] holds on the cell centred at
/// tau0 + i*dtau.
struct SampledGrid {
  double tau0 = 0.0;
  double dtau = 0.0;
  std::vector<double> values;
};

/// External potential: ordered constant segments, point defects and an
/// optional sampled grid, all additive.
class Potential {
 public:
  Potential() = default;
  Potential(std::vector<PotentialSegment> segments,
            std::vector<DeltaDefect> deltas = {},
            std::optional<SampledGrid> sampled = std::nullopt);

  /// Parse the JSON document
  ///   {"segments":[{"from":..,"to":..,"v":..}],
  ///    "deltas":[{"at":..,"strength":..}],
  ///    "sampled":{"tau0":..,"dtau":..,"values":[..]}}
  /// Fields are optional but at least one must be present.
  static Potential from_json(const std::string& text);
  static Potential from_json_file(const std::string& path);

  static Potential square_well(double v0, double tau0);
  static Potential single_delta(double strength, double at = 0.0);

  /// Piecewise-constant value at tau (delta defects excluded).
  double value(double tau) const;

  const std::vector<PotentialSegment>& segments() const { return segments_; }
  const std::vector<DeltaDefect>& deltas() const { return deltas_; }
  const std::optional<SampledGrid>& sampled() const { return sampled_; }

  bool empty() const;
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  /// Segment edges and delta positions strictly inside (from, to), sorted.
  /// Exact propagation and the integrators align their steps with these.
  /// Sampled grids are soft (queried at slice midpoints) and contribute no
  /// breakpoints.
  std::vector<double> breakpoints(double from, double to) const;

 private:
  std::vector<PotentialSegment> segments_;
  std::vector<DeltaDefect> deltas_;
  std::optional<SampledGrid> sampled_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

}  // namespace gpbound

#endif
