#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gpbound/delta_defect.hpp"
#include "gpbound/model.hpp"
#include "gpbound/oracle.hpp"
#include "gpbound/potential.hpp"

using namespace gpbound;

TEST_CASE("potential JSON ingestion") {
  const char* doc = R"({
    "segments":[{"from":-1.0,"to":1.0,"v":-6.0}],
    "deltas":[{"at":0.0,"strength":-2.0}],
    "sampled":{"tau0":-1.0,"dtau":1.0,"values":[0.5,0.25,0.5]}
  })";
  const Potential v = Potential::from_json(doc);
  REQUIRE(v.segments().size() == 1);
  REQUIRE(v.deltas().size() == 1);
  REQUIRE(v.sampled().has_value());
  CHECK(v.value(0.0) == doctest::Approx(-6.0 + 0.25));
  CHECK(v.value(-0.9) == doctest::Approx(-6.0 + 0.5));
  CHECK(v.value(5.0) == 0.0);

  CHECK_THROWS_AS(Potential::from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::from_json("{\"segments\":[{\"from\":1,\"to\":0,\"v\":1}]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(Potential::from_json("not json"), std::invalid_argument);
  // overlapping segments
  CHECK_THROWS_AS(
      Potential::from_json(
          R"({"segments":[{"from":0,"to":2,"v":1},{"from":1,"to":3,"v":1}]})"),
      std::invalid_argument);
  // delta outside the declared support
  CHECK_THROWS_AS(
      Potential::from_json(
          R"({"segments":[{"from":-1,"to":1,"v":-2}],"deltas":[{"at":5,"strength":1}]})"),
      std::invalid_argument);
}

TEST_CASE("potential breakpoints and sampled-cell semantics") {
  const Potential well = Potential::square_well(6.0, 1.0);
  const auto pts = well.breakpoints(-5.0, 5.0);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == -1.0);
  CHECK(pts[1] == 1.0);
  CHECK(well.value(-0.5) == -6.0);
  CHECK(well.value(1.5) == 0.0);

  SampledGrid grid{0.0, 0.5, {1.0, 2.0, 3.0}};
  const Potential s({}, {}, grid);
  CHECK(s.value(0.0) == 1.0);
  CHECK(s.value(0.2) == 1.0);  // nearest cell centre is 0
  CHECK(s.value(0.3) == 2.0);
  CHECK(s.value(0.6) == 2.0);
  CHECK(s.value(1.1) == 3.0);
  CHECK(s.value(2.0) == 0.0);
  CHECK(s.breakpoints(-1.0, 3.0).empty());  // sampled grids are soft
}

TEST_CASE("quasi_energy values") {
  CHECK(quasi_energy({0.0, 0.0}, 3.0, {-1.0, 2.0}) == 0.0);
  CHECK(quasi_energy({1.0, 0.0}, 0.0, {-1.0, 0.0}) == doctest::Approx(-0.5));

  // free bright soliton has vanishing quasi-energy along the trajectory
  const DeltaSolution sol = solve_bright(0.0, -2.0, -1.0);
  const QuasiParams p{-1.0, -2.0};
  for (double tau = -6.0; tau <= 6.0; tau += 0.37)
    CHECK(std::abs(quasi_energy(sol.state(tau), 0.0, p)) < 1e-10);
}

TEST_CASE("quasi_energy conserved along oracle trajectories") {
  const Potential v({{-50.0, 50.0, -2.0}});
  const QuasiParams p{-1.0, 1.5};
  const StateVector s0{0.8, 0.3};
  const auto traj = oracle::integrate(v, p.E, p.g, s0, 0.0, 2.0, 1e-4);
  const double u0 = quasi_energy(s0, -2.0, p);
  double drift = 0.0;
  for (const auto& s : traj.states)
    drift = std::max(drift, std::abs(quasi_energy(s, -2.0, p) - u0));
  CHECK(drift < 2e-8);  // <= 1e-8 per unit tau over 2 units
}

TEST_CASE("delta_jump_residual") {
  auto r = delta_jump_residual({1.0, 0.0}, {1.0, 0.5}, 0.5);
  CHECK(r.psi_gap == 0.0);
  CHECK(r.dpsi_gap == 0.0);

  r = delta_jump_residual({1.0, 0.0}, {1.0, 0.0}, 0.5);
  CHECK(r.psi_gap == 0.0);
  CHECK(r.dpsi_gap == doctest::Approx(-0.5));

  // closed-form bright soliton satisfies the jump at the defect; tau = -1e-300
  // selects the left branch of the piecewise profile
  const DeltaSolution sol = solve_bright(1.0, -1.0, -1.0);
  const auto rr = delta_jump_residual(sol.state(-1e-300), sol.state(0.0), 1.0);
  CHECK(std::abs(rr.psi_gap) < 1e-12);
  CHECK(std::abs(rr.dpsi_gap) < 1e-12);

  // linear in the (left, right) pair
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const StateVector l1{d(rng), d(rng)}, l2{d(rng), d(rng)};
    const StateVector r1{d(rng), d(rng)}, r2{d(rng), d(rng)};
    const double a = d(rng), b = d(rng), st = d(rng);
    const auto lhs = delta_jump_residual(
        {a * l1.psi + b * l2.psi, a * l1.dpsi + b * l2.dpsi},
        {a * r1.psi + b * r2.psi, a * r1.dpsi + b * r2.dpsi}, st);
    const auto u = delta_jump_residual(l1, r1, st);
    const auto w = delta_jump_residual(l2, r2, st);
    CHECK(lhs.psi_gap == doctest::Approx(a * u.psi_gap + b * w.psi_gap).epsilon(1e-12));
    CHECK(lhs.dpsi_gap ==
          doctest::Approx(a * u.dpsi_gap + b * w.dpsi_gap).epsilon(1e-12));
  }
}

TEST_CASE("quadrature_lapse") {
  const QuasiParams lin{-1.0, 0.0};
  CHECK(quadrature_lapse(0.4, 0.4, 0.0, lin, 0.0) == 0.0);

  // linear decaying case: psi ~ e^{-tau}, lapse from r to r/2 is ln 2
  CHECK(quadrature_lapse(0.8, 0.4, 0.0, lin, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));

  // free bright soliton: lapse between psi(0.5) and psi(1.0) is 0.5
  const DeltaSolution sol = solve_bright(0.0, -1.0, -1.0);
  const QuasiParams p{-1.0, -1.0};
  CHECK(quadrature_lapse(sol.psi(0.5), sol.psi(1.0), 0.0, p, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-8));

  // additivity on a monotone branch
  const double l_ab = quadrature_lapse(sol.psi(0.5), sol.psi(0.9), 0.0, p, 0.0);
  const double l_bc = quadrature_lapse(sol.psi(0.9), sol.psi(1.4), 0.0, p, 0.0);
  const double l_ac = quadrature_lapse(sol.psi(0.5), sol.psi(1.4), 0.0, p, 0.0);
  CHECK(l_ab + l_bc == doctest::Approx(l_ac).epsilon(1e-8));

  // circular case with a turning point at r = 1: quarter period pi/2
  const QuasiParams circ{1.0, 0.0};
  CHECK(quadrature_lapse(0.0, 1.0, 0.5, circ, 0.0) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));

  // negative radicand in the interior
  CHECK_THROWS_AS(quadrature_lapse(0.5, 0.9, -1.0, lin, 0.0), std::domain_error);
}

TEST_CASE("critical_points") {
  // linear case: origin only
  auto cps = critical_points({-1.0, 0.0}, 0.0);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].x == 0.0);
  CHECK(cps[0].kind == CriticalKind::OriginBright);
  CHECK(cps[0].stability == Stability::Unstable);  // E < V: saddle

  // dark case: origin centre plus saddle pair at +-1
  cps = critical_points({1.0, 1.0}, 0.0);
  REQUIRE(cps.size() == 3);
  CHECK(cps[0].stability == Stability::Stable);
  CHECK(cps[1].x == doctest::Approx(1.0));
  CHECK(cps[2].x == doctest::Approx(-1.0));
  CHECK(cps[1].x == doctest::Approx(-cps[2].x));
  CHECK(cps[1].stability == Stability::Unstable);
  CHECK(cps[2].stability == Stability::Unstable);

  // (E - V)/g < 0: origin only (bright regime inside a deep well)
  cps = critical_points({-1.0, -1.0}, -3.0);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].stability == Stability::Stable);  // E > V: centre

  // bright-soliton regime g < 0, E < V: the pair exists and is stable,
  // the origin is the saddle carrying the homoclinic soliton orbit
  cps = critical_points({-1.0, -1.0}, 0.0);
  REQUIRE(cps.size() == 3);
  CHECK(cps[0].stability == Stability::Unstable);
  CHECK(cps[1].stability == Stability::Stable);
}
