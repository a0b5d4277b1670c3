#include <cmath>

#include "doctest.h"

#include "handkit/tendon.hpp"
#include "handkit/units.hpp"

using namespace handkit;
using namespace handkit::tendon;

TEST_CASE("excursion is the signed capstan arc length") {
  const auto routes = default_finger_routes(4.0, 2.0, 3.0);
  REQUIRE(routes.size() == 3);
  CHECK(routes[0].name == TendonName::Flexion);
  CHECK(routes[1].name == TendonName::Lumbrical);
  CHECK(routes[2].name == TendonName::CouplingPipDip);

  const JointAngles zero =
      to_joint_angles(JointState::coupled_state(0.0, 0.0));
  for (const auto& route : routes) CHECK(excursion(route, zero) == 0.0);

  // 4 mm and 2 mm radii, both through 90 deg: (4 + 2) * pi/2
  const JointAngles curled = to_joint_angles(
      JointState::coupled_state(deg_to_rad(90.0), deg_to_rad(90.0)));
  CHECK(excursion(routes[0], curled) ==
        doctest::Approx(9.42477796076938).epsilon(1e-15));
  CHECK(excursion(routes[1], curled) ==
        doctest::Approx(4.0 * kPi / 2.0).epsilon(1e-15));

  const TendonRoute wide{TendonName::Flexion,
                         {{JointId::Mcp, 5.0, +1}, {JointId::Pip, 6.0, +1}}};
  CHECK(excursion(wide, curled) ==
        doctest::Approx(17.27875959474386).epsilon(1e-15));
}

TEST_CASE("excursion is linear in the joint angles") {
  const auto routes = default_finger_routes(4.0, 2.0, 3.0);
  const JointAngles one = to_joint_angles(
      JointState::coupled_state(deg_to_rad(20.0), deg_to_rad(30.0)));
  const JointAngles two = to_joint_angles(
      JointState::coupled_state(deg_to_rad(40.0), deg_to_rad(60.0)));
  for (const auto& route : routes)
    CHECK(excursion(route, two) ==
          doctest::Approx(2.0 * excursion(route, one)).epsilon(1e-12));
}

TEST_CASE("coupling tendon excursion vanishes on coupled motion") {
  // flexor side at 2 mm on PIP, extensor side at 3 mm on DIP: with
  // theta_dip = 2/3 theta_pip the arc lengths cancel exactly.
  const auto routes = default_finger_routes(4.0, 2.0, 3.0);
  const TendonRoute& coupling = routes[2];
  for (double pip_deg : {5.0, 20.0, 45.0, 90.0}) {
    const JointAngles angles =
        to_joint_angles(JointState::coupled_state(0.0, deg_to_rad(pip_deg)));
    CHECK(std::abs(excursion(coupling, angles)) <= 1e-15);
  }
  // an uncoupled DIP produces a nonzero excursion
  const JointAngles off = to_joint_angles(
      JointState::uncoupled_state(0.0, deg_to_rad(45.0), deg_to_rad(40.0)));
  CHECK(excursion(coupling, off) != 0.0);
}

TEST_CASE("excursion rejects routes over joints absent from the state") {
  const JointAngles finger_only =
      to_joint_angles(JointState::coupled_state(0.1, 0.2));
  const TendonRoute thumb{TendonName::Opposition,
                          {{JointId::CmcAxial, 3.0, +1}}};
  CHECK_THROWS_AS(excursion(thumb, finger_only), SchemaError);
}

TEST_CASE("coupling ratio follows the routing radii") {
  const CouplingRatio r = coupling_ratio(2.0, 3.0);
  CHECK(r.pip_part == 3.0);
  CHECK(r.dip_part == 2.0);
  CHECK(r.dip_per_pip() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(coupling_ratio(0.0, 3.0), DomainError);
  CHECK_THROWS_AS(coupling_ratio(2.0, -1.0), DomainError);
}

TEST_CASE("excursion inverse recovers the joint angles") {
  const auto routes = default_finger_routes(4.0, 2.0, 3.0);
  const JointState truth =
      JointState::coupled_state(deg_to_rad(35.0), deg_to_rad(50.0));
  const JointAngles angles = to_joint_angles(truth);

  std::vector<double> lengths;
  for (const auto& route : routes) lengths.push_back(excursion(route, angles));

  const ExcursionSolve solve = angles_from_excursions(routes, lengths);
  CHECK(!solve.clamped);
  REQUIRE(solve.angles_rad.size() == 3);
  CHECK(solve.angles_rad.at(JointId::Mcp) ==
        doctest::Approx(truth.theta_mcp_rad).epsilon(1e-12));
  CHECK(solve.angles_rad.at(JointId::Pip) ==
        doctest::Approx(truth.theta_pip_rad).epsilon(1e-12));
  CHECK(solve.angles_rad.at(JointId::Dip) ==
        doctest::Approx(truth.theta_dip_rad).epsilon(1e-12));
}

TEST_CASE("excursion inverse clamps into supplied limits and flags it") {
  const auto routes = default_finger_routes(4.0, 2.0, 3.0);
  const JointAngles angles = to_joint_angles(
      JointState::coupled_state(deg_to_rad(80.0), deg_to_rad(60.0)));
  std::vector<double> lengths;
  for (const auto& route : routes) lengths.push_back(excursion(route, angles));

  std::map<JointId, JointLimits> limits;
  limits[JointId::Mcp] = {0.0, deg_to_rad(45.0)};
  const ExcursionSolve solve = angles_from_excursions(routes, lengths, limits);
  CHECK(solve.clamped);
  REQUIRE(solve.clamped_joints.size() == 1);
  CHECK(solve.clamped_joints[0] == JointId::Mcp);
  CHECK(solve.angles_rad.at(JointId::Mcp) ==
        doctest::Approx(deg_to_rad(45.0)).epsilon(1e-15));
  // joints within their limits are untouched
  CHECK(solve.angles_rad.at(JointId::Pip) ==
        doctest::Approx(deg_to_rad(60.0)).epsilon(1e-12));
}

TEST_CASE("excursion inverse reports non-square and rank-deficient systems") {
  // five thumb routes touch only four joints
  const auto thumb = default_thumb_routes(3.0);
  CHECK_THROWS_AS(angles_from_excursions(thumb, {0, 0, 0, 0, 0}),
                  UnderdeterminedError);

  // two identical routes over two joints: square but rank one
  const TendonRoute a{TendonName::Flexion,
                      {{JointId::Mcp, 4.0, +1}, {JointId::Pip, 2.0, +1}}};
  const std::vector<TendonRoute> degenerate = {a, a};
  try {
    angles_from_excursions(degenerate, {1.0, 1.0});
    FAIL("expected UnderdeterminedError");
  } catch (const UnderdeterminedError& e) {
    const std::string what = e.what();
    CHECK(what.find("mcp") != std::string::npos);
    CHECK(what.find("pip") != std::string::npos);
  }

  CHECK_THROWS_AS(angles_from_excursions(thumb, {0.0}), SchemaError);
}
