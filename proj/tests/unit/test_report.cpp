#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

#include "handkit/report.hpp"
#include "handkit/units.hpp"

using namespace handkit;
using namespace handkit::report;
using json = nlohmann::json;

namespace {

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("nitinol rows carry the per-joint wire table") {
  const HandSpec spec = default_hand_spec();
  const auto rows = nitinol_rows(spec);
  REQUIRE(rows.size() == 3);

  // rows follow the MCP, PIP, DIP order
  CHECK(rows[0].joint == FingerJoint::Mcp);
  CHECK(rows[2].joint == FingerJoint::Dip);

  // DIP: 0.58 mm wire at 15 mm -> 1.93 % strain
  CHECK(rows[2].d_mm == 0.58);
  CHECK(rows[2].rho_mm == 15.0);
  CHECK(rows[2].strain_pct == doctest::Approx(1.93).epsilon(0.0026));
  CHECK(rows[2].elastic_ok);

  // MCP has two wires; its moment doubles the single-wire moment
  CHECK(rows[0].moment_nmm ==
        doctest::Approx(2.0 *
                        nitinol::restoring_moment(0.58, 20.0, spec.material)
                            .n_mm));

  // life evaluated at the joint's measured fatigue strain
  CHECK(rows[0].life_cycles ==
        doctest::Approx(
            nitinol::fatigue_life(0.81, spec.strain_life).cycles));
  CHECK(rows[0].life_cycles == doctest::Approx(1.8e4));
  CHECK(rows[1].life_cycles == doctest::Approx(1.2e4));
  CHECK(rows[2].life_cycles == doctest::Approx(5.3e4));
}

TEST_CASE("csv writers emit the documented headers") {
  const HandSpec spec = default_hand_spec();

  std::ostringstream nitinol_os;
  write_nitinol_csv(nitinol_os, nitinol_rows(spec));
  CHECK(first_line(nitinol_os.str()) ==
        "joint,d_mm,rho_mm,strain_pct,stress_mpa,moment_nmm,life_cycles,"
        "elastic_ok");

  std::ostringstream bundle_os;
  write_bundle_csv(bundle_os, bundle_rows(spec, FingerJoint::Mcp, 4));
  CHECK(first_line(bundle_os.str()) ==
        "n,d_each_mm,strain_factor,strain_pct,life_cycles,life_gain");

  std::ostringstream ws_os;
  const auto ws = kinematics::sample_workspace(
      spec.link_schedule, spec.finger_limits, deg_to_rad(30.0));
  write_workspace_csv(ws_os, ws);
  CHECK(first_line(ws_os.str()) == "theta_mcp_deg,theta_pip_deg,x_mm,y_mm");

  std::ostringstream cons_os;
  write_consistency_csv(cons_os, spec, consistency_probe_states());
  CHECK(first_line(cons_os.str()) ==
        "theta_mcp_deg,theta_pip_deg,schedule_x_mm,schedule_y_mm,dh_x_mm,"
        "dh_y_mm,gap_mm");

  std::ostringstream palm_os;
  write_palm_sweep_csv(palm_os, spec, 2, 2);
  const std::string palm_text = palm_os.str();
  CHECK(first_line(palm_text) == "theta4_deg,theta5_deg,deformation_pct");
  // steps+1 grid values per axis, plus the header line
  CHECK(std::count(palm_text.begin(), palm_text.end(), '\n') == 10);

  std::ostringstream tendon_os;
  write_tendon_sweep_csv(tendon_os, spec, 3);
  CHECK(first_line(tendon_os.str()) ==
        "theta_mcp_deg,theta_pip_deg,theta_dip_deg,flexion_mm,lumbrical_mm,"
        "coupling_pip_dip_mm");
}

TEST_CASE("bundle study rows scale as n^(-1/4)") {
  const HandSpec spec = default_hand_spec();
  const auto rows = bundle_rows(spec, FingerJoint::Dip, 16);
  REQUIRE(rows.size() == 16);
  CHECK(rows[0].n == 1);
  CHECK(rows[0].strain_factor == 1.0);
  CHECK(rows[0].life_gain == 1.0);
  CHECK(rows[15].n == 16);
  CHECK(rows[15].strain_factor == 0.5);
  CHECK(rows[15].d_each_mm == doctest::Approx(0.29).epsilon(1e-12));

  // the gain column is the documented ratio of strain-life evaluations, even
  // where the single-wire strain lies beyond the extrapolation trust window
  const double eps_single = nitinol::bending_strain(0.58, 15.0) * 100.0;
  const double eps_each = nitinol::bending_strain(0.29, 15.0) * 100.0;
  CHECK(rows[15].life_gain ==
        doctest::Approx(
            nitinol::fatigue_life(eps_each, spec.strain_life).cycles /
            nitinol::fatigue_life(eps_single, spec.strain_life).cycles)
            .epsilon(1e-12));

  // at the larger MCP radius both strains stay inside the window and the
  // bundle lives longer
  const auto mcp_rows = bundle_rows(spec, FingerJoint::Mcp, 4);
  CHECK(mcp_rows[3].life_gain > 1.0);
}

TEST_CASE("consistency probes start at the zero pose") {
  const auto states = consistency_probe_states();
  REQUIRE(states.size() == 16);
  CHECK(states[0].theta_mcp_rad == 0.0);
  CHECK(states[0].theta_pip_rad == 0.0);
  for (const JointState& s : states) CHECK(s.coupled);
}

TEST_CASE("build_report reproduces the reference tables") {
  const HandSpec spec = default_hand_spec();
  ReportOptions opts;
  opts.workspace_grid_step_deg = 5.0;
  const json doc = build_report(spec, opts);

  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("tool_version") == "0.1.0");

  // segment ratio table
  const json& fingers = doc.at("fingers");
  CHECK(fingers.at("index").at("ratio_pip_mcp_over_dip_pip").get<double>() ==
        doctest::Approx(1.86).epsilon(0.0027));
  CHECK(fingers.at("index").at("ratio_dip_pip_over_tip_dip").get<double>() ==
        doctest::Approx(1.23).epsilon(0.0041));
  CHECK(fingers.at("middle").at("ratio_pip_mcp_over_dip_pip").get<double>() ==
        doctest::Approx(1.72).epsilon(0.003));
  CHECK(fingers.at("middle").at("ratio_dip_pip_over_tip_dip").get<double>() ==
        doctest::Approx(1.36).epsilon(0.004));
  CHECK(fingers.at("ring").at("ratio_pip_mcp_over_dip_pip").get<double>() ==
        doctest::Approx(1.70).epsilon(0.003));
  CHECK(fingers.at("little").at("ratio_dip_pip_over_tip_dip").get<double>() ==
        doctest::Approx(1.05).epsilon(0.005));

  // CMC table: five joints, kinds and ROM
  const json& cmc = doc.at("cmc");
  REQUIRE(cmc.size() == 5);
  CHECK(cmc[0].at("index") == 1);
  CHECK(cmc[0].at("kind") == "ball");
  CHECK(cmc[3].at("kind") == "rolling");
  CHECK(cmc[3].at("flexion_max_deg").get<double>() == doctest::Approx(10.0));
  CHECK(cmc[4].at("flexion_max_deg").get<double>() == doctest::Approx(44.0));

  // wire table
  const json& wires = doc.at("wires");
  REQUIRE(wires.size() == 3);
  CHECK(wires.at("dip").at("strain_pct").get<double>() ==
        doctest::Approx(1.93).epsilon(0.0026));
  CHECK(wires.at("dip").at("life_cycles").get<double>() ==
        doctest::Approx(5.3e4));
  CHECK(wires.at("pip").at("life_cycles").get<double>() ==
        doctest::Approx(1.2e4));
  CHECK(wires.at("mcp").at("life_cycles").get<double>() ==
        doctest::Approx(1.8e4));

  // workspace metrics at the 5 deg grid
  const json& ws = doc.at("workspace");
  CHECK(ws.at("grid_step_deg").get<double>() == 5.0);
  CHECK(ws.at("point_count").get<int>() == 19 * 19);
  CHECK(ws.at("reach_mm").get<double>() == doctest::Approx(181.5));
  CHECK(ws.at("max_radius_mm").get<double>() == doctest::Approx(181.5));

  // consistency probes: zero gap at zero pose, finite gaps elsewhere
  const json& cons = doc.at("fk_consistency");
  REQUIRE(cons.size() == 16);
  CHECK(cons[0].at("gap_mm").get<double>() == 0.0);
  for (const auto& row : cons)
    CHECK(std::isfinite(row.at("gap_mm").get<double>()));
  CHECK(cons[1].at("gap_mm").get<double>() > 0.0);

  // palm summary
  const json& palm = doc.at("palm");
  CHECK(palm.at("max_deformation_pct").get<double>() ==
        doctest::Approx(7.388759242514542).epsilon(1e-12));
  CHECK(palm.at("compression_max_force_n").get<double>() == 32.0);

  // material constants round-tripped into the report
  CHECK(doc.at("material").at("plateau_stress_mpa").get<double>() == 412.5);

  // determinism: same spec, same JSON
  CHECK(build_report(spec, opts) == doc);
}
