// Acceptance gate: exercises every exit criterion of the toolkit and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"

#include "handkit/hand_model.hpp"
#include "handkit/kinematics.hpp"
#include "handkit/nitinol.hpp"
#include "handkit/palm.hpp"
#include "handkit/report.hpp"
#include "handkit/tendon.hpp"
#include "handkit/units.hpp"

namespace fs = std::filesystem;
using namespace handkit;
using nlohmann::json;

namespace {

const fs::path kTmp = HANDKIT_TEST_TMP_DIR;

struct Checker {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string command = std::string(HANDKIT_CLI_PATH) + " " + args +
                              " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

JointState coupled_deg(double m, double p) {
  return JointState::coupled_state(deg_to_rad(m), deg_to_rad(p));
}

// --- criterion 1: FK zero pose ---------------------------------------------

Checker criterion_fk_zero() {
  Checker c;
  const HandSpec spec = default_hand_spec();
  const kinematics::PlanarPose a =
      kinematics::fk_planar(spec.link_schedule, coupled_deg(0, 0));
  const kinematics::PlanarPose b =
      kinematics::fk_dh(spec.dh_chain, coupled_deg(0, 0));
  c.require(std::abs(a.x_mm - 181.5) <= 1e-9 && std::abs(a.y_mm) <= 1e-9,
            "schedule model off at zero pose");
  c.require(std::abs(b.x_mm - 181.5) <= 1e-9 && std::abs(b.y_mm) <= 1e-9,
            "dh model off at zero pose");
  return c;
}

// --- criterion 2: FK oracle grid --------------------------------------------

Checker criterion_fk_grid() {
  Checker c;
  const HandSpec spec = default_hand_spec();
  std::size_t points = 0;
  double worst = 0.0;
  for (int m = 0; m <= 90; ++m) {
    for (int p = 0; p <= 90; ++p) {
      const kinematics::PlanarPose pose =
          kinematics::fk_planar(spec.link_schedule, coupled_deg(m, p));
      const auto ref = oracles::fk_tip(deg_to_rad(m), deg_to_rad(p));
      worst = std::max({worst, std::abs(pose.x_mm - ref[0]),
                        std::abs(pose.y_mm - ref[1])});
      ++points;
    }
  }
  c.require(points == 8281, "grid count " + std::to_string(points));
  c.require(worst <= 1e-9, "max deviation " + std::to_string(worst));
  return c;
}

// --- criterion 3: Jacobian vs finite differences -----------------------------

Checker criterion_jacobian() {
  Checker c;
  const HandSpec spec = default_hand_spec();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, deg_to_rad(90.0));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m = angle(rng), p = angle(rng);
    const kinematics::Jacobian2x2 J = kinematics::jacobian(
        spec.link_schedule, JointState::coupled_state(m, p));
    const auto fd = oracles::fd_jacobian(m, p);
    worst = std::max({worst, std::abs(J.dx_dmcp - fd[0]),
                      std::abs(J.dx_dpip - fd[1]),
                      std::abs(J.dy_dmcp - fd[2]),
                      std::abs(J.dy_dpip - fd[3])});
  }
  c.require(worst <= 1e-4, "max deviation " + std::to_string(worst));
  return c;
}

// --- criterion 4: IK round trip, unreachable oracle, repeatability ----------

Checker criterion_ik() {
  Checker c;
  const HandSpec spec = default_hand_spec();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0.0, deg_to_rad(90.0));

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const JointState truth = JointState::coupled_state(angle(rng), angle(rng));
    const kinematics::PlanarPose target =
        kinematics::fk_planar(spec.link_schedule, truth, spec.finger_limits);
    const kinematics::IkResult result = kinematics::ik_planar(
        spec.link_schedule, target, spec.finger_limits);
    worst = std::max(worst, result.residual_mm);
  }
  c.require(worst <= 1e-3, "round-trip residual " + std::to_string(worst));

  const kinematics::IkResult far = kinematics::ik_planar(
      spec.link_schedule, {500.0, 0.0}, spec.finger_limits);
  const auto ref =
      oracles::grid_search(500.0, 0.0, deg_to_rad(0.5), deg_to_rad(90.0));
  c.require(far.unreached, "unreachable target not flagged");
  c.require(std::abs(far.state.theta_mcp_rad - ref[0]) <= deg_to_rad(0.5) &&
                std::abs(far.state.theta_pip_rad - ref[1]) <= deg_to_rad(0.5),
            "boundary pose differs from the grid oracle");

  const std::vector<kinematics::PlanarPose> waypoints = {
      kinematics::fk_planar(spec.link_schedule, coupled_deg(20, 30)),
      kinematics::fk_planar(spec.link_schedule, coupled_deg(50, 10)),
      kinematics::fk_planar(spec.link_schedule, coupled_deg(35, 60)),
  };
  kinematics::TrackOptions opts;
  opts.repeats = 10;  // noise sigma stays 0
  const kinematics::TrackReport report = kinematics::track_trajectory(
      spec.link_schedule, waypoints, spec.finger_limits, opts);
  c.require(report.summary.repeatability_mm == 0.0,
            "repeatability not exactly 0 at sigma 0");
  return c;
}

// --- criterion 5: coupling ---------------------------------------------------

Checker criterion_coupling() {
  Checker c;
  for (double pip_deg : {1.0, 7.5, 33.3, 45.0, 60.0, 90.0}) {
    const double pip = deg_to_rad(pip_deg);
    const JointState s = JointState::coupled_state(0.2, pip);
    c.require(s.theta_dip_rad == (2.0 / 3.0) * pip,
              "theta_dip != (2/3) theta_pip at " + std::to_string(pip_deg));
  }
  const tendon::CouplingRatio ratio = tendon::coupling_ratio(2.0, 3.0);
  c.require(ratio.pip_part == 3.0 && ratio.dip_part == 2.0,
            "coupling_ratio(2,3) != 3:2");
  return c;
}

// --- criterion 6: nitinol tables ---------------------------------------------

Checker criterion_nitinol() {
  Checker c;
  const HandSpec spec = default_hand_spec();

  const double dip_strain_pct = nitinol::bending_strain(0.58, 15.0) * 100.0;
  c.require(std::abs(dip_strain_pct - 1.93) <= 0.005,
            "DIP strain " + std::to_string(dip_strain_pct));

  for (const auto& anchor : spec.strain_life.anchors) {
    const nitinol::FatigueResult at_anchor =
        nitinol::fatigue_life(anchor.strain_pct, spec.strain_life);
    c.require(at_anchor.cycles == anchor.cycles && !at_anchor.extrapolated,
              "anchor not reproduced exactly at " +
                  std::to_string(anchor.strain_pct));
  }
  double prev = nitinol::fatigue_life(0.65, spec.strain_life).cycles;
  for (double s = 0.66; s <= 0.86 + 1e-12; s += 0.01) {
    const double cycles = nitinol::fatigue_life(s, spec.strain_life).cycles;
    c.require(cycles < prev,
              "life not strictly monotone at " + std::to_string(s));
    prev = cycles;
  }

  const nitinol::BundleRedesign bundle = nitinol::bundle_redesign(0.58, 16);
  c.require(bundle.strain_factor == 0.5, "bundle(16) strain factor not 0.5");
  const double single_i = std::pow(0.58, 4.0);
  const double bundle_i = 16.0 * std::pow(bundle.d_each_mm, 4.0);
  c.require(std::abs(bundle_i - single_i) / single_i <= 1e-9,
            "bundle does not preserve the uncapped moment");
  return c;
}

// --- criterion 7: reference tables in the report -----------------------------

Checker criterion_report_tables() {
  Checker c;
  const HandSpec spec = default_hand_spec();
  report::ReportOptions opts;
  opts.workspace_grid_step_deg = 5.0;
  const json doc = report::build_report(spec, opts);

  // segment ratio table, all sixteen published cells
  const struct {
    const char* finger;
    double r32, r21;
  } ratio_rows[] = {{"index", 1.86, 1.23},
                    {"middle", 1.72, 1.36},
                    {"ring", 1.70, 1.28},
                    {"little", 1.91, 1.05}};
  for (const auto& row : ratio_rows) {
    const json& f = doc.at("fingers").at(row.finger);
    c.require(std::abs(f.at("ratio_pip_mcp_over_dip_pip").get<double>() -
                       row.r32) <= 0.005,
              std::string(row.finger) + " ratio (3)/(2)");
    c.require(std::abs(f.at("ratio_dip_pip_over_tip_dip").get<double>() -
                       row.r21) <= 0.005,
              std::string(row.finger) + " ratio (2)/(1)");
  }

  // CMC ROM row: ball(55 axial), fixed, fixed, rolling(10), rolling(44)
  const json& cmc = doc.at("cmc");
  c.require(cmc.size() == 5, "cmc rows");
  c.require(cmc[0].at("kind") == "ball" &&
                std::abs(cmc[0].at("axial_limit_deg").get<double>() - 55.0) <=
                    1e-9,
            "first cmc row");
  c.require(cmc[1].at("kind") == "fixed" && cmc[2].at("kind") == "fixed",
            "second/third cmc rows");
  c.require(cmc[3].at("kind") == "rolling" &&
                std::abs(cmc[3].at("flexion_max_deg").get<double>() - 10.0) <=
                    1e-9,
            "fourth cmc row");
  c.require(cmc[4].at("kind") == "rolling" &&
                std::abs(cmc[4].at("flexion_max_deg").get<double>() - 44.0) <=
                    1e-9,
            "fifth cmc row");

  // wire fatigue table: d, rho, measured strain anchor, life
  const struct {
    const char* joint;
    double rho, strain_anchor, life;
    FingerJoint id;
  } wire_rows[] = {{"dip", 15.0, 0.65, 5.3e4, FingerJoint::Dip},
                   {"pip", 18.0, 0.86, 1.2e4, FingerJoint::Pip},
                   {"mcp", 20.0, 0.81, 1.8e4, FingerJoint::Mcp}};
  for (const auto& row : wire_rows) {
    const json& w = doc.at("wires").at(row.joint);
    c.require(w.at("d_mm").get<double>() == 0.58,
              std::string(row.joint) + " wire diameter");
    c.require(w.at("rho_mm").get<double>() == row.rho,
              std::string(row.joint) + " bend radius");
    c.require(std::abs(w.at("life_cycles").get<double>() - row.life) <= 1e-9,
              std::string(row.joint) + " fatigue life");
    c.require(spec.wires.at(row.id).fatigue_strain_pct == row.strain_anchor,
              std::string(row.joint) + " strain anchor");
  }

  // finger ROM column: MCP 0-90, PIP 0-90, DIP 0-60
  const json& limits = doc.at("joint_limits_deg");
  const struct {
    const char* joint;
    double max_deg;
  } rom_rows[] = {{"mcp", 90.0}, {"pip", 90.0}, {"dip", 60.0}};
  for (const auto& row : rom_rows) {
    c.require(limits.at(row.joint).at("min_deg").get<double>() == 0.0 &&
                  std::abs(limits.at(row.joint).at("max_deg").get<double>() -
                           row.max_deg) <= 1e-9,
              std::string(row.joint) + " rom");
  }
  return c;
}

// --- criterion 8: palm -------------------------------------------------------

Checker criterion_palm() {
  Checker c;
  const HandSpec spec = default_hand_spec();

  c.require(palm::compression_force(18.0, spec.compression).newtons == 32.0,
            "compression_force(18) != 32");

  const palm::PalmGeometry& geom = spec.palm_geometry;
  c.require(palm::arch_deformation(0.0, 0.0, geom) == 0.0,
            "deformation not 0 at neutral");

  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double d = palm::arch_deformation(deg_to_rad(0.5 * i),
                                            deg_to_rad(2.2 * i), geom);
    c.require(d > prev, "deformation not monotone along the ROM diagonal");
    prev = d;
  }

  std::array<oracles::PalmRayOracle, 4> rays;
  for (int i = 0; i < 4; ++i) {
    const palm::MetacarpalRay& r = geom.metacarpals[static_cast<std::size_t>(i) + 1];
    rays[static_cast<std::size_t>(i)] = {r.base_mm, r.length_mm, r.splay_rad,
                                         r.neutral_tilt_rad};
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u4(0.0, deg_to_rad(10.0));
  std::uniform_real_distribution<double> u5(0.0, deg_to_rad(44.0));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t4 = u4(rng), t5 = u5(rng);
    worst = std::max(worst, std::abs(palm::arch_deformation(t4, t5, geom) -
                                     oracles::palm_deformation(rays, t4, t5)));
  }
  c.require(worst <= 1e-6, "rotation-oracle deviation " + std::to_string(worst));

  for (double angle : {27.0, 23.0}) {
    palm::MarkerSet set;
    set.markers.push_back({"m3", "a", {0.0, 0.0, 0.0}});
    set.markers.push_back({"m3", "b", {40.0, 0.0, 0.0}});
    set.markers.push_back({"m3", "c", {0.0, 40.0, 0.0}});
    const double a = deg_to_rad(angle);
    for (double t : {-10.0, 2.0, 9.0})
      set.markers.push_back({"p1", "m",
                             {15.0 + t * std::cos(a), -3.0, 6.0 + t * std::sin(a)}});
    const auto flexion = palm::flexion_from_markers(set);
    c.require(std::abs(flexion.at("p1") - angle) <= 1e-6,
              "marker recovery at " + std::to_string(angle));
  }
  return c;
}

// --- criterion 9: determinism ------------------------------------------------

Checker criterion_determinism() {
  Checker c;
  fs::remove_all(kTmp);
  fs::create_directories(kTmp);

  const fs::path waypoints = kTmp / "waypoints.csv";
  std::ofstream(waypoints, std::ios::binary)
      << "x_mm,y_mm\n170,40\n150,80\n120,100\n";

  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"report --grid-step-deg 5", {"report.json", "consistency.csv"}},
      {"workspace --grid-step-deg 3", {"workspace.csv"}},
      {"--seed 42 track --waypoints " + waypoints.string() +
           " --repeats 5 --noise-deg 0.5",
       {"track.csv", "track_summary.json"}},
      {"nitinol", {"nitinol.csv", "bundle.csv"}},
  };

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path a = kTmp / ("run" + std::to_string(i) + "a");
    const fs::path b = kTmp / ("run" + std::to_string(i) + "b");
    c.require(run_cli(runs[i].first + " --out " + a.string()) == 0,
              "first run failed: " + runs[i].first);
    c.require(run_cli(runs[i].first + " --out " + b.string()) == 0,
              "second run failed: " + runs[i].first);
    std::vector<std::string> files = runs[i].second;
    files.push_back("manifest.json");
    for (const std::string& name : files) {
      const std::string left = slurp(a / name);
      c.require(!left.empty(), name + " missing for: " + runs[i].first);
      c.require(left == slurp(b / name),
                name + " differs between runs of: " + runs[i].first);
    }
  }
  return c;
}

// --- criterion 10: consistency report vs golden ------------------------------

Checker criterion_consistency() {
  Checker c;
  const HandSpec spec = default_hand_spec();

  const kinematics::ConsistencyRecord zero = kinematics::fk_consistency_report(
      spec.link_schedule, spec.dh_chain, coupled_deg(0, 0));
  c.require(zero.gap_mm == 0.0, "gap not 0 at zero pose");

  bool some_nonzero = false;
  for (const JointState& state : report::consistency_probe_states()) {
    const kinematics::ConsistencyRecord rec = kinematics::fk_consistency_report(
        spec.link_schedule, spec.dh_chain, state);
    c.require(std::isfinite(rec.gap_mm), "gap not finite");
    if (rec.gap_mm > 0.0) some_nonzero = true;
  }
  c.require(some_nonzero, "all gaps zero; the two models should diverge");

  std::ostringstream generated;
  report::write_consistency_csv(generated, spec,
                                report::consistency_probe_states());
  const fs::path golden = fs::path(HANDKIT_GOLDEN_DIR) / "fk_consistency.csv";
  const std::string golden_text = slurp(golden);
  c.require(!golden_text.empty(), "golden file missing: " + golden.string());
  c.require(generated.str() == golden_text,
            "generated consistency report differs from the golden file");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Checker()>>> criteria =
      {
          {"fk zero pose (181.5, 0) on both models", criterion_fk_zero},
          {"fk matches the independent evaluator on the 8281-point grid",
           criterion_fk_grid},
          {"jacobian matches finite differences over 1000 states",
           criterion_jacobian},
          {"ik round trip, unreachable oracle, zero-noise repeatability",
           criterion_ik},
          {"pip-dip coupling is exactly 2/3 and 3:2", criterion_coupling},
          {"nitinol strain, fatigue anchors, bundle redesign",
           criterion_nitinol},
          {"report reproduces the reference tables", criterion_report_tables},
          {"palm compression, arch deformation, marker flexion",
           criterion_palm},
          {"byte-identical reruns of every subcommand", criterion_determinism},
          {"fingertip-model consistency report matches the golden file",
           criterion_consistency},
      };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s%s%s\n", result.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), result.ok ? "" : " -- ",
                result.detail.c_str());
    if (!result.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
