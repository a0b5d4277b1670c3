// Batch front end: loads a hand spec, runs one analysis subcommand, prints
// results to stdout, and (with --out) writes CSV/JSON files plus a run
// manifest. Degrees and millimetres at this boundary; exit 0 iff no error.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include "handkit/csv.hpp"
#include "handkit/hand_model.hpp"
#include "handkit/kinematics.hpp"
#include "handkit/manifest.hpp"
#include "handkit/nitinol.hpp"
#include "handkit/palm.hpp"
#include "handkit/report.hpp"
#include "handkit/tendon.hpp"
#include "handkit/units.hpp"

namespace {

namespace fs = std::filesystem;
using handkit::csv::format_double;
using nlohmann::json;

struct GlobalArgs {
  std::string spec_path;
  std::string out_dir;
  std::uint64_t seed = 0;
};

struct OutputWriter {
  const GlobalArgs& args;
  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  OutputWriter(const GlobalArgs& global_args, std::string name)
      : args(global_args), subcommand(std::move(name)) {}

  bool enabled() const { return !args.out_dir.empty(); }

  template <typename Fn>
  void write_file(const std::string& name, Fn&& fn) {
    if (!enabled()) return;
    fs::create_directories(args.out_dir);
    const fs::path path = fs::path(args.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw handkit::Error("cannot write " + path.string());
    fn(out);
    outputs.push_back(name);
  }

  void finish() {
    if (!enabled()) return;
    fs::create_directories(args.out_dir);
    handkit::RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.spec_path = args.spec_path;
    manifest.inputs = inputs;
    manifest.outputs = outputs;
    manifest.seed = args.seed;
    handkit::write_manifest(manifest, args.out_dir);
  }
};

handkit::HandSpec load_spec(const GlobalArgs& args) {
  if (args.spec_path.empty()) return handkit::default_hand_spec();
  return handkit::load_hand_spec(args.spec_path);
}

std::vector<handkit::kinematics::PlanarPose> load_waypoints(
    const std::string& path) {
  const handkit::csv::CsvData data = handkit::csv::read_csv(path);
  if (data.header != std::vector<std::string>{"x_mm", "y_mm"})
    throw handkit::ParseError(path + ": expected header x_mm,y_mm");
  if (data.rows.empty())
    throw handkit::ParseError(path + ": waypoint file has no rows");
  std::vector<handkit::kinematics::PlanarPose> waypoints;
  waypoints.reserve(data.rows.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    try {
      waypoints.push_back(
          {std::stod(data.rows[i][0]), std::stod(data.rows[i][1])});
    } catch (const std::exception&) {
      throw handkit::ParseError(path + ": bad waypoint row " +
                                std::to_string(i + 1));
    }
  }
  return waypoints;
}

json track_summary_json(const handkit::kinematics::TrackSummary& summary) {
  return json{{"schema", 1},
              {"max_abs_mean_err_mm", summary.max_abs_mean_err_mm},
              {"repeatability_mm", summary.repeatability_mm},
              {"unreached_count", summary.unreached_count}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tendon-driven rolling-joint hand: kinematics and mechanism "
               "analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs args;
  app.add_option("--spec", args.spec_path,
                 "Hand spec file (JSON); built-in defaults when omitted");
  app.add_option("--out", args.out_dir,
                 "Output directory for CSV/JSON files and the run manifest");
  app.add_option("--seed", args.seed, "Seed for stochastic options");

  // --- fk ---------------------------------------------------------------
  auto* fk = app.add_subcommand("fk", "Fingertip position for joint angles");
  double fk_mcp = 0.0, fk_pip = 0.0;
  std::optional<double> fk_dip;
  std::string fk_model = "schedule";
  fk->add_option("--mcp", fk_mcp, "MCP angle, degrees")->required();
  fk->add_option("--pip", fk_pip, "PIP angle, degrees");
  fk->add_option("--dip", fk_dip,
                 "DIP angle, degrees (default: 2/3 of the PIP angle)");
  fk->add_option("--model", fk_model, "Fingertip model: schedule | dh")
      ->check(CLI::IsMember({"schedule", "dh"}));

  // --- ik ---------------------------------------------------------------
  auto* ik = app.add_subcommand("ik", "Joint angles for a fingertip target");
  double ik_x = 0.0, ik_y = 0.0;
  handkit::kinematics::IkOptions ik_opts;
  ik->add_option("--x", ik_x, "Target x, mm")->required();
  ik->add_option("--y", ik_y, "Target y, mm")->required();
  ik->add_option("--tol-mm", ik_opts.tolerance_mm, "Positional tolerance, mm");
  ik->add_option("--max-iters", ik_opts.max_iterations, "Iteration cap");

  // --- track ------------------------------------------------------------
  auto* track = app.add_subcommand("track", "Follow a waypoint list with IK");
  std::string track_waypoints;
  int track_repeats = 1;
  double track_noise_deg = 0.0;
  double track_tol_mm = 1e-3;
  track->add_option("--waypoints", track_waypoints,
                    "Waypoint CSV (header x_mm,y_mm)")
      ->required();
  track->add_option("--repeats", track_repeats, "Executions per waypoint");
  track->add_option("--noise-deg", track_noise_deg,
                    "Joint noise sigma per repeat, degrees");
  track->add_option("--tol-mm", track_tol_mm, "IK tolerance, mm");

  // --- workspace ----------------------------------------------------------
  auto* workspace =
      app.add_subcommand("workspace", "Sample the fingertip workspace");
  double ws_step_deg = 1.0;
  workspace->add_option("--grid-step-deg", ws_step_deg, "Grid step, degrees");

  // --- tendon -------------------------------------------------------------
  auto* tendon_cmd = app.add_subcommand(
      "tendon", "Tendon excursion table over a coupled pose sweep");
  int tendon_steps = 18;
  tendon_cmd->add_option("--steps", tendon_steps, "Sweep steps");

  // --- nitinol ------------------------------------------------------------
  auto* nitinol_cmd = app.add_subcommand(
      "nitinol", "Return-wire strain/stress/moment/fatigue table");
  std::string bundle_joint = "dip";
  int bundle_max = 16;
  nitinol_cmd->add_option("--bundle-joint", bundle_joint,
                          "Joint for the bundle study")
      ->check(CLI::IsMember({"mcp", "pip", "dip"}));
  nitinol_cmd->add_option("--bundle-max", bundle_max,
                          "Largest bundle size in the study");

  // --- palm ---------------------------------------------------------------
  auto* palm_cmd =
      app.add_subcommand("palm", "Palm arch deformation and compression");
  std::optional<double> palm_t4, palm_t5, palm_compress;
  std::string palm_markers;
  palm_cmd->add_option("--theta4-deg", palm_t4,
                       "Fourth CMC flexion, degrees (default: ROM max)");
  palm_cmd->add_option("--theta5-deg", palm_t5,
                       "Fifth CMC flexion, degrees (default: ROM max)");
  palm_cmd->add_option("--compress-mm", palm_compress,
                       "Report compression force at this displacement");
  palm_cmd->add_option("--markers", palm_markers,
                       "Marker CSV (body,label,x_mm,y_mm,z_mm): report "
                       "per-body flexion");

  // --- rom-check ------------------------------------------------------------
  auto* rom = app.add_subcommand("rom-check", "Validate a CMC joint pose");
  int rom_joint = 1;
  double rom_flexion = 0.0, rom_abduction = 0.0, rom_axial = 0.0;
  rom->add_option("--joint", rom_joint, "CMC joint index, 1..5")->required();
  rom->add_option("--flexion-deg", rom_flexion, "Flexion, degrees");
  rom->add_option("--abduction-deg", rom_abduction, "Abduction, degrees");
  rom->add_option("--axial-deg", rom_axial, "Axial rotation, degrees");

  // --- report -----------------------------------------------------------
  auto* report_cmd =
      app.add_subcommand("report", "Full hand report (JSON) on stdout");
  double report_ws_step = 1.0;
  report_cmd->add_option("--grid-step-deg", report_ws_step,
                         "Workspace grid step, degrees");

  CLI11_PARSE(app, argc, argv);

  try {
    const handkit::HandSpec spec = load_spec(args);

    if (*fk) {
      OutputWriter out{args, "fk"};
      const handkit::JointState state =
          fk_dip ? handkit::JointState::uncoupled_state(
                       handkit::deg_to_rad(fk_mcp), handkit::deg_to_rad(fk_pip),
                       handkit::deg_to_rad(*fk_dip))
                 : handkit::JointState::coupled_state(
                       handkit::deg_to_rad(fk_mcp),
                       handkit::deg_to_rad(fk_pip));
      const handkit::kinematics::PlanarPose pose =
          fk_model == "dh"
              ? handkit::kinematics::fk_dh(spec.dh_chain, state,
                                           spec.finger_limits)
              : handkit::kinematics::fk_planar(spec.link_schedule, state,
                                               spec.finger_limits);
      std::cout << "x_mm=" << format_double(pose.x_mm)
                << " y_mm=" << format_double(pose.y_mm) << '\n';
      out.write_file("fk.csv", [&](std::ostream& os) {
        handkit::csv::write_row(
            os, {"theta_mcp_deg", "theta_pip_deg", "theta_dip_deg", "x_mm",
                 "y_mm"});
        handkit::csv::write_row(
            os, {format_double(fk_mcp), format_double(fk_pip),
                 format_double(handkit::rad_to_deg(state.theta_dip_rad)),
                 format_double(pose.x_mm), format_double(pose.y_mm)});
      });
      out.finish();
    } else if (*ik) {
      OutputWriter out{args, "ik"};
      const handkit::kinematics::IkResult result = handkit::kinematics::ik_planar(
          spec.link_schedule, {ik_x, ik_y}, spec.finger_limits, ik_opts);
      std::cout << "theta_mcp_deg="
                << format_double(handkit::rad_to_deg(result.state.theta_mcp_rad))
                << " theta_pip_deg="
                << format_double(handkit::rad_to_deg(result.state.theta_pip_rad))
                << " residual_mm=" << format_double(result.residual_mm)
                << " iterations=" << result.iterations
                << " unreached=" << (result.unreached ? 1 : 0) << '\n';
      out.write_file("ik.csv", [&](std::ostream& os) {
        handkit::csv::write_row(os, {"target_x_mm", "target_y_mm",
                                     "theta_mcp_deg", "theta_pip_deg",
                                     "residual_mm", "iterations", "unreached"});
        handkit::csv::write_row(
            os,
            {format_double(ik_x), format_double(ik_y),
             format_double(handkit::rad_to_deg(result.state.theta_mcp_rad)),
             format_double(handkit::rad_to_deg(result.state.theta_pip_rad)),
             format_double(result.residual_mm),
             std::to_string(result.iterations),
             result.unreached ? "1" : "0"});
      });
      out.finish();
    } else if (*track) {
      OutputWriter out{args, "track"};
      out.inputs.push_back(track_waypoints);
      const auto waypoints = load_waypoints(track_waypoints);
      handkit::kinematics::TrackOptions opts;
      opts.ik.tolerance_mm = track_tol_mm;
      opts.repeats = track_repeats;
      opts.noise_sigma_rad = handkit::deg_to_rad(track_noise_deg);
      opts.seed = args.seed;
      const handkit::kinematics::TrackReport report =
          handkit::kinematics::track_trajectory(spec.link_schedule, waypoints,
                                                spec.finger_limits, opts);
      std::cout << track_summary_json(report.summary).dump(2) << '\n';
      out.write_file("track.csv", [&](std::ostream& os) {
        handkit::report::write_track_csv(os, report.records);
      });
      out.write_file("track_summary.json", [&](std::ostream& os) {
        os << track_summary_json(report.summary).dump(2) << '\n';
      });
      out.finish();
    } else if (*workspace) {
      OutputWriter out{args, "workspace"};
      const handkit::kinematics::Workspace ws =
          handkit::kinematics::sample_workspace(spec.link_schedule,
                                                spec.finger_limits,
                                                handkit::deg_to_rad(ws_step_deg));
      std::cout << "point_count=" << ws.metrics.point_count
                << " min_radius_mm=" << format_double(ws.metrics.min_radius_mm)
                << " max_radius_mm=" << format_double(ws.metrics.max_radius_mm)
                << '\n';
      out.write_file("workspace.csv", [&](std::ostream& os) {
        handkit::report::write_workspace_csv(os, ws);
      });
      out.finish();
    } else if (*tendon_cmd) {
      OutputWriter out{args, "tendon"};
      handkit::report::write_tendon_sweep_csv(std::cout, spec, tendon_steps);
      out.write_file("tendon_sweep.csv", [&](std::ostream& os) {
        handkit::report::write_tendon_sweep_csv(os, spec, tendon_steps);
      });
      out.finish();
    } else if (*nitinol_cmd) {
      OutputWriter out{args, "nitinol"};
      const auto rows = handkit::report::nitinol_rows(spec);
      handkit::report::write_nitinol_csv(std::cout, rows);
      out.write_file("nitinol.csv", [&](std::ostream& os) {
        handkit::report::write_nitinol_csv(os, rows);
      });
      const handkit::FingerJoint joint = bundle_joint == "mcp"
                                             ? handkit::FingerJoint::Mcp
                                             : bundle_joint == "pip"
                                                   ? handkit::FingerJoint::Pip
                                                   : handkit::FingerJoint::Dip;
      out.write_file("bundle.csv", [&](std::ostream& os) {
        handkit::report::write_bundle_csv(
            os, handkit::report::bundle_rows(spec, joint, bundle_max));
      });
      out.finish();
    } else if (*palm_cmd) {
      OutputWriter out{args, "palm"};
      if (!palm_markers.empty()) {
        out.inputs.push_back(palm_markers);
        const handkit::palm::MarkerSet markers =
            handkit::palm::parse_marker_csv(palm_markers);
        const auto flexion = handkit::palm::flexion_from_markers(markers);
        for (const auto& [body, deg] : flexion)
          std::cout << body << "_deg=" << format_double(deg) << '\n';
        out.write_file("marker_flexion.csv", [&](std::ostream& os) {
          handkit::csv::write_row(os, {"body", "flexion_deg"});
          for (const auto& [body, deg] : flexion)
            handkit::csv::write_row(os, {body, format_double(deg)});
        });
      } else {
        const handkit::JointLimits& rom4 = spec.cmc[3].flexion;
        const handkit::JointLimits& rom5 = spec.cmc[4].flexion;
        const double t4 =
            palm_t4 ? handkit::deg_to_rad(*palm_t4) : rom4.max_rad;
        const double t5 =
            palm_t5 ? handkit::deg_to_rad(*palm_t5) : rom5.max_rad;
        const double deformation = handkit::palm::arch_deformation(
            t4, t5, spec.palm_geometry, rom4, rom5);
        std::cout << "deformation_pct=" << format_double(deformation) << '\n';
        if (palm_compress) {
          const handkit::palm::ForceResult force =
              handkit::palm::compression_force(*palm_compress,
                                               spec.compression);
          std::cout << "force_n=" << format_double(force.newtons)
                    << " clamped=" << (force.clamped ? 1 : 0) << '\n';
        }
        out.write_file("palm_sweep.csv", [&](std::ostream& os) {
          handkit::report::write_palm_sweep_csv(os, spec, 10, 11);
        });
      }
      out.finish();
    } else if (*rom) {
      const handkit::palm::RomCheckResult result = handkit::palm::cmc_rom_check(
          rom_joint,
          {handkit::deg_to_rad(rom_flexion), handkit::deg_to_rad(rom_abduction),
           handkit::deg_to_rad(rom_axial)},
          spec.cmc);
      if (!result.ok) {
        for (const std::string& violation : result.violations)
          std::cerr << violation << '\n';
        return 1;
      }
      std::cout << "ok\n";
    } else if (*report_cmd) {
      OutputWriter out{args, "report"};
      handkit::report::ReportOptions opts;
      opts.workspace_grid_step_deg = report_ws_step;
      const json doc = handkit::report::build_report(spec, opts);
      std::cout << doc.dump(2) << '\n';
      out.write_file("report.json",
                     [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
      out.write_file("consistency.csv", [&](std::ostream& os) {
        handkit::report::write_consistency_csv(
            os, spec, handkit::report::consistency_probe_states());
      });
      out.finish();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
