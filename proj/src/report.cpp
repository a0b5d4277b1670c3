#include "handkit/report.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "handkit/csv.hpp"
#include "handkit/manifest.hpp"
#include "handkit/nitinol.hpp"
#include "handkit/palm.hpp"
#include "handkit/tendon.hpp"
#include "handkit/units.hpp"

namespace handkit::report {

using csv::format_double;
using csv::write_row;

std::vector<NitinolRow> nitinol_rows(const HandSpec& spec) {
  std::vector<NitinolRow> rows;
  rows.reserve(kFingerJoints.size());
  for (FingerJoint joint : kFingerJoints) {
    const nitinol::WireSpec& wire = spec.wires.at(joint);
    const double rho = spec.joints.at(joint).rho_wire_mm;

    NitinolRow row;
    row.joint = joint;
    row.d_mm = wire.d_mm;
    row.rho_mm = rho;
    row.strain_pct = nitinol::bending_strain(wire.d_mm, rho) * 100.0;
    row.stress_mpa =
        nitinol::stress(nitinol::bending_strain(wire.d_mm, rho), spec.material)
            .mpa;
    row.moment_nmm =
        nitinol::restoring_moment(wire.d_mm, rho, spec.material).n_mm *
        wire.wire_count;
    row.life_cycles =
        nitinol::fatigue_life(wire.fatigue_strain_pct, spec.strain_life).cycles;
    row.elastic_ok = nitinol::elastic_check(wire.d_mm, rho, spec.material).ok;
    rows.push_back(row);
  }
  return rows;
}

void write_nitinol_csv(std::ostream& os, const std::vector<NitinolRow>& rows) {
  write_row(os, {"joint", "d_mm", "rho_mm", "strain_pct", "stress_mpa",
                 "moment_nmm", "life_cycles", "elastic_ok"});
  for (const NitinolRow& r : rows)
    write_row(os, {to_string(r.joint), format_double(r.d_mm),
                   format_double(r.rho_mm), format_double(r.strain_pct),
                   format_double(r.stress_mpa), format_double(r.moment_nmm),
                   format_double(r.life_cycles), r.elastic_ok ? "1" : "0"});
}

std::vector<BundleRow> bundle_rows(const HandSpec& spec, FingerJoint joint,
                                   int n_max) {
  if (n_max < 1) throw DomainError("bundle_rows: n_max must be at least 1");
  const nitinol::WireSpec& wire = spec.wires.at(joint);
  const double rho = spec.joints.at(joint).rho_wire_mm;

  std::vector<BundleRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  const double base_life =
      nitinol::fatigue_life(nitinol::bending_strain(wire.d_mm, rho) * 100.0,
                            spec.strain_life)
          .cycles;
  for (int n = 1; n <= n_max; ++n) {
    const nitinol::BundleRedesign redesign =
        nitinol::bundle_redesign(wire.d_mm, n, rho, spec.strain_life);
    BundleRow row;
    row.n = n;
    row.d_each_mm = redesign.d_each_mm;
    row.strain_factor = redesign.strain_factor;
    row.strain_pct = nitinol::bending_strain(redesign.d_each_mm, rho) * 100.0;
    row.life_cycles = base_life * redesign.life_gain;
    row.life_gain = redesign.life_gain;
    rows.push_back(row);
  }
  return rows;
}

void write_bundle_csv(std::ostream& os, const std::vector<BundleRow>& rows) {
  write_row(os, {"n", "d_each_mm", "strain_factor", "strain_pct",
                 "life_cycles", "life_gain"});
  for (const BundleRow& r : rows)
    write_row(os, {std::to_string(r.n), format_double(r.d_each_mm),
                   format_double(r.strain_factor), format_double(r.strain_pct),
                   format_double(r.life_cycles), format_double(r.life_gain)});
}

void write_track_csv(std::ostream& os,
                     const std::vector<kinematics::TrackRecord>& records) {
  write_row(os, {"target_x_mm", "target_y_mm", "x_mm", "y_mm", "err_mm",
                 "theta_mcp_deg", "theta_pip_deg"});
  for (const auto& r : records)
    write_row(os, {format_double(r.target.x_mm), format_double(r.target.y_mm),
                   format_double(r.achieved.x_mm),
                   format_double(r.achieved.y_mm), format_double(r.error_mm),
                   format_double(rad_to_deg(r.state.theta_mcp_rad)),
                   format_double(rad_to_deg(r.state.theta_pip_rad))});
}

void write_workspace_csv(std::ostream& os, const kinematics::Workspace& ws) {
  write_row(os, {"theta_mcp_deg", "theta_pip_deg", "x_mm", "y_mm"});
  for (const auto& p : ws.points)
    write_row(os, {format_double(rad_to_deg(p.theta_mcp_rad)),
                   format_double(rad_to_deg(p.theta_pip_rad)),
                   format_double(p.pose.x_mm), format_double(p.pose.y_mm)});
}

std::vector<JointState> consistency_probe_states() {
  const auto deg = [](double m, double p) {
    return JointState::coupled_state(deg_to_rad(m), deg_to_rad(p));
  };
  return {deg(0, 0),  deg(15, 0),  deg(30, 0),  deg(45, 0),  deg(60, 0),
          deg(90, 0), deg(0, 30),  deg(0, 60),  deg(0, 90),  deg(15, 15),
          deg(30, 45), deg(45, 45), deg(60, 60), deg(90, 45), deg(45, 90),
          deg(90, 90)};
}

void write_consistency_csv(std::ostream& os, const HandSpec& spec,
                           const std::vector<JointState>& states) {
  write_row(os, {"theta_mcp_deg", "theta_pip_deg", "schedule_x_mm",
                 "schedule_y_mm", "dh_x_mm", "dh_y_mm", "gap_mm"});
  for (const JointState& state : states) {
    const kinematics::ConsistencyRecord rec =
        kinematics::fk_consistency_report(spec.link_schedule, spec.dh_chain,
                                          state);
    write_row(os, {format_double(rad_to_deg(state.theta_mcp_rad)),
                   format_double(rad_to_deg(state.theta_pip_rad)),
                   format_double(rec.schedule_pose.x_mm),
                   format_double(rec.schedule_pose.y_mm),
                   format_double(rec.dh_pose.x_mm),
                   format_double(rec.dh_pose.y_mm),
                   format_double(rec.gap_mm)});
  }
}

void write_palm_sweep_csv(std::ostream& os, const HandSpec& spec, int steps4,
                          int steps5) {
  if (steps4 < 1 || steps5 < 1)
    throw DomainError("write_palm_sweep_csv: steps must be at least 1");
  const JointLimits& rom4 = spec.cmc[3].flexion;
  const JointLimits& rom5 = spec.cmc[4].flexion;
  write_row(os, {"theta4_deg", "theta5_deg", "deformation_pct"});
  for (int i = 0; i <= steps4; ++i) {
    const double t4 = rom4.min_rad + rom4.width() * i / steps4;
    for (int j = 0; j <= steps5; ++j) {
      const double t5 = rom5.min_rad + rom5.width() * j / steps5;
      const double d =
          palm::arch_deformation(t4, t5, spec.palm_geometry, rom4, rom5);
      write_row(os, {format_double(rad_to_deg(t4)),
                     format_double(rad_to_deg(t5)), format_double(d)});
    }
  }
}

void write_tendon_sweep_csv(std::ostream& os, const HandSpec& spec,
                            int steps) {
  if (steps < 1)
    throw DomainError("write_tendon_sweep_csv: steps must be at least 1");
  std::vector<std::string> header = {"theta_mcp_deg", "theta_pip_deg",
                                     "theta_dip_deg"};
  for (const auto& route : spec.tendons)
    header.push_back(to_string(route.name) + "_mm");
  write_row(os, header);

  const JointLimits& mcp = spec.finger_limits.mcp;
  const JointLimits& pip = spec.finger_limits.pip;
  for (int i = 0; i <= steps; ++i) {
    const double m = mcp.min_rad + mcp.width() * i / steps;
    const double p = pip.min_rad + pip.width() * i / steps;
    const JointState state = JointState::coupled_state(m, p);
    const tendon::JointAngles angles = tendon::to_joint_angles(state);

    std::vector<std::string> cells = {
        format_double(rad_to_deg(state.theta_mcp_rad)),
        format_double(rad_to_deg(state.theta_pip_rad)),
        format_double(rad_to_deg(state.theta_dip_rad))};
    for (const auto& route : spec.tendons)
      cells.push_back(format_double(tendon::excursion(route, angles)));
    write_row(os, cells);
  }
}

nlohmann::json build_report(const HandSpec& spec, const ReportOptions& opts) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["tool_version"] = kToolVersion;

  for (Finger f : kFingers) {
    const SegmentDims& dims = spec.fingers.at(f);
    const SegmentRatios ratios = segment_ratios(dims);
    nlohmann::json& entry = doc["fingers"][to_string(f)];
    entry["tip_dip_mm"] = dims.tip_dip_mm;
    entry["dip_pip_mm"] = dims.dip_pip_mm;
    entry["pip_mcp_mm"] = dims.pip_mcp_mm;
    entry["ratio_pip_mcp_over_dip_pip"] = ratios.r32;
    entry["ratio_dip_pip_over_tip_dip"] = ratios.r21;
  }

  for (FingerJoint j : kFingerJoints) {
    const JointLimits& limits = spec.finger_limits.of(j);
    nlohmann::json& entry = doc["joint_limits_deg"][to_string(j)];
    entry["min_deg"] = rad_to_deg(limits.min_rad);
    entry["max_deg"] = rad_to_deg(limits.max_rad);
  }

  doc["cmc"] = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.cmc.size(); ++i) {
    const CmcJoint& joint = spec.cmc[i];
    nlohmann::json entry;
    entry["index"] = i + 1;
    entry["kind"] = to_string(joint.kind);
    entry["flexion_min_deg"] = rad_to_deg(joint.flexion.min_rad);
    entry["flexion_max_deg"] = rad_to_deg(joint.flexion.max_rad);
    entry["abduction_min_deg"] = rad_to_deg(joint.abduction.min_rad);
    entry["abduction_max_deg"] = rad_to_deg(joint.abduction.max_rad);
    entry["axial_limit_deg"] = rad_to_deg(joint.axial_limit_rad);
    doc["cmc"].push_back(entry);
  }

  doc["material"] = {
      {"youngs_modulus_mpa", spec.material.youngs_modulus_mpa},
      {"plateau_onset_strain", spec.material.plateau_onset_strain},
      {"plateau_stress_mpa", spec.material.plateau_stress_mpa},
      {"elastic_limit_strain", spec.material.elastic_limit_strain},
  };

  for (const NitinolRow& row : nitinol_rows(spec)) {
    nlohmann::json& entry = doc["wires"][to_string(row.joint)];
    entry["d_mm"] = row.d_mm;
    entry["rho_mm"] = row.rho_mm;
    entry["strain_pct"] = row.strain_pct;
    entry["stress_mpa"] = row.stress_mpa;
    entry["moment_nmm"] = row.moment_nmm;
    entry["life_cycles"] = row.life_cycles;
    entry["elastic_ok"] = row.elastic_ok;
  }

  {
    const kinematics::Workspace ws = kinematics::sample_workspace(
        spec.link_schedule, spec.finger_limits,
        deg_to_rad(opts.workspace_grid_step_deg));
    doc["workspace"] = {
        {"grid_step_deg", opts.workspace_grid_step_deg},
        {"point_count", ws.metrics.point_count},
        {"min_radius_mm", ws.metrics.min_radius_mm},
        {"max_radius_mm", ws.metrics.max_radius_mm},
        {"reach_mm", spec.link_schedule.total_length_mm()},
    };
  }

  doc["fk_consistency"] = nlohmann::json::array();
  for (const JointState& state : consistency_probe_states()) {
    const kinematics::ConsistencyRecord rec =
        kinematics::fk_consistency_report(spec.link_schedule, spec.dh_chain,
                                          state);
    doc["fk_consistency"].push_back(
        {{"theta_mcp_deg", rad_to_deg(state.theta_mcp_rad)},
         {"theta_pip_deg", rad_to_deg(state.theta_pip_rad)},
         {"schedule_x_mm", rec.schedule_pose.x_mm},
         {"schedule_y_mm", rec.schedule_pose.y_mm},
         {"dh_x_mm", rec.dh_pose.x_mm},
         {"dh_y_mm", rec.dh_pose.y_mm},
         {"gap_mm", rec.gap_mm}});
  }

  {
    const JointLimits& rom4 = spec.cmc[3].flexion;
    const JointLimits& rom5 = spec.cmc[4].flexion;
    doc["palm"] = {
        {"max_deformation_pct",
         palm::arch_deformation(rom4.max_rad, rom5.max_rad, spec.palm_geometry,
                                rom4, rom5)},
        {"compression_max_force_n", spec.compression.anchors.back().force_n},
    };
  }

  return doc;
}

}  // namespace handkit::report
