#pragma once

#include <ostream>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "handkit/hand_model.hpp"
#include "handkit/kinematics.hpp"

namespace handkit::report {

/// One row of the per-joint wire table.
struct NitinolRow {
  FingerJoint joint = FingerJoint::Dip;
  double d_mm = 0.0;
  double rho_mm = 0.0;
  double strain_pct = 0.0;
  double stress_mpa = 0.0;
  double moment_nmm = 0.0;  ///< total over the joint's wires
  double life_cycles = 0.0;
  bool elastic_ok = false;
};

std::vector<NitinolRow> nitinol_rows(const HandSpec& spec);

/// joint,d_mm,rho_mm,strain_pct,stress_mpa,moment_nmm,life_cycles,elastic_ok
void write_nitinol_csv(std::ostream& os, const std::vector<NitinolRow>& rows);

struct BundleRow {
  int n = 0;
  double d_each_mm = 0.0;
  double strain_factor = 0.0;
  double strain_pct = 0.0;
  double life_cycles = 0.0;
  double life_gain = 0.0;
};

/// Bundle study for the given joint's wire, n = 1..n_max.
std::vector<BundleRow> bundle_rows(const HandSpec& spec, FingerJoint joint,
                                   int n_max);

void write_bundle_csv(std::ostream& os, const std::vector<BundleRow>& rows);

/// target_x_mm,target_y_mm,x_mm,y_mm,err_mm,theta_mcp_deg,theta_pip_deg
void write_track_csv(std::ostream& os,
                     const std::vector<kinematics::TrackRecord>& records);

/// theta_mcp_deg,theta_pip_deg,x_mm,y_mm
void write_workspace_csv(std::ostream& os, const kinematics::Workspace& ws);

/// The fixed probe states of the fingertip-model consistency report.
std::vector<JointState> consistency_probe_states();

/// theta_mcp_deg,theta_pip_deg,schedule_x_mm,schedule_y_mm,dh_x_mm,dh_y_mm,gap_mm
void write_consistency_csv(std::ostream& os, const HandSpec& spec,
                           const std::vector<JointState>& states);

/// theta4_deg,theta5_deg,deformation_pct over the CMC ROM grid.
void write_palm_sweep_csv(std::ostream& os, const HandSpec& spec, int steps4,
                          int steps5);

/// theta_mcp_deg,theta_pip_deg,theta_dip_deg plus one excursion column per
/// route, over a coupled pose sweep from zero to the joint limits.
void write_tendon_sweep_csv(std::ostream& os, const HandSpec& spec, int steps);

struct ReportOptions {
  double workspace_grid_step_deg = 1.0;
};

/// Full hand report: segment dims and ratios, ROM and CMC tables, wire
/// rows, material constants, workspace metrics, and the fingertip-model
/// consistency probes. `schema: 1`.
nlohmann::json build_report(const HandSpec& spec, const ReportOptions& opts = {});

}  // namespace handkit::report
