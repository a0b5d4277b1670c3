#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "handkit/types.hpp"

namespace handkit::kinematics {

/// Exact rational coefficient for the angle expressions of the planar model
/// (1/2, 4/3, 5/3, ...). Stored as a ratio so serialized schedules stay
/// exact.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Rational&) const = default;
};

/// One term of the planar fingertip map: a segment of given length whose
/// orientation is a fixed rational combination of the MCP and PIP angles.
struct LinkTerm {
  double length_mm = 0.0;
  Rational mcp_coeff{0, 1};
  Rational pip_coeff{0, 1};

  bool operator==(const LinkTerm&) const = default;
};

/// Ordered link terms defining the closed-form planar fingertip position
///   P = sum_k length_k * (cos phi_k, sin phi_k),
///   phi_k = mcp_coeff_k * theta_mcp + pip_coeff_k * theta_pip.
/// The half-angle terms come from the rolling joints; the 4/3 and 5/3 PIP
/// coefficients embed the 2/3 DIP coupling.
struct LinkSchedule {
  std::vector<LinkTerm> terms;

  double total_length_mm() const;

  /// The reference middle-finger schedule (seven terms, 181.5 mm reach).
  static LinkSchedule middle_finger_default();

  bool operator==(const LinkSchedule&) const = default;
};

/// One standard DH row; theta is a rational combination of the MCP and PIP
/// angles plus the fixed offset.
struct DhRow {
  double a_mm = 0.0;
  double alpha_rad = 0.0;
  double d_mm = 0.0;
  Rational theta_mcp_coeff{0, 1};
  Rational theta_pip_coeff{0, 1};

  bool operator==(const DhRow&) const = default;
};

/// The reference middle-finger DH chain (nine rows). Each rolling joint
/// appears as two half-angle rows.
std::vector<DhRow> middle_finger_dh_chain();

struct PlanarPose {
  double x_mm = 0.0;
  double y_mm = 0.0;

  bool operator==(const PlanarPose&) const = default;
};

double distance(const PlanarPose& a, const PlanarPose& b);

/// Rolling-contact pair: theta is the rotation of the line connecting the
/// two cylinder centers, theta_r the flexion of the upper phalanx. With
/// equal radii the flexion is exactly twice the center-line rotation.
struct RollingPair {
  double theta_rad = 0.0;
  double theta_r_rad = 0.0;
};

/// Flexion angle produced by a center-line rotation `theta` of a rolling
/// joint. Only the equal-radii design is supported; unequal radii raise
/// UnsupportedGeometryError.
double rolling_flexion(double theta_rad, double r1_mm, double r2_mm);

/// Planar fingertip position for a coupled joint state. Angles outside
/// `limits` raise JointLimitError naming the joint.
PlanarPose fk_planar(const LinkSchedule& schedule, const JointState& state,
                     const FingerLimits& limits = {});

/// Fingertip position from the DH chain (standard composition: rotate theta
/// about z, translate d along z, translate a along x, rotate alpha about x),
/// projected to the finger plane.
PlanarPose fk_dh(const std::vector<DhRow>& chain, const JointState& state,
                 const FingerLimits& limits = {});

/// Side-by-side evaluation of the two fingertip models. The two disagree at
/// nonzero angles; the gap is reported as data, never raised.
struct ConsistencyRecord {
  JointState state;
  PlanarPose schedule_pose;
  PlanarPose dh_pose;
  double gap_mm = 0.0;
};

ConsistencyRecord fk_consistency_report(const LinkSchedule& schedule,
                                        const std::vector<DhRow>& chain,
                                        const JointState& state);

/// 2x2 tip Jacobian d(x,y)/d(theta_mcp, theta_pip) in mm/rad, analytic.
struct Jacobian2x2 {
  double dx_dmcp = 0.0;
  double dx_dpip = 0.0;
  double dy_dmcp = 0.0;
  double dy_dpip = 0.0;
};

Jacobian2x2 jacobian(const LinkSchedule& schedule, const JointState& state);

struct IkOptions {
  double tolerance_mm = 1e-3;
  int max_iterations = 500;
  double initial_damping = 1.0;  ///< lambda, mm^2
  std::optional<std::array<double, 2>> seed_rad;  ///< default: mid-range 45/45 deg
};

struct IkResult {
  JointState state;
  double residual_mm = 0.0;
  int iterations = 0;
  bool unreached = false;  ///< residual above tolerance at termination
};

/// Damped least-squares inverse kinematics over (theta_mcp, theta_pip) with
/// hard clamping to the limits at every step. The damping halves on residual
/// decrease and doubles on increase. Unreachable targets return the best
/// state found, flagged, never an error.
IkResult ik_planar(const LinkSchedule& schedule, const PlanarPose& target,
                   const FingerLimits& limits = {}, const IkOptions& opts = {});

struct TrackOptions {
  IkOptions ik;
  int repeats = 1;
  double noise_sigma_rad = 0.0;  ///< joint noise applied per repeat
  std::uint64_t seed = 0;
};

struct TrackRecord {
  PlanarPose target;
  PlanarPose achieved;        ///< mean over repeats
  double error_mm = 0.0;      ///< mean tip error over repeats
  JointState state;           ///< IK solution (noise-free)
  bool unreached = false;
  double repeatability_mm = 0.0;  ///< mean distance to the repeat centroid
};

struct TrackSummary {
  double max_abs_mean_err_mm = 0.0;
  double repeatability_mm = 0.0;  ///< mean over waypoints
  std::size_t unreached_count = 0;
};

struct TrackReport {
  std::vector<TrackRecord> records;
  TrackSummary summary;
};

/// Runs IK along the waypoint list, warm-starting every solve from the
/// previous solution. Optional zero-mean joint noise (sigma, explicit seed)
/// perturbs the executed angles of each repeat; with sigma = 0 the harness
/// is deterministic and repeatability is exactly zero.
TrackReport track_trajectory(const LinkSchedule& schedule,
                             const std::vector<PlanarPose>& waypoints,
                             const FingerLimits& limits = {},
                             const TrackOptions& opts = {});

/// Thumb CMC rotation for (flexion, abduction, axial) angles: elementary
/// rotations about x, y, z applied in that order, i.e.
/// R = Rz(axial) * Ry(abduction) * Rx(flexion). Out-of-range axes raise
/// JointLimitError.
std::array<std::array<double, 3>, 3> thumb_cmc_orient(double flexion_rad,
                                                      double abduction_rad,
                                                      double axial_rad,
                                                      const ThumbSpec& spec);

struct WorkspacePoint {
  double theta_mcp_rad = 0.0;
  double theta_pip_rad = 0.0;
  PlanarPose pose;
};

struct WorkspaceMetrics {
  std::size_t point_count = 0;
  double min_radius_mm = 0.0;
  double max_radius_mm = 0.0;
};

struct Workspace {
  std::vector<WorkspacePoint> points;
  WorkspaceMetrics metrics;
};

/// Fingertip positions over the full joint-limit grid, MCP-major then PIP,
/// both axes stepped from their minimum in `grid_step_rad` increments
/// (endpoints included when the step divides the width). Ordering is
/// deterministic.
Workspace sample_workspace(const LinkSchedule& schedule,
                           const FingerLimits& limits, double grid_step_rad);

}  // namespace handkit::kinematics
