#pragma once

#include <array>
#include <optional>
#include <string>

#include "handkit/errors.hpp"
#include "handkit/units.hpp"

namespace handkit {

enum class Finger { Index, Middle, Ring, Little };
enum class FingerJoint { Mcp, Pip, Dip };

constexpr std::array<Finger, 4> kFingers = {Finger::Index, Finger::Middle,
                                            Finger::Ring, Finger::Little};
constexpr std::array<FingerJoint, 3> kFingerJoints = {
    FingerJoint::Mcp, FingerJoint::Pip, FingerJoint::Dip};

std::string to_string(Finger f);
std::string to_string(FingerJoint j);

/// Phalanx segment lengths of one finger, fingertip to knuckle.
struct SegmentDims {
  double tip_dip_mm = 0.0;
  double dip_pip_mm = 0.0;
  double pip_mcp_mm = 0.0;

  bool operator==(const SegmentDims&) const = default;
};

struct SegmentRatios {
  double r32 = 0.0;  ///< pip_mcp / dip_pip
  double r21 = 0.0;  ///< dip_pip / tip_dip
};

/// Proportions between adjacent segments. The dims invariants guarantee
/// nonzero denominators.
SegmentRatios segment_ratios(const SegmentDims& dims);

/// One rolling joint: two cylinders in no-slip contact. Outer radii carry the
/// rolling contact; inner radii carry the coupling tendon. The outer and
/// inner radius ratios must agree (checked at load time), and rho_wire_mm is
/// the bend radius seen by the return wire routed through the joint.
struct RollingJointGeom {
  double r1_mm = 0.0;
  double r2_mm = 0.0;
  double rr1_mm = 0.0;
  double rr2_mm = 0.0;
  double rho_wire_mm = 0.0;

  bool operator==(const RollingJointGeom&) const = default;
};

struct JointLimits {
  double min_rad = 0.0;
  double max_rad = 0.0;

  bool contains(double angle_rad) const {
    constexpr double kSlack = 1e-12;
    return angle_rad >= min_rad - kSlack && angle_rad <= max_rad + kSlack;
  }
  double width() const { return max_rad - min_rad; }
  double clamp(double angle_rad) const {
    if (angle_rad < min_rad) return min_rad;
    if (angle_rad > max_rad) return max_rad;
    return angle_rad;
  }
  static JointLimits from_deg(double min_deg, double max_deg) {
    return {deg_to_rad(min_deg), deg_to_rad(max_deg)};
  }
  /// Symmetric interval [-half, +half].
  static JointLimits symmetric_deg(double half_deg) {
    return from_deg(-half_deg, half_deg);
  }

  bool operator==(const JointLimits&) const = default;
};

/// Range of motion of one finger (defaults: MCP 0-90, PIP 0-90, DIP 0-60 deg).
struct FingerLimits {
  JointLimits mcp = JointLimits::from_deg(0.0, 90.0);
  JointLimits pip = JointLimits::from_deg(0.0, 90.0);
  JointLimits dip = JointLimits::from_deg(0.0, 60.0);

  const JointLimits& of(FingerJoint j) const {
    switch (j) {
      case FingerJoint::Mcp: return mcp;
      case FingerJoint::Pip: return pip;
      default: return dip;
    }
  }

  bool operator==(const FingerLimits&) const = default;
};

/// Joint angle vector of one finger. The PIP-DIP coupling tendon drives the
/// DIP at 2/3 of the PIP angle; coupled states carry that relation exactly.
struct JointState {
  double theta_mcp_rad = 0.0;
  double theta_pip_rad = 0.0;
  double theta_dip_rad = 0.0;
  bool coupled = true;

  static JointState coupled_state(double mcp_rad, double pip_rad) {
    return {mcp_rad, pip_rad, (2.0 / 3.0) * pip_rad, true};
  }
  static JointState uncoupled_state(double mcp_rad, double pip_rad,
                                    double dip_rad) {
    return {mcp_rad, pip_rad, dip_rad, false};
  }

  bool operator==(const JointState&) const = default;
};

/// Throws JointLimitError naming the first joint outside `limits`.
void check_limits(const JointState& state, const FingerLimits& limits);

enum class CmcKind { Ball, Fixed, Rolling };

std::string to_string(CmcKind kind);

/// One carpometacarpal joint. Fixed joints have zero-width limits everywhere;
/// the ball joint of the first ray allows axial rotation up to
/// +-axial_limit_rad.
struct CmcJoint {
  CmcKind kind = CmcKind::Fixed;
  JointLimits flexion;
  JointLimits abduction;
  double axial_limit_rad = 0.0;

  bool operator==(const CmcJoint&) const = default;
};

/// Thumb parameters. The reference tables publish no thumb segment lengths,
/// so they are optional config with no built-in default.
struct ThumbSpec {
  JointLimits cmc_flexion = JointLimits::symmetric_deg(55.0);
  JointLimits cmc_abduction = JointLimits::symmetric_deg(55.0);
  JointLimits cmc_axial = JointLimits::symmetric_deg(55.0);
  std::optional<std::array<double, 2>> mcp_ip_segment_lengths_mm;
  double ip_coupling_ratio = 1.0;

  bool operator==(const ThumbSpec&) const = default;
};

}  // namespace handkit
