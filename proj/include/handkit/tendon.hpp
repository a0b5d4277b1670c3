#pragma once

#include <map>
#include <string>
#include <vector>

#include "handkit/types.hpp"

namespace handkit::tendon {

/// Joints a tendon can route over. Finger joints plus the thumb set.
enum class JointId {
  Mcp,
  Pip,
  Dip,
  ThumbMcp,
  ThumbIp,
  CmcFlexion,
  CmcAbduction,
  CmcAxial,
};

enum class TendonName {
  Flexion,
  Lumbrical,
  CouplingPipDip,
  Opposition,
  Adduction,
  Abduction,
};

std::string to_string(JointId j);
std::string to_string(TendonName n);

/// One wrap of a tendon around a joint: constant routing radius, sign +1 on
/// the flexor side, -1 on the extensor side.
struct TendonSegment {
  JointId joint = JointId::Mcp;
  double radius_mm = 0.0;
  int sign = 1;

  bool operator==(const TendonSegment&) const = default;
};

struct TendonRoute {
  TendonName name = TendonName::Flexion;
  std::vector<TendonSegment> segments;

  bool operator==(const TendonRoute&) const = default;
};

using JointAngles = std::map<JointId, double>;

JointAngles to_joint_angles(const JointState& state);

/// Capstan arc-length excursion: sum over segments of sign * radius * angle.
/// Zero at the zero pose. Throws SchemaError if a segment references a joint
/// absent from `angles`.
double excursion(const TendonRoute& route, const JointAngles& angles);

/// Angle ratio realized by a coupling tendon wound at rr_pip and rr_dip:
/// equal arc length gives theta_pip : theta_dip = rr_dip : rr_pip.
struct CouplingRatio {
  double pip_part = 0.0;
  double dip_part = 0.0;
  double dip_per_pip() const { return dip_part / pip_part; }
};

CouplingRatio coupling_ratio(double rr_pip_mm, double rr_dip_mm);

struct ExcursionSolve {
  JointAngles angles_rad;
  bool clamped = false;                 ///< some solution angle was out of limits
  std::vector<JointId> clamped_joints;  ///< which ones
};

/// Inverts the linear excursion map: given one excursion per route, solves
/// for the angles of every joint the routes touch. The system must be square
/// and full rank; otherwise an UnderdeterminedError lists the joints left
/// unconstrained. When limits are supplied the solution is clamped into them
/// and flagged.
ExcursionSolve angles_from_excursions(
    const std::vector<TendonRoute>& routes,
    const std::vector<double>& excursions_mm,
    const std::map<JointId, JointLimits>& limits = {});

/// Finger route set: flexion over MCP+PIP, lumbrical over MCP, and the
/// PIP-DIP coupling tendon (flexor side on PIP, extensor side on DIP, so its
/// excursion vanishes exactly on coupled motion).
std::vector<TendonRoute> default_finger_routes(double rr_mcp_mm,
                                               double rr_pip_mm,
                                               double rr_dip_mm);

/// Five-tendon thumb set: flexion, lumbrical, opposition, adduction,
/// abduction. Routing radii are uniform placeholders.
std::vector<TendonRoute> default_thumb_routes(double radius_mm);

}  // namespace handkit::tendon
