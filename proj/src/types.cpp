#include "handkit/types.hpp"

#include <sstream>

namespace handkit {

std::string to_string(Finger f) {
  switch (f) {
    case Finger::Index: return "index";
    case Finger::Middle: return "middle";
    case Finger::Ring: return "ring";
    default: return "little";
  }
}

std::string to_string(FingerJoint j) {
  switch (j) {
    case FingerJoint::Mcp: return "mcp";
    case FingerJoint::Pip: return "pip";
    default: return "dip";
  }
}

std::string to_string(CmcKind kind) {
  switch (kind) {
    case CmcKind::Ball: return "ball";
    case CmcKind::Fixed: return "fixed";
    default: return "rolling";
  }
}

SegmentRatios segment_ratios(const SegmentDims& dims) {
  return {dims.pip_mcp_mm / dims.dip_pip_mm, dims.dip_pip_mm / dims.tip_dip_mm};
}

namespace {

void check_one(FingerJoint joint, double angle_rad, const JointLimits& lim) {
  if (lim.contains(angle_rad)) return;
  std::ostringstream os;
  os << to_string(joint) << " angle " << rad_to_deg(angle_rad)
     << " deg outside [" << rad_to_deg(lim.min_rad) << ", "
     << rad_to_deg(lim.max_rad) << "] deg";
  throw JointLimitError(os.str());
}

}  // namespace

void check_limits(const JointState& state, const FingerLimits& limits) {
  check_one(FingerJoint::Mcp, state.theta_mcp_rad, limits.mcp);
  check_one(FingerJoint::Pip, state.theta_pip_rad, limits.pip);
  check_one(FingerJoint::Dip, state.theta_dip_rad, limits.dip);
}

}  // namespace handkit
