#include "handkit/tendon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <sstream>

namespace handkit::tendon {

std::string to_string(JointId j) {
  switch (j) {
    case JointId::Mcp: return "mcp";
    case JointId::Pip: return "pip";
    case JointId::Dip: return "dip";
    case JointId::ThumbMcp: return "thumb_mcp";
    case JointId::ThumbIp: return "thumb_ip";
    case JointId::CmcFlexion: return "cmc_flexion";
    case JointId::CmcAbduction: return "cmc_abduction";
    default: return "cmc_axial";
  }
}

std::string to_string(TendonName n) {
  switch (n) {
    case TendonName::Flexion: return "flexion";
    case TendonName::Lumbrical: return "lumbrical";
    case TendonName::CouplingPipDip: return "coupling_pip_dip";
    case TendonName::Opposition: return "opposition";
    case TendonName::Adduction: return "adduction";
    default: return "abduction";
  }
}

JointAngles to_joint_angles(const JointState& state) {
  return {{JointId::Mcp, state.theta_mcp_rad},
          {JointId::Pip, state.theta_pip_rad},
          {JointId::Dip, state.theta_dip_rad}};
}

double excursion(const TendonRoute& route, const JointAngles& angles) {
  double total = 0.0;
  for (const auto& seg : route.segments) {
    const auto it = angles.find(seg.joint);
    if (it == angles.end())
      throw SchemaError("route " + to_string(route.name) +
                        " references joint " + to_string(seg.joint) +
                        " absent from the state");
    total += seg.sign * seg.radius_mm * it->second;
  }
  return total;
}

CouplingRatio coupling_ratio(double rr_pip_mm, double rr_dip_mm) {
  if (rr_pip_mm <= 0.0 || rr_dip_mm <= 0.0)
    throw DomainError("coupling_ratio: radii must be > 0");
  // equal arc length: rr_pip * theta_pip == rr_dip * theta_dip
  return {rr_dip_mm, rr_pip_mm};
}

ExcursionSolve angles_from_excursions(
    const std::vector<TendonRoute>& routes,
    const std::vector<double>& excursions_mm,
    const std::map<JointId, JointLimits>& limits) {
  if (routes.size() != excursions_mm.size())
    throw SchemaError("one excursion per route required");

  std::set<JointId> joint_set;
  for (const auto& r : routes)
    for (const auto& s : r.segments) joint_set.insert(s.joint);
  const std::vector<JointId> joints(joint_set.begin(), joint_set.end());

  const auto list_joints = [&](const std::vector<JointId>& js) {
    std::ostringstream os;
    for (std::size_t i = 0; i < js.size(); ++i)
      os << (i ? ", " : "") << to_string(js[i]);
    return os.str();
  };

  if (routes.size() != joints.size())
    throw UnderdeterminedError(
        "excursion system is not square over joints {" + list_joints(joints) +
        "}: " + std::to_string(routes.size()) + " routes for " +
        std::to_string(joints.size()) + " joints");

  const auto n = static_cast<Eigen::Index>(joints.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& seg : routes[i].segments) {
      const auto col = std::distance(
          joints.begin(), std::find(joints.begin(), joints.end(), seg.joint));
      A(i, col) += seg.sign * seg.radius_mm;
    }
    b(i) = excursions_mm[i];
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-9);
  if (lu.rank() < n) {
    // joints with a significant kernel component are the unconstrained ones
    const Eigen::MatrixXd kernel = lu.kernel();
    std::vector<JointId> loose;
    for (Eigen::Index j = 0; j < n; ++j)
      if (kernel.row(j).cwiseAbs().maxCoeff() > 1e-9)
        loose.push_back(joints[j]);
    throw UnderdeterminedError("excursion system is rank deficient; "
                               "unconstrained joints: {" +
                               list_joints(loose) + "}");
  }

  const Eigen::VectorXd theta = lu.solve(b);
  ExcursionSolve result;
  for (Eigen::Index j = 0; j < n; ++j) {
    double v = theta(j);
    if (const auto it = limits.find(joints[j]); it != limits.end()) {
      if (!it->second.contains(v)) {
        result.clamped = true;
        result.clamped_joints.push_back(joints[j]);
        v = it->second.clamp(v);
      }
    }
    result.angles_rad[joints[j]] = v;
  }
  return result;
}

std::vector<TendonRoute> default_finger_routes(double rr_mcp_mm,
                                               double rr_pip_mm,
                                               double rr_dip_mm) {
  return {
      {TendonName::Flexion,
       {{JointId::Mcp, rr_mcp_mm, +1}, {JointId::Pip, rr_pip_mm, +1}}},
      {TendonName::Lumbrical, {{JointId::Mcp, rr_mcp_mm, +1}}},
      {TendonName::CouplingPipDip,
       {{JointId::Pip, rr_pip_mm, +1}, {JointId::Dip, rr_dip_mm, -1}}},
  };
}

std::vector<TendonRoute> default_thumb_routes(double radius_mm) {
  return {
      {TendonName::Flexion,
       {{JointId::ThumbMcp, radius_mm, +1}, {JointId::ThumbIp, radius_mm, +1}}},
      {TendonName::Lumbrical, {{JointId::ThumbMcp, radius_mm, +1}}},
      {TendonName::Opposition, {{JointId::CmcAxial, radius_mm, +1}}},
      {TendonName::Adduction, {{JointId::CmcAbduction, radius_mm, -1}}},
      {TendonName::Abduction, {{JointId::CmcAbduction, radius_mm, +1}}},
  };
}

}  // namespace handkit::tendon
