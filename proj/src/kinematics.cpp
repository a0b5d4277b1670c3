#include "handkit/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "handkit/units.hpp"

namespace handkit::kinematics {

double LinkSchedule::total_length_mm() const {
  double total = 0.0;
  for (const auto& t : terms) total += t.length_mm;
  return total;
}

LinkSchedule LinkSchedule::middle_finger_default() {
  return LinkSchedule{{
      {13.0, {0, 1}, {0, 1}},
      {82.5, {1, 2}, {0, 1}},
      {32.261, {1, 1}, {0, 1}},
      {12.0, {1, 1}, {1, 2}},
      {17.478, {1, 1}, {1, 1}},
      {8.0, {1, 1}, {4, 3}},
      {16.261, {1, 1}, {5, 3}},
  }};
}

std::vector<DhRow> middle_finger_dh_chain() {
  return {
      {0.0, 0.0, 0.0, {0, 1}, {0, 1}},
      {13.0, 0.0, 0.0, {0, 1}, {0, 1}},
      {64.5, 0.0, 0.0, {1, 2}, {0, 1}},
      {18.0, 0.0, 0.0, {1, 2}, {0, 1}},
      {32.261, 0.0, 0.0, {0, 1}, {1, 2}},
      {12.0, 0.0, 0.0, {0, 1}, {1, 2}},
      {17.478, 0.0, 0.0, {0, 1}, {1, 3}},
      {8.0, 0.0, 0.0, {0, 1}, {1, 3}},
      {16.261, 0.0, 0.0, {0, 1}, {0, 1}},
  };
}

double distance(const PlanarPose& a, const PlanarPose& b) {
  return std::hypot(a.x_mm - b.x_mm, a.y_mm - b.y_mm);
}

double rolling_flexion(double theta_rad, double r1_mm, double r2_mm) {
  if (!(r1_mm > 0.0) || !(r2_mm > 0.0))
    throw DomainError("rolling_flexion: radii must be positive");
  if (std::abs(r1_mm - r2_mm) > 1e-9 * std::max(r1_mm, r2_mm)) {
    std::ostringstream os;
    os << "rolling_flexion: unequal radii (" << r1_mm << " vs " << r2_mm
       << " mm); only the equal-radii pair is supported";
    throw UnsupportedGeometryError(os.str());
  }
  return 2.0 * theta_rad;
}

namespace {

PlanarPose eval_schedule(const LinkSchedule& schedule, double mcp, double pip) {
  double x = 0.0, y = 0.0;
  for (const auto& t : schedule.terms) {
    const double phi = t.mcp_coeff.value() * mcp + t.pip_coeff.value() * pip;
    x += t.length_mm * std::cos(phi);
    y += t.length_mm * std::sin(phi);
  }
  return {x, y};
}

PlanarPose eval_dh(const std::vector<DhRow>& chain, double mcp, double pip) {
  // Running product of RotZ(theta)*TransZ(d)*TransX(a)*RotX(alpha); only the
  // origin column is needed so the product is carried as (R, p).
  std::array<std::array<double, 3>, 3> R = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::array<double, 3> p = {0, 0, 0};
  for (const auto& row : chain) {
    const double theta = row.theta_mcp_coeff.value() * mcp +
                         row.theta_pip_coeff.value() * pip;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ca = std::cos(row.alpha_rad), sa = std::sin(row.alpha_rad);
    const std::array<std::array<double, 3>, 3> A = {{{ct, -st * ca, st * sa},
                                                     {st, ct * ca, -ct * sa},
                                                     {0.0, sa, ca}}};
    const std::array<double, 3> t = {row.a_mm * ct, row.a_mm * st, row.d_mm};
    std::array<double, 3> pn;
    std::array<std::array<double, 3>, 3> Rn;
    for (int i = 0; i < 3; ++i) {
      pn[i] = p[i] + R[i][0] * t[0] + R[i][1] * t[1] + R[i][2] * t[2];
      for (int j = 0; j < 3; ++j)
        Rn[i][j] = R[i][0] * A[0][j] + R[i][1] * A[1][j] + R[i][2] * A[2][j];
    }
    R = Rn;
    p = pn;
  }
  return {p[0], p[1]};
}

}  // namespace

PlanarPose fk_planar(const LinkSchedule& schedule, const JointState& state,
                     const FingerLimits& limits) {
  check_limits(state, limits);
  return eval_schedule(schedule, state.theta_mcp_rad, state.theta_pip_rad);
}

PlanarPose fk_dh(const std::vector<DhRow>& chain, const JointState& state,
                 const FingerLimits& limits) {
  check_limits(state, limits);
  return eval_dh(chain, state.theta_mcp_rad, state.theta_pip_rad);
}

ConsistencyRecord fk_consistency_report(const LinkSchedule& schedule,
                                        const std::vector<DhRow>& chain,
                                        const JointState& state) {
  ConsistencyRecord rec;
  rec.state = state;
  rec.schedule_pose =
      eval_schedule(schedule, state.theta_mcp_rad, state.theta_pip_rad);
  rec.dh_pose = eval_dh(chain, state.theta_mcp_rad, state.theta_pip_rad);
  rec.gap_mm = distance(rec.schedule_pose, rec.dh_pose);
  return rec;
}

Jacobian2x2 jacobian(const LinkSchedule& schedule, const JointState& state) {
  Jacobian2x2 J;
  for (const auto& t : schedule.terms) {
    const double cm = t.mcp_coeff.value();
    const double cp = t.pip_coeff.value();
    const double phi = cm * state.theta_mcp_rad + cp * state.theta_pip_rad;
    const double s = std::sin(phi), c = std::cos(phi);
    J.dx_dmcp += -t.length_mm * s * cm;
    J.dx_dpip += -t.length_mm * s * cp;
    J.dy_dmcp += t.length_mm * c * cm;
    J.dy_dpip += t.length_mm * c * cp;
  }
  return J;
}

IkResult ik_planar(const LinkSchedule& schedule, const PlanarPose& target,
                   const FingerLimits& limits, const IkOptions& opts) {
  if (!(opts.tolerance_mm > 0.0))
    throw DomainError("ik_planar: tolerance must be positive");
  if (opts.max_iterations < 1)
    throw DomainError("ik_planar: max_iterations must be at least 1");
  if (!(opts.initial_damping > 0.0))
    throw DomainError("ik_planar: initial damping must be positive");

  const std::array<double, 2> seed =
      opts.seed_rad.value_or(std::array<double, 2>{kPi / 4.0, kPi / 4.0});
  std::array<double, 2> q = {limits.mcp.clamp(seed[0]),
                             limits.pip.clamp(seed[1])};

  const auto residual = [&](const std::array<double, 2>& v) {
    return distance(eval_schedule(schedule, v[0], v[1]), target);
  };

  double lambda = opts.initial_damping;
  std::array<double, 2> best_q = q;
  double best_r = residual(q);
  double r = best_r;
  int it = 0;
  while (it < opts.max_iterations && best_r > opts.tolerance_mm) {
    ++it;
    const JointState s = JointState::coupled_state(q[0], q[1]);
    const Jacobian2x2 J = jacobian(schedule, s);
    const PlanarPose pose = eval_schedule(schedule, q[0], q[1]);
    const double ex = target.x_mm - pose.x_mm;
    const double ey = target.y_mm - pose.y_mm;

    // Solve (J J^T + lambda I) z = e in closed form, then dq = J^T z.
    const double a = J.dx_dmcp * J.dx_dmcp + J.dx_dpip * J.dx_dpip + lambda;
    const double b = J.dx_dmcp * J.dy_dmcp + J.dx_dpip * J.dy_dpip;
    const double d = J.dy_dmcp * J.dy_dmcp + J.dy_dpip * J.dy_dpip + lambda;
    const double det = a * d - b * b;
    if (det == 0.0) {
      lambda = std::min(lambda * 2.0, 1e12);
      continue;
    }
    const double z0 = (d * ex - b * ey) / det;
    const double z1 = (-b * ex + a * ey) / det;
    const std::array<double, 2> cand = {
        limits.mcp.clamp(q[0] + J.dx_dmcp * z0 + J.dy_dmcp * z1),
        limits.pip.clamp(q[1] + J.dx_dpip * z0 + J.dy_dpip * z1)};
    const double rc = residual(cand);
    if (rc < r) {
      q = cand;
      r = rc;
      lambda = std::max(lambda * 0.5, 1e-9);
      if (rc < best_r) {
        best_q = q;
        best_r = rc;
      }
    } else {
      lambda = std::min(lambda * 2.0, 1e12);
    }
  }

  IkResult result;
  result.state = JointState::coupled_state(best_q[0], best_q[1]);
  result.residual_mm = best_r;
  result.iterations = it;
  result.unreached = best_r > opts.tolerance_mm;
  return result;
}

TrackReport track_trajectory(const LinkSchedule& schedule,
                             const std::vector<PlanarPose>& waypoints,
                             const FingerLimits& limits,
                             const TrackOptions& opts) {
  if (opts.repeats < 1)
    throw DomainError("track_trajectory: repeats must be at least 1");
  if (opts.noise_sigma_rad < 0.0)
    throw DomainError("track_trajectory: noise sigma must be nonnegative");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> noise(0.0, opts.noise_sigma_rad > 0.0
                                                  ? opts.noise_sigma_rad
                                                  : 1.0);

  TrackReport report;
  report.records.reserve(waypoints.size());
  IkOptions ik_opts = opts.ik;
  double repeat_sum = 0.0;
  for (const auto& target : waypoints) {
    const IkResult ik = ik_planar(schedule, target, limits, ik_opts);
    // warm-start the next waypoint from this solution
    ik_opts.seed_rad = std::array<double, 2>{ik.state.theta_mcp_rad,
                                             ik.state.theta_pip_rad};

    std::vector<PlanarPose> samples;
    samples.reserve(static_cast<std::size_t>(opts.repeats));
    for (int k = 0; k < opts.repeats; ++k) {
      double m = ik.state.theta_mcp_rad;
      double p = ik.state.theta_pip_rad;
      if (opts.noise_sigma_rad > 0.0) {
        m = limits.mcp.clamp(m + noise(rng));
        p = limits.pip.clamp(p + noise(rng));
      }
      samples.push_back(eval_schedule(schedule, m, p));
    }

    TrackRecord rec;
    rec.target = target;
    rec.state = ik.state;
    rec.unreached = ik.unreached;
    const double n = static_cast<double>(samples.size());
    bool identical = true;
    for (const auto& s : samples)
      identical = identical && s.x_mm == samples.front().x_mm &&
                  s.y_mm == samples.front().y_mm;
    if (identical) {
      // zero spread by construction; skip the mean arithmetic so the
      // repeatability is exactly 0 rather than rounding residue
      rec.achieved = samples.front();
      rec.error_mm = distance(rec.achieved, target);
      rec.repeatability_mm = 0.0;
    } else {
      double sx = 0.0, sy = 0.0, err_sum = 0.0;
      for (const auto& s : samples) {
        sx += s.x_mm;
        sy += s.y_mm;
        err_sum += distance(s, target);
      }
      rec.achieved = {sx / n, sy / n};
      rec.error_mm = err_sum / n;
      double spread_sum = 0.0;
      for (const auto& s : samples) spread_sum += distance(s, rec.achieved);
      rec.repeatability_mm = spread_sum / n;
    }

    report.summary.max_abs_mean_err_mm =
        std::max(report.summary.max_abs_mean_err_mm, rec.error_mm);
    if (rec.unreached) ++report.summary.unreached_count;
    repeat_sum += rec.repeatability_mm;
    report.records.push_back(rec);
  }
  if (!report.records.empty())
    report.summary.repeatability_mm =
        repeat_sum / static_cast<double>(report.records.size());
  return report;
}

std::array<std::array<double, 3>, 3> thumb_cmc_orient(double flexion_rad,
                                                      double abduction_rad,
                                                      double axial_rad,
                                                      const ThumbSpec& spec) {
  const auto check = [](const char* axis, double v, const JointLimits& lim) {
    if (lim.contains(v)) return;
    std::ostringstream os;
    os << "thumb cmc " << axis << " " << rad_to_deg(v) << " deg outside ["
       << rad_to_deg(lim.min_rad) << ", " << rad_to_deg(lim.max_rad) << "] deg";
    throw JointLimitError(os.str());
  };
  check("flexion", flexion_rad, spec.cmc_flexion);
  check("abduction", abduction_rad, spec.cmc_abduction);
  check("axial", axial_rad, spec.cmc_axial);

  const double cf = std::cos(flexion_rad), sf = std::sin(flexion_rad);
  const double cb = std::cos(abduction_rad), sb = std::sin(abduction_rad);
  const double cz = std::cos(axial_rad), sz = std::sin(axial_rad);
  // R = Rz(axial) * Ry(abduction) * Rx(flexion)
  return {{{cz * cb, cz * sb * sf - sz * cf, cz * sb * cf + sz * sf},
           {sz * cb, sz * sb * sf + cz * cf, sz * sb * cf - cz * sf},
           {-sb, cb * sf, cb * cf}}};
}

Workspace sample_workspace(const LinkSchedule& schedule,
                           const FingerLimits& limits, double grid_step_rad) {
  if (!(grid_step_rad > 0.0))
    throw DomainError("sample_workspace: grid step must be positive");

  const auto axis_values = [&](const JointLimits& lim) {
    std::vector<double> values;
    const double span = lim.width();
    const auto count = static_cast<std::size_t>(
        std::floor(span / grid_step_rad + 1e-9));
    values.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
      values.push_back(lim.min_rad + static_cast<double>(i) * grid_step_rad);
    return values;
  };

  const std::vector<double> mcps = axis_values(limits.mcp);
  const std::vector<double> pips = axis_values(limits.pip);

  Workspace ws;
  ws.points.reserve(mcps.size() * pips.size());
  bool first = true;
  for (const double m : mcps) {
    for (const double p : pips) {
      const PlanarPose pose = eval_schedule(schedule, m, p);
      ws.points.push_back({m, p, pose});
      const double radius = std::hypot(pose.x_mm, pose.y_mm);
      if (first) {
        ws.metrics.min_radius_mm = ws.metrics.max_radius_mm = radius;
        first = false;
      } else {
        ws.metrics.min_radius_mm = std::min(ws.metrics.min_radius_mm, radius);
        ws.metrics.max_radius_mm = std::max(ws.metrics.max_radius_mm, radius);
      }
    }
  }
  ws.metrics.point_count = ws.points.size();
  return ws;
}

}  // namespace handkit::kinematics
