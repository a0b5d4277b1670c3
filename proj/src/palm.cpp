#include "handkit/palm.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "handkit/csv.hpp"
#include "handkit/units.hpp"

namespace handkit::palm {

PalmGeometry PalmGeometry::default_geometry() {
  // Placeholder arch (no published palm dimensions): bases along the carpal
  // row, lengths and splays shaped like an adult hand. The fifth ray rests
  // 12.5 deg toward the palmar plane, the first 40 deg.
  PalmGeometry g;
  g.metacarpals[0] = {{30.0, -15.0, 0.0}, 45.0, deg_to_rad(30.0), deg_to_rad(40.0)};
  g.metacarpals[1] = {{22.0, 0.0, 3.0}, 68.0, deg_to_rad(5.0), 0.0};
  g.metacarpals[2] = {{7.0, 2.0, 5.0}, 64.0, 0.0, 0.0};
  g.metacarpals[3] = {{-7.0, 0.0, 4.0}, 58.0, deg_to_rad(-7.0), deg_to_rad(5.0)};
  g.metacarpals[4] = {{-20.0, -3.0, 2.0}, 52.0, deg_to_rad(-15.0), deg_to_rad(12.5)};
  return g;
}

std::array<double, 3> metacarpal_head(const PalmGeometry& geom, int index,
                                      double flexion_rad) {
  const MetacarpalRay& ray = geom.metacarpals.at(static_cast<std::size_t>(index));
  // shaft before palmar rotation: distal axis fanned by the splay
  const double ux = std::sin(ray.splay_rad);
  const double uy = std::cos(ray.splay_rad);
  // rotate about +y (distal) by neutral tilt + flexion; +z is palmar
  const double phi = ray.neutral_tilt_rad + flexion_rad;
  const double c = std::cos(phi), s = std::sin(phi);
  return {ray.base_mm[0] + ray.length_mm * ux * c,
          ray.base_mm[1] + ray.length_mm * uy,
          ray.base_mm[2] - ray.length_mm * ux * s};
}

namespace {

double projected_width(const PalmGeometry& geom, double theta4, double theta5) {
  // span of the finger metacarpal heads (rays 2..5) along the projected
  // polyline; projection drops z (the neutral palm plane is z = 0)
  const std::array<std::array<double, 3>, 4> heads = {
      metacarpal_head(geom, 1, 0.0), metacarpal_head(geom, 2, 0.0),
      metacarpal_head(geom, 3, theta4), metacarpal_head(geom, 4, theta5)};
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < heads.size(); ++i)
    w += std::hypot(heads[i][0] - heads[i + 1][0],
                    heads[i][1] - heads[i + 1][1]);
  return w;
}

}  // namespace

double arch_deformation(double theta4_rad, double theta5_rad,
                        const PalmGeometry& geom, const JointLimits& rom4,
                        const JointLimits& rom5) {
  const auto check = [](const char* name, double v, const JointLimits& lim) {
    if (lim.contains(v)) return;
    std::ostringstream os;
    os << name << " flexion " << rad_to_deg(v) << " deg outside ["
       << rad_to_deg(lim.min_rad) << ", " << rad_to_deg(lim.max_rad) << "] deg";
    throw JointLimitError(os.str());
  };
  check("fourth cmc", theta4_rad, rom4);
  check("fifth cmc", theta5_rad, rom5);

  const double w0 = projected_width(geom, 0.0, 0.0);
  const double w = projected_width(geom, theta4_rad, theta5_rad);
  return (w0 - w) / w0 * 100.0;
}

ForceResult compression_force(double displacement_mm,
                              const CompressionCurve& curve) {
  if (displacement_mm < 0.0)
    throw DomainError("compression_force: negative displacement");
  const auto& a = curve.anchors;
  if (displacement_mm >= a.back().displacement_mm)
    return {a.back().force_n, displacement_mm > a.back().displacement_mm};
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (displacement_mm <= a[i + 1].displacement_mm) {
      const double t = (displacement_mm - a[i].displacement_mm) /
                       (a[i + 1].displacement_mm - a[i].displacement_mm);
      return {a[i].force_n + t * (a[i + 1].force_n - a[i].force_n), false};
    }
  }
  return {a.back().force_n, false};
}

RomCheckResult cmc_rom_check(int joint_index, const CmcAngles& angles,
                             const std::array<CmcJoint, 5>& cmc) {
  if (joint_index < 1 || joint_index > 5)
    throw DomainError("cmc_rom_check: joint index must be 1..5");
  const CmcJoint& joint = cmc[static_cast<std::size_t>(joint_index - 1)];

  RomCheckResult result;
  const auto check = [&](const char* axis, double v, const JointLimits& lim) {
    if (lim.contains(v)) return;
    std::ostringstream os;
    os << "cmc " << joint_index << " " << axis << " " << rad_to_deg(v)
       << " deg outside [" << rad_to_deg(lim.min_rad) << ", "
       << rad_to_deg(lim.max_rad) << "] deg";
    result.ok = false;
    result.violations.push_back(os.str());
  };
  check("flexion", angles.flexion_rad, joint.flexion);
  check("abduction", angles.abduction_rad, joint.abduction);
  check("axial", angles.axial_rad,
        JointLimits{-joint.axial_limit_rad, joint.axial_limit_rad});
  return result;
}

namespace {

Eigen::Vector3d to_vec(const std::array<double, 3>& p) {
  return {p[0], p[1], p[2]};
}

std::vector<Eigen::Vector3d> body_points(const MarkerSet& set,
                                         const std::string& body) {
  std::vector<Eigen::Vector3d> pts;
  for (const auto& m : set.markers)
    if (m.body == body) pts.push_back(to_vec(m.position_mm));
  return pts;
}

Eigen::Vector3d centroid(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

}  // namespace

std::map<std::string, double> flexion_from_markers(const MarkerSet& set) {
  const auto ref = body_points(set, set.reference_body);
  if (ref.size() < 3)
    throw DegenerateGeometryError("reference body '" + set.reference_body +
                                  "' needs at least three markers");
  const Eigen::Vector3d normal_raw =
      (ref[1] - ref[0]).cross(ref[2] - ref[0]);
  const double scale = (ref[1] - ref[0]).norm() * (ref[2] - ref[0]).norm();
  if (scale <= 0.0 || normal_raw.norm() < 1e-9 * scale)
    throw DegenerateGeometryError("reference markers are collinear");
  const Eigen::Vector3d normal = normal_raw.normalized();

  std::set<std::string> bodies;
  for (const auto& m : set.markers)
    if (m.body != set.reference_body) bodies.insert(m.body);

  std::map<std::string, double> flexion_deg;
  for (const auto& body : bodies) {
    const auto pts = body_points(set, body);
    if (pts.size() < 2)
      throw DegenerateGeometryError("body '" + body +
                                    "' needs at least two markers");
    const Eigen::Vector3d c = centroid(pts);
    Eigen::MatrixXd centered(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
      centered.col(static_cast<Eigen::Index>(i)) = pts[i] - c;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(0) < 1e-9)
      throw DegenerateGeometryError("body '" + body +
                                    "' markers are coincident");
    if (pts.size() > 2 && sv(1) > (1.0 - 1e-9) * sv(0))
      throw DegenerateGeometryError(
          "body '" + body + "' markers have no unique principal direction");

    Eigen::Vector3d axis = svd.matrixU().col(0);
    if (axis.dot(normal) < 0.0) axis = -axis;  // orient toward the palmar side
    const double s = std::clamp(axis.dot(normal), -1.0, 1.0);
    flexion_deg[body] = rad_to_deg(std::asin(s));
  }
  return flexion_deg;
}

MarkerSet parse_marker_csv(const std::string& path,
                           const std::string& reference_body) {
  const csv::CsvData data = csv::read_csv(path);
  const std::vector<std::string> expected = {"body", "label", "x_mm", "y_mm",
                                             "z_mm"};
  if (data.header != expected)
    throw ParseError(path + ": expected header body,label,x_mm,y_mm,z_mm");

  MarkerSet set;
  set.reference_body = reference_body;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    if (row.size() != expected.size())
      throw ParseError(path + ": bad marker row at line " +
                       std::to_string(i + 2));
    try {
      set.markers.push_back(Marker{row[0],
                                   row[1],
                                   {std::stod(row[2]), std::stod(row[3]),
                                    std::stod(row[4])}});
    } catch (const std::exception&) {
      throw ParseError(path + ": bad marker row at line " +
                       std::to_string(i + 2));
    }
  }
  return set;
}

}  // namespace handkit::palm
