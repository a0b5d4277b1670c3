#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "handkit/types.hpp"

namespace handkit::palm {

/// One metacarpal modeled as a straight ray from its carpal base. The shaft
/// direction is the distal axis fanned by `splay_rad` in the palm plane
/// (positive toward the radial side), then rotated about the distal axis by
/// the neutral palmar tilt. CMC flexion adds to that palmar rotation.
struct MetacarpalRay {
  std::array<double, 3> base_mm = {0.0, 0.0, 0.0};
  double length_mm = 0.0;
  double splay_rad = 0.0;
  double neutral_tilt_rad = 0.0;

  bool operator==(const MetacarpalRay&) const = default;
};

/// Carpal arch geometry: five rays, index 0 = first (thumb) metacarpal.
/// Frame: x radial, y distal, z palmar; the neutral palm plane is z = 0.
struct PalmGeometry {
  std::array<MetacarpalRay, 5> metacarpals;

  static PalmGeometry default_geometry();

  bool operator==(const PalmGeometry&) const = default;
};

/// 3-D head position of ray `index` (0-based) at the given added palmar
/// rotation.
std::array<double, 3> metacarpal_head(const PalmGeometry& geom, int index,
                                      double flexion_rad);

/// Palm narrowing caused by flexing the fourth and fifth CMC joints,
/// in percent of the neutral width. Width is the span of the finger
/// metacarpal heads (2nd..5th) measured along their projection onto the
/// neutral palm plane. Angles outside the supplied ROM raise
/// JointLimitError.
double arch_deformation(double theta4_rad, double theta5_rad,
                        const PalmGeometry& geom,
                        const JointLimits& rom4 = JointLimits::from_deg(0, 10),
                        const JointLimits& rom5 = JointLimits::from_deg(0, 44));

struct CompressionAnchor {
  double displacement_mm = 0.0;
  double force_n = 0.0;

  bool operator==(const CompressionAnchor&) const = default;
};

/// Measured force-displacement anchors of the transverse palm compression,
/// starting at (0, 0) with nondecreasing force.
struct CompressionCurve {
  std::vector<CompressionAnchor> anchors;

  static CompressionCurve default_curve() { return {{{0.0, 0.0}, {18.0, 32.0}}}; }

  bool operator==(const CompressionCurve&) const = default;
};

struct ForceResult {
  double newtons = 0.0;
  bool clamped = false;  ///< displacement beyond the last anchor
};

/// Piecewise-linear interpolation of the compression curve. Negative
/// displacement is a domain error; beyond the last anchor the force clamps.
ForceResult compression_force(double displacement_mm,
                              const CompressionCurve& curve);

/// Angles of one pose of the three-axis CMC check.
struct CmcAngles {
  double flexion_rad = 0.0;
  double abduction_rad = 0.0;
  double axial_rad = 0.0;
};

struct RomCheckResult {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Validates a pose of CMC joint `joint_index` (1..5) against the joint
/// table. Fixed joints admit only the zero pose.
RomCheckResult cmc_rom_check(int joint_index, const CmcAngles& angles,
                             const std::array<CmcJoint, 5>& cmc);

struct Marker {
  std::string body;
  std::string label;
  std::array<double, 3> position_mm = {0.0, 0.0, 0.0};
};

/// Reflective-marker snapshot: three or more markers per rigid body. The
/// reference body's markers define the reference plane; every other body is
/// tracked. For the reference plane the first three markers must be
/// non-collinear; the plane normal follows their labeling order by the
/// right-hand rule.
struct MarkerSet {
  std::vector<Marker> markers;
  std::string reference_body = "m3";
};

/// Flexion angle of each tracked body relative to the reference plane, in
/// degrees. The body's axis is the principal direction of its centered
/// marker coordinates (largest singular value); its sign is disambiguated
/// toward the reference normal, so the returned angle is the nonnegative
/// angle between the axis and the plane. Degenerate marker clouds raise
/// DegenerateGeometryError.
std::map<std::string, double> flexion_from_markers(const MarkerSet& markers);

/// Parses a marker CSV with header body,label,x_mm,y_mm,z_mm.
MarkerSet parse_marker_csv(const std::string& path,
                           const std::string& reference_body = "m3");

}  // namespace handkit::palm
