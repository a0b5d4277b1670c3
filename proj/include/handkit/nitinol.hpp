#pragma once

#include <vector>

#include "handkit/errors.hpp"

namespace handkit::nitinol {

enum class WireConfiguration { FixedFree, Crossed };

/// One superelastic return wire. Clamped at one end, sliding at the other, it
/// bends with the joint at radius rho_mm and springs the joint back.
struct NitinolWire {
  double d_mm = 0.584;  ///< nominal stock diameter
  double rho_mm = 0.0;
  WireConfiguration configuration = WireConfiguration::FixedFree;

  bool operator==(const NitinolWire&) const = default;
};

/// Bilinear superelastic material: linear up to the plateau onset, constant
/// plateau stress beyond. Continuity (E * onset == plateau) is enforced when
/// a hand spec is loaded. The default constants come from
/// scripts/fit_material.py; see that script for the fit.
struct MaterialModel {
  double youngs_modulus_mpa = 35148.514851485146;
  double plateau_onset_strain = 0.011735915492957747;
  double plateau_stress_mpa = 412.5;
  double elastic_limit_strain = 0.06;
  double moment_cap_shape_factor = 2.0 / 3.0;

  bool operator==(const MaterialModel&) const = default;
};

struct StrainLifeAnchor {
  double strain_pct = 0.0;  ///< strain amplitude, percent
  double cycles = 0.0;

  bool operator==(const StrainLifeAnchor&) const = default;
};

/// Measured strain-amplitude / cycles-to-failure anchors, sorted by strain
/// with strictly decreasing cycles.
struct StrainLifeTable {
  std::vector<StrainLifeAnchor> anchors;

  static StrainLifeTable default_table() {
    return {{{0.65, 5.3e4}, {0.81, 1.8e4}, {0.86, 1.2e4}}};
  }

  double min_strain_pct() const { return anchors.front().strain_pct; }
  double max_strain_pct() const { return anchors.back().strain_pct; }

  bool operator==(const StrainLifeTable&) const = default;
};

/// Per-joint wire installation. The bend radius lives with the joint
/// geometry (RollingJointGeom::rho_wire_mm); fatigue_strain_pct is the
/// joint's strain-life anchor measured at functional bending, kept as an
/// external value rather than derived from d/(2 rho).
struct WireSpec {
  double d_mm = 0.584;
  int wire_count = 1;
  WireConfiguration configuration = WireConfiguration::FixedFree;
  double fatigue_strain_pct = 0.0;

  bool operator==(const WireSpec&) const = default;
};

/// Peak bending strain of a wire of diameter d bent to radius rho: d/(2 rho).
double bending_strain(double d_mm, double rho_mm);

struct StressResult {
  double mpa = 0.0;
  bool inelastic = false;  ///< strain exceeded the elastic limit
};

/// Bilinear stress at the given strain. Negative strain is a domain error;
/// strain beyond the elastic limit is reported, not rejected.
StressResult stress(double strain, const MaterialModel& mat);

struct ElasticCheckResult {
  bool ok = false;
  double margin = 0.0;  ///< elastic_limit_strain - bending strain
};

ElasticCheckResult elastic_check(double d_mm, double rho_mm,
                                 const MaterialModel& mat);

struct MomentResult {
  double n_mm = 0.0;
  bool capped = false;  ///< plateau moment cap engaged
};

/// Elastic restoring moment of one wire, M = E*I/rho with I = pi d^4 / 64,
/// capped at plateau_stress * I/(d/2) * moment_cap_shape_factor.
MomentResult restoring_moment(double d_mm, double rho_mm,
                              const MaterialModel& mat);

struct FatigueResult {
  double cycles = 0.0;
  bool extrapolated = false;  ///< input lay outside the anchor range
};

/// Cycles to failure at the given strain amplitude (percent), log-log linear
/// between anchors. Outside the anchors the end segments extrapolate within
/// [0.5*min, 2*max]; beyond that window the nearest anchor's cycles are
/// returned. Both cases set the extrapolated flag.
FatigueResult fatigue_life(double strain_pct, const StrainLifeTable& table);

struct BundleRedesign {
  double d_each_mm = 0.0;
  double strain_factor = 0.0;  ///< n^(-1/4)
  double life_gain = 1.0;
};

/// Replace one wire with n thinner wires of equal total bending stiffness:
/// n * I(d_each) = I(d_single), so d_each = d_single * n^(-1/4). Peak strain
/// at a given joint radius scales by the same factor.
BundleRedesign bundle_redesign(double d_single_mm, int n);

/// As above, with the fatigue-life gain evaluated at the joint's bend radius
/// via the strain-life table.
BundleRedesign bundle_redesign(double d_single_mm, int n, double rho_mm,
                               const StrainLifeTable& table);

}  // namespace handkit::nitinol
