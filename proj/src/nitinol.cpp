#include "handkit/nitinol.hpp"

#include <algorithm>
#include <cmath>

#include "handkit/units.hpp"

namespace handkit::nitinol {

double bending_strain(double d_mm, double rho_mm) {
  if (d_mm <= 0.0 || rho_mm <= 0.0)
    throw DomainError("bending_strain: diameter and bend radius must be > 0");
  return d_mm / (2.0 * rho_mm);
}

StressResult stress(double strain, const MaterialModel& mat) {
  if (strain < 0.0) throw DomainError("stress: negative strain");
  StressResult r;
  r.inelastic = strain > mat.elastic_limit_strain;
  r.mpa = strain < mat.plateau_onset_strain
              ? mat.youngs_modulus_mpa * strain
              : mat.plateau_stress_mpa;
  return r;
}

ElasticCheckResult elastic_check(double d_mm, double rho_mm,
                                 const MaterialModel& mat) {
  const double eps = bending_strain(d_mm, rho_mm);
  return {eps <= mat.elastic_limit_strain, mat.elastic_limit_strain - eps};
}

MomentResult restoring_moment(double d_mm, double rho_mm,
                              const MaterialModel& mat) {
  if (d_mm <= 0.0 || rho_mm <= 0.0)
    throw DomainError("restoring_moment: diameter and bend radius must be > 0");
  const double inertia = kPi * std::pow(d_mm, 4) / 64.0;  // mm^4
  const double elastic = mat.youngs_modulus_mpa * inertia / rho_mm;  // N*mm
  const double cap = mat.plateau_stress_mpa * inertia / (d_mm / 2.0) *
                     mat.moment_cap_shape_factor;
  if (elastic > cap) return {cap, true};
  return {elastic, false};
}

FatigueResult fatigue_life(double strain_pct, const StrainLifeTable& table) {
  if (strain_pct <= 0.0) throw DomainError("fatigue_life: strain must be > 0");
  const auto& a = table.anchors;

  // log-log linear between (and beyond) a pair of anchors
  const auto eval = [](const StrainLifeAnchor& lo, const StrainLifeAnchor& hi,
                       double s) {
    const double t = (std::log(s) - std::log(lo.strain_pct)) /
                     (std::log(hi.strain_pct) - std::log(lo.strain_pct));
    return std::exp(std::log(lo.cycles) +
                    t * (std::log(hi.cycles) - std::log(lo.cycles)));
  };

  const double window_lo = 0.5 * table.min_strain_pct();
  const double window_hi = 2.0 * table.max_strain_pct();
  if (strain_pct < window_lo) return {a.front().cycles, true};
  if (strain_pct > window_hi) return {a.back().cycles, true};
  if (a.size() == 1)
    return {a.front().cycles, strain_pct != a.front().strain_pct};

  // anchors are reproduced exactly, bypassing the log/exp round trip
  for (const StrainLifeAnchor& anchor : a)
    if (strain_pct == anchor.strain_pct) return {anchor.cycles, false};

  if (strain_pct < a.front().strain_pct)
    return {eval(a[0], a[1], strain_pct), true};
  if (strain_pct > a.back().strain_pct)
    return {eval(a[a.size() - 2], a.back(), strain_pct), true};

  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (strain_pct <= a[i + 1].strain_pct)
      return {eval(a[i], a[i + 1], strain_pct), false};
  }
  return {a.back().cycles, false};  // strain == last anchor
}

BundleRedesign bundle_redesign(double d_single_mm, int n) {
  if (n < 1) throw DomainError("bundle_redesign: n must be >= 1");
  const double factor = std::pow(static_cast<double>(n), -0.25);
  return {d_single_mm * factor, factor, 1.0};
}

BundleRedesign bundle_redesign(double d_single_mm, int n, double rho_mm,
                               const StrainLifeTable& table) {
  BundleRedesign r = bundle_redesign(d_single_mm, n);
  const double eps_single = bending_strain(d_single_mm, rho_mm) * 100.0;
  const double eps_each = bending_strain(r.d_each_mm, rho_mm) * 100.0;
  r.life_gain = fatigue_life(eps_each, table).cycles /
                fatigue_life(eps_single, table).cycles;
  return r;
}

}  // namespace handkit::nitinol
