#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "handkit/nitinol.hpp"
#include "handkit/units.hpp"

using namespace handkit;
using namespace handkit::nitinol;

TEST_CASE("bending strain is d over two rho") {
  CHECK(std::abs(bending_strain(0.58, 15.0) * 100.0 - 1.93) <= 0.005);
  CHECK(bending_strain(0.58, 18.0) == doctest::Approx(0.58 / 36.0).epsilon(1e-15));
  CHECK(bending_strain(0.58, 20.0) == doctest::Approx(0.0145).epsilon(1e-12));
  CHECK(bending_strain(1.0, 10.0) == 0.05);
  CHECK_THROWS_AS(bending_strain(0.0, 10.0), DomainError);
  CHECK_THROWS_AS(bending_strain(0.5, 0.0), DomainError);
}

TEST_CASE("bilinear stress: linear branch, plateau, elastic flag") {
  const MaterialModel mat;  // fitted defaults
  // continuity at the onset
  CHECK(mat.youngs_modulus_mpa * mat.plateau_onset_strain ==
        doctest::Approx(mat.plateau_stress_mpa).epsilon(1e-12));

  const StressResult low = stress(0.005, mat);
  CHECK(low.mpa == doctest::Approx(0.005 * mat.youngs_modulus_mpa));
  CHECK(!low.inelastic);

  const StressResult mid = stress(0.0193, mat);
  CHECK(mid.mpa == mat.plateau_stress_mpa);
  CHECK(!mid.inelastic);

  const StressResult high = stress(0.07, mat);
  CHECK(high.mpa == mat.plateau_stress_mpa);
  CHECK(high.inelastic);

  CHECK_THROWS_AS(stress(-0.01, mat), DomainError);
}

TEST_CASE("fitted material reproduces the reference stresses within 15%") {
  const MaterialModel mat;
  // (strain pct, stress MPa) pairs from the reference wire-stress table
  const double cases[3][2] = {{1.93, 455.0}, {1.63, 370.0}, {1.01, 355.0}};
  for (const auto& c : cases) {
    const double predicted = stress(c[0] / 100.0, mat).mpa;
    CHECK(std::abs(predicted - c[1]) / c[1] <= 0.15);
  }
}

TEST_CASE("elastic check margin") {
  const MaterialModel mat;
  const ElasticCheckResult ok = elastic_check(0.58, 15.0, mat);
  CHECK(ok.ok);
  CHECK(ok.margin == doctest::Approx(0.06 - 0.58 / 30.0));

  const ElasticCheckResult bad = elastic_check(1.3, 10.0, mat);
  CHECK(!bad.ok);
  CHECK(bad.margin < 0.0);
}

TEST_CASE("restoring moment: elastic value and plateau cap") {
  // high plateau onset keeps the cap above the elastic moment at rho 20
  const MaterialModel soft{60000.0, 0.03, 1800.0, 0.06, 2.0 / 3.0};
  const double inertia = kPi * std::pow(0.58, 4) / 64.0;
  CHECK(inertia == doctest::Approx(0.005554971984059105).epsilon(1e-12));

  const MomentResult m = restoring_moment(0.58, 20.0, soft);
  CHECK(!m.capped);
  CHECK(m.n_mm == doctest::Approx(16.664915952177314).epsilon(1e-12));

  // shrink the bend radius until the plateau cap engages
  const MomentResult capped = restoring_moment(0.58, 2.0, soft);
  CHECK(capped.capped);
  CHECK(capped.n_mm ==
        doctest::Approx(1800.0 * inertia / 0.29 * (2.0 / 3.0)).epsilon(1e-12));
  CHECK(capped.n_mm < 60000.0 * inertia / 2.0);
}

TEST_CASE("fatigue life reproduces the anchors and interpolates log-log") {
  const StrainLifeTable table = StrainLifeTable::default_table();

  CHECK(fatigue_life(0.65, table).cycles == 5.3e4);
  CHECK(fatigue_life(0.81, table).cycles == 1.8e4);
  CHECK(fatigue_life(0.86, table).cycles == 1.2e4);
  CHECK(!fatigue_life(0.81, table).extrapolated);

  // between anchors: strictly monotone and equal to the standalone formula
  const FatigueResult mid = fatigue_life(0.83, table);
  CHECK(!mid.extrapolated);
  CHECK(mid.cycles ==
        doctest::Approx(oracles::loglog_cycles(0.83, 0.81, 1.8e4, 0.86, 1.2e4))
            .epsilon(1e-12));
  CHECK(mid.cycles < 1.8e4);
  CHECK(mid.cycles > 1.2e4);

  double prev = fatigue_life(0.65, table).cycles;
  for (double s = 0.66; s < 0.86; s += 0.01) {
    const double cur = fatigue_life(s, table).cycles;
    CHECK(cur < prev);
    prev = cur;
  }

  // outside the anchors but inside the trust window: end-segment slope
  const FatigueResult lo = fatigue_life(0.5, table);
  CHECK(lo.extrapolated);
  CHECK(lo.cycles ==
        doctest::Approx(oracles::loglog_cycles(0.5, 0.65, 5.3e4, 0.81, 1.8e4))
            .epsilon(1e-12));
  const FatigueResult hi = fatigue_life(1.0, table);
  CHECK(hi.extrapolated);
  CHECK(hi.cycles ==
        doctest::Approx(oracles::loglog_cycles(1.0, 0.81, 1.8e4, 0.86, 1.2e4))
            .epsilon(1e-12));

  // beyond the window: clamp to the nearest anchor, flagged
  CHECK(fatigue_life(0.2, table).cycles == 5.3e4);
  CHECK(fatigue_life(0.2, table).extrapolated);
  CHECK(fatigue_life(2.5, table).cycles == 1.2e4);
  CHECK(fatigue_life(2.5, table).extrapolated);

  CHECK_THROWS_AS(fatigue_life(0.0, table), DomainError);
}

TEST_CASE("single-anchor table degenerates to a constant") {
  const StrainLifeTable one{{{0.8, 1e4}}};
  CHECK(fatigue_life(0.8, one).cycles == 1e4);
  CHECK(!fatigue_life(0.8, one).extrapolated);
  CHECK(fatigue_life(0.6, one).cycles == 1e4);
  CHECK(fatigue_life(0.6, one).extrapolated);
}

TEST_CASE("bundle redesign preserves total stiffness") {
  const BundleRedesign two = bundle_redesign(0.58, 2);
  CHECK(two.strain_factor == doctest::Approx(0.8408964152537145).epsilon(1e-15));
  CHECK(two.d_each_mm == doctest::Approx(0.4877199208471544).epsilon(1e-15));

  const BundleRedesign sixteen = bundle_redesign(0.58, 16);
  CHECK(sixteen.strain_factor == 0.5);

  // n * I(d_each) == I(d): equal uncapped moment at any radius
  const MaterialModel soft{60000.0, 0.03, 1800.0, 0.06, 2.0 / 3.0};
  const MomentResult single = restoring_moment(0.58, 20.0, soft);
  const MomentResult each = restoring_moment(sixteen.d_each_mm, 20.0, soft);
  REQUIRE(!single.capped);
  REQUIRE(!each.capped);
  CHECK(16.0 * each.n_mm == doctest::Approx(single.n_mm).epsilon(1e-9));

  CHECK(bundle_redesign(0.58, 1).strain_factor == 1.0);
  CHECK_THROWS_AS(bundle_redesign(0.58, 0), DomainError);
}

TEST_CASE("bundle redesign reports the fatigue-life gain") {
  const StrainLifeTable table = StrainLifeTable::default_table();
  const BundleRedesign r = bundle_redesign(0.25, 2, 15.0, table);
  // 0.25 mm at rho 15 -> 0.833% strain; thinner wires strain less, live longer
  CHECK(r.life_gain > 1.0);
  const double eps_single = bending_strain(0.25, 15.0) * 100.0;
  const double eps_each = bending_strain(r.d_each_mm, 15.0) * 100.0;
  CHECK(r.life_gain == doctest::Approx(fatigue_life(eps_each, table).cycles /
                                       fatigue_life(eps_single, table).cycles)
                           .epsilon(1e-12));
}
