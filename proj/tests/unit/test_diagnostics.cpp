#include "doctest.h"

#include <cmath>
#include <numbers>

#include "anosovlab/diagnostics.hpp"

using namespace anosovlab;

namespace {

const Representation& rho0() {
  static const Representation r = fuchsian_genus2();
  return r;
}
const Representation& s4() {
  static const Representation r = sym_power_lift(rho0(), 4);
  return r;
}

FlagSample V(double theta) { return veronese_flag(theta, 4); }

}  // namespace

TEST_CASE("aggregation keeps the worst margin") {
  std::vector<CheckResult> rs = {CheckResult::from_margin("m", Margin::above(0.5, 0.1)),
                                 CheckResult::from_margin("m", Margin::above(0.2, 0.1)),
                                 CheckResult::skip("m", "n/a")};
  CheckResult a = aggregate("m", rs);
  CHECK(a.pass);
  CHECK(a.margin == 0.2);
  CHECK(a.details["skipped"] == 1);
  rs.push_back(CheckResult::from_margin("m", Margin::above(0.05, 0.1)));
  a = aggregate("m", rs);
  CHECK_FALSE(a.pass);
  CHECK(a.margin == 0.05);
  CHECK(aggregate("m", {}).skipped);
}

TEST_CASE("gap profiles") {
  const auto profiles = gap_profile(s4(), {1, 2, 3}, 4);
  REQUIRE(profiles.size() == 3);
  for (const GapProfile& p : profiles) {
    CHECK(p.pass);
    CHECK(p.fitted_slope < -0.1);
  }
  // Weights 3, 1, -1, -3: every consecutive ratio is s^-2, so the three
  // profiles coincide.
  CHECK(profiles[0].fitted_slope == doctest::Approx(profiles[1].fitted_slope).epsilon(1e-3));
  CHECK(profiles[2].fitted_slope == doctest::Approx(profiles[1].fitted_slope).epsilon(1e-3));

  const Representation ds = direct_sum(rho0(), rho0());
  const auto dp = gap_profile(ds, {1, 2}, 4);
  for (const GapPoint& pt : dp[0].points) CHECK(std::abs(pt.log_ratio) < 1e-12);
  CHECK_FALSE(dp[0].pass);
  CHECK(dp[1].pass);
}

TEST_CASE("H_k properties") {
  const FlagSample x = V(0.3), y = V(1.7), z = V(4.0);
  for (int k = 1; k <= 3; ++k) {
    const CheckResult r = check_Hk(x, y, z, k);
    CHECK(r.pass);
    CHECK(r.margin > 1e-6);
    CHECK(check_Hk(y, x, z, k).pass == r.pass);
  }
  CHECK_THROWS_AS(check_Hk(x, x, z, 2), InvalidInput);
}

TEST_CASE("maximality and orientation") {
  const FlagSample x = V(0.3), y = V(1.7), z = V(4.0);
  const CheckResult pos = check_maximal(x, y, z);
  CHECK(pos.pass);
  CHECK(pos.margin > 0);
  const SymplecticSpace S(2);
  CHECK(chart_q(S, z.space(2), x.space(2), y.space(2)).eigenvalues().maxCoeff() < 0);
  CHECK(check_maximal(z, y, x).pass);
}

TEST_CASE("transversality inside x^n") {
  const CheckResult r = check_transversality(V(0.3), V(1.7), V(4.0), true);
  CHECK(r.pass);
  CHECK(r.margin > 1e-6);
}

TEST_CASE("tangent law") {
  const FlagSource src = veronese_source(4);
  const CheckResult r = tangent_check(src, V(0.3), V(4.0), 1.7);
  CHECK(r.pass);
  const double h = r.details["halving_factor"];
  CHECK(h > 1.5);
  CHECK(h < 2.5);
  const TangentResiduals a = tangent_residuals(src, V(0.3), V(4.0), 1.7, 1e-4);
  const TangentResiduals b = tangent_residuals(src, V(0.3), V(4.0), 2.5, 1e-4);
  CHECK(a.dominant_sign == b.dominant_sign);
}

TEST_CASE("collinearity and cyclic order on x^2") {
  const FlagSample x = V(0.3), y = V(1.7), z = V(4.0);
  const CheckResult c = check_collinearity(x, y, z);
  CHECK(c.pass);
  CHECK(c.margin < 1e-8);
  CHECK_FALSE(check_collinearity(x, y, z, 1e-3).pass);
  const CheckResult o = check_cyclic_order(x, y, z);
  CHECK(o.pass);
  CHECK(double(o.details["cross_ratio"]) < 0);
  // Sign constancy along a path of y.
  for (double t = 0.4; t < 3.9; t += 0.25) CHECK(check_cyclic_order(x, V(t), z).pass);
  // psi(x) = x^1 at the base point.
  CHECK(max_principal_sine(psi_hyperplane(x, x, z), x.space(1)) < 1e-10);
}

TEST_CASE("hyperconvexity") {
  const auto s = sample_boundary(s4(), 16, SamplingStrategy::veronese).samples;
  const CheckResult r = check_hyperconvex(s, 4, 50, 50, 42);
  CHECK(r.pass);
  CHECK(r.margin > 1e-6);
  const FlagSample x = V(0.3), y = V(1.7), z = V(4.0);
  CHECK(abc_margin(x, y, z, 1, 1, 2).pass == check_Hk(x, y, z, 1).pass);
  std::vector<FlagSample> dup = {V(0.3), V(0.3), V(1.0), V(2.0)};
  CHECK_THROWS_AS(check_hyperconvex(dup, 4, 5, 5, 1), InvalidInput);
}

TEST_CASE("limits and psi variation") {
  const FlagSource src = veronese_source(4);
  const LimitDistances d = limit_distances(src, 0.5, 3.0, 1e-3);
  CHECK(d.toward_x < 1e-3);
  CHECK(d.toward_z < 1e-3);
  CHECK(d.h1_at_z);
  // First-order convergence: halving the distance halves the defect.
  const LimitDistances h = limit_distances(src, 0.5, 3.0, 5e-4);
  CHECK(d.toward_x / h.toward_x == doctest::Approx(2.0).epsilon(0.01));
  CHECK(d.toward_z / h.toward_z == doctest::Approx(2.0).epsilon(0.01));
  // Rotation invariance of the metric.
  const LimitDistances r = limit_distances(src, 2.0, 4.5, 1e-3);
  CHECK(r.toward_x == doctest::Approx(d.toward_x).epsilon(1e-6));
  CHECK(check_psi_variation(src, 0.0, 2.0).pass);
}

TEST_CASE("boundary uniqueness") {
  const CheckResult r = check_boundary_uniqueness(s4(), 3, 100, 1e-6);
  CHECK(r.pass);
  CHECK(int(r.details["compared"]) >= 100);
  CHECK(check_boundary_uniqueness(direct_sum(rho0(), rho0()), 3, 1, 1e-6).skipped);
}

TEST_CASE("equivalence suite") {
  const auto s = sample_boundary(s4(), 24, SamplingStrategy::veronese).samples;
  const auto triples = sample_positive_triples(s, 40, 42);
  for (const auto& t : triples) {
    CHECK(is_positive_triple(s[t[0]].theta(), s[t[1]].theta(), s[t[2]].theta()));
  }
  for (const CheckResult& r : equivalence_suite(s4(), s, triples)) {
    CHECK(r.pass);
    CHECK(r.margin == 0.0);
  }
  Representation broken = s4();
  broken.images[1](0, 0) += 1e-4;
  CHECK_THROWS_AS(equivalence_suite(broken, s, triples), InvalidInput);
}

TEST_CASE("bent representations keep the joint verdicts") {
  const Representation b = bend(s4(), first_handle_commutator(s4().presentation), 0.1);
  const auto s = sample_boundary(b, 24, SamplingStrategy::attracting).samples;
  const auto triples = sample_positive_triples(s, 40, 42);
  for (const CheckResult& r : equivalence_suite(b, s, triples)) CHECK(r.pass);
}
