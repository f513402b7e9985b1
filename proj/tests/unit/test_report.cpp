#include "doctest.h"

#include <algorithm>

#include "anosovlab/report.hpp"

using namespace anosovlab;

namespace {

RunConfig small() {
  RunConfig c;
  c.radius = 4;
  c.triples = 40;
  c.samples = 24;
  return c;
}

bool has_check(const Report& r, const std::string& name) {
  return std::any_of(r.checks.begin(), r.checks.end(),
                     [&](const CheckResult& c) { return c.name == name; });
}

}  // namespace

TEST_CASE("sym-power report passes and is deterministic") {
  const Representation s4 = sym_power_lift(fuchsian_genus2(), 4);
  const Report a = run_diagnostics(s4, small());
  CHECK(a.pass);
  CHECK(a.failing.empty());
  CHECK(has_check(a, "H_2"));
  CHECK(has_check(a, "tangent"));
  CHECK(std::is_sorted(a.checks.begin(), a.checks.end(),
                       [](const CheckResult& x, const CheckResult& y) { return x.name < y.name; }));
  const Report b = run_diagnostics(s4, small());
  CHECK(strip_volatile(a.json).dump() == strip_volatile(b.json).dump());
  CHECK(a.json.contains("generated_at"));
  CHECK_FALSE(strip_volatile(a.json).contains("generated_at"));
}

TEST_CASE("direct-sum control fails on the k = 1 profile") {
  const Representation ds = direct_sum(fuchsian_genus2(), fuchsian_genus2());
  const Report r = run_diagnostics(ds, small());
  CHECK_FALSE(r.pass);
  CHECK(std::find(r.failing.begin(), r.failing.end(), "gap.k1") != r.failing.end());
  for (const CheckResult& c : r.checks) {
    if (c.name == "maximal") CHECK(c.pass);
  }
}

TEST_CASE("check selection and validation") {
  const Representation s4 = sym_power_lift(fuchsian_genus2(), 4);
  RunConfig c = small();
  c.checks = {"gap"};
  const Report r = run_diagnostics(s4, c);
  for (const CheckResult& x : r.checks) CHECK(x.name.rfind("gap.", 0) == 0);

  c.checks = {"nonsense"};
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = small();
  c.radius = 11;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c.radius = 4;
  c.triples = 0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("limit configurations") {
  const auto cfg = limit_configurations();
  CHECK(cfg.size() == 56);
  for (const auto& [x, z] : cfg) CHECK(angle_separation(x, z) > 0.7);
}
