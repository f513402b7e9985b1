#include <algorithm>
#include <limits>

#include "anosovlab/diagnostics.hpp"

namespace anosovlab {

CheckResult CheckResult::from_margin(std::string name, const Margin& m) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = m.pass;
  r.margin = m.value;
  r.tolerance = m.tolerance;
  r.sense = m.sense;
  return r;
}

CheckResult CheckResult::skip(std::string name, std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.skipped = true;
  r.details["reason"] = std::move(reason);
  return r;
}

CheckResult aggregate(std::string name, const std::vector<CheckResult>& results) {
  CheckResult out;
  out.name = std::move(name);
  std::size_t evaluated = 0, failures = 0, skipped = 0;
  const CheckResult* worst = nullptr;
  for (const CheckResult& r : results) {
    if (r.skipped) {
      ++skipped;
      continue;
    }
    ++evaluated;
    if (!r.pass) ++failures;
    const bool worse = worst == nullptr ||
                       (r.sense == Margin::Sense::above ? r.margin < worst->margin
                                                        : r.margin > worst->margin);
    if (worse) worst = &r;
  }
  out.details["evaluated"] = evaluated;
  out.details["failures"] = failures;
  out.details["skipped"] = skipped;
  if (worst == nullptr) {
    out.skipped = true;
    out.details["reason"] = "no applicable instances";
    return out;
  }
  out.margin = worst->margin;
  out.tolerance = worst->tolerance;
  out.sense = worst->sense;
  out.witness = worst->witness;
  out.details["worst"] = worst->details;
  out.pass = failures == 0;
  return out;
}

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["status"] = r.skipped ? "skipped" : (r.pass ? "pass" : "fail");
  j["pass"] = r.pass;
  j["margin"] = r.margin;
  j["tolerance"] = r.tolerance;
  j["sense"] = r.sense == Margin::Sense::above ? "above" : "below";
  j["witness"] = r.witness;
  j["details"] = r.details;
  return j;
}

}  // namespace anosovlab
