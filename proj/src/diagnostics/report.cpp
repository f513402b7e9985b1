#include "anosovlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <numbers>
#include <optional>

#include "anosovlab/parallel.hpp"

namespace anosovlab {

namespace {

bool all_have(const std::vector<FlagSample>& samples, int k) {
  return std::all_of(samples.begin(), samples.end(), [k](const FlagSample& f) { return f.has(k); });
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CheckResult gap_check(const GapProfile& p, double alpha_min) {
  CheckResult r = CheckResult::from_margin("gap.k" + std::to_string(p.k),
                                           Margin::below(p.fitted_slope, -alpha_min));
  r.details["decreasing_ok"] = p.decreasing_ok;
  r.details["r_squared"] = p.r_squared;
  r.details["envelope_slope"] = p.envelope_slope;
  r.details["envelope_r_squared"] = p.envelope_r_squared;
  if (p.partial) r.details["warning"] = p.warning;
  if (!p.decreasing_ok) r.pass = false;
  return r;
}

// Per-triple results of one check.  Numerical flag pathologies (bad meet
// dimensions, charts that are not symmetric to tolerance) are counted apart
// from mathematical failures.
struct TripleColumn {
  std::vector<std::optional<CheckResult>> slots;
  std::vector<char> quality_failure;
  explicit TripleColumn(std::size_t n) : slots(n), quality_failure(n, 0) {}

  template <typename F>
  void run(std::size_t i, F&& f) {
    try {
      slots[i] = f();
    } catch (const NumericalError&) {
      quality_failure[i] = 1;
    } catch (const AsymmetricMapError&) {
      quality_failure[i] = 1;
    }
  }
  std::size_t quality_failures() const {
    return static_cast<std::size_t>(std::count(quality_failure.begin(), quality_failure.end(), 1));
  }
  CheckResult collect(const std::string& name) const {
    std::vector<CheckResult> rs;
    for (const auto& s : slots) {
      if (s) rs.push_back(*s);
    }
    CheckResult r = aggregate(name, rs);
    r.details["flag_quality_failures"] = quality_failures();
    return r;
  }
};

CheckResult skipped(const std::string& name, const std::string& reason) {
  return CheckResult::skip(name, reason);
}

}  // namespace

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups = {
      "gap",     "maximal",     "hk",     "transversality", "tangent",     "collinearity",
      "cyclic_order", "hyperconvex", "limits", "psi",     "equivalence", "uniqueness"};
  return groups;
}

void RunConfig::validate() const {
  if (radius < 1 || radius > 10) throw InvalidInput("radius must lie in [1, 10]");
  if (triples < 1) throw InvalidInput("triples must be at least 1");
  if (samples < 3) throw InvalidInput("samples must be at least 3");
  for (const std::string& c : checks) {
    if (std::find(check_groups().begin(), check_groups().end(), c) == check_groups().end()) {
      throw InvalidInput("unknown check group '" + c + "'");
    }
  }
}

std::vector<std::pair<double, double>> limit_configurations() {
  std::vector<std::pair<double, double>> out;
  const double step = std::numbers::pi / 4;
  for (int i = 0; i < 8; ++i) {
    for (int j = 1; j < 8; ++j) out.emplace_back(i * step, canonical_angle((i + j) * step));
  }
  return out;
}

Report run_diagnostics(const Representation& rep, const RunConfig& config) {
  config.validate();
  const Tolerances& tol = config.tol;
  auto selected = [&](const std::string& g) {
    return config.checks.empty() ||
           std::find(config.checks.begin(), config.checks.end(), g) != config.checks.end();
  };
  const int N = rep.dim;
  const bool symplectic = rep.symplectic && N % 2 == 0;
  const int n = N / 2;
  const bool closed_form = rep.kind == RepKind::sym_power || rep.kind == RepKind::fuchsian_base;

  Report out;
  std::vector<CheckResult> checks;

  std::vector<int> all_ks;
  for (int k = 1; k < N; ++k) all_ks.push_back(k);
  out.gap_profiles = gap_profile(rep, all_ks, config.radius, tol);
  std::vector<int> anosov_ks;
  for (const GapProfile& p : out.gap_profiles) {
    if (p.pass) anosov_ks.push_back(p.k);
    if (selected("gap")) checks.push_back(gap_check(p, tol.alpha_min));
  }

  // Boundary samples: closed form where available, otherwise attracting
  // flags at the indices with a verified gap.
  BoundarySampling sampling;
  std::string sampling_note;
  if (closed_form) {
    sampling = sample_boundary(rep, config.samples, SamplingStrategy::veronese,
                               SamplingOptions{config.seed, 4, {}}, tol);
  } else if (!anosov_ks.empty()) {
    try {
      sampling = sample_boundary(rep, config.samples, SamplingStrategy::attracting,
                                 SamplingOptions{config.seed, std::min(config.radius, 4), anosov_ks},
                                 tol);
    } catch (const Error& e) {
      sampling_note = e.what();
    }
  } else {
    sampling_note = "no index with a verified singular-value gap";
  }
  const std::vector<FlagSample>& samples = sampling.samples;
  const bool have_triples = samples.size() >= 3;
  if (!have_triples && sampling_note.empty()) sampling_note = "fewer than three boundary samples";
  std::vector<std::array<std::size_t, 3>> triples;
  if (have_triples) triples = sample_positive_triples(samples, config.triples, config.seed, tol);
  const std::string no_samples = "no boundary samples: " + sampling_note;

  auto has = [&](int k) { return have_triples && all_have(samples, k); };
  const std::size_t T = triples.size();
  const std::optional<FlagSource> source =
      closed_form ? std::optional<FlagSource>(veronese_source(N, tol)) : std::nullopt;

  // Per-triple checks.
  const bool want_max = selected("maximal") && symplectic;
  std::vector<int> hk_ks;
  if (selected("hk") || selected("transversality")) {
    for (int k = 1; k < N; ++k) {
      if (has(k) && has(N + 1 - k) && has(N - 1 - k)) hk_ks.push_back(k);
    }
  }
  const bool want_l44 = selected("transversality") && symplectic && n >= 2 && has(n - 1) && has(n) &&
                        has(n + 1);
  const bool want_tan = selected("tangent") && symplectic && n >= 2 && source && has(n);
  const bool want_l6 = N == 4 && has(1) && has(2) && has(3);
  const bool want_l62 = selected("collinearity") && want_l6;
  const bool want_l64 = selected("cyclic_order") && want_l6;

  TripleColumn col_max(T), col_l44(T), col_tan(T), col_l62(T), col_l64(T);
  std::vector<TripleColumn> col_hk(hk_ks.size(), TripleColumn(T));
  const bool hn_known = std::find(hk_ks.begin(), hk_ks.end(), n) != hk_ks.end();
  parallel_for(T, [&](std::size_t i) {
    const FlagSample& x = samples[triples[i][0]];
    const FlagSample& y = samples[triples[i][1]];
    const FlagSample& z = samples[triples[i][2]];
    if (want_max && has(n)) col_max.run(i, [&] { return check_maximal(x, y, z, tol); });
    for (std::size_t j = 0; j < hk_ks.size(); ++j) {
      col_hk[j].run(i, [&] { return check_Hk(x, y, z, hk_ks[j], tol); });
    }
    if (want_l44) {
      col_l44.run(i, [&] {
        bool hn = false;
        if (hn_known) {
          const auto idx = std::find(hk_ks.begin(), hk_ks.end(), n) - hk_ks.begin();
          const auto& s = col_hk[static_cast<std::size_t>(idx)].slots[i];
          hn = s && s->pass;
        }
        return check_transversality(x, y, z, hn, tol);
      });
    }
    if (want_tan) col_tan.run(i, [&] { return tangent_check(*source, x, z, y.theta(), 1e-4, tol); });
    if (want_l62) col_l62.run(i, [&] { return check_collinearity(x, y, z, 0.0, tol); });
    if (want_l64) col_l64.run(i, [&] { return check_cyclic_order(x, y, z, tol); });
  });

  std::size_t quality = 0;
  auto emit = [&](bool wanted, bool applicable, const std::string& name, const TripleColumn& col,
                  const std::string& reason) {
    if (!wanted) return;
    if (!applicable) {
      checks.push_back(skipped(name, have_triples ? reason : no_samples));
      return;
    }
    quality += col.quality_failures();
    checks.push_back(col.collect(name));
  };
  emit(selected("maximal"), want_max && has(n), "maximal", col_max,
       "needs a symplectic representation with x^n flags");
  if (selected("hk")) {
    for (std::size_t j = 0; j < hk_ks.size(); ++j) {
      emit(true, true, "H_" + std::to_string(hk_ks[j]), col_hk[j], "");
    }
    for (int k = 1; k < N; ++k) {
      if (std::find(hk_ks.begin(), hk_ks.end(), k) == hk_ks.end()) {
        checks.push_back(skipped("H_" + std::to_string(k),
                                 have_triples ? "flag indices missing for this k" : no_samples));
      }
    }
  }
  emit(selected("transversality"), want_l44, "transversality", col_l44,
       "needs symplectic flags with indices n-1, n, n+1 and n >= 2");
  if (selected("tangent")) {
    if (want_tan && have_triples) {
      CheckResult r = col_tan.collect("tangent");
      double lo = INFINITY, hi = 0.0;
      std::map<int, int> signs;
      for (const auto& s : col_tan.slots) {
        if (!s) continue;
        const double h = s->details.value("halving_factor", NAN);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        signs[s->details["residuals"].value("dominant_sign", 0)] += 1;
      }
      r.details["halving_factor_min"] = lo;
      r.details["halving_factor_max"] = hi;
      nlohmann::json sj = nlohmann::json::object();
      for (const auto& [sign, count] : signs) sj[std::to_string(sign)] = count;
      r.details["dominant_signs"] = sj;
      quality += col_tan.quality_failures();
      checks.push_back(r);
    } else {
      checks.push_back(skipped("tangent", have_triples
                                              ? "needs closed-form flags of a symplectic rep, n >= 2"
                                              : no_samples));
    }
  }
  emit(selected("collinearity"), want_l62, "collinearity", col_l62, "defined for Sp(4, R) flags only");
  emit(selected("cyclic_order"), want_l64, "cyclic_order", col_l64, "defined for Sp(4, R) flags only");

  if (selected("hyperconvex")) {
    if (has(1) && samples.size() >= static_cast<std::size_t>(N)) {
      checks.push_back(check_hyperconvex(samples, N, config.triples, config.triples, config.seed, tol));
    } else {
      checks.push_back(skipped("hyperconvex", have_triples ? "needs x^1 flags" : no_samples));
    }
  }

  const auto configs = limit_configurations();
  if (selected("limits")) {
    if (N == 4 && source) {
      std::vector<CheckResult> to_x, to_z, gated;
      for (const auto& [tx, tz] : configs) {
        const auto rs = check_limits(*source, tx, tz, limit_distance, limit_threshold, tol);
        to_x.push_back(rs[0]);
        to_z.push_back(rs[1]);
        gated.push_back(rs[2]);
      }
      checks.push_back(aggregate("limit.y_to_x", to_x));
      checks.push_back(aggregate("limit.y_to_z", to_z));
      checks.push_back(aggregate("limit.y_to_z_h1_gated", gated));
    } else {
      for (const char* name : {"limit.y_to_x", "limit.y_to_z", "limit.y_to_z_h1_gated"}) {
        checks.push_back(skipped(name, "needs closed-form Sp(4, R) flags"));
      }
    }
  }
  if (selected("psi")) {
    if (symplectic && n >= 2 && source) {
      std::vector<CheckResult> rs;
      for (const auto& [tx, tz] : configs) {
        if (tx == 0.0) rs.push_back(check_psi_variation(*source, tx, tz, 1e-2, tol));
      }
      checks.push_back(aggregate("psi_variation", rs));
    } else {
      checks.push_back(skipped("psi_variation", "needs closed-form symplectic flags, n >= 2"));
    }
  }
  if (selected("equivalence")) {
    if (symplectic && have_triples) {
      for (CheckResult& r : equivalence_suite(rep, samples, triples, tol)) checks.push_back(std::move(r));
    } else {
      checks.push_back(skipped("equivalence", have_triples ? "needs a symplectic representation"
                                                           : no_samples));
    }
  }
  if (selected("uniqueness")) {
    checks.push_back(check_boundary_uniqueness(rep, std::min(config.radius, 4), 100, 1e-6, tol));
  }
  const bool any_triple_check = want_max || !hk_ks.empty() || want_l44 || want_tan || want_l62 || want_l64;
  if (T > 0 && any_triple_check) {
    CheckResult q = CheckResult::from_margin("flag_quality",
                                             Margin::below(static_cast<double>(quality), 0.5));
    q.details["triples"] = T;
    checks.push_back(q);
  }

  std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.witness.dump() < b.witness.dump();
  });

  nlohmann::json jchecks = nlohmann::json::array();
  std::size_t evaluated = 0, skipped_count = 0;
  out.pass = true;
  for (const CheckResult& r : checks) {
    jchecks.push_back(to_json(r));
    if (r.skipped) {
      ++skipped_count;
      continue;
    }
    ++evaluated;
    if (!r.pass) {
      out.pass = false;
      out.failing.push_back(r.name);
    }
  }
  nlohmann::json jprofiles = nlohmann::json::array();
  for (const GapProfile& p : out.gap_profiles) jprofiles.push_back(to_json(p, config.with_points));

  nlohmann::json jtol = nlohmann::json::object();
  for (const std::string& name : Tolerances::names()) jtol[name] = tol.get(name);
  nlohmann::json jsampling = {{"method", closed_form ? "veronese" : "attracting"},
                              {"count", samples.size()},
                              {"requested", config.samples},
                              {"triples", T},
                              {"flag_indices", closed_form ? all_ks : anosov_ks},
                              {"partial", sampling.partial}};
  if (!sampling.warning.empty()) jsampling["warning"] = sampling.warning;
  if (!sampling_note.empty()) jsampling["note"] = sampling_note;

  nlohmann::json jrep = {{"kind", to_string(rep.kind)},
                         {"genus", rep.presentation.genus()},
                         {"dim", rep.dim},
                         {"symplectic", rep.symplectic},
                         {"residuals",
                          {{"relator", rep.relator_residual},
                           {"symplectic", rep.symplectic_residual},
                           {"det", rep.det_residual}}},
                         {"metadata", rep.metadata}};
  out.json = {{"format", "anosovlab-report"},
              {"version", 1},
              {"generated_at", utc_timestamp()},
              {"representation", jrep},
              {"config",
               {{"radius", config.radius},
                {"triples", config.triples},
                {"samples", config.samples},
                {"seed", config.seed},
                {"checks", config.checks.empty() ? check_groups() : config.checks},
                {"tolerances", jtol}}},
              {"sampling", jsampling},
              {"checks", jchecks},
              {"gap_profiles", jprofiles},
              {"summary",
               {{"pass", out.pass},
                {"failing", out.failing},
                {"evaluated", evaluated},
                {"skipped", skipped_count}}}};
  out.checks = std::move(checks);
  return out;
}

nlohmann::json strip_volatile(const nlohmann::json& report) {
  nlohmann::json copy = report;
  if (copy.is_object()) copy.erase("generated_at");
  return copy;
}

}  // namespace anosovlab
