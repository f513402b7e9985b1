#include <algorithm>
#include <optional>
#include <random>

#include "anosovlab/diagnostics.hpp"
#include "anosovlab/parallel.hpp"

namespace anosovlab {

CheckResult check_boundary_uniqueness(const Representation& rep, int radius, int min_count,
                                      double threshold, const Tolerances& tol) {
  if (rep.kind != RepKind::sym_power && rep.kind != RepKind::fuchsian_base) {
    return CheckResult::skip("boundary_uniqueness", "no closed-form boundary map for this kind");
  }
  const Ball ball = enumerate_ball(rep, radius, 1'000'000, tol);
  std::vector<double> worst(ball.size(), -1.0);
  parallel_for(ball.size(), [&](std::size_t i) {
    if (i == 0) return;
    try {
      const FlagSample f = flag_from_ball_element(rep, ball, i, {}, tol);
      const FlagSample v = veronese_flag(f.theta(), rep.dim, tol);
      double w = 0.0;
      for (int k = 1; k < rep.dim; ++k) w = std::max(w, max_principal_sine(f.space(k), v.space(k)));
      worst[i] = w;
    } catch (const NumericalError&) {
      // Element without the required gaps: not a witness.
    }
  });
  double margin = 0.0;
  std::size_t compared = 0, at = 0;
  for (std::size_t i = 0; i < worst.size(); ++i) {
    if (worst[i] < 0) continue;
    ++compared;
    if (worst[i] > margin) {
      margin = worst[i];
      at = i;
    }
  }
  CheckResult r = CheckResult::from_margin("boundary_uniqueness", Margin::below(margin, threshold));
  r.details["compared"] = compared;
  r.details["required"] = min_count;
  r.details["radius"] = radius;
  if (compared > 0) r.witness["word"] = ball.word(at).to_string(rep.presentation);
  if (static_cast<int>(compared) < min_count) r.pass = false;
  return r;
}

std::vector<std::array<std::size_t, 3>> sample_positive_triples(
    const std::vector<FlagSample>& samples, int count, std::uint64_t seed, const Tolerances& tol) {
  if (samples.size() < 3) throw InvalidInput("need at least three boundary samples");
  if (count < 1) throw InvalidInput("triple count must be positive");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].theta() < samples[i - 1].theta()) throw InvalidInput("samples must be sorted by theta");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::array<std::size_t, 3>> out;
  const std::size_t m = samples.size();
  std::size_t attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * static_cast<std::size_t>(count)) {
      throw InvalidInput("could not draw separated triples from the samples");
    }
    std::array<std::size_t, 3> t{rng() % m, rng() % m, rng() % m};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) continue;
    if (angle_separation(samples[t[0]].theta(), samples[t[1]].theta()) < tol.theta_sep ||
        angle_separation(samples[t[1]].theta(), samples[t[2]].theta()) < tol.theta_sep ||
        angle_separation(samples[t[0]].theta(), samples[t[2]].theta()) < tol.theta_sep) {
      continue;
    }
    // Increasing theta is counterclockwise; any cyclic rotation stays positive.
    const std::size_t shift = rng() % 3;
    std::rotate(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(shift), t.end());
    out.push_back(t);
  }
  return out;
}

namespace {

struct TripleVerdicts {
  std::optional<CheckResult> maximal;
  std::vector<std::optional<HkResult>> hk;  // index k
  bool quality_failure = false;
  std::string quality_message;
};

CheckResult count_result(const std::string& name, std::size_t agree, std::size_t disagree,
                         std::size_t quality, const nlohmann::json& worst_pair,
                         const nlohmann::json& witness) {
  const double bad = static_cast<double>(disagree + quality);
  CheckResult r = CheckResult::from_margin(name, Margin::below(bad, 0.5));
  r.details["agreeing_triples"] = agree;
  r.details["disagreeing_triples"] = disagree;
  r.details["flag_quality_failures"] = quality;
  r.details["worst_margin_pair"] = worst_pair;
  r.witness = witness;
  return r;
}

}  // namespace

std::vector<CheckResult> equivalence_suite(const Representation& rep,
                                           const std::vector<FlagSample>& samples,
                                           const std::vector<std::array<std::size_t, 3>>& triples,
                                           const Tolerances& tol) {
  const double residual = relator_residual(rep);
  if (!(residual < tol.rel)) {
    throw InvalidInput("equivalence suite refused: relator residual " + std::to_string(residual) +
                       " exceeds tolerance");
  }
  if (!rep.symplectic) throw InvalidInput("equivalence suite needs a symplectic representation");
  const int N = rep.dim;
  const int n = N / 2;

  std::vector<TripleVerdicts> verdicts(triples.size());
  parallel_for(triples.size(), [&](std::size_t t) {
    const FlagSample& x = samples[triples[t][0]];
    const FlagSample& y = samples[triples[t][1]];
    const FlagSample& z = samples[triples[t][2]];
    TripleVerdicts& v = verdicts[t];
    v.hk.resize(static_cast<std::size_t>(N));
    try {
      if (x.has(n) && y.has(n) && z.has(n)) v.maximal = check_maximal(x, y, z, tol);
      for (int k = 1; k < N; ++k) {
        const bool available = x.has(k) && y.has(k) && z.has(N + 1 - k) && z.has(N - 1 - k) &&
                               (k == 1 || x.has(k - 1)) && (k == N - 1 || x.has(k + 1));
        if (available) v.hk[static_cast<std::size_t>(k)] = hk_margins(x, y, z, k, tol);
      }
    } catch (const NumericalError& e) {
      v.quality_failure = true;
      v.quality_message = e.what();
    }
  });

  auto witness_of = [&](std::size_t t) {
    nlohmann::json w;
    w["thetas"] = {samples[triples[t][0]].theta(), samples[triples[t][1]].theta(),
                   samples[triples[t][2]].theta()};
    return w;
  };

  std::vector<CheckResult> out;
  {
    std::size_t agree = 0, disagree = 0, quality = 0;
    double worst_max = 1e300, worst_h = 1e300;
    nlohmann::json witness = nlohmann::json::object();
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto& v = verdicts[t];
      if (v.quality_failure) {
        ++quality;
        continue;
      }
      const auto& hn = v.hk[static_cast<std::size_t>(n)];
      if (!v.maximal || !hn) continue;
      worst_max = std::min(worst_max, v.maximal->margin);
      worst_h = std::min(worst_h, hn->sum.value);
      if (v.maximal->pass == hn->sum.pass) {
        ++agree;
      } else {
        if (disagree == 0) witness = witness_of(t);
        ++disagree;
      }
    }
    if (agree + disagree == 0) {
      out.push_back(CheckResult::skip("equivalence.maximal_iff_H" + std::to_string(n),
                                      "flags lack the middle index"));
    } else {
      out.push_back(count_result("equivalence.maximal_iff_H" + std::to_string(n), agree, disagree,
                                 quality, {worst_max, worst_h}, witness));
    }
  }
  if (n == 2) {
    std::size_t agree = 0, disagree = 0, quality = 0;
    double worst2 = 1e300, worst1 = 1e300;
    nlohmann::json witness = nlohmann::json::object();
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto& v = verdicts[t];
      if (v.quality_failure) {
        ++quality;
        continue;
      }
      const auto& h2 = v.hk[2];
      const auto& h1 = v.hk[1];
      if (!h2 || !h1) continue;
      worst2 = std::min(worst2, h2->sum.value);
      worst1 = std::min(worst1, h1->sum.value);
      if (!h2->sum.pass || h1->sum.pass) {
        ++agree;
      } else {
        if (disagree == 0) witness = witness_of(t);
        ++disagree;
      }
    }
    if (agree + disagree == 0) {
      out.push_back(CheckResult::skip("equivalence.H2_implies_H1", "flags lack indices 1 or 2"));
    } else {
      out.push_back(count_result("equivalence.H2_implies_H1", agree, disagree, quality,
                                 {worst2, worst1}, witness));
    }
  }
  for (int k = 1; k < n; ++k) {
    const std::string name =
        "equivalence.H" + std::to_string(k) + "_iff_H" + std::to_string(N - k);
    std::size_t agree = 0, disagree = 0, quality = 0;
    double worst_k = 1e300, worst_dual = 1e300;
    nlohmann::json witness = nlohmann::json::object();
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto& v = verdicts[t];
      if (v.quality_failure) {
        ++quality;
        continue;
      }
      const auto& a = v.hk[static_cast<std::size_t>(k)];
      const auto& b = v.hk[static_cast<std::size_t>(N - k)];
      if (!a || !b) continue;
      worst_k = std::min(worst_k, a->sum.value);
      worst_dual = std::min(worst_dual, b->sum.value);
      if (a->sum.pass == b->sum.pass) {
        ++agree;
      } else {
        if (disagree == 0) witness = witness_of(t);
        ++disagree;
      }
    }
    if (agree + disagree == 0) {
      out.push_back(CheckResult::skip(name, "flags lack the required indices"));
    } else {
      out.push_back(count_result(name, agree, disagree, quality, {worst_k, worst_dual}, witness));
    }
  }
  return out;
}

}  // namespace anosovlab
