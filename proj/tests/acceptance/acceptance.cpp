// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.  Thresholds are fixed here and never read from flags.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "anosovlab/report.hpp"

using namespace anosovlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool pass, const std::string& title, const std::string& summary) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", title.c_str());
  std::printf("    %s\n", summary.c_str());
  if (!pass) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Osculating flag of (c^{N-1-i} s^i), c = cos(t/2), s = sin(t/2), from exact
// derivatives of the coordinate polynomials.  Independent of the library's
// flag construction; shares only the fixed change of basis.
Mat osculating_basis(double theta, int N) {
  // poly[i] maps the exponent of c (total degree N-1) to a coefficient.
  std::vector<std::map<int, double>> poly(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) poly[static_cast<std::size_t>(i)][N - 1 - i] = 1.0;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat cols(N, N);
  for (int d = 0; d < N; ++d) {
    for (int i = 0; i < N; ++i) {
      double v = 0.0;
      for (const auto& [a, coef] : poly[static_cast<std::size_t>(i)]) {
        v += coef * std::pow(c, a) * std::pow(s, N - 1 - a);
      }
      cols(i, d) = v;
    }
    for (auto& p : poly) {
      std::map<int, double> next;
      for (const auto& [a, coef] : p) {
        const int b = N - 1 - a;
        if (a > 0) next[a - 1] += -0.5 * a * coef;
        if (b > 0) next[a + 1] += 0.5 * b * coef;
      }
      p = std::move(next);
    }
  }
  if (N % 2 == 0) cols = symplectic_correction(N).to_standard * cols;
  return cols;
}

struct Triple {
  const FlagSample* x;
  const FlagSample* y;
  const FlagSample* z;
};

}  // namespace

int main() {
  const Tolerances tol = default_tolerances();
  const int N = 4;

  // ------------------------------------------------------------------ 1
  {
    const auto t0 = Clock::now();
    const Representation rep = sym_power_lift(fuchsian_genus2(), N);
    const Ball ball = enumerate_ball(rep, 4);
    const SymplecticSpace S(2);
    double worst_abs = 0.0, worst_rel = 0.0, worst_norm = 0.0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const Mat g = ball.matrix(i);
      const double r = (g.transpose() * S.omega() * g - S.omega()).norm();
      worst_abs = std::max(worst_abs, r);
      worst_rel = std::max(worst_rel, r / g.squaredNorm());
      worst_norm = std::max(worst_norm, g.norm());
    }
    const double elapsed = seconds_since(t0);
    const bool pass = rep.relator_residual < 1e-8 && rep.symplectic_residual < 1e-8 &&
                      worst_abs < 1e-8 && elapsed < 5.0;
    verdict(1, pass, "construction certificates (sym-power, N = 4)",
            fmt("relator %.3g, generators symplectic %.3g, ball(4) symplectic %.3g (all need < 1e-8), %.2f s",
                rep.relator_residual, rep.symplectic_residual, worst_abs, elapsed));
    std::printf("    info: %zu elements, largest |g|_F %.3g, largest |g^T J g - J|_F / |g|_F^2 %.3g\n",
                ball.size(), worst_norm, worst_rel);
  }

  const Representation rep = sym_power_lift(fuchsian_genus2(), N);

  // ------------------------------------------------------------------ 2
  {
    const CheckResult r = check_boundary_uniqueness(rep, 4, 100, 1e-6, tol);
    const int compared = r.details["compared"];
    verdict(2, r.pass && compared >= 100, "attracting flags match the osculating flags",
            fmt("%d ball(4) elements compared, worst principal-angle sine %.3g (need < 1e-6)",
                compared, r.margin));
  }

  // ------------------------------------------------------------------ 3
  {
    const auto t0 = Clock::now();
    const auto profiles = gap_profile(rep, {1, 2, 3}, 6, tol);
    const double elapsed = seconds_since(t0);
    bool pass = elapsed < 60.0;
    std::string summary;
    for (const GapProfile& p : profiles) {
      bool decreasing = true;
      for (int len = 4; len <= 6; ++len) {
        decreasing = decreasing && p.max_by_radius[static_cast<std::size_t>(len)] <
                                       p.max_by_radius[static_cast<std::size_t>(len - 1)];
      }
      pass = pass && p.fitted_slope < -0.1 && p.r_squared > 0.9 && decreasing;
      summary += fmt("k=%d slope %.3f R^2 %.3f (need > 0.9) maxima %s; ", p.k, p.fitted_slope,
                     p.r_squared, decreasing ? "decreasing" : "NOT decreasing");
    }
    const Representation ds = direct_sum(fuchsian_genus2(), fuchsian_genus2());
    const auto control = gap_profile(ds, {1}, 6, tol);
    double worst = 0.0;
    for (const GapPoint& pt : control[0].points) worst = std::max(worst, std::abs(pt.log_ratio));
    pass = pass && worst <= 1e-12;
    verdict(3, pass, "gap decay on ball(6), rho0 + rho0 control",
            summary + fmt("%.2f s; control k=1 max |log ratio| %.3g", elapsed, worst));
    for (const GapProfile& p : profiles) {
      std::printf("    info: k=%d, %zu points; least squares through the per-length maxima: slope %.3f R^2 %.3f\n",
                  p.k, p.points.size(), p.envelope_slope, p.envelope_r_squared);
    }
  }

  // Shared samples: 64 Veronese flags, 500 positive triples, seed 42.
  const auto samples = sample_boundary(rep, 64, SamplingStrategy::veronese, SamplingOptions{}, tol).samples;
  const auto index_triples = sample_positive_triples(samples, 500, 42, tol);
  std::vector<Triple> triples;
  for (const auto& t : index_triples) triples.push_back({&samples[t[0]], &samples[t[1]], &samples[t[2]]});
  {
    double worst = 0.0;
    for (const FlagSample& f : samples) {
      const Mat b = osculating_basis(f.theta(), N);
      for (int k = 1; k < N; ++k) {
        worst = std::max(worst, max_principal_sine(f.space(k), Subspace::span(b.leftCols(k))));
      }
    }
    std::printf("oracle: %zu flags against exact osculating spans, worst sine %.3g\n", samples.size(), worst);
    if (!(worst < 1e-10)) {
      std::printf("oracle disagreement: flag-based criteria are not trustworthy\n");
      ++failures;
    }
  }

  // ------------------------------------------------------------------ 4
  {
    int disagree = 0, dual_disagree = 0, bad = 0;
    double min_eig = INFINITY, min_h2 = INFINITY;
    for (const Triple& t : triples) {
      const CheckResult m = check_maximal(*t.x, *t.y, *t.z, tol);
      const HkResult h2 = hk_margins(*t.x, *t.y, *t.z, 2, tol);
      const HkResult h1 = hk_margins(*t.x, *t.y, *t.z, 1, tol);
      const HkResult h3 = hk_margins(*t.x, *t.y, *t.z, 3, tol);
      min_eig = std::min(min_eig, m.margin);
      min_h2 = std::min(min_h2, h2.sum.value);
      const bool max_ok = m.margin > 0;
      const bool h2_ok = h2.sum.value > 1e-6 && h2.variant.value > 1e-6;
      if (!max_ok || !h2_ok) ++bad;
      if (max_ok != h2_ok) ++disagree;
      if (h1.sum.pass != h3.sum.pass) ++dual_disagree;
    }
    verdict(4, bad == 0 && disagree == 0 && dual_disagree == 0, "maximality and H_2 on 500 positive triples",
            fmt("min eigenvalue of q %.3g (need > 0), min H_2 margin %.3g (need > 1e-6), "
                "maximal/H_2 disagreements %d, H_1/H_3 disagreements %d",
                min_eig, min_h2, disagree, dual_disagree));
  }

  // ------------------------------------------------------------------ 5
  {
    double worst = INFINITY;
    int failed = 0;
    for (const Triple& t : triples) {
      const CheckResult r = check_transversality(*t.x, *t.y, *t.z, true, tol);
      worst = std::min(worst, r.margin);
      if (!(r.margin > 1e-6)) ++failed;
    }
    verdict(5, failed == 0, "four transversality margins inside x^2",
            fmt("min margin %.3g over 500 triples (need > 1e-6), %d failures", worst, failed));
  }

  // ------------------------------------------------------------------ 6
  {
    const FlagSource source = veronese_source(N, tol);
    double rank = 0, kernel = 0, img = 0, sig = 0, hmin = INFINITY, hmax = 0;
    std::map<std::string, std::pair<double, double>> component_factor;
    std::map<int, int> signs;
    for (const Triple& t : triples) {
      const TangentResiduals a = tangent_residuals(source, *t.x, *t.z, t.y->theta(), 1e-4, tol);
      const TangentResiduals b = tangent_residuals(source, *t.x, *t.z, t.y->theta(), 5e-5, tol);
      rank = std::max(rank, a.rank_ratio);
      kernel = std::max(kernel, a.kernel_angle);
      img = std::max(img, a.image_angle);
      sig = std::max(sig, a.signature_ratio);
      signs[a.dominant_sign] += 1;
      const double h = a.worst() / b.worst();
      hmin = std::min(hmin, h);
      hmax = std::max(hmax, h);
      auto track = [&](const char* name, double x, double y) {
        auto& r = component_factor.try_emplace(name, INFINITY, 0.0).first->second;
        r.first = std::min(r.first, x / y);
        r.second = std::max(r.second, x / y);
      };
      track("rank ratio", a.rank_ratio, b.rank_ratio);
      track("kernel angle", a.kernel_angle, b.kernel_angle);
      track("image angle", a.image_angle, b.image_angle);
      track("signature ratio", a.signature_ratio, b.signature_ratio);
    }
    // Sign constancy along arcs: y sweeps the open arc for fixed (x, z).
    int arcs_constant = 0, arcs = 0;
    for (const auto& [tx, tz] : limit_configurations()) {
      if (tx != 0.0) continue;
      ++arcs;
      const FlagSample x = source(tx), z = source(tz);
      const double arc = canonical_angle(tz - tx);
      std::map<int, int> arc_signs;
      for (int j = 1; j < 32; ++j) {
        arc_signs[tangent_residuals(source, x, z, tx + arc * j / 32.0, 1e-4, tol).dominant_sign] += 1;
      }
      if (arc_signs.size() == 1) ++arcs_constant;
    }
    const bool pass = rank < 1e-3 && kernel < 1e-3 && img < 1e-3 && sig < 1e-3 && signs.size() == 1 &&
                      arcs_constant == arcs && hmin >= 1.5 && hmax <= 2.5;
    verdict(6, pass, "tangent law at delta = 1e-4",
            fmt("max rank ratio %.3g, kernel angle %.3g, image angle %.3g, signature ratio %.3g (need < 1e-3); "
                "dominant sign constant on all triples: %s, on %d/%d arcs; "
                "halving delta shrinks the largest residual by [%.3f, %.3f] (need within [1.5, 2.5])",
                rank, kernel, img, sig, signs.size() == 1 ? "yes" : "no", arcs_constant, arcs, hmin, hmax));
    for (const auto& [name, r] : component_factor) {
      std::printf("    info: halving factor of %s in [%.3f, %.3f]\n", name.c_str(), r.first, r.second);
    }
  }

  // ------------------------------------------------------------------ 7
  {
    double col = 0.0, cr_max = -INFINITY;
    int flipped = 0;
    for (const Triple& t : triples) {
      const CheckResult c = check_collinearity(*t.x, *t.y, *t.z, 0.0, tol);
      col = std::max(col, c.margin);
      const CheckResult o = check_cyclic_order(*t.x, *t.y, *t.z, tol);
      cr_max = std::max(cr_max, o.details.value("cross_ratio", 0.0));
      const CheckResult f = check_collinearity(*t.x, *t.y, *t.z, 1e-3, tol);
      if (c.pass && !f.pass) ++flipped;
    }
    verdict(7, col < 1e-8 && cr_max < 0 && flipped == 500, "collinearity, cyclic order, fault injection",
            fmt("max collinearity residual %.3g (need < 1e-8), max cross ratio %.3g (need < 0), "
                "1e-3 perturbation flips %d/500 verdicts",
                col, cr_max, flipped));
  }

  // ------------------------------------------------------------------ 8
  {
    const CheckResult h = check_hyperconvex(samples, N, 500, 500, 42, tol);
    const double lines = h.details["lines_margin_min"];
    int disagree = 0;
    for (const Triple& t : triples) {
      const bool abc = abc_margin(*t.x, *t.y, *t.z, 1, 1, 2, tol).pass;
      if (abc != hk_margins(*t.x, *t.y, *t.z, 1, tol).sum.pass) ++disagree;
    }
    verdict(8, lines > 1e-6 && disagree == 0, "hyperconvexity",
            fmt("min spanning margin of 500 line 4-tuples %.3g (need > 1e-6); "
                "{1,1,2} vs H_1 verdict disagreements %d/500",
                lines, disagree));
  }

  // ------------------------------------------------------------------ 9
  {
    const FlagSource source = veronese_source(N, tol);
    double to_x = 0.0, to_z = 0.0, ratio_lo = INFINITY, ratio_hi = 0.0;
    const auto configs = limit_configurations();
    for (const auto& [tx, tz] : configs) {
      const LimitDistances d = limit_distances(source, tx, tz, 1e-3, tol);
      to_x = std::max(to_x, d.toward_x);
      to_z = std::max(to_z, d.toward_z);
      const LimitDistances h = limit_distances(source, tx, tz, 5e-4, tol);
      for (double r : {d.toward_x / h.toward_x, d.toward_z / h.toward_z}) {
        ratio_lo = std::min(ratio_lo, r);
        ratio_hi = std::max(ratio_hi, r);
      }
    }
    verdict(9, to_x < 1e-3 && to_z < 1e-3, "limits of [q] at boundary distance 1e-3",
            fmt("%zu (x, z) configurations: max distance to iota(x^1) %.3g, to iota(z^3 cap x^2) %.3g (need < 1e-3)",
                configs.size(), to_x, to_z));
    std::printf("    info: halving the distance divides both by [%.4f, %.4f]\n", ratio_lo, ratio_hi);
  }

  // ----------------------------------------------------------------- 10
  {
    RunConfig config;
    const Report a = run_diagnostics(rep, config);
    const Report b = run_diagnostics(rep, config);
    const std::string da = strip_volatile(a.json).dump();
    const std::string db = strip_volatile(b.json).dump();
    verdict(10, da == db, "reports are reproducible",
            fmt("two default runs (seed 42): %zu bytes each, %s modulo generated_at", da.size(),
                da == db ? "identical" : "DIFFERENT"));
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
