#include <algorithm>
#include <cmath>
#include <random>

#include "anosovlab/diagnostics.hpp"

namespace anosovlab {
namespace {

nlohmann::json point_json(const FlagSample& f) {
  nlohmann::json j;
  j["theta"] = f.theta();
  if (f.point().witness) {
    const Word& w = *f.point().witness;
    int genus = 2;
    for (Letter l : w.letters()) genus = std::max(genus, generator_of(l) / 2 + 1);
    j["word"] = w.to_string(presentation(genus));
  }
  return j;
}

nlohmann::json triple_witness(const FlagSample& x, const FlagSample& y, const FlagSample& z) {
  return {{"x", point_json(x)}, {"y", point_json(y)}, {"z", point_json(z)}};
}

void require_distinct(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                      const Tolerances& tol) {
  if (angle_separation(x.theta(), y.theta()) < tol.theta_sep ||
      angle_separation(y.theta(), z.theta()) < tol.theta_sep ||
      angle_separation(x.theta(), z.theta()) < tol.theta_sep) {
    throw InvalidInput("triple points must be pairwise distinct");
  }
  if (x.N() != y.N() || y.N() != z.N()) throw InvalidInput("flags of different dimensions");
}

int half_dim(const FlagSample& f) {
  if (f.N() % 2 != 0) throw InvalidInput("check needs an even-dimensional symplectic flag");
  return f.N() / 2;
}

Margin combine_above(std::initializer_list<Margin> ms) {
  Margin worst = *ms.begin();
  for (const Margin& m : ms) {
    if (m.value < worst.value) worst = m;
  }
  bool all = true;
  for (const Margin& m : ms) all = all && m.pass;
  worst.pass = all;
  return worst;
}

}  // namespace

Subspace generic_meet(const Subspace& a, const Subspace& b, int expected, const Tolerances& tol) {
  const int m = a.ambient_dim();
  if (b.dim() == m) return a;
  if (a.dim() == m) return b;
  if (expected == 0) return Subspace(m);
  const int actual = intersection_dim(a, b, tol);
  if (actual != expected) {
    throw FlagQualityError("intersection of flag spaces has dimension " + std::to_string(actual) +
                           ", expected " + std::to_string(expected));
  }
  return intersect(a, b, expected, tol);
}

HkResult hk_margins(const FlagSample& x, const FlagSample& y, const FlagSample& z, int k,
                    const Tolerances& tol) {
  require_distinct(x, y, z, tol);
  const int N = x.N();
  if (k < 1 || k >= N) throw InvalidInput("H_k needs 1 <= k < N");
  const Subspace& zc = z.space(N + 1 - k);
  const Subspace xk = generic_meet(x.space(k), zc, 1, tol);
  const Subspace yk = generic_meet(y.space(k), zc, 1, tol);
  const Subspace& zlow = z.space(N - 1 - k);
  const std::vector<Subspace> eq1{xk, yk, zlow};
  const std::vector<Subspace> eq2{x.space(k), yk, zlow};
  return {direct_sum_margin(eq1, tol), direct_sum_margin(eq2, tol)};
}

CheckResult check_Hk(const FlagSample& x, const FlagSample& y, const FlagSample& z, int k,
                     const Tolerances& tol) {
  const HkResult h = hk_margins(x, y, z, k, tol);
  CheckResult r = CheckResult::from_margin("H_" + std::to_string(k), h.sum);
  r.pass = h.sum.pass && h.variant.pass;
  r.witness = triple_witness(x, y, z);
  r.details["variant_margin"] = h.variant.value;
  r.details["verdicts_agree"] = h.agree();
  return r;
}

CheckResult check_maximal(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          const Tolerances& tol) {
  require_distinct(x, y, z, tol);
  const int n = half_dim(x);
  const SymplecticSpace space(n);
  const Vec ev = chart_q(space, x.space(n), z.space(n), y.space(n), tol).eigenvalues();
  const bool positive = is_positive_triple(x.theta(), y.theta(), z.theta());
  const double margin = positive ? ev(0) : -ev(ev.size() - 1);
  CheckResult r = CheckResult::from_margin("maximal", Margin::above(margin, 0.0));
  r.witness = triple_witness(x, y, z);
  r.details["orientation"] = positive ? "positive" : "negative";
  r.details["min_eigenvalue"] = ev(0);
  r.details["max_eigenvalue"] = ev(ev.size() - 1);
  return r;
}

Subspace psi_hyperplane(const FlagSample& x, const FlagSample& w, const FlagSample& z,
                        const Tolerances& tol) {
  const int n = half_dim(x);
  const std::vector<Subspace> parts{w.space(n - 1), z.space(n)};
  const Subspace hyper = sum(parts, 2 * n - 1, tol);
  return generic_meet(hyper, x.space(n), n - 1, tol);
}

CheckResult check_transversality(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          bool hn_holds, const Tolerances& tol) {
  require_distinct(x, y, z, tol);
  const int n = half_dim(x);
  const Subspace& xlow = x.space(n - 1);
  const Subspace zx = generic_meet(z.space(n + 1), x.space(n), 1, tol);
  const Subspace yx = generic_meet(y.space(n + 1), x.space(n), 1, tol);
  const Subspace psi = psi_hyperplane(x, y, z, tol);
  const Margin m1 = transverse(xlow, zx, tol);
  const Margin m2 = transverse(xlow, yx, tol);
  const Margin m3 = transverse(psi, zx, tol);
  const Margin m4 = transverse(psi, yx, tol);
  const Margin worst = hn_holds ? combine_above({m1, m2, m3, m4}) : combine_above({m1, m2, m3});
  CheckResult r = CheckResult::from_margin("transversality", worst);
  r.witness = triple_witness(x, y, z);
  r.details["item_i"] = m1.value;
  r.details["item_ii"] = m2.value;
  r.details["item_iii"] = m3.value;
  r.details["item_iv"] = m4.value;
  r.details["item_iv_asserted"] = hn_holds;
  return r;
}

CollinearPoints collinear_points(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                             const Tolerances& tol) {
  require_distinct(x, y, z, tol);
  if (x.N() != 4) throw InvalidInput("this check is defined for Sp(4, R) flags only");
  const SymplecticSpace space(2);
  const Subspace& x2 = x.space(2);
  const SymForm q = chart_q(space, x2, z.space(2), y.space(2), tol);
  return {ProjPoint(form_coordinates(q.matrix())),
          iota(x2, generic_meet(y.space(3), x2, 1, tol), tol),
          iota(x2, psi_hyperplane(x, y, z, tol), tol)};
}

CheckResult check_collinearity(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          double perturbation, const Tolerances& tol) {
  const CollinearPoints pts = collinear_points(x, y, z, tol);
  ProjPoint q = pts.q;
  if (perturbation != 0.0) {
    const Eigen::Vector3d a = pts.iota_y3.coords();
    const Eigen::Vector3d b = pts.iota_psi.coords();
    const Eigen::Vector3d normal = a.cross(b).normalized();
    q = ProjPoint(Vec(q.coords() + perturbation * Vec(normal)));
  }
  CheckResult r = CheckResult::from_margin("collinearity", collinear_in_PQ(q, pts.iota_y3, pts.iota_psi, tol.col));
  r.witness = triple_witness(x, y, z);
  if (perturbation != 0.0) r.details["perturbation"] = perturbation;
  return r;
}

CheckResult check_cyclic_order(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          const Tolerances& tol) {
  require_distinct(x, y, z, tol);
  if (x.N() != 4) throw InvalidInput("this check is defined for Sp(4, R) flags only");
  const Subspace& x2 = x.space(2);
  const std::vector<ProjPoint> lines{line_in(x2, generic_meet(z.space(3), x2, 1, tol), tol),
                                     line_in(x2, psi_hyperplane(x, y, z, tol), tol),
                                     line_in(x2, generic_meet(y.space(3), x2, 1, tol), tol),
                                     line_in(x2, x.space(1), tol)};
  double distinct = 1.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Vec& a = lines[i].coords();
      const Vec& b = lines[j].coords();
      distinct = std::min(distinct, std::abs(a(0) * b(1) - a(1) * b(0)));
    }
  }
  CheckResult r;
  try {
    const double cr = cross_ratio(lines[0], lines[1], lines[2], lines[3], tol);
    r = CheckResult::from_margin("cyclic_order", Margin::above(-cr, 0.0));
    r.details["cross_ratio"] = cr;
  } catch (const DegenerateQuadrupleError& e) {
    r = CheckResult::from_margin("cyclic_order", Margin::above(0.0, 0.0));
    r.details["transversality_violation"] = e.what();
  }
  r.witness = triple_witness(x, y, z);
  r.details["distinctness_margin"] = distinct;
  return r;
}

double hyperconvexity_margin(const std::vector<const FlagSample*>& points) {
  if (points.empty()) throw InvalidInput("no points");
  const int N = points.front()->N();
  Mat lines(N, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    lines.col(static_cast<Eigen::Index>(i)) = points[i]->space(1).basis().col(0);
  }
  const Vec sv = singular_values(lines);
  return sv(sv.size() - 1);
}

Margin abc_margin(const FlagSample& x, const FlagSample& y, const FlagSample& z, int a, int b,
                  int c, const Tolerances& tol) {
  const std::vector<Subspace> parts{x.space(a), y.space(b), z.space(c)};
  return direct_sum_margin(parts, tol);
}

CheckResult check_hyperconvex(const std::vector<FlagSample>& samples, int N, int tuples,
                              int triples, std::uint64_t seed, const Tolerances& tol) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (angle_separation(samples[i].theta(), samples[j].theta()) < tol.theta_sep) {
        throw InvalidInput("hyperconvexity needs pairwise distinct points");
      }
    }
  }
  if (static_cast<int>(samples.size()) < N) {
    throw InvalidInput("hyperconvexity needs at least N distinct points");
  }
  std::mt19937_64 rng(seed);
  auto draw = [&](int count) {
    std::vector<std::size_t> idx(samples.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (int i = 0; i < count; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) + rng() % (idx.size() - static_cast<std::size_t>(i));
      std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(count));
    return idx;
  };

  std::vector<CheckResult> parts;
  double worst_lines = 1.0;
  for (int t = 0; t < tuples; ++t) {
    const auto idx = draw(N);
    std::vector<const FlagSample*> pts;
    nlohmann::json thetas = nlohmann::json::array();
    for (std::size_t i : idx) {
      pts.push_back(&samples[i]);
      thetas.push_back(samples[i].theta());
    }
    CheckResult r = CheckResult::from_margin(
        "hyperconvex", Margin::above(hyperconvexity_margin(pts), tol.rank));
    r.witness["thetas"] = thetas;
    worst_lines = std::min(worst_lines, r.margin);
    parts.push_back(std::move(r));
  }
  nlohmann::json abc_worst = nlohmann::json::object();
  for (int t = 0; t < triples; ++t) {
    const auto idx = draw(3);
    const FlagSample& x = samples[idx[0]];
    const FlagSample& y = samples[idx[1]];
    const FlagSample& z = samples[idx[2]];
    for (int a = 1; a < N; ++a) {
      for (int b = 1; a + b < N; ++b) {
        for (int c = 1; a + b + c <= N; ++c) {
          if (!x.has(a) || !y.has(b) || !z.has(c)) continue;
          CheckResult r = CheckResult::from_margin("hyperconvex", abc_margin(x, y, z, a, b, c, tol));
          const std::string key = std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
          r.witness = triple_witness(x, y, z);
          r.details["abc"] = key;
          if (!abc_worst.contains(key) || r.margin < abc_worst[key].get<double>()) abc_worst[key] = r.margin;
          parts.push_back(std::move(r));
        }
      }
    }
  }
  CheckResult out = aggregate("hyperconvex", parts);
  out.details["lines_margin_min"] = worst_lines;
  out.details["abc_margin_min"] = abc_worst;
  out.details["tuples"] = tuples;
  out.details["triples"] = triples;
  return out;
}

}  // namespace anosovlab
