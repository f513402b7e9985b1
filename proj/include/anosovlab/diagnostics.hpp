#pragma once

// Margin-reporting checks over boundary flags: singular-value gap decay,
// the H_k directness properties, maximality of boundary triples, the
// transversality statements on x^n, first-order tangent laws of the Lagrangian
// boundary curve, the n = 2 collinearity and cyclic-order statements,
// hyperconvexity, and the joint verdict suite.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "anosovlab/boundary.hpp"
#include "anosovlab/charts.hpp"

namespace anosovlab {

/// Outcome of one named check.  `pass` is decided only by comparing
/// `margin` with `tolerance` in the direction `sense`.  Skipped checks
/// (not applicable to the representation) carry pass = false and are
/// ignored by exit-code logic.
struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double margin = 0.0;
  double tolerance = 0.0;
  Margin::Sense sense = Margin::Sense::above;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();

  static CheckResult from_margin(std::string name, const Margin& m);
  static CheckResult skip(std::string name, std::string reason);
};

/// Keeps the worst margin of a family of results of the same check;
/// `pass` is true iff every member passed.  Counts go into details.
CheckResult aggregate(std::string name, const std::vector<CheckResult>& results);

nlohmann::json to_json(const CheckResult& r);

// ---------------------------------------------------------------- gaps

struct GapPoint {
  int length = 0;
  double log_ratio = 0.0;
};

struct GapProfile {
  int k = 0;
  std::vector<GapPoint> points;
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  /// Coefficient of determination of the all-points fit.
  double r_squared = 0.0;
  /// Per word length 1..radius (index 0 unused, NaN).
  std::vector<double> max_by_radius;
  /// Fit through the per-length maxima only (informational).
  double envelope_slope = 0.0;
  double envelope_r_squared = 0.0;
  bool slope_ok = false;
  bool decreasing_ok = false;
  bool pass = false;
  bool partial = false;
  std::string warning;
};

/// Profiles for each k over the ball of the given radius (identity
/// excluded).  pass <=> slope < -alpha_min and the per-length maxima
/// strictly decrease from length 3 on.
std::vector<GapProfile> gap_profile(const Representation& rep, const std::vector<int>& ks,
                                    int radius, const Tolerances& tol = default_tolerances());
std::vector<GapProfile> gap_profile(const Ball& ball, const std::vector<int>& ks,
                                    const Tolerances& tol = default_tolerances());
nlohmann::json to_json(const GapProfile& p, bool with_points = false);

// ------------------------------------------------------- triple checks

/// Meet of two flag spaces whose intersection has the generic dimension
/// `expected`; FlagQualityError when the numerical dimension differs.
Subspace generic_meet(const Subspace& a, const Subspace& b, int expected,
                      const Tolerances& tol = default_tolerances());

struct HkResult {
  Margin sum;      // (x^k cap z^{N+1-k}) + (y^k cap z^{N+1-k}) + z^{N-1-k}
  Margin variant;  // x^k + (y^k cap z^{N+1-k}) + z^{N-1-k}
  bool agree() const { return sum.pass == variant.pass; }
};
HkResult hk_margins(const FlagSample& x, const FlagSample& y, const FlagSample& z, int k,
                    const Tolerances& tol = default_tolerances());
/// Rejects coincident points.  pass <=> both sums direct.
CheckResult check_Hk(const FlagSample& x, const FlagSample& y, const FlagSample& z, int k,
                     const Tolerances& tol = default_tolerances());

/// Orientation-aware maximality of (x^n, y^n, z^n): positive triples must
/// give a positive definite q_{x,z}^y, negative ones a negative definite
/// one.  margin = min eigenvalue (resp. -max eigenvalue).
CheckResult check_maximal(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          const Tolerances& tol = default_tolerances());

/// (y^{n-1} + z^n) cap x^n, a hyperplane of x^n.
Subspace psi_hyperplane(const FlagSample& x, const FlagSample& w, const FlagSample& z,
                        const Tolerances& tol = default_tolerances());

/// Items (i)-(iv); (iv) is asserted only when `hn_holds`.
CheckResult check_transversality(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          bool hn_holds, const Tolerances& tol = default_tolerances());

struct TangentResiduals {
  double rank_ratio = 0.0;     // sigma_2 / sigma_1 of Delta u
  double kernel_angle = 0.0;   // Ker(Delta u) vs (y^{n-1} + z^n) cap x^n
  double image_angle = 0.0;    // Im(Delta u) vs y^{n+1} cap z^n
  double signature_ratio = 0.0;  // |second eigenvalue| / |dominant| of Delta q
  int dominant_sign = 0;       // sign of the dominant eigenvalue of Delta q
  double worst() const;
};
TangentResiduals tangent_residuals(const FlagSource& source, const FlagSample& x,
                                   const FlagSample& z, double theta_y, double delta,
                                   const Tolerances& tol = default_tolerances());
/// Forward difference at theta_y with step delta; pass <=> every residual
/// is below tol.tan.  Details include the residuals at delta / 2.
CheckResult tangent_check(const FlagSource& source, const FlagSample& x, const FlagSample& z,
                          double theta_y, double delta = 1e-4,
                          const Tolerances& tol = default_tolerances());

/// Points of P(Q(x^2)) used by the n = 2 statements.
struct CollinearPoints {
  ProjPoint q;
  ProjPoint iota_y3;   // iota(y^3 cap x^2)
  ProjPoint iota_psi;  // iota((y^1 + z^2) cap x^2)
};
CollinearPoints collinear_points(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                             const Tolerances& tol = default_tolerances());
/// pass <=> collinearity residual < tol.col.  `perturbation` moves [q]
/// off the line by that amount (fault injection).
CheckResult check_collinearity(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          double perturbation = 0.0, const Tolerances& tol = default_tolerances());

/// Cross ratio of (z^3 cap x^2, (y^1 + z^2) cap x^2, y^3 cap x^2, x^1) in
/// x^2; pass <=> negative.  margin = -cross ratio.
CheckResult check_cyclic_order(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                          const Tolerances& tol = default_tolerances());

/// Smallest singular value of the N x N matrix of x^1 lines at N points.
double hyperconvexity_margin(const std::vector<const FlagSample*>& points);
/// Directness margin of x^a + y^b + z^c.
Margin abc_margin(const FlagSample& x, const FlagSample& y, const FlagSample& z, int a, int b,
                  int c, const Tolerances& tol = default_tolerances());
/// `tuples` random N-tuples of distinct samples plus {a, b, c} directness
/// (a + b + c <= N, all present indices) on `triples` random triples.
CheckResult check_hyperconvex(const std::vector<FlagSample>& samples, int N, int tuples,
                              int triples, std::uint64_t seed,
                              const Tolerances& tol = default_tolerances());

// ------------------------------------------------------------- limits

/// q_{x^2, z^2}^{y^2} for y anywhere on the open arc, including points so
/// close to z that the generic transversality cut would reject them.
SymForm boundary_chart_q(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                         const Tolerances& tol = default_tolerances());

/// Projective distances from [q_{x,z}^y] to iota(x^1) as y -> x and to
/// iota(z^3 cap x^2) as y -> z, at boundary distance `distance`.
struct LimitDistances {
  double toward_x = 0.0;
  double toward_z = 0.0;
  bool h1_at_z = false;  // H_1 on the triple used for the y -> z limit
};
LimitDistances limit_distances(const FlagSource& source, double theta_x, double theta_z,
                               double distance, const Tolerances& tol = default_tolerances());
/// Two results: the y -> x limit, and the y -> z limit (with and without
/// the H_1 gate, reported in details).  Tolerance = `threshold`.
std::vector<CheckResult> check_limits(const FlagSource& source, double theta_x, double theta_z,
                                      double distance, double threshold,
                                      const Tolerances& tol = default_tolerances());

/// psi(w) = (w^{n-1} + z^n) cap x^n over a grid of w on the arc from x to
/// z; fails if psi does not move (up to tol.rank) across some grid step.
CheckResult check_psi_variation(const FlagSource& source, double theta_x, double theta_z,
                                double step = 1e-2, const Tolerances& tol = default_tolerances());

/// Attracting flags of ball elements against Veronese flags at the same
/// angle.  margin = worst principal-angle sine; pass <=> < threshold and at
/// least `min_count` elements compared.
CheckResult check_boundary_uniqueness(const Representation& rep, int radius, int min_count,
                                      double threshold, const Tolerances& tol = default_tolerances());

// -------------------------------------------------------------- suite

/// Positive triples (indices into theta-sorted samples), drawn with a
/// seeded generator; pairwise separation >= tol.theta_sep.
std::vector<std::array<std::size_t, 3>> sample_positive_triples(
    const std::vector<FlagSample>& samples, int count, std::uint64_t seed,
    const Tolerances& tol = default_tolerances());

/// Joint verdicts per triple: maximal <=> H_n, H_2 => H_1 (n = 2), and
/// H_k <=> H_{N-k}.  Refuses to run (InvalidInput) when the relator
/// residual of the generator images exceeds tol.rel.
std::vector<CheckResult> equivalence_suite(const Representation& rep,
                                           const std::vector<FlagSample>& samples,
                                           const std::vector<std::array<std::size_t, 3>>& triples,
                                           const Tolerances& tol = default_tolerances());

}  // namespace anosovlab
