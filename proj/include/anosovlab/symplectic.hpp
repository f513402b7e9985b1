#pragma once

// Real symplectic linear algebra on R^{2n} with the standard form
//   omega(e_i, e_{n+i}) = 1,  omega(e_{n+i}, e_i) = -1.
//
// Subspaces are stored by orthonormal bases so that every rank decision is
// made on singular values of concatenated bases and margins are scale-free.

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "anosovlab/tolerances.hpp"

namespace anosovlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Outcome of a quantitative test.  `pass` is decided only by comparing
/// `value` with `tolerance` in the direction given by `sense`:
///   above: pass <=> value > tolerance   (transversality, directness)
///   below: pass <=> value < tolerance   (isotropy, collinearity, residuals)
struct Margin {
  enum class Sense { above, below };

  double value = 0.0;
  double tolerance = 0.0;
  Sense sense = Sense::above;
  bool pass = false;

  static Margin above(double value, double tolerance) {
    return {value, tolerance, Sense::above, value > tolerance};
  }
  static Margin below(double value, double tolerance) {
    return {value, tolerance, Sense::below, value < tolerance};
  }
};

class SymplecticSpace {
 public:
  /// The standard block form J = [[0, I], [-I, 0]] on R^{2n}.
  explicit SymplecticSpace(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const Mat& omega() const { return omega_; }

  double pair(const Vec& v, const Vec& w) const { return v.dot(omega_ * w); }

 private:
  int n_;
  Mat omega_;
};

SymplecticSpace standard_form(int n);

/// A linear subspace of R^m held by an m x k matrix with orthonormal columns.
class Subspace {
 public:
  /// The zero subspace of R^m.
  explicit Subspace(int ambient_dim = 0);

  /// Span of the given columns.  Zero or linearly dependent columns are
  /// rejected (InvalidInput); the basis is Gram-Schmidt of the input order.
  static Subspace span(const Mat& columns, const Tolerances& tol = default_tolerances());
  /// Adopts a basis that is already orthonormal to tol.orth.
  static Subspace from_orthonormal(Mat basis, const Tolerances& tol = default_tolerances());
  /// span(e_i : i in indices), 0-based.
  static Subspace coordinate(int ambient_dim, std::initializer_list<int> indices);
  static Subspace whole(int ambient_dim);

  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  const Mat& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace.
  Mat projector() const { return basis_ * basis_.transpose(); }
  /// Euclidean distance of a unit-normalized v from the subspace.
  double distance(const Vec& v) const;

 private:
  Mat basis_;
};

/// Orthonormal basis of the column span, Gram-Schmidt order, signs chosen so
/// that the triangular factor has a positive diagonal.  No rank check.
Mat orthonormalize(const Mat& columns);

/// Singular values in decreasing order (empty for an empty matrix).
Vec singular_values(const Mat& m);
/// Number of singular values above `cut`.
int numerical_rank(const Mat& m, double cut);

/// [A | B | ...] column concatenation of orthonormal bases.
Mat concat_bases(std::span<const Subspace> parts);

/// Sines of the principal angles between A and B (length min(dim A, dim B)),
/// decreasing.  Both must live in the same ambient space.
Vec principal_angle_sines(const Subspace& a, const Subspace& b);
/// Largest principal-angle sine; for dim A == dim B this is the gap metric.
double max_principal_sine(const Subspace& a, const Subspace& b);
/// dim A == dim B and every principal angle sine < tol.angle.
bool same_subspace(const Subspace& a, const Subspace& b,
                   const Tolerances& tol = default_tolerances());
/// A subset of B to tol.angle.
bool contained_in(const Subspace& a, const Subspace& b,
                  const Tolerances& tol = default_tolerances());

/// V^perp = {w : omega(v, w) = 0 for all v in V}.  dim = 2n - dim V exactly.
Subspace omega_orthogonal(const SymplecticSpace& space, const Subspace& v);

/// value = max |omega(v_i, v_j)| over basis pairs; pass <=> isotropic.
Margin is_isotropic(const SymplecticSpace& space, const Subspace& v,
                    const Tolerances& tol = default_tolerances());
bool is_lagrangian(const SymplecticSpace& space, const Subspace& v,
                   const Tolerances& tol = default_tolerances());

/// Smallest singular value of [A | B].  Requires dim A + dim B <= ambient.
Margin transverse(const Subspace& a, const Subspace& b,
                  const Tolerances& tol = default_tolerances());

/// dim A + dim B - rank([A | B]) with the rank cut at tol.rank.
int intersection_dim(const Subspace& a, const Subspace& b,
                     const Tolerances& tol = default_tolerances());

/// Smallest singular value of the concatenation of all bases; the sum is
/// direct <=> margin > tol.rank.  The empty list has margin 1.
Margin direct_sum_margin(std::span<const Subspace> parts,
                         const Tolerances& tol = default_tolerances());

/// A cap B.  With expected_dim < 0 the dimension is decided at tol.rank;
/// otherwise the expected_dim most-null directions of [A | B] are used.
Subspace intersect(const Subspace& a, const Subspace& b, int expected_dim = -1,
                   const Tolerances& tol = default_tolerances());

/// A + B + ... .  With expected_dim < 0 the rank is cut at tol.rank;
/// otherwise the leading expected_dim left singular directions are kept.
Subspace sum(std::span<const Subspace> parts, int expected_dim = -1,
             const Tolerances& tol = default_tolerances());

/// Image of a subspace under an invertible linear map.
Subspace image(const Mat& m, const Subspace& v);

}  // namespace anosovlab
