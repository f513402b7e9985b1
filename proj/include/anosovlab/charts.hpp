#pragma once

// Linear charts of the Lagrangian Grassmannian.
//
// For transverse Lagrangians P, Q every Lagrangian R transverse to Q is the
// graph {v + u(v) : v in P} of a unique linear map u : P -> Q that is
// omega-symmetric, and u corresponds to the symmetric bilinear form
//   q(v, w) = omega(v, u(w))   on P.
// Maps are stored as n x n matrices in the stored orthonormal bases of P and
// Q; forms as symmetric n x n matrices in P's stored basis.

#include <Eigen/Dense>

#include "anosovlab/symplectic.hpp"

namespace anosovlab {

/// R is not in the chart domain U_Q (R meets Q).
class ChartDomainError : public Error {
 public:
  using Error::Error;
};

/// A map P -> Q that fails omega-symmetry.  Carries the residual.
class AsymmetricMapError : public Error {
 public:
  AsymmetricMapError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Four points of a projective line that are not pairwise in general position.
class DegenerateQuadrupleError : public Error {
 public:
  using Error::Error;
};

/// Symmetric map u : P -> Q (u(P b_j) = Q * matrix.col(j)).
class SymMap {
 public:
  /// Validates Lagrangian, transverse P, Q and omega-symmetry of `matrix`.
  SymMap(const SymplecticSpace& space, Subspace p, Subspace q, Mat matrix,
         const Tolerances& tol = default_tolerances());

  const Subspace& source() const { return p_; }
  const Subspace& target() const { return q_; }
  const Mat& matrix() const { return matrix_; }
  /// max |omega(b_i, u b_j) - omega(b_j, u b_i)| relative to max(1, |q|).
  double symmetry_residual() const { return residual_; }

 private:
  Subspace p_;
  Subspace q_;
  Mat matrix_;
  double residual_ = 0.0;
};

/// Symmetric bilinear form on P in P's stored basis.
class SymForm {
 public:
  SymForm(Subspace p, Mat matrix, const Tolerances& tol = default_tolerances());

  const Subspace& space() const { return p_; }
  const Mat& matrix() const { return matrix_; }
  /// Eigenvalues in increasing order.
  Vec eigenvalues() const;

 private:
  Subspace p_;
  Mat matrix_;
};

/// A point of a real projective space, stored as a unit vector whose first
/// non-negligible coordinate is positive.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec& representative);

  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }

 private:
  Vec coords_;
};

/// Gram matrix P^T omega Q pairing the stored bases.
Mat pairing_matrix(const SymplecticSpace& space, const Subspace& p, const Subspace& q);

/// u_{P,Q}^R.  Throws ChartDomainError when R meets Q, InvalidInput when an
/// input is not Lagrangian or P meets Q.
SymMap chart_u(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
               const Subspace& r, const Tolerances& tol = default_tolerances());

/// Graph of u, a Lagrangian transverse to Q.
Subspace graph_lagrangian(const SymplecticSpace& space, const SymMap& u);
/// Same, from a raw matrix; rejects a non-symmetric u (AsymmetricMapError).
Subspace graph_lagrangian(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
                          const Mat& matrix, const Tolerances& tol = default_tolerances());

/// q(v, w) = omega(v, u(w)) in P's basis.
SymForm form_of(const SymplecticSpace& space, const SymMap& u,
                const Tolerances& tol = default_tolerances());
/// q_{P,Q}^R.
SymForm chart_q(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
                const Subspace& r, const Tolerances& tol = default_tolerances());

struct MaximalityResult {
  bool maximal = false;
  double min_eigenvalue = 0.0;
};

/// (P, R, Q) maximal <=> q_{P,Q}^R positive definite.  Pairwise
/// transversality is required (InvalidInput otherwise).
MaximalityResult is_maximal_triple(const SymplecticSpace& space, const Subspace& p,
                                   const Subspace& r, const Subspace& q,
                                   const Tolerances& tol = default_tolerances());

/// value = max |q(u_i, u_j)| over an orthonormal basis of U; pass <=> U is
/// singular for q.  U is given in ambient coordinates and must lie in P.
Margin singular_subspace_check(const SymForm& q, const Subspace& u,
                               const Tolerances& tol = default_tolerances());
/// Same with U given by coordinates (columns) in P's stored basis.
Margin singular_subspace_check_coords(const Mat& form, const Mat& coords,
                                      const Tolerances& tol = default_tolerances());

/// Coordinates of a symmetric 2x2 form in the basis {E11, E22, (E12+E21)/sqrt2}.
Eigen::Vector3d form_coordinates(const Mat& form2);
Mat form_from_coordinates(const Eigen::Vector3d& coords);

/// iota : P(P) -> P(boundary of Q+(P)) for dim P = 2.  `line` holds the
/// line's coordinates in P's basis; the result is [phi (x) phi] with phi the
/// functional vanishing on the line.
ProjPoint iota(const ProjPoint& line);
/// iota of an ambient line contained in the 2-dimensional Lagrangian P.
ProjPoint iota(const Subspace& p, const Subspace& line,
               const Tolerances& tol = default_tolerances());

/// Coordinates (in P's basis) of a line contained in P.
ProjPoint line_in(const Subspace& p, const Subspace& line,
                  const Tolerances& tol = default_tolerances());

/// cr(a, b; c, d) = (a^b)/(c^b) * (c^d)/(a^d) on a 2-dimensional space.
double cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                   const ProjPoint& d, const Tolerances& tol = default_tolerances());
bool is_cyclically_ordered(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                           const ProjPoint& d, const Tolerances& tol = default_tolerances());

/// Smallest singular value of the 3x3 matrix of unit coordinate rows;
/// pass <=> the three points of P(Q(P)) are collinear (value < tolerance).
Margin collinear_in_PQ(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                       double tolerance);

/// Sine of the angle between two projective points.
double projective_distance(const ProjPoint& a, const ProjPoint& b);

}  // namespace anosovlab
