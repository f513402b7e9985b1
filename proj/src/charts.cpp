#include "anosovlab/charts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace anosovlab {
namespace {

double symmetry_residual_of(const Mat& form) {
  if (form.size() == 0) return 0.0;
  const double scale = std::max(1.0, form.cwiseAbs().maxCoeff());
  return (form - form.transpose()).cwiseAbs().maxCoeff() / scale;
}

void require_lagrangian(const SymplecticSpace& space, const Subspace& v, const char* name,
                        const Tolerances& tol) {
  if (v.ambient_dim() != space.dim()) {
    throw InvalidInput(std::string(name) + " does not live in the symplectic space");
  }
  if (!is_lagrangian(space, v, tol)) {
    throw InvalidInput(std::string(name) + " is not Lagrangian");
  }
}

double wedge(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace

SymMap::SymMap(const SymplecticSpace& space, Subspace p, Subspace q, Mat matrix,
               const Tolerances& tol)
    : p_(std::move(p)), q_(std::move(q)), matrix_(std::move(matrix)) {
  require_lagrangian(space, p_, "P", tol);
  require_lagrangian(space, q_, "Q", tol);
  if (!transverse(p_, q_, tol).pass) throw InvalidInput("P and Q are not transverse");
  if (matrix_.rows() != space.n() || matrix_.cols() != space.n()) {
    throw InvalidInput("symmetric map matrix must be n x n");
  }
  residual_ = symmetry_residual_of(pairing_matrix(space, p_, q_) * matrix_);
  if (residual_ > tol.sym) {
    throw AsymmetricMapError("map P -> Q is not omega-symmetric (residual " +
                                 std::to_string(residual_) + ")",
                             residual_);
  }
}

SymForm::SymForm(Subspace p, Mat matrix, const Tolerances& tol)
    : p_(std::move(p)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != p_.dim() || matrix_.cols() != p_.dim()) {
    throw InvalidInput("form matrix must be dim P x dim P");
  }
  const double residual = symmetry_residual_of(matrix_);
  if (residual > tol.sym) {
    throw AsymmetricMapError("bilinear form is not symmetric (residual " +
                                 std::to_string(residual) + ")",
                             residual);
  }
}

Vec SymForm::eigenvalues() const {
  if (matrix_.size() == 0) return Vec(0);
  // Validated symmetric to tol.sym; the solver only reads one triangle.
  Eigen::SelfAdjointEigenSolver<Mat> eig(matrix_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

ProjPoint::ProjPoint(const Vec& representative) {
  const double norm = representative.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("projective point needs a finite nonzero representative");
  }
  coords_ = representative / norm;
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (std::abs(coords_(i)) > 1e-12) {
      if (coords_(i) < 0.0) coords_ = -coords_;
      break;
    }
  }
}

Mat pairing_matrix(const SymplecticSpace& space, const Subspace& p, const Subspace& q) {
  return p.basis().transpose() * space.omega() * q.basis();
}

SymMap chart_u(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
               const Subspace& r, const Tolerances& tol) {
  require_lagrangian(space, p, "P", tol);
  require_lagrangian(space, q, "Q", tol);
  require_lagrangian(space, r, "R", tol);
  if (!transverse(p, q, tol).pass) throw InvalidInput("P and Q are not transverse");
  if (!transverse(r, q, tol).pass) {
    throw ChartDomainError("R is not in the chart domain U_Q (R meets Q)");
  }
  const int n = space.n();
  Mat pq(space.dim(), 2 * n);
  pq << p.basis(), q.basis();
  const Mat coef = pq.partialPivLu().solve(r.basis());
  const Mat along_p = coef.topRows(n);
  const Mat along_q = coef.bottomRows(n);
  Mat u = along_q * along_p.partialPivLu().inverse();
  return SymMap(space, p, q, std::move(u), tol);
}

Subspace graph_lagrangian(const SymplecticSpace& space, const SymMap& u) {
  (void)space;
  return Subspace::from_orthonormal(
      orthonormalize(u.source().basis() + u.target().basis() * u.matrix()));
}

Subspace graph_lagrangian(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
                          const Mat& matrix, const Tolerances& tol) {
  return graph_lagrangian(space, SymMap(space, p, q, matrix, tol));
}

SymForm form_of(const SymplecticSpace& space, const SymMap& u, const Tolerances& tol) {
  return SymForm(u.source(), pairing_matrix(space, u.source(), u.target()) * u.matrix(), tol);
}

SymForm chart_q(const SymplecticSpace& space, const Subspace& p, const Subspace& q,
                const Subspace& r, const Tolerances& tol) {
  return form_of(space, chart_u(space, p, q, r, tol), tol);
}

MaximalityResult is_maximal_triple(const SymplecticSpace& space, const Subspace& p,
                                   const Subspace& r, const Subspace& q,
                                   const Tolerances& tol) {
  if (!transverse(p, r, tol).pass || !transverse(r, q, tol).pass ||
      !transverse(p, q, tol).pass) {
    throw InvalidInput("maximality is undefined for a non-transverse triple");
  }
  const Vec eig = chart_q(space, p, q, r, tol).eigenvalues();
  const double lowest = eig(0);
  return {lowest > 0.0, lowest};
}

Margin singular_subspace_check_coords(const Mat& form, const Mat& coords, const Tolerances& tol) {
  if (coords.rows() != form.rows()) throw InvalidInput("singular_subspace_check: dimension mismatch");
  if (coords.cols() == 0) return Margin::below(0.0, tol.iso);
  const Mat basis = orthonormalize(coords);
  return Margin::below((basis.transpose() * form * basis).cwiseAbs().maxCoeff(), tol.iso);
}

Margin singular_subspace_check(const SymForm& q, const Subspace& u, const Tolerances& tol) {
  const Subspace& p = q.space();
  if (!contained_in(u, p, tol)) throw InvalidInput("singular_subspace_check: U is not inside P");
  return singular_subspace_check_coords(q.matrix(), p.basis().transpose() * u.basis(), tol);
}

Eigen::Vector3d form_coordinates(const Mat& form2) {
  if (form2.rows() != 2 || form2.cols() != 2) throw InvalidInput("form_coordinates needs a 2x2 form");
  const double off = 0.5 * (form2(0, 1) + form2(1, 0));
  return {form2(0, 0), form2(1, 1), std::sqrt(2.0) * off};
}

Mat form_from_coordinates(const Eigen::Vector3d& c) {
  Mat out(2, 2);
  const double off = c(2) / std::sqrt(2.0);
  out << c(0), off, off, c(1);
  return out;
}

ProjPoint iota(const ProjPoint& line) {
  if (line.ambient_dim() != 2) throw InvalidInput("iota is defined for 2-dimensional P only");
  const Vec& c = line.coords();
  Eigen::Vector2d phi(-c(1), c(0));
  const Mat f = phi * phi.transpose();
  return ProjPoint(Vec(form_coordinates(f)));
}

ProjPoint line_in(const Subspace& p, const Subspace& line, const Tolerances& tol) {
  if (line.dim() != 1) throw InvalidInput("line_in expects a 1-dimensional subspace");
  if (!contained_in(line, p, tol)) throw InvalidInput("line is not contained in P");
  return ProjPoint(Vec(p.basis().transpose() * line.basis().col(0)));
}

ProjPoint iota(const Subspace& p, const Subspace& line, const Tolerances& tol) {
  if (p.dim() != 2) throw InvalidInput("iota is defined for 2-dimensional P only");
  return iota(line_in(p, line, tol));
}

double cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                   const ProjPoint& d, const Tolerances& tol) {
  for (const ProjPoint* pt : {&a, &b, &c, &d}) {
    if (pt->ambient_dim() != 2) throw InvalidInput("cross ratio needs points of a projective line");
  }
  const double ab = wedge(a.coords(), b.coords());
  const double cb = wedge(c.coords(), b.coords());
  const double cd = wedge(c.coords(), d.coords());
  const double ad = wedge(a.coords(), d.coords());
  const double smallest = std::min({std::abs(ab), std::abs(cb), std::abs(cd), std::abs(ad)});
  if (!(smallest > tol.rank)) {
    throw DegenerateQuadrupleError("cross ratio of a degenerate quadruple (min wedge " +
                                   std::to_string(smallest) + ")");
  }
  return (ab / cb) * (cd / ad);
}

bool is_cyclically_ordered(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                           const ProjPoint& d, const Tolerances& tol) {
  return cross_ratio(a, b, c, d, tol) < 0.0;
}

Margin collinear_in_PQ(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                       double tolerance) {
  if (p1.ambient_dim() != 3 || p2.ambient_dim() != 3 || p3.ambient_dim() != 3) {
    throw InvalidInput("collinear_in_PQ expects points of P(Q(P)) with dim P = 2");
  }
  Eigen::Matrix3d rows;
  rows.row(0) = p1.coords().transpose();
  rows.row(1) = p2.coords().transpose();
  rows.row(2) = p3.coords().transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(rows);
  return Margin::below(svd.singularValues()(2), tolerance);
}

double projective_distance(const ProjPoint& a, const ProjPoint& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("projective_distance: dimension mismatch");
  // sin of the angle, from the half-chord h = sin(angle / 2).
  const Vec plus = a.coords() - b.coords();
  const Vec minus = a.coords() + b.coords();
  const Vec& chord = plus.norm() < minus.norm() ? plus : minus;
  const double half = 0.5 * chord.norm();
  return 2.0 * half * std::sqrt(std::max(0.0, 1.0 - half * half));
}

}  // namespace anosovlab
