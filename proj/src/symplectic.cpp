#include "anosovlab/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace anosovlab {
namespace {

// Right-null directions of m, most-null first is NOT guaranteed; returns the
// trailing `count` columns of the full V factor (smallest singular values).
Mat trailing_right_vectors(const Mat& m, int count) {
  if (count <= 0) return Mat(m.cols(), 0);
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols()).rightCols(count);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(count);
}

Mat leading_left_vectors(const Mat& m, int count) {
  if (count <= 0 || m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(count);
}

}  // namespace

SymplecticSpace::SymplecticSpace(int n) : n_(n) {
  if (n < 1) throw InvalidInput("symplectic half-dimension must be >= 1, got " + std::to_string(n));
  omega_ = Mat::Zero(2 * n, 2 * n);
  omega_.topRightCorner(n, n) = Mat::Identity(n, n);
  omega_.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
}

SymplecticSpace standard_form(int n) { return SymplecticSpace(n); }

Subspace::Subspace(int ambient_dim) : basis_(ambient_dim, 0) {
  if (ambient_dim < 0) throw InvalidInput("negative ambient dimension");
}

Mat orthonormalize(const Mat& columns) {
  const Eigen::Index m = columns.rows();
  const Eigen::Index k = columns.cols();
  if (k == 0) return Mat(m, 0);
  Eigen::HouseholderQR<Mat> qr(columns);
  Mat q = qr.householderQ() * Mat::Identity(m, k);
  const Mat& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Subspace Subspace::span(const Mat& columns, const Tolerances& tol) {
  const Eigen::Index k = columns.cols();
  if (k > columns.rows()) {
    throw InvalidInput("more spanning columns than the ambient dimension");
  }
  Mat normalized = columns;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double norm = columns.col(j).norm();
    if (!(norm > tol.orth)) {
      throw InvalidInput("zero column " + std::to_string(j) + " in subspace basis");
    }
    normalized.col(j) /= norm;
  }
  if (k > 0) {
    const Vec sv = singular_values(normalized);
    if (!(sv(k - 1) > tol.rank)) {
      throw InvalidInput("linearly dependent columns in subspace basis (sigma_min = " +
                         std::to_string(sv(k - 1)) + ")");
    }
  }
  Subspace out(static_cast<int>(columns.rows()));
  out.basis_ = orthonormalize(normalized);
  return out;
}

Subspace Subspace::from_orthonormal(Mat basis, const Tolerances& tol) {
  const Eigen::Index k = basis.cols();
  if (k > 0) {
    const double err = (basis.transpose() * basis - Mat::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > tol.orth) {
      throw InvalidInput("basis is not orthonormal (residual " + std::to_string(err) + ")");
    }
  }
  Subspace out(static_cast<int>(basis.rows()));
  out.basis_ = std::move(basis);
  return out;
}

Subspace Subspace::coordinate(int ambient_dim, std::initializer_list<int> indices) {
  Mat cols = Mat::Zero(ambient_dim, static_cast<Eigen::Index>(indices.size()));
  Eigen::Index j = 0;
  for (int i : indices) {
    if (i < 0 || i >= ambient_dim) throw InvalidInput("coordinate index out of range");
    cols(i, j++) = 1.0;
  }
  return span(cols);
}

Subspace Subspace::whole(int ambient_dim) {
  Subspace out(ambient_dim);
  out.basis_ = Mat::Identity(ambient_dim, ambient_dim);
  return out;
}

double Subspace::distance(const Vec& v) const {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  const Vec u = v / norm;
  return (u - basis_ * (basis_.transpose() * u)).norm();
}

Vec singular_values(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

int numerical_rank(const Mat& m, double cut) {
  const Vec sv = singular_values(m);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

Mat concat_bases(std::span<const Subspace> parts) {
  if (parts.empty()) return Mat(0, 0);
  const int m = parts.front().ambient_dim();
  Eigen::Index total = 0;
  for (const auto& p : parts) {
    if (p.ambient_dim() != m) throw InvalidInput("subspaces live in different ambient spaces");
    total += p.dim();
  }
  Mat out(m, total);
  Eigen::Index col = 0;
  for (const auto& p : parts) {
    out.middleCols(col, p.dim()) = p.basis();
    col += p.dim();
  }
  return out;
}

Vec principal_angle_sines(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidInput("principal angles between different ambient spaces");
  }
  const Subspace& small = a.dim() <= b.dim() ? a : b;
  const Subspace& large = a.dim() <= b.dim() ? b : a;
  if (small.dim() == 0) return Vec(0);
  const Mat residual = small.basis() - large.basis() * (large.basis().transpose() * small.basis());
  Vec sv = singular_values(residual);
  for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = std::min(sv(i), 1.0);
  return sv;
}

double max_principal_sine(const Subspace& a, const Subspace& b) {
  const Vec s = principal_angle_sines(a, b);
  return s.size() == 0 ? 0.0 : s(0);
}

bool same_subspace(const Subspace& a, const Subspace& b, const Tolerances& tol) {
  return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() &&
         max_principal_sine(a, b) < tol.angle;
}

bool contained_in(const Subspace& a, const Subspace& b, const Tolerances& tol) {
  return a.dim() <= b.dim() && max_principal_sine(a, b) < tol.angle;
}

Subspace omega_orthogonal(const SymplecticSpace& space, const Subspace& v) {
  if (v.ambient_dim() != space.dim()) throw InvalidInput("subspace not in the symplectic space");
  const int complement = space.dim() - v.dim();
  if (v.dim() == 0) return Subspace::whole(space.dim());
  const Mat constraints = v.basis().transpose() * space.omega();
  return Subspace::from_orthonormal(trailing_right_vectors(constraints, complement));
}

Margin is_isotropic(const SymplecticSpace& space, const Subspace& v, const Tolerances& tol) {
  if (v.ambient_dim() != space.dim()) throw InvalidInput("subspace not in the symplectic space");
  double worst = 0.0;
  if (v.dim() > 0) {
    worst = (v.basis().transpose() * space.omega() * v.basis()).cwiseAbs().maxCoeff();
  }
  return Margin::below(worst, tol.iso);
}

bool is_lagrangian(const SymplecticSpace& space, const Subspace& v, const Tolerances& tol) {
  return v.dim() == space.n() && is_isotropic(space, v, tol).pass;
}

Margin transverse(const Subspace& a, const Subspace& b, const Tolerances& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("transverse: different ambient spaces");
  if (a.dim() + b.dim() > a.ambient_dim()) {
    throw InvalidInput("transverse: ill-posed, dim A + dim B exceeds the ambient dimension");
  }
  const Subspace parts[] = {a, b};
  return direct_sum_margin(parts, tol);
}

int intersection_dim(const Subspace& a, const Subspace& b, const Tolerances& tol) {
  const Subspace parts[] = {a, b};
  return a.dim() + b.dim() - numerical_rank(concat_bases(parts), tol.rank);
}

Margin direct_sum_margin(std::span<const Subspace> parts, const Tolerances& tol) {
  const Mat all = concat_bases(parts);
  if (all.cols() == 0) return Margin::above(1.0, tol.rank);
  if (all.cols() > all.rows()) {
    throw InvalidInput("direct_sum_margin: total dimension exceeds the ambient dimension");
  }
  const Vec sv = singular_values(all);
  return Margin::above(sv(sv.size() - 1), tol.rank);
}

Subspace intersect(const Subspace& a, const Subspace& b, int expected_dim, const Tolerances& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("intersect: different ambient spaces");
  const int d = expected_dim >= 0 ? expected_dim : intersection_dim(a, b, tol);
  if (d > std::min(a.dim(), b.dim())) throw InvalidInput("intersect: impossible expected dimension");
  if (d == 0) return Subspace(a.ambient_dim());
  const Subspace parts[] = {a, b};
  const Mat null = trailing_right_vectors(concat_bases(parts), d);
  const Mat vectors = a.basis() * null.topRows(a.dim());
  return Subspace::from_orthonormal(leading_left_vectors(vectors, d));
}

Subspace sum(std::span<const Subspace> parts, int expected_dim, const Tolerances& tol) {
  if (parts.empty()) throw InvalidInput("sum of an empty family has no ambient space");
  const Mat all = concat_bases(parts);
  const int d = expected_dim >= 0 ? expected_dim : numerical_rank(all, tol.rank);
  if (d > all.rows()) throw InvalidInput("sum: expected dimension exceeds ambient dimension");
  if (d == 0) return Subspace(static_cast<int>(all.rows()));
  return Subspace::from_orthonormal(leading_left_vectors(all, d));
}

Subspace image(const Mat& m, const Subspace& v) {
  if (m.cols() != v.ambient_dim()) throw InvalidInput("image: dimension mismatch");
  if (v.dim() == 0) return Subspace(static_cast<int>(m.rows()));
  return Subspace::span(m * v.basis());
}

}  // namespace anosovlab
