#include <algorithm>
#include <cmath>

#include "anosovlab/diagnostics.hpp"

namespace anosovlab {

double TangentResiduals::worst() const {
  return std::max({rank_ratio, kernel_angle, image_angle, signature_ratio});
}

TangentResiduals tangent_residuals(const FlagSource& source, const FlagSample& x,
                                   const FlagSample& z, double theta_y, double delta,
                                   const Tolerances& tol) {
  if (x.N() % 2 != 0) throw InvalidInput("tangent check needs symplectic flags");
  if (!(delta > 0)) throw InvalidInput("finite-difference step must be positive");
  if (angle_separation(theta_y, x.theta()) < tol.theta_sep ||
      angle_separation(theta_y, z.theta()) < tol.theta_sep) {
    throw InvalidInput("theta_y must differ from theta_x and theta_z");
  }
  const int n = x.N() / 2;
  const SymplecticSpace space(n);
  const FlagSample y0 = source(theta_y);
  const FlagSample y1 = source(theta_y + delta);
  const Subspace& p = x.space(n);
  const Subspace& q = z.space(n);
  const Mat du = chart_u(space, p, q, y1.space(n), tol).matrix() -
                 chart_u(space, p, q, y0.space(n), tol).matrix();

  TangentResiduals out;
  Eigen::JacobiSVD<Mat> svd(du, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  if (!(sv(0) > 0)) throw NumericalError("finite difference vanished; increase delta");
  out.rank_ratio = n > 1 ? sv(1) / sv(0) : 0.0;
  if (n > 1) {
    const Subspace kernel =
        Subspace::from_orthonormal(orthonormalize(p.basis() * svd.matrixV().rightCols(n - 1)), tol);
    out.kernel_angle = max_principal_sine(kernel, psi_hyperplane(x, y0, z, tol));
  }
  const Subspace img = Subspace::from_orthonormal(orthonormalize(q.basis() * svd.matrixU().col(0)), tol);
  out.image_angle = max_principal_sine(img, generic_meet(y0.space(n + 1), q, 1, tol));

  const Mat dq = pairing_matrix(space, p, q) * du;
  Eigen::SelfAdjointEigenSolver<Mat> eig((dq + dq.transpose()) / 2);
  Vec ev = eig.eigenvalues();
  Eigen::Index dom = 0;
  ev.cwiseAbs().maxCoeff(&dom);
  double second = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (i != dom) second = std::max(second, std::abs(ev(i)));
  }
  out.signature_ratio = second / std::abs(ev(dom));
  out.dominant_sign = ev(dom) > 0 ? 1 : -1;
  return out;
}

namespace {

nlohmann::json residual_json(const TangentResiduals& t) {
  return {{"rank_ratio", t.rank_ratio},
          {"kernel_angle", t.kernel_angle},
          {"image_angle", t.image_angle},
          {"signature_ratio", t.signature_ratio},
          {"dominant_sign", t.dominant_sign}};
}

}  // namespace

CheckResult tangent_check(const FlagSource& source, const FlagSample& x, const FlagSample& z,
                          double theta_y, double delta, const Tolerances& tol) {
  const TangentResiduals full = tangent_residuals(source, x, z, theta_y, delta, tol);
  const TangentResiduals half = tangent_residuals(source, x, z, theta_y, delta / 2, tol);
  CheckResult r = CheckResult::from_margin("tangent", Margin::below(full.worst(), tol.tan));
  r.witness = {{"theta_x", x.theta()}, {"theta_y", canonical_angle(theta_y)}, {"theta_z", z.theta()},
               {"delta", delta}};
  r.details["residuals"] = residual_json(full);
  r.details["residuals_half_delta"] = residual_json(half);
  r.details["halving_factor"] = half.worst() > 0 ? full.worst() / half.worst() : 0.0;
  r.details["dominant_sign"] = full.dominant_sign;
  return r;
}

SymForm boundary_chart_q(const FlagSample& x, const FlagSample& y, const FlagSample& z,
                         const Tolerances& tol) {
  if (x.N() != 4) throw InvalidInput("boundary chart is implemented for Sp(4, R) flags");
  // Along the osculating curve the transversality margin of y^2 and z^2
  // decays like distance^4, so only an exact meet is rejected.
  Tolerances near = tol;
  near.rank = std::min(tol.rank, 1e-14);
  return chart_q(SymplecticSpace(2), x.space(2), z.space(2), y.space(2), near);
}

LimitDistances limit_distances(const FlagSource& source, double theta_x, double theta_z,
                               double distance, const Tolerances& tol) {
  const FlagSample x = source(theta_x);
  const FlagSample z = source(theta_z);
  if (x.N() != 4) throw InvalidInput("limit checks are defined for Sp(4, R) flags only");
  const double arc = canonical_angle(theta_z - theta_x);
  if (!(distance > 0) || !(2 * distance < arc)) {
    throw InvalidInput("limit distance must be positive and below half the arc from x to z");
  }
  const SymplecticSpace space(2);
  const Subspace& x2 = x.space(2);
  auto q_at = [&](const FlagSample& y) {
    return ProjPoint(form_coordinates(boundary_chart_q(x, y, z, tol).matrix()));
  };
  LimitDistances out;
  const FlagSample near_x = source(theta_x + distance);
  out.toward_x = projective_distance(q_at(near_x), iota(x2, x.space(1), tol));
  const FlagSample near_z = source(theta_z - distance);
  out.toward_z = projective_distance(q_at(near_z), iota(x2, generic_meet(z.space(3), x2, 1, tol), tol));
  out.h1_at_z = hk_margins(x, near_z, z, 1, tol).sum.pass;
  return out;
}

std::vector<CheckResult> check_limits(const FlagSource& source, double theta_x, double theta_z,
                                      double distance, double threshold, const Tolerances& tol) {
  const LimitDistances d = limit_distances(source, theta_x, theta_z, distance, tol);
  const nlohmann::json witness = {{"theta_x", canonical_angle(theta_x)},
                                  {"theta_z", canonical_angle(theta_z)},
                                  {"distance", distance}};
  CheckResult to_x = CheckResult::from_margin("limit.y_to_x", Margin::below(d.toward_x, threshold));
  to_x.witness = witness;
  CheckResult to_z = CheckResult::from_margin("limit.y_to_z", Margin::below(d.toward_z, threshold));
  to_z.witness = witness;
  to_z.details["h1_holds"] = d.h1_at_z;
  CheckResult gated = d.h1_at_z
                          ? CheckResult::from_margin("limit.y_to_z_h1_gated",
                                                     Margin::below(d.toward_z, threshold))
                          : CheckResult::skip("limit.y_to_z_h1_gated", "H_1 fails on the triple");
  gated.witness = witness;
  return {to_x, to_z, gated};
}

CheckResult check_psi_variation(const FlagSource& source, double theta_x, double theta_z,
                                double step, const Tolerances& tol) {
  const FlagSample x = source(theta_x);
  const FlagSample z = source(theta_z);
  if (x.N() % 2 != 0 || x.N() < 4) throw InvalidInput("psi needs symplectic flags with n >= 2");
  const int n = x.N() / 2;
  const double arc = canonical_angle(theta_z - theta_x);
  if (!(step > 0) || !(step < arc / 2)) throw InvalidInput("grid step too large for the arc");
  // psi(x) = x^{n-1}: consistency at the base point.
  const double base_defect = max_principal_sine(psi_hyperplane(x, x, z, tol), x.space(n - 1));
  double min_move = 1.0;
  double worst_theta = theta_x;
  Subspace prev = psi_hyperplane(x, x, z, tol);
  for (double t = step; t < arc - step / 2; t += step) {
    const Subspace cur = psi_hyperplane(x, source(theta_x + t), z, tol);
    const double move = max_principal_sine(prev, cur);
    if (move < min_move) {
      min_move = move;
      worst_theta = canonical_angle(theta_x + t);
    }
    prev = cur;
  }
  CheckResult r = CheckResult::from_margin("psi_variation", Margin::above(min_move, tol.rank));
  r.witness = {{"theta_x", x.theta()}, {"theta_z", z.theta()}, {"theta_w", worst_theta}, {"step", step}};
  r.details["basepoint_defect"] = base_defect;
  if (!(base_defect < 10 * tol.angle)) {
    r.pass = false;
    r.details["basepoint_consistent"] = false;
  }
  return r;
}

}  // namespace anosovlab
