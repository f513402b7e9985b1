#include "doctest.h"

#include "anosovlab/charts.hpp"

using namespace anosovlab;

namespace {

const SymplecticSpace S(2);
const Subspace P = Subspace::coordinate(4, {0, 1});
const Subspace Q = Subspace::coordinate(4, {2, 3});

Subspace cols(std::initializer_list<std::array<double, 4>> vs) {
  Mat m(4, static_cast<Eigen::Index>(vs.size()));
  Eigen::Index c = 0;
  for (const auto& v : vs) {
    for (int i = 0; i < 4; ++i) m(i, c) = v[static_cast<std::size_t>(i)];
    ++c;
  }
  return Subspace::span(m);
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("chart u") {
  CHECK(chart_u(S, P, Q, P).matrix().norm() < 1e-14);
  const Subspace R = cols({{1, 0, 1, 0}, {0, 1, 0, 1}});
  CHECK((chart_u(S, P, Q, R).matrix() - Mat::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(chart_u(S, P, Q, Q), ChartDomainError);
  CHECK_THROWS_AS(chart_u(S, P, P, Q), InvalidInput);
}

TEST_CASE("graph of a symmetric map") {
  CHECK(same_subspace(graph_lagrangian(S, P, Q, Mat::Zero(2, 2)), P));
  const Subspace g = graph_lagrangian(S, P, Q, Mat::Identity(2, 2));
  CHECK(same_subspace(g, cols({{1, 0, 1, 0}, {0, 1, 0, 1}})));
  CHECK(is_lagrangian(S, g));
  // u(e1) = e4, u(e2) = 0: omega(e1, u e2) - omega(e2, u e1) = -1.
  try {
    graph_lagrangian(S, P, Q, mat2(0, 0, 1, 0));
    FAIL("asymmetric map accepted");
  } catch (const AsymmetricMapError& e) {
    CHECK(e.residual() == doctest::Approx(1.0));
  }
}

TEST_CASE("chart forms") {
  const Subspace R = cols({{1, 0, 1, 0}, {0, 1, 0, 1}});
  CHECK((chart_q(S, P, Q, R).matrix() - Mat::Identity(2, 2)).norm() < 1e-14);
  CHECK(chart_q(S, P, Q, P).matrix().norm() < 1e-14);
  // Rank-one u: the kernel of u is a singular subspace of q.
  const Subspace Rk = graph_lagrangian(S, P, Q, mat2(1, 0, 0, 0));
  const SymForm q = chart_q(S, P, Q, Rk);
  CHECK(singular_subspace_check(q, Subspace::coordinate(4, {1})).pass);
}

TEST_CASE("maximal triples") {
  const Subspace R = cols({{1, 0, 1, 0}, {0, 1, 0, 1}});
  const MaximalityResult m = is_maximal_triple(S, P, R, Q);
  CHECK(m.maximal);
  CHECK(m.min_eigenvalue == doctest::Approx(1.0));
  const MaximalityResult swapped = is_maximal_triple(S, Q, R, P);
  CHECK_FALSE(swapped.maximal);
  CHECK(chart_q(S, Q, P, R).eigenvalues().maxCoeff() < 0.0);
  const Subspace Rd = graph_lagrangian(S, P, Q, mat2(1, 0, 0, -1));
  const MaximalityResult d = is_maximal_triple(S, P, Rd, Q);
  CHECK_FALSE(d.maximal);
  const Vec ev = chart_q(S, P, Q, Rd).eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(1.0));
}

TEST_CASE("singular subspaces") {
  Mat coord1(2, 1), coord0(2, 1);
  coord1 << 0, 1;
  coord0 << 1, 0;
  CHECK(singular_subspace_check_coords(mat2(1, 0, 0, 0), coord1).pass);
  CHECK_FALSE(singular_subspace_check_coords(Mat::Identity(2, 2), coord0).pass);
  CHECK(singular_subspace_check_coords(mat2(0, 1, 1, 0), coord0).pass);
}

TEST_CASE("iota") {
  const ProjPoint a = iota(ProjPoint(vec2(1, 0)));
  const Mat fa = form_from_coordinates(Eigen::Vector3d(a.coords()));
  CHECK(std::abs(fa(0, 0)) < 1e-15);
  CHECK(std::abs(fa(0, 1)) < 1e-15);
  CHECK(fa(1, 1) > 0);
  const Mat fb = form_from_coordinates(Eigen::Vector3d(iota(ProjPoint(vec2(1, 1))).coords()));
  CHECK(fb(0, 0) == doctest::Approx(fb(1, 1)));
  CHECK(fb(0, 1) == doctest::Approx(-fb(0, 0)));
  for (double t : {0.2, 1.1, 2.9}) {
    const Mat f = form_from_coordinates(Eigen::Vector3d(iota(ProjPoint(vec2(std::cos(t), std::sin(t)))).coords()));
    Eigen::SelfAdjointEigenSolver<Mat> eig(f);
    CHECK(std::abs(eig.eigenvalues()(0)) < 1e-14);
    CHECK(eig.eigenvalues()(1) > 0);
  }
}

TEST_CASE("cross ratio and cyclic order") {
  const ProjPoint e1(vec2(1, 0)), e2(vec2(0, 1)), s(vec2(1, 1)), d(vec2(1, -1));
  CHECK(cross_ratio(e1, s, e2, d) == doctest::Approx(-1.0));
  CHECK(is_cyclically_ordered(e1, s, e2, d));
  CHECK(cross_ratio(e1, e2, s, d) == doctest::Approx(2.0));
  CHECK_FALSE(is_cyclically_ordered(e1, e2, s, d));
  CHECK_THROWS_AS(cross_ratio(e1, e1, s, d), DegenerateQuadrupleError);
}

TEST_CASE("collinearity in the space of forms") {
  auto pt = [](const Mat& f) { return ProjPoint(Vec(form_coordinates(f))); };
  CHECK(collinear_in_PQ(pt(mat2(1, 0, 0, 0)), pt(mat2(0, 0, 0, 1)), pt(mat2(1, 0, 0, 1)), 1e-6).pass);
  CHECK_FALSE(collinear_in_PQ(pt(mat2(1, 0, 0, 0)), pt(mat2(0, 0, 0, 1)), pt(mat2(0, 1, 1, 0)), 1e-6).pass);
  CHECK(collinear_in_PQ(pt(mat2(1, 0, 0, 0)), pt(mat2(1, 0, 0, 0)), pt(mat2(0, 1, 1, 0)), 1e-6).pass);
}

TEST_CASE("form coordinates round trip") {
  const Mat f = mat2(2.0, -0.5, -0.5, 3.0);
  CHECK((form_from_coordinates(form_coordinates(f)) - f).norm() < 1e-15);
  // The coordinates are orthonormal for the Frobenius inner product.
  CHECK(form_coordinates(f).norm() == doctest::Approx(f.norm()));
}
