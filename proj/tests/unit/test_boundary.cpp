#include "doctest.h"

#include <cmath>
#include <numbers>

#include "anosovlab/boundary.hpp"
#include "anosovlab/cayley_ball.hpp"

using namespace anosovlab;

namespace {

const Representation& rho0() {
  static const Representation r = fuchsian_genus2();
  return r;
}
const Representation& s4() {
  static const Representation r = sym_power_lift(rho0(), 4);
  return r;
}

// The Veronese point in monomial coordinates, carried to the coordinates of
// the lift.  Independent of the flag code: only the curve formula and the
// fixed change of basis are used.
Vec curve_point(double theta, int N) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Vec v(N);
  for (int i = 0; i < N; ++i) v(i) = std::pow(c, N - 1 - i) * std::pow(s, i);
  if (N % 2 == 0) v = symplectic_correction(N).to_standard * v;
  return v;
}

}  // namespace

TEST_CASE("angles") {
  CHECK(canonical_angle(-0.5) == doctest::Approx(2 * std::numbers::pi - 0.5));
  CHECK(canonical_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(is_positive_triple(0.1, 0.2, 0.3));
  CHECK_FALSE(is_positive_triple(0.3, 0.2, 0.1));
  CHECK(is_positive_triple(6.0, 0.1, 0.2));
  CHECK(angle_separation(0.1, 2 * std::numbers::pi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("attracting angle of a diagonal matrix") {
  Mat m(2, 2);
  m << 2, 0, 0, 0.5;
  CHECK(attracting_angle(m) == doctest::Approx(0.0));
  m << 0.5, 0, 0, 2;
  CHECK(attracting_angle(m) == doctest::Approx(std::numbers::pi));
  // A fixed point is fixed by the action.
  const Mat a1 = rho0().images[0];
  const double t = attracting_angle(a1);
  CHECK(angle_separation(act_on_angle(a1, t), t) < 1e-12);
}

TEST_CASE("Veronese flags") {
  const FlagSample f = veronese_flag(0.0, 4);
  CHECK(same_subspace(f.space(1), Subspace::coordinate(4, {0})));
  CHECK(same_subspace(f.space(2), Subspace::coordinate(4, {0, 1})));
  const SymplecticSpace S(2);
  for (double theta : {0.3, 1.9, 4.4}) {
    const FlagSample g = veronese_flag(theta, 4);
    CHECK(is_lagrangian(S, g.space(2)));
    CHECK(g.space(1).distance(curve_point(theta, 4)) < 1e-12);
    const FlagDefects d = flag_defects(g, true);
    CHECK(d.compatibility < 1e-12);
    CHECK(d.duality < 1e-12);
    // Osculating plane: contains the chord direction to second order.
    const double h = 1e-5;
    const Vec chord = (curve_point(theta + h, 4) - curve_point(theta - h, 4)) / (2 * h);
    CHECK(g.space(2).distance(chord) < 1e-8);
  }
  const FlagSample line = veronese_flag(1.0, 2);
  Vec p(2);
  p << std::cos(0.5), std::sin(0.5);
  CHECK(line.space(1).distance(p) < 1e-14);
}

TEST_CASE("attracting subspaces: diagonal and conjugated oracles") {
  const Vec d = (Vec(4) << 8, 2, 0.5, 0.125).finished();
  const AttractingSubspace a = attracting_subspace(Mat(d.asDiagonal()), 2);
  CHECK(same_subspace(a.space, Subspace::coordinate(4, {0, 1})));
  CHECK(a.gap == doctest::Approx(0.25));

  // M = V D V^-1 with a fixed well-conditioned V: the dominant k-space is
  // the span of the first k columns of V.
  Mat V(4, 4);
  V << 1, 0.3, -0.2, 0.1,
       0.2, 1, 0.4, -0.3,
       -0.1, 0.2, 1, 0.5,
       0.3, -0.4, 0.1, 1;
  const Mat M = V * d.asDiagonal() * V.inverse();
  for (int k = 1; k < 4; ++k) {
    const AttractingSubspace s = attracting_subspace(M, k);
    CHECK(max_principal_sine(s.space, Subspace::span(V.leftCols(k))) < 1e-12);
    CHECK(s.error_estimate < 1e-12);
  }

  Mat rot(2, 2);
  rot << std::cos(std::numbers::pi / 3), -std::sin(std::numbers::pi / 3),
         std::sin(std::numbers::pi / 3), std::cos(std::numbers::pi / 3);
  CHECK_THROWS_AS(attracting_subspace(rot, 1), NoAttractingPointError);
}

TEST_CASE("attracting flags agree with the Veronese curve") {
  const Word a1 = Word::parse(s4().presentation, "a1");
  const FlagSample f = flag_from_witness(s4(), a1);
  CHECK(f.theta() == doctest::Approx(attracting_angle(rho0().images[0])));
  const FlagSample v = veronese_flag(f.theta(), 4);
  for (int k = 1; k < 4; ++k) CHECK(max_principal_sine(f.space(k), v.space(k)) < 1e-6);
  CHECK_THROWS_AS(flag_from_witness(s4(), Word()), NoAttractingPointError);
}

TEST_CASE("equivariance of the Veronese flags") {
  // rho(g) x^k(theta) = x^k(g . theta).
  const Ball b = enumerate_ball(s4(), 2);
  for (std::size_t i = 1; i < b.size(); i += 5) {
    for (double theta : {0.4, 3.0}) {
      const FlagSample f = veronese_flag(theta, 4);
      const FlagSample g = veronese_flag(act_on_angle(b.base(i), theta), 4);
      for (int k = 1; k < 4; ++k) {
        CHECK(max_principal_sine(image(b.matrix(i), f.space(k)), g.space(k)) < 1e-9);
      }
    }
  }
}

TEST_CASE("boundary sampling") {
  const BoundarySampling v = sample_boundary(s4(), 64, SamplingStrategy::veronese);
  CHECK(v.samples.size() == 64);
  for (std::size_t i = 1; i < v.samples.size(); ++i) {
    CHECK(v.samples[i].theta() > v.samples[i - 1].theta() + 1e-4);
  }
  const BoundarySampling again = sample_boundary(s4(), 64, SamplingStrategy::veronese);
  for (std::size_t i = 0; i < 64; ++i) CHECK(again.samples[i].theta() == v.samples[i].theta());
  const BoundarySampling three = sample_boundary(s4(), 3, SamplingStrategy::veronese);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(transverse(three.samples[i].space(2), three.samples[j].space(2)).pass);
    }
  }

  const BoundarySampling a = sample_boundary(s4(), 32, SamplingStrategy::attracting);
  CHECK(a.samples.size() == 32);
  for (const FlagSample& f : a.samples) {
    CHECK(f.method() == FlagMethod::attracting);
    CHECK(f.point().witness.has_value());
  }

  const Representation ds = direct_sum(rho0(), rho0());
  CHECK_THROWS_AS(sample_boundary(ds, 8, SamplingStrategy::veronese), InvalidInput);
  SamplingOptions opts;
  opts.ks = {2};
  const BoundarySampling dsa = sample_boundary(ds, 8, SamplingStrategy::attracting, opts);
  CHECK(dsa.samples.size() == 8);
  CHECK_FALSE(dsa.samples[0].has(1));
}

TEST_CASE("uniform bits") {
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
}
