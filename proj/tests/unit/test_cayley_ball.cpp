#include "doctest.h"

#include "anosovlab/cayley_ball.hpp"

using namespace anosovlab;

namespace {

const Representation& rho0() {
  static const Representation r = fuchsian_genus2();
  return r;
}

}  // namespace

TEST_CASE("small radii") {
  const Ball b0 = enumerate_ball(rho0(), 0);
  CHECK(b0.size() == 1);
  CHECK((b0.matrix(0) - Mat::Identity(2, 2)).norm() == 0.0);
  const Ball b1 = enumerate_ball(rho0(), 1);
  CHECK(b1.size() == 9);
  CHECK_THROWS_AS(enumerate_ball(rho0(), -1), InvalidInput);
}

TEST_CASE("sphere sizes") {
  const Ball b = enumerate_ball(rho0(), 4);
  // No relation is shorter than the relator (length 8), so the spheres of
  // radius <= 3 match the free group; at radius 4 each of the 8 cyclic
  // half-relators identifies one pair of words.
  const std::vector<std::size_t> expected = {1, 8, 56, 392, 2736};
  CHECK(b.sphere_sizes() == expected);
  CHECK(b.sphere_sizes()[4] < 8u * 7u * 7u * 7u);
  CHECK_FALSE(b.partial());
}

TEST_CASE("count is stable under a tightened identification tolerance") {
  Tolerances tight;
  tight.dedup /= 100;
  for (int r : {3, 4, 5}) {
    CHECK(enumerate_ball(rho0(), r).size() == enumerate_ball(rho0(), r, 1'000'000, tight).size());
  }
}

TEST_CASE("words reproduce matrices") {
  const Representation s4 = sym_power_lift(rho0(), 4);
  const Ball b = enumerate_ball(s4, 3);
  for (std::size_t i = 0; i < b.size(); i += 7) {
    const Word w = b.word(i);
    CHECK(w.length() == b.length(i));
    const Mat m = word_value(s4, w);
    CHECK((b.matrix(i) - m).norm() < 1e-12 * m.norm());
    CHECK((b.matrix(i) * b.inverse(i) - Mat::Identity(4, 4)).norm() <
          1e-13 * b.matrix(i).norm() * b.inverse(i).norm());
    CHECK((b.base(i) - base_word_value(s4, w)).norm() < 1e-12 * b.base(i).norm());
  }
}

TEST_CASE("budget exhaustion") {
  const Ball b = enumerate_ball(rho0(), 4, 100);
  CHECK(b.partial());
  CHECK(b.size() <= 100);
  CHECK_FALSE(b.warning().empty());
  CHECK(b.complete_radius() == 2);
}

TEST_CASE("the relator gate") {
  Representation broken = rho0();
  broken.images[0](0, 1) += 1e-3;
  CHECK_THROWS(broken.certify());
}

TEST_CASE("singular values keep relative accuracy") {
  const Representation s4 = sym_power_lift(rho0(), 4);
  const Ball b = enumerate_ball(s4, 4);
  for (std::size_t i = 1; i < b.size(); i += 97) {
    const Vec sv = ball_singular_values(b, i);
    // Symplectic: sigma_k sigma_{N+1-k} = 1.
    CHECK(sv(0) * sv(3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sv(1) * sv(2) == doctest::Approx(1.0).epsilon(1e-9));
  }
}
