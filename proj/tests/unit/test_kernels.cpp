#include "doctest.h"

#include <random>
#include <vector>

#include "anosovlab/kernels/kernels.hpp"

namespace k = anosovlab::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> out(n);
  for (double& v : out) v = unif(rng);
  return out;
}

// Naive triple loop, independent of both variants.
void reference(const double* a, const double* b, double* c, int dim) {
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int l = 0; l < dim; ++l) s += a[i * dim + l] * b[l * dim + j];
      c[i * dim + j] = s;
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels match the naive product") {
  for (int dim : {2, 3, 4, 6}) {
    const std::size_t count = 37;
    const std::size_t sq = static_cast<std::size_t>(dim * dim);
    const auto lhs = random_values(count * sq, 1);
    const auto rhs = random_values(sq, 2);
    std::vector<double> out(count * sq), ref(sq);
    k::scalar::right_multiply_batch(lhs.data(), rhs.data(), out.data(), count, dim);
    for (std::size_t i = 0; i < count; ++i) {
      reference(lhs.data() + i * sq, rhs.data(), ref.data(), dim);
      CHECK(k::scalar::max_abs_diff(out.data() + i * sq, ref.data(), sq) < 1e-12);
    }
    k::scalar::left_multiply_batch(rhs.data(), lhs.data(), out.data(), count, dim);
    for (std::size_t i = 0; i < count; ++i) {
      reference(rhs.data(), lhs.data() + i * sq, ref.data(), dim);
      CHECK(k::scalar::max_abs_diff(out.data() + i * sq, ref.data(), sq) < 1e-12);
    }
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (k::detected_isa() != k::Isa::avx2) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  for (int dim : {2, 3, 4, 5, 8}) {
    for (std::size_t count : {std::size_t{1}, std::size_t{3}, std::size_t{64}, std::size_t{1001}}) {
      const std::size_t sq = static_cast<std::size_t>(dim * dim);
      const auto lhs = random_values(count * sq, 10 + count);
      const auto rhs = random_values(sq, 20 + count);
      std::vector<double> a(count * sq), b(count * sq);
      k::scalar::right_multiply_batch(lhs.data(), rhs.data(), a.data(), count, dim);
      k::avx2::right_multiply_batch(lhs.data(), rhs.data(), b.data(), count, dim);
      // FMA contraction changes rounding only: a few ulps of |a||b| dim.
      CHECK(k::scalar::max_abs_diff(a.data(), b.data(), a.size()) < 1e-13);
      k::scalar::left_multiply_batch(rhs.data(), lhs.data(), a.data(), count, dim);
      k::avx2::left_multiply_batch(rhs.data(), lhs.data(), b.data(), count, dim);
      CHECK(k::scalar::max_abs_diff(a.data(), b.data(), a.size()) < 1e-13);
    }
  }
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{5}, std::size_t{1027}}) {
    const auto x = random_values(len, 3);
    auto y = random_values(len, 4);
    CHECK(k::avx2::max_abs_diff(x.data(), y.data(), len) == k::scalar::max_abs_diff(x.data(), y.data(), len));
    if (len > 0) {
      y = x;
      y[len - 1] += 0.5;
      CHECK(k::avx2::max_abs_diff(x.data(), y.data(), len) == 0.5);
    }
  }
}

TEST_CASE("dispatching entry points") {
  CHECK(std::string(k::isa_name(k::active_isa())).size() > 0);
  const auto lhs = random_values(16 * 5, 8);
  const auto rhs = random_values(16, 9);
  std::vector<double> out(16 * 5), ref(16 * 5);
  k::right_multiply_batch(lhs, rhs, out, 4);
  k::scalar::right_multiply_batch(lhs.data(), rhs.data(), ref.data(), 5, 4);
  CHECK(k::max_abs_diff(out, ref) < 1e-13);
}
