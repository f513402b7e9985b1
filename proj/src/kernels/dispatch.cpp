#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "anosovlab/kernels/kernels.hpp"

namespace anosovlab::kernels {
namespace {

Isa choose() {
  const char* forced = std::getenv("ANOSOVLAB_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
  return detected_isa();
}

void check_batch(std::size_t batch_len, std::size_t out_len, std::size_t single_len, int dim) {
  const std::size_t stride = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (dim < 1 || single_len != stride || batch_len % stride != 0 || out_len != batch_len) {
    throw std::invalid_argument("kernel batch: inconsistent matrix sizes");
  }
}

}  // namespace

Isa detected_isa() {
#if ANOSOVLAB_HAVE_AVX2 && (defined(__x86_64__) || defined(__i386__))
  static const bool avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return avx2 ? Isa::avx2 : Isa::scalar;
#else
  return Isa::scalar;
#endif
}

Isa active_isa() {
  static const Isa isa = choose();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void right_multiply_batch(std::span<const double> lhs, std::span<const double> rhs,
                          std::span<double> out, int dim) {
  check_batch(lhs.size(), out.size(), rhs.size(), dim);
  const std::size_t count = lhs.size() / rhs.size();
#if ANOSOVLAB_HAVE_AVX2
  if (active_isa() == Isa::avx2) {
    avx2::right_multiply_batch(lhs.data(), rhs.data(), out.data(), count, dim);
    return;
  }
#endif
  scalar::right_multiply_batch(lhs.data(), rhs.data(), out.data(), count, dim);
}

void left_multiply_batch(std::span<const double> lhs, std::span<const double> rhs,
                         std::span<double> out, int dim) {
  check_batch(rhs.size(), out.size(), lhs.size(), dim);
  const std::size_t count = rhs.size() / lhs.size();
#if ANOSOVLAB_HAVE_AVX2
  if (active_isa() == Isa::avx2) {
    avx2::left_multiply_batch(lhs.data(), rhs.data(), out.data(), count, dim);
    return;
  }
#endif
  scalar::left_multiply_batch(lhs.data(), rhs.data(), out.data(), count, dim);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
#if ANOSOVLAB_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::max_abs_diff(a.data(), b.data(), a.size());
#endif
  return scalar::max_abs_diff(a.data(), b.data(), a.size());
}

}  // namespace anosovlab::kernels
