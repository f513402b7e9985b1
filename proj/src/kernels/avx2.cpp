// Compiled with -mavx2 -mfma; reached only through runtime dispatch.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "anosovlab/kernels/kernels.hpp"

namespace anosovlab::kernels::avx2 {
namespace {

// [a00 a01 | a10 a11] * B for one 2x2 pair.
inline __m256d mul2(__m256d a, __m256d b_row0, __m256d b_row1) {
  const __m256d a_first = _mm256_permute_pd(a, 0b0000);   // a00 a00 | a10 a10
  const __m256d a_second = _mm256_permute_pd(a, 0b1111);  // a01 a01 | a11 a11
  return _mm256_fmadd_pd(a_second, b_row1, _mm256_mul_pd(a_first, b_row0));
}

}  // namespace

void right_multiply_batch(const double* lhs, const double* rhs, double* out,
                          std::size_t count, int dim) {
  if (dim == 4) {
    const __m256d r0 = _mm256_loadu_pd(rhs);
    const __m256d r1 = _mm256_loadu_pd(rhs + 4);
    const __m256d r2 = _mm256_loadu_pd(rhs + 8);
    const __m256d r3 = _mm256_loadu_pd(rhs + 12);
    for (std::size_t m = 0; m < count; ++m) {
      const double* a = lhs + 16 * m;
      double* c = out + 16 * m;
      for (int i = 0; i < 4; ++i) {
        __m256d acc = _mm256_mul_pd(_mm256_broadcast_sd(a + 4 * i), r0);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(a + 4 * i + 1), r1, acc);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(a + 4 * i + 2), r2, acc);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(a + 4 * i + 3), r3, acc);
        _mm256_storeu_pd(c + 4 * i, acc);
      }
    }
    return;
  }
  if (dim == 2) {
    const __m128d row0 = _mm_loadu_pd(rhs);
    const __m128d row1 = _mm_loadu_pd(rhs + 2);
    const __m256d b0 = _mm256_set_m128d(row0, row0);
    const __m256d b1 = _mm256_set_m128d(row1, row1);
    for (std::size_t m = 0; m < count; ++m) {
      _mm256_storeu_pd(out + 4 * m, mul2(_mm256_loadu_pd(lhs + 4 * m), b0, b1));
    }
    return;
  }
  scalar::right_multiply_batch(lhs, rhs, out, count, dim);
}

void left_multiply_batch(const double* lhs, const double* rhs, double* out,
                         std::size_t count, int dim) {
  if (dim == 4) {
    for (std::size_t m = 0; m < count; ++m) {
      const double* b = rhs + 16 * m;
      double* c = out + 16 * m;
      const __m256d b0 = _mm256_loadu_pd(b);
      const __m256d b1 = _mm256_loadu_pd(b + 4);
      const __m256d b2 = _mm256_loadu_pd(b + 8);
      const __m256d b3 = _mm256_loadu_pd(b + 12);
      for (int i = 0; i < 4; ++i) {
        __m256d acc = _mm256_mul_pd(_mm256_broadcast_sd(lhs + 4 * i), b0);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(lhs + 4 * i + 1), b1, acc);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(lhs + 4 * i + 2), b2, acc);
        acc = _mm256_fmadd_pd(_mm256_broadcast_sd(lhs + 4 * i + 3), b3, acc);
        _mm256_storeu_pd(c + 4 * i, acc);
      }
    }
    return;
  }
  if (dim == 2) {
    // C = L * B:  (l00 l00 | l10 l10) * (b00 b01 | b00 b01)
    //           + (l01 l01 | l11 l11) * (b10 b11 | b10 b11)
    const __m256d l = _mm256_loadu_pd(lhs);
    const __m256d l_first = _mm256_permute_pd(l, 0b0000);
    const __m256d l_second = _mm256_permute_pd(l, 0b1111);
    for (std::size_t m = 0; m < count; ++m) {
      const __m256d b = _mm256_loadu_pd(rhs + 4 * m);
      const __m256d b_top = _mm256_permute2f128_pd(b, b, 0x00);
      const __m256d b_bottom = _mm256_permute2f128_pd(b, b, 0x11);
      _mm256_storeu_pd(out + 4 * m,
                       _mm256_fmadd_pd(l_second, b_bottom, _mm256_mul_pd(l_first, b_top)));
    }
    return;
  }
  scalar::left_multiply_batch(lhs, rhs, out, count, dim);
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    worst = _mm256_max_pd(worst, _mm256_andnot_pd(sign, diff));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < len; ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace anosovlab::kernels::avx2
