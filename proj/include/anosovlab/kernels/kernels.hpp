#pragma once

// Batched small dense kernels for Cayley-ball enumeration.
//
// Every kernel exists as a scalar reference and, on x86-64, as an AVX2+FMA
// variant.  The dispatching entry points pick the variant once at runtime
// (CPUID); ANOSOVLAB_SIMD=scalar forces the reference path.  Matrices are
// row-major, `dim` x `dim`, packed back to back.

#include <cstddef>
#include <span>

namespace anosovlab::kernels {

enum class Isa { scalar, avx2 };

/// Best variant supported by this CPU and build.
Isa detected_isa();
/// Variant used by the dispatching entry points.
Isa active_isa();
const char* isa_name(Isa isa);

/// out[i] = lhs[i] * rhs for every packed matrix lhs[i].
void right_multiply_batch(std::span<const double> lhs, std::span<const double> rhs,
                          std::span<double> out, int dim);
/// out[i] = lhs * rhs[i].
void left_multiply_batch(std::span<const double> lhs, std::span<const double> rhs,
                         std::span<double> out, int dim);
/// max_i |a_i - b_i|.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

namespace scalar {
void right_multiply_batch(const double* lhs, const double* rhs, double* out,
                          std::size_t count, int dim);
void left_multiply_batch(const double* lhs, const double* rhs, double* out,
                         std::size_t count, int dim);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace scalar

namespace avx2 {
// Callable only when detected_isa() == Isa::avx2.  Dimensions other than 2
// and 4 fall through to the scalar reference.
void right_multiply_batch(const double* lhs, const double* rhs, double* out,
                          std::size_t count, int dim);
void left_multiply_batch(const double* lhs, const double* rhs, double* out,
                         std::size_t count, int dim);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace avx2

}  // namespace anosovlab::kernels
