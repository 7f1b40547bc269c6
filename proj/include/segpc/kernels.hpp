#pragma once

// Dense inner-loop kernels used by the factorizations, measurement assembly
// and surrogate evaluation. Every kernel has a scalar reference version; SIMD
// variants (AVX2+FMA on x86-64, NEON on AArch64) are compiled when the target
// allows it and picked at runtime. The reference and SIMD variants agree to
// rounding (reductions are reassociated, so results are not bit-identical
// across variants, but each variant is deterministic on its own).
//
// Setting SEGPC_KERNELS=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace segpc::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // acc[i] += x[i]^2
  void (*accumulate_squares)(const double* x, double* acc, std::size_t n);
  // out[i] = x[i] * y[i]
  void (*multiply)(const double* x, const double* y, double* out, std::size_t n);
  // x[i] *= a
  void (*scale)(double a, double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Table for `isa`, or nullptr when that variant is not compiled in or the
/// running CPU lacks the instructions.
const KernelTable* table_for(Isa isa) noexcept;

/// Currently selected table. Chosen once on first use: the widest available
/// SIMD variant unless SEGPC_KERNELS=scalar.
const KernelTable& active() noexcept;

/// Override the selection (tests, benchmarks). Returns false and leaves the
/// selection unchanged when `isa` is unavailable.
bool select(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

// Span front ends over the active table. Lengths must match; the shorter
// extent is not silently used.
double dot(std::span<const double> x, std::span<const double> y);
double sum_squares(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void accumulate_squares(std::span<const double> x, std::span<double> acc);
void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out);
void scale(double a, std::span<double> x);

namespace detail {
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace segpc::kernels
