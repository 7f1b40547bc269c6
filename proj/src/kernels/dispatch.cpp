#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "segpc/error.hpp"
#include "segpc/kernels.hpp"

namespace segpc::kernels {

namespace detail {
#ifndef SEGPC_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
#ifndef SEGPC_HAVE_NEON
const KernelTable* neon_table() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SEGPC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("SEGPC_KERNELS"); env && std::strcmp(env, "scalar") == 0) {
    return &scalar_table();
  }
  if (const KernelTable* t = table_for(Isa::Avx2)) return t;
  if (const KernelTable* t = table_for(Isa::Neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void require_same(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("kernel operand lengths differ: " + std::to_string(a) + " vs " +
                          std::to_string(b));
  }
}

}  // namespace

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return &scalar_table();
    case Isa::Avx2:
      return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Isa::Neon:
      return detail::neon_table();
  }
  return nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same(x.size(), y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

void accumulate_squares(std::span<const double> x, std::span<double> acc) {
  require_same(x.size(), acc.size());
  active().accumulate_squares(x.data(), acc.data(), x.size());
}

void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  require_same(x.size(), y.size());
  require_same(x.size(), out.size());
  active().multiply(x.data(), y.data(), out.data(), x.size());
}

void scale(double a, std::span<double> x) { active().scale(a, x.data(), x.size()); }

}  // namespace segpc::kernels
