#include <atomic>
#include <cstdlib>
#include <string>

#include "ununfold/kernels.hpp"

namespace ununfold::kernels {

#ifdef UNUNFOLD_HAVE_AVX2
namespace detail {
const KernelTable& avx2_table();
}
#endif

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("UNUNFOLD_KERNELS");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
  if (const KernelTable* simd = avx2_kernels()) return simd;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(UNUNFOLD_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view name) {
  const KernelTable* table = nullptr;
  if (name == "scalar") table = &scalar_kernels();
  else if (name == "avx2") table = avx2_kernels();
  else if (name == "auto") table = avx2_kernels() ? avx2_kernels() : &scalar_kernels();
  if (!table) return false;
  active_slot().store(table, std::memory_order_relaxed);
  return true;
}

}  // namespace ununfold::kernels
