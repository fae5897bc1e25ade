#include <cstdlib>
#include <cstring>

#include "ratmaps/simd/kernels.hpp"

namespace ratmaps::simd {

namespace {

bool forced_scalar() {
  const char* env = std::getenv("RATMAPS_FORCE_SCALAR");
  return env != nullptr && *env != '\0' && std::strcmp(env, "0") != 0;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", detail::xor_into_scalar, detail::objective_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#ifdef RATMAPS_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", detail::xor_into_avx2, detail::objective_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const KernelTable* avx = avx2_kernels();
    return (avx != nullptr && !forced_scalar()) ? avx : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace ratmaps::simd
