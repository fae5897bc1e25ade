#pragma once

// Hot loops with a scalar reference and an AVX2 variant chosen at runtime.
// Setting RATMAPS_FORCE_SCALAR=1 in the environment pins the scalar table.

#include <cstddef>
#include <cstdint>

namespace ratmaps::simd {

/// dst[i] ^= src[i] for i < words.
using XorIntoFn = void (*)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);

/// Batched squared-norm objective for a tuple of (p,q)-forms.
///
/// coeff_re/coeff_im: components x monomials, row-major.
/// mono_re/mono_im:   monomials x points, row-major (stride = points).
/// weight:            per-point divisor, typically (sum |z_j|^2)^(p+q).
/// out[k] = sum_i |sum_j coeff[i][j] mono[j][k]|^2 / weight[k].
struct ObjectiveBatch {
  std::size_t components = 0;
  std::size_t monomials = 0;
  std::size_t points = 0;
  const double* coeff_re = nullptr;
  const double* coeff_im = nullptr;
  const double* mono_re = nullptr;
  const double* mono_im = nullptr;
  const double* weight = nullptr;
};
using ObjectiveFn = void (*)(const ObjectiveBatch& batch, double* out);

struct KernelTable {
  const char* name;
  XorIntoFn xor_into;
  ObjectiveFn objective;
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
/// The table used by the library: AVX2 when available and not forced off.
const KernelTable& active_kernels();

namespace detail {
void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
void objective_scalar(const ObjectiveBatch& batch, double* out);
#ifdef RATMAPS_HAVE_AVX2
void xor_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
void objective_avx2(const ObjectiveBatch& batch, double* out);
#endif
}  // namespace detail

}  // namespace ratmaps::simd
