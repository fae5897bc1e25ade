#include "ratmaps/simd/kernels.hpp"

namespace ratmaps::simd::detail {

void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

void objective_scalar(const ObjectiveBatch& b, double* out) {
  for (std::size_t k = 0; k < b.points; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < b.components; ++i) {
      const double* cr = b.coeff_re + i * b.monomials;
      const double* ci = b.coeff_im + i * b.monomials;
      double sr = 0.0, si = 0.0;
      for (std::size_t j = 0; j < b.monomials; ++j) {
        const double mr = b.mono_re[j * b.points + k];
        const double mi = b.mono_im[j * b.points + k];
        sr += cr[j] * mr - ci[j] * mi;
        si += cr[j] * mi + ci[j] * mr;
      }
      total += sr * sr + si * si;
    }
    out[k] = total / b.weight[k];
  }
}

}  // namespace ratmaps::simd::detail
