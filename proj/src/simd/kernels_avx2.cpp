#include <immintrin.h>

#include "ratmaps/simd/kernels.hpp"

namespace ratmaps::simd::detail {

void xor_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 8 <= words; i += 8) {
    __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 4));
    __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 4));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a0, b0));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), _mm256_xor_si256(a1, b1));
  }
  for (; i + 4 <= words; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

// Four points per lane group; the tail falls back to the scalar loop.
void objective_avx2(const ObjectiveBatch& b, double* out) {
  const std::size_t P = b.points;
  std::size_t k = 0;
  for (; k + 4 <= P; k += 4) {
    __m256d total = _mm256_setzero_pd();
    for (std::size_t i = 0; i < b.components; ++i) {
      const double* cr = b.coeff_re + i * b.monomials;
      const double* ci = b.coeff_im + i * b.monomials;
      __m256d sr = _mm256_setzero_pd();
      __m256d si = _mm256_setzero_pd();
      for (std::size_t j = 0; j < b.monomials; ++j) {
        const __m256d mr = _mm256_loadu_pd(b.mono_re + j * P + k);
        const __m256d mi = _mm256_loadu_pd(b.mono_im + j * P + k);
        const __m256d r = _mm256_set1_pd(cr[j]);
        const __m256d im = _mm256_set1_pd(ci[j]);
        sr = _mm256_fmadd_pd(r, mr, sr);
        sr = _mm256_fnmadd_pd(im, mi, sr);
        si = _mm256_fmadd_pd(r, mi, si);
        si = _mm256_fmadd_pd(im, mr, si);
      }
      total = _mm256_fmadd_pd(sr, sr, total);
      total = _mm256_fmadd_pd(si, si, total);
    }
    _mm256_storeu_pd(out + k, _mm256_div_pd(total, _mm256_loadu_pd(b.weight + k)));
  }
  if (k < P) {
    for (std::size_t idx = k; idx < P; ++idx) {
      double total = 0.0;
      for (std::size_t i = 0; i < b.components; ++i) {
        const double* cr = b.coeff_re + i * b.monomials;
        const double* ci = b.coeff_im + i * b.monomials;
        double sr = 0.0, si = 0.0;
        for (std::size_t j = 0; j < b.monomials; ++j) {
          const double mr = b.mono_re[j * P + idx];
          const double mi = b.mono_im[j * P + idx];
          sr += cr[j] * mr - ci[j] * mi;
          si += cr[j] * mi + ci[j] * mr;
        }
        total += sr * sr + si * si;
      }
      out[idx] = total / b.weight[idx];
    }
  }
}

}  // namespace ratmaps::simd::detail
