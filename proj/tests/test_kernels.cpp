#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ratmaps/simd/kernels.hpp"

using namespace ratmaps::simd;

TEST_CASE("dispatch picks a table") {
  const auto& active = active_kernels();
  CHECK(active.xor_into != nullptr);
  CHECK(active.objective != nullptr);
  if (avx2_kernels() == nullptr) MESSAGE("AVX2 variant unavailable; equivalence checks exercise scalar only");
}

TEST_CASE("xor kernels agree bit for bit") {
  std::mt19937_64 rng(3);
  const KernelTable* avx = avx2_kernels();
  for (std::size_t words : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 64u, 129u}) {
    std::vector<std::uint64_t> a(words), b(words);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    auto ref = a;
    scalar_kernels().xor_into(ref.data(), b.data(), words);
    for (std::size_t i = 0; i < words; ++i) CHECK(ref[i] == (a[i] ^ b[i]));
    if (avx != nullptr) {
      auto got = a;
      avx->xor_into(got.data(), b.data(), words);
      CHECK(got == ref);
    }
  }
}

TEST_CASE("objective kernels agree to 1e-12 relative") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const KernelTable* avx = avx2_kernels();
  for (std::size_t points : {1u, 3u, 4u, 5u, 17u, 64u}) {
    for (std::size_t comps : {1u, 3u}) {
      const std::size_t monos = 6;
      std::vector<double> cr(comps * monos), ci(comps * monos), mr(monos * points), mi(monos * points), w(points);
      for (auto* v : {&cr, &ci, &mr, &mi}) for (auto& x : *v) x = g(rng);
      for (auto& x : w) x = 0.5 + std::abs(g(rng));
      ObjectiveBatch b{comps, monos, points, cr.data(), ci.data(), mr.data(), mi.data(), w.data()};
      std::vector<double> ref(points), got(points);
      scalar_kernels().objective(b, ref.data());
      // Direct complex arithmetic as the oracle.
      for (std::size_t k = 0; k < points; ++k) {
        double total = 0;
        for (std::size_t i = 0; i < comps; ++i) {
          std::complex<double> s = 0;
          for (std::size_t j = 0; j < monos; ++j) {
            s += std::complex<double>(cr[i * monos + j], ci[i * monos + j]) *
                 std::complex<double>(mr[j * points + k], mi[j * points + k]);
          }
          total += std::norm(s);
        }
        CHECK(ref[k] == doctest::Approx(total / w[k]).epsilon(1e-12));
      }
      if (avx != nullptr) {
        avx->objective(b, got.data());
        for (std::size_t k = 0; k < points; ++k) CHECK(got[k] == doctest::Approx(ref[k]).epsilon(1e-12));
      }
    }
  }
}
