#pragma once

// Spectral sequence of a filtered chain complex, read off from a persistence
// reduction of the boundary matrix in (level, dimension, index) order.
//
// Entries are keyed by (filtration level p, total degree n); the
// complementary degree is n - p. E^1_{p,n} = H_n(F_p / F_{p-1}) and
// d^r : E^r_{p,n} -> E^r_{p-r,n-1}.

#include <map>
#include <utility>
#include <vector>

#include "ratmaps/chain_complex.hpp"

namespace ratmaps {

using PageTable = std::map<std::pair<int, int>, long>;

struct PersistencePair {
  std::size_t birth = 0;  // cell index
  std::size_t death = 0;  // cell index
  int gap = 0;            // level(death) - level(birth)
};

struct SpectralPages {
  FieldKind field = FieldKind::Rationals;
  std::vector<PageTable> pages;               // pages[r-1] = E^r, r >= 1
  std::vector<PageTable> differential_ranks;  // [r-1]: rank of d^r leaving (p, n)
  PageTable infinity;
  std::vector<long> betti;                    // computed by the rank route
  std::vector<PersistencePair> pairs;
  std::vector<std::size_t> essential;         // unpaired cells
  bool pages_are_homology = false;  // rank E^{r+1} = rank E^r - rank d^r in - rank d^r out
  bool converges = false;           // sum_p E^inf_{p,n} = betti_n

  /// Page r (1-based); pages past the last stored one equal E^infinity.
  const PageTable& page(int r) const;
  long rank(int r, int p, int n) const;
};

SpectralPages spectral_sequence(const CellComplex& complex, FieldKind field);

/// Sum over p of a page, per total degree.
std::vector<long> total_ranks(const PageTable& page, int max_dim);

}  // namespace ratmaps
