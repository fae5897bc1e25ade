#pragma once

// Abstract finite simplicial complexes given by their maximal simplices.

#include <map>
#include <vector>

#include "ratmaps/chain_complex.hpp"

namespace ratmaps {

using Simplex = std::vector<int>;  // sorted vertex indices

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Sorts every simplex; throws on out-of-range or repeated vertices.
  SimplicialComplex(int vertices, std::vector<Simplex> maximal);

  int vertices() const { return vertices_; }
  const std::vector<Simplex>& maximal() const { return maximal_; }

  /// Every face, ordered by dimension and then lexicographically.
  const std::vector<Simplex>& simplices() const { return simplices_; }
  /// Index into simplices(), or -1.
  long index_of(const Simplex& s) const;
  int dimension() const;

  /// Simplicial chain complex (all cells at level 1).
  CellComplex chain_complex() const;
  /// Chain complex of (K, L) where L is the subcomplex of simplices with in_sub true.
  template <class Pred>
  CellComplex relative_chain_complex(Pred in_sub) const;

 private:
  int vertices_ = 0;
  std::vector<Simplex> maximal_;
  std::vector<Simplex> simplices_;
  std::map<Simplex, long> index_;
};

/// Faces of s with one vertex removed, face i drops s[i].
std::vector<Simplex> facets(const Simplex& s);

template <class Pred>
CellComplex SimplicialComplex::relative_chain_complex(Pred in_sub) const {
  CellComplex out;
  std::vector<long> cell_of(simplices_.size(), -1);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const Simplex& s = simplices_[i];
    if (in_sub(s)) continue;
    std::vector<std::pair<std::size_t, long>> bd;
    if (s.size() > 1) {
      auto fs = facets(s);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        long c = cell_of[index_.at(fs[k])];
        if (c >= 0) bd.emplace_back(static_cast<std::size_t>(c), (k % 2 == 0) ? 1 : -1);
      }
    }
    cell_of[i] = static_cast<long>(out.add_cell(static_cast<int>(s.size()) - 1, 1, std::move(bd)));
  }
  return out;
}

}  // namespace ratmaps
