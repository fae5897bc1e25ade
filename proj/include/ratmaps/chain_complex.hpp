#pragma once

// Finite filtered chain complexes with integer boundary coefficients, and
// their homology over Q, F_2 or F_3.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ratmaps/field.hpp"

namespace ratmaps {

struct Cell {
  int dim = 0;
  int level = 1;
  std::vector<std::pair<std::size_t, long>> boundary;  // (cell index, coefficient)
};

class CellComplex {
 public:
  /// Boundary entries must name earlier cells of dimension dim-1 whose level
  /// does not exceed `level`; violations throw std::invalid_argument.
  /// Repeated indices are merged and zero coefficients dropped.
  std::size_t add_cell(int dim, int level, std::vector<std::pair<std::size_t, long>> boundary);

  std::size_t size() const { return cells_.size(); }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<Cell>& cells() const { return cells_; }
  int max_dim() const { return max_dim_; }
  int max_level() const { return max_level_; }
  std::size_t count(int dim) const;

  /// Exact integer check of d o d = 0.
  bool boundary_squared_zero() const;

  /// Cells with level <= level, boundaries restricted accordingly.
  CellComplex truncate(int level) const;

 private:
  std::vector<Cell> cells_;
  int max_dim_ = -1;
  int max_level_ = 0;
};

enum class RankMethod { Auto, Sparse, DenseF2 };

/// rank of d_k : C_k -> C_{k-1} for k = 0..max_dim (rank of d_0 is 0).
std::vector<std::size_t> boundary_ranks(const CellComplex& complex, FieldKind field,
                                        RankMethod method = RankMethod::Auto);

/// Betti numbers b_0..b_max_dim over the field. Auto uses the bit-packed
/// elimination for F_2 and sparse elimination otherwise.
std::vector<long> betti_numbers(const CellComplex& complex, FieldKind field,
                                RankMethod method = RankMethod::Auto);

/// Trims trailing zeros (keeps at least one entry).
std::vector<long> trim_betti(std::vector<long> betti);

}  // namespace ratmaps
