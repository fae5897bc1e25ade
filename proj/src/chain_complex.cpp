#include "ratmaps/chain_complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <gmpxx.h>

#include "ratmaps/gaussian_rational.hpp"
#include "ratmaps/simd/kernels.hpp"

namespace ratmaps {

std::size_t CellComplex::add_cell(int dim, int level, std::vector<std::pair<std::size_t, long>> boundary) {
  if (dim < 0) throw std::invalid_argument("cell dimension must be >= 0");
  if (level < 1) throw std::invalid_argument("filtration levels start at 1");
  std::sort(boundary.begin(), boundary.end());
  std::vector<std::pair<std::size_t, long>> merged;
  for (const auto& [idx, coeff] : boundary) {
    if (idx >= cells_.size()) throw std::invalid_argument("boundary names a cell that does not exist yet");
    const Cell& face = cells_[idx];
    if (face.dim != dim - 1) throw std::invalid_argument("boundary face has the wrong dimension");
    if (face.level > level) {
      throw std::invalid_argument("filtration violation: cell at level " + std::to_string(level) +
                                  " has a face at level " + std::to_string(face.level));
    }
    if (!merged.empty() && merged.back().first == idx) {
      merged.back().second += coeff;
    } else {
      merged.emplace_back(idx, coeff);
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  cells_.push_back({dim, level, std::move(merged)});
  max_dim_ = std::max(max_dim_, dim);
  max_level_ = std::max(max_level_, level);
  return cells_.size() - 1;
}

std::size_t CellComplex::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [&](const Cell& c) { return c.dim == dim; }));
}

bool CellComplex::boundary_squared_zero() const {
  for (const auto& c : cells_) {
    std::map<std::size_t, long> acc;
    for (const auto& [face, coeff] : c.boundary) {
      for (const auto& [ff, cc] : cells_[face].boundary) acc[ff] += coeff * cc;
    }
    for (const auto& [idx, v] : acc) {
      if (v != 0) return false;
    }
  }
  return true;
}

CellComplex CellComplex::truncate(int level) const {
  CellComplex out;
  std::vector<long> remap(cells_.size(), -1);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].level > level) continue;
    auto bd = cells_[i].boundary;
    for (auto& e : bd) e.first = static_cast<std::size_t>(remap[e.first]);
    remap[i] = static_cast<long>(out.add_cell(cells_[i].dim, cells_[i].level, std::move(bd)));
  }
  return out;
}

namespace {

template <class F>
F from_long(long v) {
  return F(v);
}
template <>
mpq_class from_long<mpq_class>(long v) {
  return mpq_class(v);
}

// Column reduction keyed by the largest row index.
template <class F>
std::size_t sparse_rank(std::vector<std::vector<std::pair<std::size_t, F>>> columns) {
  std::unordered_map<std::size_t, std::size_t> pivot_of;
  std::vector<std::vector<std::pair<std::size_t, F>>> reduced;
  for (auto& col : columns) {
    while (!col.empty()) {
      const std::size_t low = col.back().first;
      auto it = pivot_of.find(low);
      if (it == pivot_of.end()) {
        pivot_of.emplace(low, reduced.size());
        reduced.push_back(std::move(col));
        break;
      }
      const auto& other = reduced[it->second];
      const F factor = col.back().second / other.back().second;
      std::vector<std::pair<std::size_t, F>> next;
      next.reserve(col.size() + other.size());
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < other.size()) {
        if (b == other.size() || (a < col.size() && col[a].first < other[b].first)) {
          next.push_back(col[a++]);
        } else if (a == col.size() || other[b].first < col[a].first) {
          next.emplace_back(other[b].first, F(0) - factor * other[b].second);
          ++b;
        } else {
          F v = col[a].second - factor * other[b].second;
          if (!is_zero(v)) next.emplace_back(col[a].first, std::move(v));
          ++a;
          ++b;
        }
      }
      col = std::move(next);
    }
  }
  return reduced.size();
}

// Local index of every cell within its dimension.
std::vector<std::size_t> local_indices(const CellComplex& complex) {
  std::vector<std::size_t> out(complex.size());
  std::vector<std::size_t> next(static_cast<std::size_t>(complex.max_dim() + 1), 0);
  for (std::size_t i = 0; i < complex.size(); ++i) out[i] = next[complex.cell(i).dim]++;
  return out;
}

template <class F>
std::vector<std::size_t> ranks_sparse(const CellComplex& complex) {
  const int top = complex.max_dim();
  auto local = local_indices(complex);
  std::vector<std::vector<std::vector<std::pair<std::size_t, F>>>> cols(static_cast<std::size_t>(top + 1));
  for (const auto& c : complex.cells()) {
    std::vector<std::pair<std::size_t, F>> col;
    for (const auto& [face, coeff] : c.boundary) {
      F v = from_long<F>(coeff);
      if (!is_zero(v)) col.emplace_back(local[face], v);
    }
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    cols[c.dim].push_back(std::move(col));
  }
  std::vector<std::size_t> out(static_cast<std::size_t>(top + 1), 0);
  for (int k = 1; k <= top; ++k) out[k] = sparse_rank<F>(std::move(cols[k]));
  return out;
}

std::vector<std::size_t> ranks_dense_f2(const CellComplex& complex) {
  const int top = complex.max_dim();
  auto local = local_indices(complex);
  const auto& kernels = simd::active_kernels();
  std::vector<std::size_t> out(static_cast<std::size_t>(top + 1), 0);
  for (int k = 1; k <= top; ++k) {
    const std::size_t rows = complex.count(k - 1);
    const std::size_t words = (rows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> pivots(rows);  // indexed by leading bit
    std::size_t rank = 0;
    for (const auto& c : complex.cells()) {
      if (c.dim != k) continue;
      std::vector<std::uint64_t> v(words, 0);
      for (const auto& [face, coeff] : c.boundary) {
        if (coeff % 2 != 0) v[local[face] / 64] ^= 1ULL << (local[face] % 64);
      }
      while (true) {
        std::size_t w = words;
        while (w > 0 && v[w - 1] == 0) --w;
        if (w == 0) break;
        const std::size_t lead = (w - 1) * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(v[w - 1])));
        if (pivots[lead].empty()) {
          pivots[lead] = std::move(v);
          ++rank;
          break;
        }
        kernels.xor_into(v.data(), pivots[lead].data(), words);
      }
    }
    out[k] = rank;
  }
  return out;
}

}  // namespace

std::vector<std::size_t> boundary_ranks(const CellComplex& complex, FieldKind field, RankMethod method) {
  if (complex.max_dim() < 0) return {};
  if (method == RankMethod::DenseF2 && field != FieldKind::F2) {
    throw std::invalid_argument("bit-packed elimination works over F2 only");
  }
  switch (field) {
    case FieldKind::F2:
      return method == RankMethod::Sparse ? ranks_sparse<F2>(complex) : ranks_dense_f2(complex);
    case FieldKind::F3:
      return ranks_sparse<F3>(complex);
    case FieldKind::Rationals:
      return ranks_sparse<mpq_class>(complex);
  }
  return {};
}

std::vector<long> betti_numbers(const CellComplex& complex, FieldKind field, RankMethod method) {
  auto ranks = boundary_ranks(complex, field, method);
  const int top = complex.max_dim();
  std::vector<long> betti(static_cast<std::size_t>(std::max(top, 0) + 1), 0);
  for (int k = 0; k <= top; ++k) {
    long b = static_cast<long>(complex.count(k)) - static_cast<long>(ranks[k]);
    if (k + 1 <= top) b -= static_cast<long>(ranks[k + 1]);
    betti[k] = b;
  }
  return betti;
}

std::vector<long> trim_betti(std::vector<long> betti) {
  while (betti.size() > 1 && betti.back() == 0) betti.pop_back();
  if (betti.empty()) betti.push_back(0);
  return betti;
}

}  // namespace ratmaps
