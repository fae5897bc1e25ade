#include "ratmaps/fox_neuwirth.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ratmaps/polynomial.hpp"

namespace ratmaps {

long gaussian_binomial_minus_one(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k % 2 == 1 && (n - k) % 2 == 1) return 0;
  return static_cast<long>(binomial(static_cast<std::uint64_t>(n / 2), static_cast<std::uint64_t>(k / 2)));
}

namespace {

void compositions(int r, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (r == 0) {
    out.push_back(prefix);
    return;
  }
  for (int a = 1; a <= r; ++a) {
    prefix.push_back(a);
    compositions(r - a, prefix, out);
    prefix.pop_back();
  }
}

std::map<int, long> nonzero(const std::vector<long>& betti) {
  std::map<int, long> out;
  for (std::size_t d = 0; d < betti.size(); ++d) {
    if (betti[d] != 0) out[static_cast<int>(d)] = betti[d];
  }
  return out;
}

}  // namespace

CellComplex fox_neuwirth_complex(int r) {
  if (r < 1) throw std::out_of_range("configuration spaces need r >= 1");
  std::vector<std::vector<int>> all;
  std::vector<int> prefix;
  compositions(r, prefix, all);
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::map<std::vector<int>, std::size_t> index;
  CellComplex out;
  for (const auto& a : all) {
    std::vector<std::pair<std::size_t, long>> bd;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      std::vector<int> merged(a.begin(), a.begin() + static_cast<long>(i));
      merged.push_back(a[i] + a[i + 1]);
      merged.insert(merged.end(), a.begin() + static_cast<long>(i) + 2, a.end());
      const long sign = (i + 1) % 2 == 0 ? 1 : -1;
      const long coeff = sign * gaussian_binomial_minus_one(a[i] + a[i + 1], a[i]);
      if (coeff != 0) bd.emplace_back(index.at(merged), coeff);
    }
    index.emplace(a, out.add_cell(r + static_cast<int>(a.size()), 1, std::move(bd)));
  }
  return out;
}

std::map<int, long> fox_neuwirth_betti(int r, FieldKind field, int bound) {
  if (r < 1 || r > bound) {
    throw std::out_of_range("fox_neuwirth_betti supports 1 <= r <= " + std::to_string(bound) + " (got " +
                            std::to_string(r) + ")");
  }
  return nonzero(betti_numbers(fox_neuwirth_complex(r), field));
}

BettiTable fox_neuwirth_table(int rmax, FieldKind field, int bound) {
  BettiTable table(1, field);
  for (int r = 1; r <= rmax; ++r) {
    auto ranks = fox_neuwirth_betti(r, field, bound);
    for (int d = 0; d <= 2 * r; ++d) {
      auto it = ranks.find(d);
      table.set(r, d, it == ranks.end() ? 0 : it->second);
    }
  }
  return table;
}

namespace {

constexpr int kGrid = 3;    // vertices per cube axis
constexpr int kPeriod = 3;  // vertices around the circle

int vertex_id(const std::array<int, 4>& v) { return ((v[0] * kGrid + v[1]) * kGrid + v[2]) * kPeriod + v[3]; }

std::array<int, 4> vertex_coords(int id) {
  std::array<int, 4> v{};
  v[3] = id % kPeriod;
  id /= kPeriod;
  v[2] = id % kGrid;
  id /= kGrid;
  v[1] = id % kGrid;
  v[0] = id / kGrid;
  return v;
}

}  // namespace

SimplicialComplex c2_model() {
  std::vector<Simplex> top;
  std::array<int, 4> perm{0, 1, 2, 3};
  for (int i = 0; i + 1 < kGrid; ++i) {
    for (int j = 0; j + 1 < kGrid; ++j) {
      for (int k = 0; k + 1 < kGrid; ++k) {
        for (int l = 0; l < kPeriod; ++l) {
          std::sort(perm.begin(), perm.end());
          do {
            std::array<int, 4> v{i, j, k, l};
            Simplex s{vertex_id(v)};
            for (int axis : perm) {
              ++v[axis];
              v[3] %= kPeriod;
              s.push_back(vertex_id(v));
            }
            top.push_back(std::move(s));
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
      }
    }
  }
  return SimplicialComplex(kGrid * kGrid * kGrid * kPeriod, top);
}

CellComplex c2_model_relative() {
  return c2_model().relative_chain_complex([](const Simplex& s) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int wall : {0, kGrid - 1}) {
        bool all = true;
        for (int v : s) all = all && vertex_coords(v)[axis] == wall;
        if (all) return true;
      }
    }
    return false;
  });
}

std::map<int, long> c2_model_betti(FieldKind field) { return nonzero(betti_numbers(c2_model_relative(), field)); }

}  // namespace ratmaps
