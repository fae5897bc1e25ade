#include "ratmaps/spectral_sequence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <gmpxx.h>

#include "ratmaps/gaussian_rational.hpp"

namespace ratmaps {

namespace {

template <class F>
F coerce(long v) {
  return F(v);
}
template <>
mpq_class coerce<mpq_class>(long v) {
  return mpq_class(v);
}

// Standard persistence reduction; columns hold (position, value) sorted by position.
template <class F>
void reduce(const CellComplex& complex, const std::vector<std::size_t>& order, std::vector<PersistencePair>& pairs,
            std::vector<std::size_t>& essential) {
  const std::size_t n = order.size();
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;
  std::vector<std::vector<std::pair<std::size_t, F>>> reduced(n);
  std::unordered_map<std::size_t, std::size_t> low_owner;  // low position -> column position
  std::vector<bool> is_birth_or_death(n, false);

  for (std::size_t k = 0; k < n; ++k) {
    const Cell& c = complex.cell(order[k]);
    std::vector<std::pair<std::size_t, F>> col;
    for (const auto& [face, coeff] : c.boundary) {
      F v = coerce<F>(coeff);
      if (!is_zero(v)) col.emplace_back(position[face], v);
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    while (!col.empty()) {
      auto it = low_owner.find(col.back().first);
      if (it == low_owner.end()) break;
      const auto& other = reduced[it->second];
      const F factor = col.back().second / other.back().second;
      std::vector<std::pair<std::size_t, F>> next;
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
    if (!col.empty()) {
      const std::size_t low = col.back().first;
      low_owner.emplace(low, k);
      is_birth_or_death[low] = is_birth_or_death[k] = true;
      const std::size_t birth = order[low], death = order[k];
      pairs.push_back({birth, death, complex.cell(death).level - complex.cell(birth).level});
    }
    reduced[k] = std::move(col);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_birth_or_death[k]) essential.push_back(order[k]);
  }
}

}  // namespace

const PageTable& SpectralPages::page(int r) const {
  if (r < 1) throw std::out_of_range("pages start at r = 1");
  if (static_cast<std::size_t>(r) > pages.size()) return infinity;
  return pages[r - 1];
}

long SpectralPages::rank(int r, int p, int n) const {
  const auto& t = page(r);
  auto it = t.find({p, n});
  return it == t.end() ? 0 : it->second;
}

std::vector<long> total_ranks(const PageTable& page, int max_dim) {
  std::vector<long> out(static_cast<std::size_t>(std::max(max_dim, 0) + 1), 0);
  for (const auto& [key, v] : page) {
    if (key.second >= 0 && key.second <= max_dim) out[key.second] += v;
  }
  return out;
}

SpectralPages spectral_sequence(const CellComplex& complex, FieldKind field) {
  SpectralPages out;
  out.field = field;
  std::vector<std::size_t> order(complex.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Cell& x = complex.cell(a);
    const Cell& y = complex.cell(b);
    if (x.level != y.level) return x.level < y.level;
    return x.dim < y.dim;
  });
  switch (field) {
    case FieldKind::Rationals: reduce<mpq_class>(complex, order, out.pairs, out.essential); break;
    case FieldKind::F2: reduce<F2>(complex, order, out.pairs, out.essential); break;
    case FieldKind::F3: reduce<F3>(complex, order, out.pairs, out.essential); break;
  }

  int max_gap = 0;
  for (const auto& pr : out.pairs) max_gap = std::max(max_gap, pr.gap);
  const int last_page = std::max(1, max_gap);
  for (int r = 1; r <= last_page + 1; ++r) {
    PageTable page, diff;
    for (std::size_t idx : out.essential) {
      const Cell& c = complex.cell(idx);
      page[{c.level, c.dim}] += 1;
    }
    for (const auto& pr : out.pairs) {
      if (pr.gap < r) continue;
      const Cell& b = complex.cell(pr.birth);
      const Cell& d = complex.cell(pr.death);
      page[{b.level, b.dim}] += 1;
      page[{d.level, d.dim}] += 1;
      if (pr.gap == r) diff[{d.level, d.dim}] += 1;
    }
    if (r <= last_page) {
      out.pages.push_back(std::move(page));
      out.differential_ranks.push_back(std::move(diff));
    } else {
      out.infinity = std::move(page);
    }
  }

  out.pages_are_homology = true;
  for (std::size_t r = 0; r < out.pages.size(); ++r) {
    const PageTable& now = out.pages[r];
    const PageTable& next = r + 1 < out.pages.size() ? out.pages[r + 1] : out.infinity;
    const PageTable& d = out.differential_ranks[r];
    const int step = static_cast<int>(r) + 1;
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : now) keys.insert(k);
    for (const auto& [k, v] : next) keys.insert(k);
    auto get = [](const PageTable& t, std::pair<int, int> k) {
      auto it = t.find(k);
      return it == t.end() ? 0L : it->second;
    };
    for (const auto& k : keys) {
      const long outgoing = get(d, k);
      const long incoming = get(d, {k.first + step, k.second + 1});
      if (get(next, k) != get(now, k) - outgoing - incoming || get(now, k) - outgoing - incoming < 0) {
        out.pages_are_homology = false;
      }
    }
  }

  out.betti = betti_numbers(complex, field);
  auto sums = total_ranks(out.infinity, complex.max_dim());
  out.converges = sums.size() == out.betti.size() && std::equal(sums.begin(), sums.end(), out.betti.begin());
  return out;
}

}  // namespace ratmaps
