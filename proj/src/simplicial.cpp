#include "ratmaps/simplicial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace ratmaps {

std::vector<Simplex> facets(const Simplex& s) {
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != i) f.push_back(s[j]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

SimplicialComplex::SimplicialComplex(int vertices, std::vector<Simplex> maximal)
    : vertices_(vertices), maximal_(std::move(maximal)) {
  if (vertices < 0) throw std::invalid_argument("vertex count must be >= 0");
  std::set<Simplex> all;
  for (auto& s : maximal_) {
    if (s.empty()) throw std::invalid_argument("empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("simplex repeats a vertex");
    if (s.front() < 0 || s.back() >= vertices) {
      throw std::invalid_argument("simplex vertex out of range [0, " + std::to_string(vertices) + ")");
    }
    if (s.size() > 20) throw std::invalid_argument("simplices above dimension 19 are not supported");
    const std::uint32_t n = static_cast<std::uint32_t>(s.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (std::uint32_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) f.push_back(s[k]);
      }
      all.insert(std::move(f));
    }
  }
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i], static_cast<long>(i));
}

long SimplicialComplex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int SimplicialComplex::dimension() const {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

CellComplex SimplicialComplex::chain_complex() const {
  return relative_chain_complex([](const Simplex&) { return false; });
}

}  // namespace ratmaps
