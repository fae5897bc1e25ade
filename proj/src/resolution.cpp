#include "ratmaps/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "ratmaps/exact_linalg.hpp"
#include "ratmaps/polynomial.hpp"
#include "ratmaps/trials.hpp"

namespace ratmaps {

namespace {

Simplex image_of(const Simplex& s, const std::vector<int>& vertex_map) {
  Simplex out;
  for (int v : s) out.push_back(vertex_map[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string simplex_text(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

int permutation_sign(const std::vector<std::size_t>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<mpq_class> barycenter(const Simplex& s, const EmbeddingData& e) {
  std::vector<mpq_class> out(static_cast<std::size_t>(e.dimension), mpq_class(0));
  for (int v : s) {
    for (int t = 0; t < e.dimension; ++t) out[t] += e.coords[v][t];
  }
  for (auto& x : out) x /= static_cast<long>(s.size());
  return out;
}

}  // namespace

void SimplicialSurjection::validate() const {
  if (static_cast<int>(vertex_map.size()) != source.vertices()) {
    throw std::invalid_argument("vertex_map has " + std::to_string(vertex_map.size()) + " entries for " +
                                std::to_string(source.vertices()) + " source vertices");
  }
  for (int v : vertex_map) {
    if (v < 0 || v >= target.vertices()) throw std::invalid_argument("vertex_map entry out of range");
  }
  std::set<Simplex> covered;
  for (const auto& s : source.maximal()) {
    Simplex img = image_of(s, vertex_map);
    if (target.index_of(img) < 0) {
      throw std::invalid_argument("source simplex " + simplex_text(s) + " maps to " + simplex_text(img) +
                                  ", which is not a target simplex");
    }
    if (img.size() < s.size()) {
      throw NonFiniteMap("source simplex " + simplex_text(s) + " collapses onto " + simplex_text(img) +
                         "; positive-dimensional fibers are not supported");
    }
    covered.insert(img);
  }
  for (const auto& t : target.maximal()) {
    if (!covered.count(t)) {
      throw std::invalid_argument("map is not surjective: target simplex " + simplex_text(t) + " has no preimage");
    }
  }
}

std::vector<std::size_t> SimplicialSurjection::simplex_images() const {
  std::vector<std::size_t> out;
  for (const auto& s : source.simplices()) out.push_back(static_cast<std::size_t>(target.index_of(image_of(s, vertex_map))));
  return out;
}

EmbeddingData embedding_from_parameters(int k, std::vector<mpq_class> parameters) {
  if (k < 1) throw std::invalid_argument("embedding needs k >= 1");
  EmbeddingData e;
  e.k = k;
  e.dimension = 2 * k - 1;
  e.parameters = std::move(parameters);
  for (const auto& t : e.parameters) {
    std::vector<mpq_class> c;
    mpq_class power = t;
    for (int d = 0; d < e.dimension; ++d) {
      c.push_back(power);
      power *= t;
    }
    e.coords.push_back(std::move(c));
  }
  return e;
}

GeneralPositionReport certify_general_position(const EmbeddingData& e, std::uint64_t seed, std::size_t sample_limit) {
  GeneralPositionReport rep;
  const std::size_t n = e.coords.size();
  const std::size_t size = std::min<std::size_t>(2 * static_cast<std::size_t>(e.k), n);
  if (size <= 1) {
    rep.ok = true;
    rep.exhaustive = true;
    return rep;
  }
  auto independent = [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<mpq_class>> pts;
    for (auto i : pick) pts.push_back(e.coords[i]);
    return affine_rank(pts) == pick.size() - 1;
  };
  // Number of subsets, saturating above the limit.
  std::size_t total = 1;
  for (std::size_t i = 0; i < size && total <= sample_limit; ++i) total = total * (n - i) / (i + 1);
  rep.ok = true;
  if (total <= sample_limit) {
    rep.exhaustive = true;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) pick.push_back(i);
      }
      ++rep.subsets_checked;
      if (!independent(pick)) {
        rep.ok = false;
        return rep;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t s = 0; s < sample_limit; ++s) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> pick(all.begin(), all.begin() + static_cast<long>(size));
    ++rep.subsets_checked;
    if (!independent(pick)) {
      rep.ok = false;
      return rep;
    }
  }
  return rep;
}

EmbeddingData moment_embedding(int vertices, int k, std::uint64_t seed, int max_retries) {
  if (k < 1) throw std::invalid_argument("moment_embedding needs k >= 1");
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<mpq_class> params;
    for (int v = 0; v < vertices; ++v) params.push_back(random_rational(rng, 1L << 12));
    auto e = embedding_from_parameters(k, std::move(params));
    if (certify_general_position(e, seed).ok) return e;
  }
  throw DegenerateEmbedding("moment embedding failed certification after " + std::to_string(max_retries) +
                            " attempts");
}

ResolutionData build_resolution(const SimplicialSurjection& map, ResolutionMode mode, int depth,
                                const EmbeddingData* embedding) {
  map.validate();
  ResolutionData res;
  res.map = map;
  res.mode = mode;
  const auto& src = map.source.simplices();
  const auto& tgt = map.target.simplices();
  const auto images = map.simplex_images();

  res.fibers.assign(tgt.size(), {});
  for (std::size_t s = 0; s < src.size(); ++s) res.fibers[images[s]].push_back(s);
  for (const auto& f : res.fibers) res.max_fiber = std::max(res.max_fiber, static_cast<int>(f.size()));
  if (res.max_fiber > 20) throw std::invalid_argument("fibers above 20 points are not supported");
  res.depth = depth <= 0 ? res.max_fiber : std::min(depth, res.max_fiber);

  if (mode == ResolutionMode::Embedded) {
    res.embedding = embedding ? *embedding : moment_embedding(map.source.vertices(), std::max(res.depth, 1), kDefaultSeed);
    const EmbeddingData& e = *res.embedding;
    if (static_cast<int>(e.coords.size()) != map.source.vertices()) {
      throw std::invalid_argument("embedding does not cover the source vertices");
    }
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      auto& fiber = res.fibers[t];
      std::vector<std::vector<mpq_class>> centers;
      for (auto s : fiber) centers.push_back(barycenter(src[s], e));
      // Any `depth` fiber points must be affinely independent; checking the
      // largest subsets suffices.
      const std::size_t size = std::min<std::size_t>(fiber.size(), static_cast<std::size_t>(res.depth));
      if (size >= 2) {
        std::vector<bool> mask(fiber.size(), false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
        do {
          std::vector<std::vector<mpq_class>> pts;
          for (std::size_t i = 0; i < fiber.size(); ++i) {
            if (mask[i]) pts.push_back(centers[i]);
          }
          if (affine_rank(pts) != size - 1) {
            throw DegenerateEmbedding("fiber over target simplex " + simplex_text(tgt[t]) +
                                      " is affinely dependent in the embedding");
          }
        } while (std::prev_permutation(mask.begin(), mask.end()));
      }
      std::vector<std::size_t> order(fiber.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return centers[a] < centers[b]; });
      std::vector<std::size_t> sorted;
      for (auto i : order) sorted.push_back(fiber[i]);
      fiber = std::move(sorted);
    }
  }

  std::vector<std::size_t> position(src.size());
  for (const auto& fiber : res.fibers) {
    for (std::size_t i = 0; i < fiber.size(); ++i) position[fiber[i]] = i;
  }

  // cell_index[t][mask] over subsets of the fiber of t.
  std::vector<std::map<std::uint32_t, std::size_t>> cell_index(tgt.size());
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    const auto& tau = tgt[t];
    const int dim_tau = static_cast<int>(tau.size()) - 1;
    const auto& fiber = res.fibers[t];
    const std::uint32_t f = static_cast<std::uint32_t>(fiber.size());
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask < (1u << f); ++mask) {
      if (__builtin_popcount(mask) <= res.depth) masks.push_back(mask);
    }
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    for (std::uint32_t mask : masks) {
      std::vector<std::size_t> sheets;
      for (std::uint32_t i = 0; i < f; ++i) {
        if (mask & (1u << i)) sheets.push_back(fiber[i]);
      }
      std::vector<std::pair<std::size_t, long>> bd;
      // Faces of tau: restrict each sheet.
      if (dim_tau >= 1) {
        for (int i = 0; i <= dim_tau; ++i) {
          Simplex face = tau;
          face.erase(face.begin() + i);
          const auto face_idx = static_cast<std::size_t>(map.target.index_of(face));
          std::vector<std::size_t> restricted_pos;
          std::uint32_t face_mask = 0;
          bool collapsed = false;
          for (auto s : sheets) {
            Simplex r;
            for (int v : src[s]) {
              if (map.vertex_map[v] != tau[i]) r.push_back(v);
            }
            const auto ridx = static_cast<std::size_t>(map.source.index_of(r));
            const std::size_t pos = position[ridx];
            if (face_mask & (1u << pos)) collapsed = true;
            face_mask |= 1u << pos;
            restricted_pos.push_back(pos);
          }
          if (collapsed) continue;
          const long sign = (i % 2 == 0 ? 1 : -1) * permutation_sign(restricted_pos);
          bd.emplace_back(cell_index[face_idx].at(face_mask), sign);
        }
      }
      // Faces of Delta^S.
      if (sheets.size() >= 2) {
        const long base = dim_tau % 2 == 0 ? 1 : -1;
        int j = 0;
        for (std::uint32_t i = 0; i < f; ++i) {
          if (!(mask & (1u << i))) continue;
          bd.emplace_back(cell_index[t].at(mask & ~(1u << i)), base * (j % 2 == 0 ? 1 : -1));
          ++j;
        }
      }
      const int level = static_cast<int>(sheets.size());
      const std::size_t idx = res.complex.add_cell(dim_tau + level - 1, level, std::move(bd));
      cell_index[t].emplace(mask, idx);
      res.cells.push_back({t, std::move(sheets)});
    }
  }
  return res;
}

bool check_fibers(const ResolutionData& res) {
  std::vector<std::map<int, std::size_t>> per_level(res.fibers.size());
  for (std::size_t c = 0; c < res.cells.size(); ++c) {
    const auto& cell = res.cells[c];
    if (res.complex.cell(c).level != static_cast<int>(cell.sheets.size())) return false;
    per_level[cell.target_simplex][static_cast<int>(cell.sheets.size())] += 1;
  }
  for (std::size_t t = 0; t < res.fibers.size(); ++t) {
    const std::size_t f = res.fibers[t].size();
    if (f == 0) return false;
    for (int l = 1; l <= static_cast<int>(f) && l <= res.depth; ++l) {
      if (per_level[t][l] != binomial(f, static_cast<std::uint64_t>(l))) return false;
    }
  }
  auto x1 = res.complex.truncate(1);
  auto source = res.map.source.chain_complex();
  for (int d = 0; d <= source.max_dim(); ++d) {
    if (x1.count(d) != source.count(d)) return false;
  }
  return trim_betti(betti_numbers(x1, FieldKind::Rationals)) ==
         trim_betti(betti_numbers(source, FieldKind::Rationals));
}

bool check_resolution_equivalence(const ResolutionData& res, FieldKind field) {
  return trim_betti(betti_numbers(res.complex, field)) ==
         trim_betti(betti_numbers(res.map.target.chain_complex(), field));
}

LevelTable level_homology(const ResolutionData& res, FieldKind field) {
  LevelTable table;
  const std::size_t width = static_cast<std::size_t>(std::max(res.complex.max_dim(), 0) + 1);
  for (int l = 1; l <= res.depth; ++l) {
    auto b = betti_numbers(res.complex.truncate(l), field);
    b.resize(width, 0);
    table.push_back(std::move(b));
  }
  return table;
}

bool compare_embeddings(const SimplicialSurjection& map, std::uint64_t seed_a, std::uint64_t seed_b, FieldKind field,
                        int depth) {
  map.validate();
  const auto plain = build_resolution(map, ResolutionMode::Nondegenerate, depth);
  const int k = std::max(plain.depth, 1);
  auto ea = moment_embedding(map.source.vertices(), k, seed_a);
  auto eb = moment_embedding(map.source.vertices(), k, seed_b);
  auto ra = build_resolution(map, ResolutionMode::Embedded, depth, &ea);
  auto rb = build_resolution(map, ResolutionMode::Embedded, depth, &eb);
  return level_homology(ra, field) == level_homology(rb, field);
}

FunctorialityReport check_functoriality(const SimplicialSurjection& h, const SimplicialSurjection& h_prime,
                                        const std::vector<int>& f) {
  h.validate();
  h_prime.validate();
  if (static_cast<int>(f.size()) != h.source.vertices()) throw std::invalid_argument("f has the wrong length");
  for (int v = 0; v < h.source.vertices(); ++v) {
    if (f[v] < 0 || f[v] >= h_prime.source.vertices() || h_prime.vertex_map[f[v]] != h.vertex_map[v]) {
      throw std::invalid_argument("square does not commute at vertex " + std::to_string(v));
    }
  }
  auto rx = build_resolution(h, ResolutionMode::Nondegenerate);
  auto ry = build_resolution(h_prime, ResolutionMode::Nondegenerate);
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> lookup;
  for (std::size_t c = 0; c < ry.cells.size(); ++c) {
    auto key = ry.cells[c].sheets;
    std::sort(key.begin(), key.end());
    lookup.emplace(std::make_pair(ry.cells[c].target_simplex, key), c);
  }
  const auto images_prime = h_prime.simplex_images();
  FunctorialityReport rep;
  for (std::size_t c = 0; c < rx.cells.size(); ++c) {
    const auto& cell = rx.cells[c];
    std::set<std::size_t> image;
    for (auto s : cell.sheets) {
      Simplex img;
      for (int v : h.source.simplices()[s]) img.push_back(f[v]);
      std::sort(img.begin(), img.end());
      const long idx = h_prime.source.index_of(img);
      if (idx < 0 || images_prime[static_cast<std::size_t>(idx)] != cell.target_simplex) {
        rep.well_defined = false;
        continue;
      }
      image.insert(static_cast<std::size_t>(idx));
    }
    auto it = lookup.find({cell.target_simplex, std::vector<std::size_t>(image.begin(), image.end())});
    if (it == lookup.end()) {
      rep.well_defined = false;
    } else if (ry.complex.cell(it->second).level > rx.complex.cell(c).level) {
      rep.preserves_levels = false;
    }
    ++rep.cells_checked;
  }
  return rep;
}

namespace {

// Drops unused source vertices and renumbers.
SimplicialSurjection compact(int source_vertices, const std::vector<Simplex>& lifts, const std::vector<int>& vmap,
                             const SimplicialComplex& target) {
  std::vector<int> used(source_vertices, -1);
  int next = 0;
  std::vector<Simplex> renamed;
  for (const auto& s : lifts) {
    Simplex r;
    for (int v : s) {
      if (used[v] < 0) used[v] = next++;
      r.push_back(used[v]);
    }
    renamed.push_back(std::move(r));
  }
  std::vector<int> new_map(next);
  for (int v = 0; v < source_vertices; ++v) {
    if (used[v] >= 0) new_map[used[v]] = vmap[v];
  }
  return {SimplicialComplex(next, renamed), target, new_map};
}

}  // namespace

SimplicialSurjection random_surjection(std::mt19937_64& rng, const CorpusOptions& opt) {
  while (true) {
    const int ny = opt.min_target_vertices +
                   static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_target_vertices - opt.min_target_vertices + 1));
    std::set<Simplex> maximal;
    const int triangles = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < triangles; ++t) {
      std::set<int> s;
      while (s.size() < 3) s.insert(static_cast<int>(rng() % ny));
      maximal.emplace(s.begin(), s.end());
    }
    const int edges = static_cast<int>(rng() % 4);
    for (int e = 0; e < edges; ++e) {
      std::set<int> s;
      while (s.size() < 2) s.insert(static_cast<int>(rng() % ny));
      maximal.emplace(s.begin(), s.end());
    }
    std::set<int> seen;
    for (const auto& s : maximal) seen.insert(s.begin(), s.end());
    for (int v = 0; v < ny; ++v) {
      if (!seen.count(v)) maximal.insert({v});
    }
    // Remove simplices that are faces of others so the list is maximal.
    std::vector<Simplex> max_list;
    for (const auto& s : maximal) {
      bool face = false;
      for (const auto& o : maximal) {
        if (o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end())) face = true;
      }
      if (!face) max_list.push_back(s);
    }
    SimplicialComplex target(ny, max_list);

    std::vector<int> sheets(ny);
    std::vector<int> first(ny);
    int nx = 0;
    for (int v = 0; v < ny; ++v) {
      sheets[v] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_sheets));
      first[v] = nx;
      nx += sheets[v];
    }
    std::vector<int> vmap(nx);
    for (int v = 0; v < ny; ++v) {
      for (int s = 0; s < sheets[v]; ++s) vmap[first[v] + s] = v;
    }
    std::set<Simplex> lifts;
    for (const auto& s : max_list) {
      const int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_lifts));
      for (int c = 0; c < count; ++c) {
        Simplex lift;
        for (int v : s) lift.push_back(first[v] + static_cast<int>(rng() % static_cast<std::uint64_t>(sheets[v])));
        std::sort(lift.begin(), lift.end());
        lifts.insert(lift);
      }
    }
    auto map = compact(nx, std::vector<Simplex>(lifts.begin(), lifts.end()), vmap, target);
    if (map.source.simplices().size() > opt.max_simplices) continue;
    try {
      build_resolution(map, ResolutionMode::Embedded);
    } catch (const DegenerateEmbedding&) {
      continue;
    }
    return map;
  }
}

std::pair<SimplicialSurjection, std::vector<int>> merge_sheets(const SimplicialSurjection& h, std::mt19937_64& rng) {
  const int nx = h.source.vertices();
  // Representative: each vertex either keeps itself or joins the first vertex over the same target vertex.
  std::map<int, int> first_over;
  std::vector<int> rep(nx);
  for (int v = 0; v < nx; ++v) {
    auto it = first_over.find(h.vertex_map[v]);
    if (it == first_over.end()) {
      first_over.emplace(h.vertex_map[v], v);
      rep[v] = v;
    } else {
      rep[v] = (rng() % 2 == 0) ? it->second : v;
    }
  }
  std::map<int, int> new_index;
  for (int v = 0; v < nx; ++v) {
    if (!new_index.count(rep[v])) new_index.emplace(rep[v], static_cast<int>(new_index.size()));
  }
  std::vector<int> f(nx);
  for (int v = 0; v < nx; ++v) f[v] = new_index.at(rep[v]);
  std::vector<int> vmap(new_index.size());
  for (int v = 0; v < nx; ++v) vmap[f[v]] = h.vertex_map[v];
  std::vector<Simplex> images;
  for (const auto& s : h.source.maximal()) {
    Simplex img;
    for (int v : s) img.push_back(f[v]);
    std::sort(img.begin(), img.end());
    images.push_back(std::move(img));
  }
  SimplicialSurjection out{SimplicialComplex(static_cast<int>(new_index.size()), images), h.target, vmap};
  return {out, f};
}

SimplicialSurjection two_points_over_point() {
  return {SimplicialComplex(2, {{0}, {1}}), SimplicialComplex(1, {{0}}), {0, 0}};
}

SimplicialSurjection hexagon_over_triangle() {
  std::vector<Simplex> edges;
  for (int i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6});
  return {SimplicialComplex(6, edges), SimplicialComplex(3, {{0, 1}, {1, 2}, {0, 2}}), {0, 1, 2, 0, 1, 2}};
}

SimplicialSurjection identity_map(const SimplicialComplex& k) {
  std::vector<int> id(k.vertices());
  std::iota(id.begin(), id.end(), 0);
  return {k, k, id};
}

}  // namespace ratmaps
