#pragma once

// Simplicial resolutions of finite-to-one simplicial surjections h: X -> Y.
//
// Over the interior of a target simplex tau the fiber of h is the finite set
// Pre(tau) of source simplices mapped isomorphically onto tau. The resolution
// replaces each fiber by the simplex spanned by its points, so X^Delta is the
// CW complex with one cell tau x Delta^S for every nonempty S in Pre(tau).
// The cell has dimension dim(tau) + |S| - 1 and filtration level |S|; X_k is
// the union of the cells with |S| <= k.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "ratmaps/chain_complex.hpp"
#include "ratmaps/simplicial.hpp"

namespace ratmaps {

/// A simplex of X collapses under h, so some fiber is positive-dimensional.
class NonFiniteMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Embedded fibers are not affinely independent.
class DegenerateEmbedding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimplicialSurjection {
  SimplicialComplex source;
  SimplicialComplex target;
  std::vector<int> vertex_map;

  /// Throws std::invalid_argument unless the vertex map is simplicial and
  /// onto every target simplex; throws NonFiniteMap if a simplex collapses.
  void validate() const;
  /// Target simplex index of every source simplex.
  std::vector<std::size_t> simplex_images() const;
};

/// Vertex coordinates on the moment curve t -> (t, t^2, ..., t^(2k-1)).
struct EmbeddingData {
  int k = 1;
  int dimension = 1;
  std::vector<mpq_class> parameters;
  std::vector<std::vector<mpq_class>> coords;
};

struct GeneralPositionReport {
  bool ok = false;
  std::size_t subsets_checked = 0;
  bool exhaustive = false;
};

/// Checks that every set of min(2k, #vertices) images of distinct vertices is
/// affinely independent; exhaustive when the number of subsets is at most
/// sample_limit, otherwise sample_limit random subsets.
GeneralPositionReport certify_general_position(const EmbeddingData& embedding, std::uint64_t seed,
                                               std::size_t sample_limit = 4096);

/// Seeded distinct rational parameters; resamples on certification failure
/// and throws DegenerateEmbedding after max_retries attempts.
EmbeddingData moment_embedding(int vertices, int k, std::uint64_t seed, int max_retries = 8);
EmbeddingData embedding_from_parameters(int k, std::vector<mpq_class> parameters);

enum class ResolutionMode { Nondegenerate, Embedded };

struct ResolutionCell {
  std::size_t target_simplex = 0;
  std::vector<std::size_t> sheets;  // source simplex indices, in fiber order
};

struct ResolutionData {
  SimplicialSurjection map;
  ResolutionMode mode = ResolutionMode::Nondegenerate;
  int depth = 0;        // levels kept
  int max_fiber = 0;    // largest |Pre(tau)|
  std::vector<std::vector<std::size_t>> fibers;  // per target simplex, fiber order
  std::vector<ResolutionCell> cells;             // parallel to complex
  CellComplex complex;
  std::optional<EmbeddingData> embedding;
};

/// depth <= 0 keeps every level. Embedded mode orders each fiber by the
/// embedded barycenters and verifies that every subset of at most `depth`
/// of them is affinely independent (DegenerateEmbedding otherwise).
ResolutionData build_resolution(const SimplicialSurjection& map, ResolutionMode mode, int depth = 0,
                                const EmbeddingData* embedding = nullptr);

/// Every target simplex carries the full face lattice of Delta^{Pre(tau)}
/// (up to the depth) and X_1 reproduces the source complex.
bool check_fibers(const ResolutionData& res);

/// Betti(X^Delta) == Betti(Y) over the field.
bool check_resolution_equivalence(const ResolutionData& res, FieldKind field);

/// table[level-1][degree] = b_degree(X_level).
using LevelTable = std::vector<std::vector<long>>;
LevelTable level_homology(const ResolutionData& res, FieldKind field);

/// Builds embedded resolutions from two seeds and compares their level tables.
bool compare_embeddings(const SimplicialSurjection& map, std::uint64_t seed_a, std::uint64_t seed_b, FieldKind field,
                        int depth = 0);

struct FunctorialityReport {
  bool well_defined = true;      // image sheets lie over the same target simplex
  bool preserves_levels = true;  // level(f(cell)) <= level(cell)
  std::size_t cells_checked = 0;
};

/// For f: X -> X' with h' o f = h, checks the induced map (tau, S) -> (tau, f(S)).
FunctorialityReport check_functoriality(const SimplicialSurjection& h, const SimplicialSurjection& h_prime,
                                        const std::vector<int>& f);

struct CorpusOptions {
  int min_target_vertices = 4;
  int max_target_vertices = 7;
  int max_sheets = 2;
  int max_lifts = 3;
  std::size_t max_simplices = 200;
};

/// Random finite-to-one surjection: Y is a random 2-complex, X vertices are
/// (vertex, sheet) pairs, and each maximal simplex of Y receives random lifts.
/// Maps whose embedded resolution is degenerate are rejected and redrawn.
SimplicialSurjection random_surjection(std::mt19937_64& rng, const CorpusOptions& options = {});

/// Identifies sheets over each target vertex as chosen by `merge`; returns the
/// quotient surjection and the vertex map f.
std::pair<SimplicialSurjection, std::vector<int>> merge_sheets(const SimplicialSurjection& h, std::mt19937_64& rng);

SimplicialSurjection two_points_over_point();
SimplicialSurjection hexagon_over_triangle();
SimplicialSurjection identity_map(const SimplicialComplex& k);

}  // namespace ratmaps
