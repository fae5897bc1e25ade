#pragma once

// Exact certificates for the general-position facts behind the bundle
// description of the resolution strata: Veronese images of r <= p+1 distinct
// points span an (r-1)-simplex, the r vanishing conditions on W^i are
// independent for r <= p, the fiber has the expected dimension, and two
// such simplices meet only along a common face.

#include <optional>
#include <random>
#include <vector>

#include "ratmaps/bookkeeping.hpp"
#include "ratmaps/gaussian_rational.hpp"
#include "ratmaps/polynomial.hpp"

namespace ratmaps {

/// r distinct points of C^m in the chart z_m = 1.
class Configuration {
 public:
  /// Throws std::invalid_argument on duplicates, empty input or ragged points.
  Configuration(int m, std::vector<std::vector<GaussianRational>> points);

  int m() const { return m_; }
  int r() const { return static_cast<int>(points_.size()); }
  const std::vector<std::vector<GaussianRational>>& points() const { return points_; }

 private:
  int m_;
  std::vector<std::vector<GaussianRational>> points_;
};

/// Rejection-sampled distinct points with coordinates from random_gaussian_rational.
Configuration random_configuration(int m, int r, std::mt19937_64& rng, long magnitude = 1L << 16);

/// Proof that the Veronese rows are independent: a linear form l separating
/// the points, the nodes u_j = l(x_j), and det(M T) computed by elimination
/// alongside the Vandermonde product prod_{j<k} (u_k - u_j). Here T expresses
/// 1, l, ..., l^{r-1} in the monomial basis of V.
struct VandermondeCertificate {
  std::vector<GaussianRational> linear_form;  // m coefficients
  std::vector<GaussianRational> nodes;
  GaussianRational det_elimination;
  GaussianRational det_product;
  bool matrix_matches = false;  // M T equals the Vandermonde matrix of the nodes
  bool valid() const { return matrix_matches && det_elimination == det_product && !det_product.is_zero(); }
};

struct SimplexSpanResult {
  std::size_t affine_rank = 0;
  bool is_simplex = false;
  bool guaranteed = false;  // r <= p + 1
  std::optional<VandermondeCertificate> certificate;  // present when guaranteed
};

SimplexSpanResult certify_simplex_span(const Configuration& config, int p, int q);

/// Coefficient matrix (r x dim_Wi) of the vanishing conditions, columns in
/// the order of free_monomials().
std::vector<PQMonomial> free_monomials(int m, int p, int q);
std::vector<std::vector<GaussianRational>> vanishing_matrix(const Configuration& config, int p, int q);

/// True iff the vanishing system has full row rank r.
bool certify_hyperplane_general_position(const Configuration& config, const ProblemParams& params);

struct VanishingResult {
  std::size_t rank = 0;
  bool solvable = false;
  std::optional<std::size_t> nullity;  // empty when the system is inconsistent
};

/// Solves sum_k c_k w_k(x_j) = -f(x_j) for the free coefficients c, where f is
/// the boundary component (a (p,q)-polynomial in z_0..z_{m-1}).
VanishingResult vanishing_nullity(const Configuration& config, const ProblemParams& params,
                                  const PQPolynomial& boundary);

struct FiberDimensionResult {
  std::vector<std::optional<std::size_t>> complex_dims;  // per component
  std::optional<long> real_fiber_dim;                    // 2 sum dims + (r-1)
  long expected = 0;                                     // bundle_rank(params, r)
  bool matches_bundle_rank = false;
};

/// boundary holds n+1 polynomials; when empty, a fixed generic boundary is used.
FiberDimensionResult certify_fiber_dimension(const Configuration& config, const ProblemParams& params,
                                             const std::vector<PQPolynomial>& boundary = {});

/// Deterministic boundary with rational coefficients used when none is given.
std::vector<PQPolynomial> default_boundary(const ProblemParams& params);

enum class SimplexIntersection { Disjoint, CommonFace, Bad };
std::string simplex_intersection_name(SimplexIntersection kind);

struct DisjointnessResult {
  SimplexIntersection kind = SimplexIntersection::Disjoint;
  bool dichotomy_holds = true;
  std::vector<std::size_t> common;  // indices into A of the shared points
};

/// Exact LP over the joint vertex set: maximizes the barycentric weight that
/// an intersection point puts on non-shared vertices of A (and of B).
DisjointnessResult certify_disjoint_simplices(const Configuration& a, const Configuration& b, int p, int q);

}  // namespace ratmaps
