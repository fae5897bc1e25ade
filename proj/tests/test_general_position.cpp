#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ratmaps/exact_linalg.hpp"
#include "ratmaps/general_position.hpp"
#include "ratmaps/trials.hpp"

using namespace ratmaps;

namespace {

using GR = GaussianRational;

Configuration line_config(std::vector<GR> xs) {
  std::vector<std::vector<GR>> pts;
  for (auto& x : xs) pts.push_back({x});
  return Configuration(1, pts);
}

// Oracle: rows of M are independent iff the Gram matrix M M^H is nonsingular.
bool gram_full_rank(const Configuration& c, int p, int q) {
  std::vector<std::vector<GR>> rows;
  for (const auto& x : c.points()) rows.push_back(veronese<GR>(c.m(), p, q, x));
  Matrix<GR> gram(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      GR s(0);
      for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * rows[j][k].conj();
      gram(i, j) = s;
    }
  }
  return !determinant(gram).is_zero();
}

// Oracle: maximize c.x over {A x = b, x >= 0} by enumerating basic solutions.
std::optional<mpq_class> vertex_enumeration_max(const Matrix<mpq_class>& a, const std::vector<mpq_class>& b,
                                                const std::vector<mpq_class>& c) {
  const std::size_t n = a.cols();
  std::optional<mpq_class> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) cols.push_back(k);
    }
    Matrix<mpq_class> sub(a.rows(), cols.size());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t k = 0; k < cols.size(); ++k) sub(r, k) = a(r, cols[k]);
    }
    auto sol = solve_affine(sub, b);
    if (!sol.consistent || sol.nullity != 0) continue;
    bool nonneg = true;
    mpq_class value = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      nonneg = nonneg && sgn(sol.particular[k]) >= 0;
      value += c[cols[k]] * sol.particular[k];
    }
    if (nonneg && (!best || value > *best)) best = value;
  }
  return best;
}

// Oracle for the simplex dichotomy via vertex enumeration of the same polytope.
SimplexIntersection oracle_intersection(const Configuration& a, const Configuration& b, int p, int q) {
  std::vector<std::vector<GR>> va, vb;
  for (const auto& x : a.points()) va.push_back(veronese<GR>(a.m(), p, q, x));
  for (const auto& x : b.points()) vb.push_back(veronese<GR>(b.m(), p, q, x));
  const std::size_t dim = va[0].size(), na = va.size(), nb = vb.size();
  Matrix<mpq_class> lp(2 * dim + 1, na + nb);
  std::vector<mpq_class> rhs(2 * dim + 1, 0);
  for (std::size_t t = 0; t < dim; ++t) {
    for (std::size_t i = 0; i < na; ++i) {
      lp(2 * t, i) = va[i][t].re();
      lp(2 * t + 1, i) = va[i][t].im();
    }
    for (std::size_t j = 0; j < nb; ++j) {
      lp(2 * t, na + j) = -vb[j][t].re();
      lp(2 * t + 1, na + j) = -vb[j][t].im();
    }
  }
  for (std::size_t i = 0; i < na; ++i) lp(2 * dim, i) = 1;
  rhs[2 * dim] = 1;
  std::vector<mpq_class> ca(na + nb, 0), cb(na + nb, 0);
  for (std::size_t i = 0; i < na; ++i) {
    if (std::find(b.points().begin(), b.points().end(), a.points()[i]) == b.points().end()) ca[i] = 1;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (std::find(a.points().begin(), a.points().end(), b.points()[j]) == a.points().end()) cb[na + j] = 1;
  }
  auto va_max = vertex_enumeration_max(lp, rhs, ca);
  if (!va_max) return SimplexIntersection::Disjoint;
  auto vb_max = vertex_enumeration_max(lp, rhs, cb);
  return (sgn(*va_max) > 0 || sgn(*vb_max) > 0) ? SimplexIntersection::Bad : SimplexIntersection::CommonFace;
}

}  // namespace

TEST_CASE("configuration rejects duplicates") {
  CHECK_THROWS_AS(line_config({GR(1), GR(2), GR(1)}), std::invalid_argument);
  CHECK_THROWS_AS(Configuration(2, {{GR(1)}}), DimensionMismatch);
}

TEST_CASE("simplex span examples") {
  auto c = line_config({GR(0), GR(1), GR::i()});
  auto res = certify_simplex_span(c, 2, 0);
  CHECK(res.affine_rank == 2);
  CHECK(res.is_simplex);
  REQUIRE(res.certificate);
  CHECK(res.certificate->valid());
  // Vandermonde product for nodes 0, 1, i.
  CHECK(res.certificate->det_product == GR(1) * GR::i() * (GR::i() - GR(1)));

  auto crowd = line_config({GR(0), GR(1), GR(2), GR(3), GR(4)});
  auto over = certify_simplex_span(crowd, 3, 0);
  CHECK_FALSE(over.is_simplex);
  CHECK_FALSE(over.guaranteed);
  CHECK_FALSE(over.certificate);

  Configuration two(2, {{GR(0), GR(0)}, {GR(1), GR(0)}});
  CHECK(certify_simplex_span(two, 1, 0).is_simplex);
}

TEST_CASE("simplex span agrees with the Gram oracle and is certified") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    int m = 1 + trial % 2, p = 1 + trial % 5, q = trial % 3;
    int r = 1 + static_cast<int>(rng() % (p + 1));
    auto c = random_configuration(m, r, rng, 1L << 8);
    auto res = certify_simplex_span(c, p, q);
    CHECK(res.is_simplex == gram_full_rank(c, p, q));
    CHECK(res.is_simplex);
    REQUIRE(res.certificate);
    CHECK(res.certificate->valid());
  }
  // Exploration beyond the guarantee is reported, not asserted.
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + trial % 2, p = 1 + trial % 3, q = trial % 2;
    auto c = random_configuration(m, p + 2 + trial % 3, rng, 1L << 8);
    auto res = certify_simplex_span(c, p, q);
    CHECK(res.is_simplex == gram_full_rank(c, p, q));
  }
}

TEST_CASE("hyperplane general position and nullity examples") {
  auto c12 = line_config({GR(1), GR(2)});
  CHECK(certify_hyperplane_general_position(c12, {1, 1, 3, 0}));
  PQPolynomial f3 = PQPolynomial::monomial(0, 3, 0, {{3}, {0}}, GR(5));
  auto v = vanishing_nullity(c12, {1, 1, 3, 0}, f3);
  CHECK(v.rank == 2);
  REQUIRE(v.nullity);
  CHECK(*v.nullity == 1);

  // r = 2 > p = 1: the fixed leading coefficient makes the system overdetermined.
  PQPolynomial f1 = PQPolynomial::monomial(0, 1, 0, {{1}, {0}}, GR(1));
  auto bad = vanishing_nullity(c12, {1, 1, 1, 0}, f1);
  CHECK_FALSE(bad.solvable);
  CHECK_FALSE(bad.nullity);
  CHECK_FALSE(certify_hyperplane_general_position(c12, {1, 1, 1, 0}));

  Configuration one(2, {{GR(3, 1), GR(-2)}});
  PQPolynomial g(1, 1, 0);
  g.add_term({{1, 0}, {0, 0}}, GR(1));
  g.add_term({{0, 1}, {0, 0}}, GR(2));
  auto u = vanishing_nullity(one, {2, 2, 1, 0}, g);
  REQUIRE(u.nullity);
  CHECK(*u.nullity == 0);
}

TEST_CASE("fiber dimension examples") {
  auto c12 = line_config({GR(1), GR(2)});
  auto f = certify_fiber_dimension(c12, {1, 2, 3, 0});
  CHECK(f.real_fiber_dim == 7);
  CHECK(f.matches_bundle_rank);
  Configuration one(2, {{GR(1), GR(1)}});
  auto g = certify_fiber_dimension(one, {2, 2, 1, 0});
  CHECK(g.real_fiber_dim == 0);
  CHECK(g.matches_bundle_rank);
  auto h = certify_fiber_dimension(line_config({GR(7, 2)}), {1, 1, 2, 0});
  CHECK(h.real_fiber_dim == 4);
  CHECK(h.matches_bundle_rank);
  CHECK_THROWS_AS(certify_fiber_dimension(line_config({GR(1), GR(2), GR(3)}), {1, 2, 3, 1}), std::out_of_range);
}

TEST_CASE("random hyperplane and fiber checks") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + trial % 2, n = m + trial % 2, p = 1 + trial % 4, q = trial % 2;
    if (q > p) continue;
    ProblemParams pr{m, n, p, q};
    int r = 1 + static_cast<int>(rng() % p);
    auto c = random_configuration(m, r, rng, 1L << 10);
    CHECK(certify_hyperplane_general_position(c, pr));
    if (r <= (p + 1) / 2) CHECK(certify_fiber_dimension(c, pr).matches_bundle_rank);
  }
}

TEST_CASE("disjoint simplices examples match the vertex enumeration oracle") {
  auto a = line_config({GR(0), GR(1)});
  auto b = line_config({GR(2), GR(3)});
  auto res = certify_disjoint_simplices(a, b, 4, 0);
  CHECK(res.kind == SimplexIntersection::Disjoint);
  CHECK(oracle_intersection(a, b, 4, 0) == SimplexIntersection::Disjoint);

  auto c = line_config({GR(1), GR(2)});
  auto shared = certify_disjoint_simplices(a, c, 4, 0);
  CHECK(shared.kind == SimplexIntersection::CommonFace);
  CHECK(shared.common == std::vector<std::size_t>{1});
  CHECK(oracle_intersection(a, c, 4, 0) == SimplexIntersection::CommonFace);

  auto same = certify_disjoint_simplices(a, a, 4, 0);
  CHECK(same.kind == SimplexIntersection::CommonFace);
  CHECK(same.common.size() == 2);

  // Outside the guarantee a crossing is found: p = 1, four points on a line in V.
  auto x = line_config({GR(0), GR(2)});
  auto y = line_config({GR(1), GR(3)});
  auto crossing = certify_disjoint_simplices(x, y, 1, 0);
  CHECK(crossing.kind == SimplexIntersection::Bad);
  CHECK(oracle_intersection(x, y, 1, 0) == SimplexIntersection::Bad);
}

TEST_CASE("random simplex pairs never intersect badly") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + trial % 2, p = 1 + trial % 5, q = trial % 2;
    int half = (p + 1) / 2;
    int ra = 1 + static_cast<int>(rng() % half), rb = 1 + static_cast<int>(rng() % half);
    auto a = random_configuration(m, ra, rng, 16);
    auto pts = random_configuration(m, rb, rng, 16).points();
    // Share a vertex half of the time.
    if (trial % 2 == 0 && std::find(pts.begin(), pts.end(), a.points()[0]) == pts.end()) pts[0] = a.points()[0];
    Configuration b(m, pts);
    auto res = certify_disjoint_simplices(a, b, p, q);
    CHECK(res.dichotomy_holds);
    CHECK(res.kind == oracle_intersection(a, b, p, q));
  }
}

TEST_CASE("permuting the configuration changes nothing") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + trial % 2, p = 2 + trial % 3;
    ProblemParams pr{m, m + 1, p, 0};
    auto c = random_configuration(m, 1 + trial % ((p + 1) / 2), rng, 64);
    auto pts = c.points();
    std::shuffle(pts.begin(), pts.end(), rng);
    Configuration d(m, pts);
    CHECK(certify_simplex_span(c, p, 0).affine_rank == certify_simplex_span(d, p, 0).affine_rank);
    CHECK(certify_hyperplane_general_position(c, pr) == certify_hyperplane_general_position(d, pr));
    auto fc = certify_fiber_dimension(c, pr), fd = certify_fiber_dimension(d, pr);
    CHECK(fc.real_fiber_dim == fd.real_fiber_dim);
    CHECK(fc.complex_dims == fd.complex_dims);
  }
}

TEST_CASE("per-trial seeds do not depend on the thread count") {
  std::vector<std::uint64_t> one(50), four(50);
  run_trials(50, 7, 1, [&](std::size_t t, std::mt19937_64& rng) { one[t] = rng(); });
  run_trials(50, 7, 4, [&](std::size_t t, std::mt19937_64& rng) { four[t] = rng(); });
  CHECK(one == four);
}
