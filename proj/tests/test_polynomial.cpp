#include <doctest.h>

#include <random>

#include "ratmaps/polynomial.hpp"
#include "ratmaps/polynomial_json.hpp"

using namespace ratmaps;

namespace {

PQMonomial mono(std::vector<int> a, std::vector<int> b) { return {std::move(a), std::move(b)}; }

// Oracle: brute-force count of exponent pairs with |alpha| <= p, |beta| <= q in m variables.
std::uint64_t enumerate_chart_monomials(int m, int p, int q) {
  std::uint64_t count = 0;
  std::vector<int> a(m, 0), b(m, 0);
  // Odometer over all exponent vectors with entries in [0, max(p,q)].
  const int top = std::max(p, q);
  std::vector<int> digits(2 * m, 0);
  while (true) {
    int sa = 0, sb = 0;
    for (int j = 0; j < m; ++j) sa += digits[j];
    for (int j = 0; j < m; ++j) sb += digits[m + j];
    if (sa <= p && sb <= q) ++count;
    int k = 0;
    while (k < 2 * m && digits[k] == top) digits[k++] = 0;
    if (k == 2 * m) break;
    ++digits[k];
  }
  return count;
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

PQPolynomial random_poly(std::mt19937_64& rng, int m, int p, int q) {
  PQPolynomial poly(m, p, q);
  for (const auto& mo : homogeneous_monomials(m + 1, p, q)) {
    if (rng() % 3 == 0) continue;
    poly.add_term(mo, random_gaussian(rng));
  }
  return poly;
}

}  // namespace

TEST_CASE("monomial_count matches the enumeration oracle") {
  CHECK(monomial_count(1, 1, 0) == 2);
  CHECK(monomial_count(2, 1, 1) == 9);
  CHECK(monomial_count(1, 2, 1) == 6);
  for (int m = 1; m <= 3; ++m) {
    for (int p = 0; p <= 4; ++p) {
      for (int q = 0; q <= 3; ++q) {
        CHECK(monomial_count(m, p, q) == enumerate_chart_monomials(m, p, q));
        CHECK(homogeneous_monomial_count(m, p, q) == monomial_count(m, p, q));
        CHECK(chart_monomials(m, p, q).size() == monomial_count(m, p, q));
        CHECK(homogeneous_monomials(m + 1, p, q).size() == monomial_count(m, p, q));
      }
    }
  }
}

TEST_CASE("monomial_count reports overflow") {
  CHECK_THROWS_AS(monomial_count(60, 60, 60), std::overflow_error);
  CHECK_THROWS_AS(monomial_count(-1, 1, 1), std::invalid_argument);
}

TEST_CASE("graded lex order is the documented one") {
  auto chart = chart_monomials(1, 1, 1);
  REQUIRE(chart.size() == 4);
  CHECK(chart[0] == mono({0}, {0}));
  CHECK(chart[1] == mono({1}, {0}));
  CHECK(chart[2] == mono({0}, {1}));
  CHECK(chart[3] == mono({1}, {1}));
  auto hom = homogeneous_monomials(2, 2, 0);
  CHECK(hom[0] == mono({2, 0}, {0, 0}));
  CHECK(hom[1] == mono({1, 1}, {0, 0}));
  CHECK(hom[2] == mono({0, 2}, {0, 0}));
}

TEST_CASE("evaluate") {
  // z0 conj(z1) at (1, i) = conj(i) = -i
  auto poly = PQPolynomial::monomial(1, 1, 1, mono({1, 0}, {0, 1}));
  std::vector<GaussianRational> pt{GaussianRational(1), GaussianRational::i()};
  CHECK(poly.evaluate(pt) == GaussianRational(0, -1));

  PQPolynomial zero(1, 3, 2);
  CHECK(zero.evaluate(pt).is_zero());

  PQPolynomial sq(1, 2, 0);
  sq.add_term(mono({2, 0}, {0, 0}), 1);
  sq.add_term(mono({0, 2}, {0, 0}), 1);
  std::vector<GaussianRational> pt34{GaussianRational(3), GaussianRational(4)};
  CHECK(sq.evaluate(pt34) == GaussianRational(25));

  std::vector<GaussianRational> bad{GaussianRational(1)};
  CHECK_THROWS_AS(sq.evaluate(bad), DimensionMismatch);
  CHECK_THROWS_AS(ExactPoint({GaussianRational(0), GaussianRational(0)}), std::invalid_argument);
}

TEST_CASE("homogeneity: F(lambda x) = lambda^p conj(lambda)^q F(x)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + trial % 2, p = trial % 4, q = (trial / 4) % 3;
    auto poly = random_poly(rng, m, p, q);
    std::vector<GaussianRational> x, lx;
    GaussianRational lambda = random_gaussian(rng);
    for (int j = 0; j <= m; ++j) {
      x.push_back(random_gaussian(rng));
      lx.push_back(lambda * x.back());
    }
    CHECK(poly.evaluate(lx) == pow(lambda, p) * pow(lambda.conj(), q) * poly.evaluate(x));
  }
}

TEST_CASE("degree_of_map") {
  CHECK(degree_of_map(3, 0) == 3);
  CHECK(degree_of_map(4, 4) == 0);
  CHECK(degree_of_map(0, 1) == -1);
}

TEST_CASE("stabilize unrolled for (z0, z1)") {
  std::vector<PQPolynomial> comps;
  comps.push_back(PQPolynomial::monomial(1, 1, 0, mono({1, 0}, {0, 0})));
  comps.push_back(PQPolynomial::monomial(1, 1, 0, mono({0, 1}, {0, 0})));
  auto t = MapTuple::from_components(1, 1, 1, 0, comps);
  auto s = stabilize(t);
  CHECK(s.p() == 2);
  CHECK(s.q() == 1);
  CHECK(degree_of_map(s.p(), s.q()) == degree_of_map(t.p(), t.q()));
  PQPolynomial expected0(1, 2, 1);
  expected0.add_term(mono({2, 0}, {1, 0}), 1);
  expected0.add_term(mono({1, 1}, {0, 1}), 1);
  CHECK(s.components()[0] == expected0);
  PQPolynomial expected1(1, 2, 1);
  expected1.add_term(mono({1, 1}, {1, 0}), 1);
  expected1.add_term(mono({0, 2}, {0, 1}), 1);
  CHECK(s.components()[1] == expected1);
}

TEST_CASE("stabilization scales values by the norm and commutes with restriction") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 1 + trial % 2, n = 1 + trial % 3, p = 1 + trial % 3, q = trial % 2;
    std::vector<PQPolynomial> comps;
    for (int i = 0; i <= n; ++i) comps.push_back(random_poly(rng, m, p, q));
    auto t = MapTuple::from_components(m, n, p, q, comps);
    auto s = stabilize(t);
    std::vector<GaussianRational> x;
    GaussianRational norm(0);
    for (int j = 0; j <= m; ++j) {
      x.push_back(random_gaussian(rng));
      norm += GaussianRational(x.back().norm2());
    }
    auto vt = t.evaluate(x);
    auto vs = s.evaluate(x);
    for (int i = 0; i <= n; ++i) {
      CHECK(vs[i] == norm * vt[i]);
      // restrict(stabilize(F)) = (sum_{i<m} z_i conj z_i) restrict(F)
      CHECK(s.components()[i].restrict_to_hyperplane() ==
            PQPolynomial::norm_form(m - 1) * t.components()[i].restrict_to_hyperplane());
      CHECK(s.components()[i].restrict_to_hyperplane() == s.boundary()[i]);
    }
  }
}

TEST_CASE("restrict_to_hyperplane drops monomials touching z_m") {
  PQPolynomial f(1, 2, 0);
  f.add_term(mono({2, 0}, {0, 0}), 1);
  f.add_term(mono({1, 1}, {0, 0}), 1);
  auto r = f.restrict_to_hyperplane();
  CHECK(r.m() == 0);
  CHECK(r == PQPolynomial::monomial(0, 2, 0, mono({2}, {0})));
  PQPolynomial g(2, 1, 1);
  g.add_term(mono({0, 0, 1}, {1, 0, 0}), 7);
  CHECK(g.restrict_to_hyperplane().is_zero());
}

TEST_CASE("MapTuple rejects inconsistent boundary") {
  auto c = PQPolynomial::monomial(1, 1, 0, mono({1, 0}, {0, 0}));
  auto wrong = PQPolynomial::monomial(0, 1, 0, mono({1}, {0}), 2);
  CHECK_THROWS_AS(MapTuple(1, 1, 1, 0, {c, c}, {wrong, wrong}), std::invalid_argument);
  CHECK_THROWS_AS(MapTuple::from_components(1, 2, 1, 0, {c, c}), DimensionMismatch);
}

TEST_CASE("veronese") {
  std::vector<GaussianRational> two{GaussianRational(2)};
  auto v = veronese<GaussianRational>(1, 2, 0, two);
  CHECK(v == std::vector<GaussianRational>{1, 2, 4});
  std::vector<GaussianRational> i{GaussianRational::i()};
  auto w = veronese<GaussianRational>(1, 1, 1, i);
  CHECK(w == std::vector<GaussianRational>{GaussianRational(1), GaussianRational(0, 1), GaussianRational(0, -1),
                                           GaussianRational(1)});
  for (int m = 1; m <= 3; ++m) {
    std::vector<GaussianRational> origin(m, GaussianRational(0));
    auto o = veronese<GaussianRational>(m, 2, 2, origin);
    CHECK(o.size() == monomial_count(m, 2, 2));
    CHECK(o[0] == GaussianRational(1));
    for (std::size_t k = 1; k < o.size(); ++k) CHECK(o[k].is_zero());
  }
}

TEST_CASE("JSON round trip is bit-exact") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    int m = 1 + trial % 2, n = 1 + trial % 2, p = 2, q = trial % 2;
    std::vector<PQPolynomial> comps;
    for (int i = 0; i <= n; ++i) comps.push_back(random_poly(rng, m, p, q));
    auto t = MapTuple::from_components(m, n, p, q, comps);
    auto text = to_json(t).dump();
    auto back = tuple_from_json(nlohmann::json::parse(text));
    CHECK(back == t);
    CHECK(to_json(back).dump() == text);
  }
  auto j = nlohmann::json::parse(R"({"m":1,"p":1,"q":0,"terms":[{"alpha":[1,0],"beta":[0,0],"re":"2/4","im":"0/1"}]})");
  auto poly = polynomial_from_json(j);
  CHECK(to_json(poly)["terms"][0]["re"] == "1/2");
  auto bad = nlohmann::json::parse(R"({"m":1,"p":1,"q":0,"terms":[{"alpha":[1,0],"beta":[0,0],"re":"1/0"}]})");
  CHECK_THROWS(polynomial_from_json(bad));
}
