#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ratmaps/bookkeeping.hpp"
#include "ratmaps/polynomial.hpp"

using namespace ratmaps;

namespace {

// Oracle: count monomials of W_i directly (alpha_m + beta_m >= 1).
std::uint64_t count_free_monomials(int m, int p, int q) {
  std::uint64_t count = 0;
  for (const auto& mono : homogeneous_monomials(m + 1, p, q)) {
    if (mono.alpha[m] + mono.beta[m] >= 1) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("dimension report against monomial enumeration") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = m; n <= 4; ++n) {
      for (int p = 0; p <= 4; ++p) {
        for (int q = 0; q <= p; ++q) {
          ProblemParams pr{m, n, p, q};
          auto rep = dimension_report(pr);
          CHECK(rep.dim_V == binomial(p + m, m) * binomial(q + m, m));
          CHECK(rep.dim_V == homogeneous_monomials(m + 1, p, q).size());
          CHECK(rep.dim_Wi == count_free_monomials(m, p, q));
          CHECK(rep.N_pq == (n + 1) * rep.dim_Wi);
        }
      }
    }
  }
  CHECK(dimension_report({1, 1, 3, 0}).dim_Wi == 3);
  CHECK(dimension_report({2, 2, 1, 0}).N_pq == 3);
  CHECK(dimension_report({1, 2, 3, 0}).N_pq == 9);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(dimension_report({2, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(dimension_report({1, 1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(dimension_report({0, 1, 1, 0}), std::invalid_argument);
}

TEST_CASE("stable range and discriminant codimension") {
  CHECK(stable_range(1, 2, 3) == 9);
  CHECK(stable_range(1, 1, 1) == 2);
  CHECK(stable_range(2, 2, 0) == 1);
  for (int m = 1; m <= 4; ++m) {
    for (int n = m; n <= 6; ++n) {
      auto c = discriminant_codim(m, n);
      CHECK(c.codimension == n - m + 1);
      CHECK(c.simply_connected == (m < n));
      // Stable range grows by exactly 2n-2m+1 per two steps of d.
      for (int d = 0; d <= 8; d += 2) {
        CHECK(stable_range(m, n, d + 2) - stable_range(m, n, d) == 2 * n - 2 * m + 1);
      }
    }
  }
}

TEST_CASE("dim_bound and bundle_rank") {
  ProblemParams pr{1, 2, 3, 0};
  CHECK(bundle_rank(pr, 1) == 12);
  CHECK(dim_bound(pr, 2) == 11);
  CHECK(dim_bound(pr, 1) == 2 * 9 - 4);
  // Segal case extends the range to r <= p.
  CHECK(stable_bound(pr) == 3);
  CHECK(bundle_rank(pr, 3) == 18 - 15 - 1);
  CHECK_THROWS_AS(bundle_rank(pr, 4), std::out_of_range);
  ProblemParams general{1, 2, 3, 1};
  CHECK(stable_bound(general) == 2);
  CHECK_THROWS_AS(bundle_rank(general, 3), std::out_of_range);
  CHECK_THROWS_AS(bundle_rank(general, 0), std::out_of_range);
  // Bundle over the 2mr-dimensional configuration space fills the stratum bound.
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= n; ++m) {
      ProblemParams x{m, n, 4, 1};
      for (int r = 1; r <= stable_bound(x); ++r) CHECK(bundle_rank(x, r) + 2 * m * r == dim_bound(x, r));
    }
  }
}

TEST_CASE("E1 entries") {
  auto g = e1_entry_stable(1, 2, 1, 4);
  CHECK(g.kind == GroupKind::CompactifiedConfiguration);
  CHECK(g.degree == 2);
  CHECK(g.contribution_degree == 3);
  CHECK(e1_entry_stable(1, 2, 1, 7).kind == GroupKind::Zero);
  CHECK(e1_entry_stable(1, 2, 1, 3).kind == GroupKind::Zero);
  auto h = e1_entry_general({1, 2, 3, 1}, 3, 20);
  CHECK(h.kind == GroupKind::RelativeResolution);
  CHECK(e1_entry_general({1, 2, 3, 1}, 3, 5).kind == GroupKind::Zero);
  CHECK(stable_region(1, 2, 3, 1, 4));
  CHECK(stable_region(1, 2, 3, 2, 8));
  CHECK_FALSE(stable_region(1, 2, 3, 3, 12));
  CHECK_FALSE(stable_region(1, 2, 3, 1, 3));
}

TEST_CASE("E1 page respects the sector bound") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= n; ++m) {
      ProblemParams pr{m, n, 4, m == 1 ? 0 : 1};
      auto page = build_e1_page(pr, 4, 40);
      for (const auto& [key, grp] : page.entries) {
        if (key.second < 2 * (n - m + 1) * key.first) CHECK(grp.kind == GroupKind::Zero);
        if (grp.kind == GroupKind::CompactifiedConfiguration) {
          CHECK(grp.degree >= 0);
          CHECK(grp.degree <= 2L * m * key.first);
        }
      }
    }
  }
}

TEST_CASE("Betti table CSV") {
  std::istringstream in("# m=1\nr,degree,rank,field\n1,0,0,q\n1,1,0,q\n1,2,1,q\n");
  auto t = BettiTable::read_csv(in);
  CHECK(t.m() == 1);
  CHECK(t.lookup(1, 2) == 1);
  CHECK_FALSE(t.lookup(2, 3).has_value());
  std::ostringstream out;
  t.write_csv(out);
  std::istringstream again(out.str());
  CHECK(BettiTable::read_csv(again) == t);

  std::istringstream bad_header("r,deg,rank,field\n");
  CHECK_THROWS_AS(BettiTable::read_csv(bad_header), std::invalid_argument);
  std::istringstream mixed("r,degree,rank,field\n1,2,1,q\n1,1,0,f2\n");
  CHECK_THROWS_AS(BettiTable::read_csv(mixed), std::invalid_argument);
  std::istringstream out_of_range("r,degree,rank,field\n1,3,1,q\n");
  CHECK_THROWS_AS(BettiTable::read_csv(out_of_range), std::invalid_argument);
}

TEST_CASE("page evaluation with the shipped table") {
  std::ifstream in(std::string(RATMAPS_DATA_DIR) + "/betti_m1_rational.csv");
  REQUIRE(in.good());
  auto table = BettiTable::read_csv(in);
  auto page = build_e1_page({1, 2, 3, 0}, 1, 12);
  auto eval = evaluate_page(page, table);
  CHECK(eval.uncovered.empty());
  REQUIRE(eval.degree_histogram.size() == 1);
  CHECK(eval.degree_histogram.begin()->first == 3);
  CHECK(eval.degree_histogram.begin()->second == 1);

  auto page2 = build_e1_page({1, 2, 5, 0}, 2, 16);
  auto eval2 = evaluate_page(page2, table);
  CHECK(eval2.degree_histogram == std::map<long, long>{{3, 1}, {6, 1}, {7, 1}});

  BettiTable partial(1, FieldKind::Rationals);
  partial.set(1, 2, 1);
  auto eval3 = evaluate_page(page, partial);
  CHECK_FALSE(eval3.uncovered.empty());
  BettiTable wrong_m(2, FieldKind::Rationals);
  CHECK_THROWS_AS(evaluate_page(page, wrong_m), std::invalid_argument);
}
