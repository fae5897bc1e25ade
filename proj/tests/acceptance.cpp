// Acceptance run: one PASS/FAIL line per criterion with its wall time.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "ratmaps/approximator.hpp"
#include "ratmaps/bookkeeping.hpp"
#include "ratmaps/discriminant.hpp"
#include "ratmaps/fox_neuwirth.hpp"
#include "ratmaps/general_position.hpp"
#include "ratmaps/resolution.hpp"
#include "ratmaps/spectral_sequence.hpp"
#include "ratmaps/trials.hpp"

using namespace ratmaps;

namespace {

struct Verdict_ {
  bool pass = true;
  std::string detail;
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

Verdict_ formula_identities() {
  std::mt19937_64 rng(kDefaultSeed);
  long bad = 0, checked = 0;
  for (int t = 0; t < 10000; ++t) {
    ProblemParams pp;
    pp.m = 1 + static_cast<int>(rng() % 4);
    pp.n = pp.m + static_cast<int>(rng() % 5);
    pp.p = 1 + static_cast<int>(rng() % 8);
    pp.q = static_cast<int>(rng() % (pp.p + 1));
    const int r = 1 + static_cast<int>(rng() % stable_bound(pp));
    if (bundle_rank(pp, r) + 2L * pp.m * r != dim_bound(pp, r)) ++bad;
    const int d = static_cast<int>(rng() % 30);
    if (stable_range(pp.m, pp.n, d + 2) - stable_range(pp.m, pp.n, d) != 2L * pp.n - 2L * pp.m + 1) ++bad;
    checked += 2;
  }
  return {bad == 0, std::to_string(checked) + " identities, " + std::to_string(bad) + " violations"};
}

Verdict_ simplex_span() {
  const std::size_t trials = 10000;
  std::vector<char> ok(trials, 0);
  run_trials(trials, kDefaultSeed + 2, jobs(), [&](std::size_t t, std::mt19937_64& rng) {
    const int m = 1 + static_cast<int>(t % 2);
    const int p = 1 + static_cast<int>((t / 2) % 5);
    const int q = static_cast<int>((t / 10) % 3);
    const int r = 1 + static_cast<int>(rng() % (p + 1));
    auto c = random_configuration(m, r, rng);
    auto res = certify_simplex_span(c, p, q);
    ok[t] = res.is_simplex && res.affine_rank + 1 == static_cast<std::size_t>(r) && res.certificate &&
            res.certificate->valid();
  });
  const auto failures = std::count(ok.begin(), ok.end(), 0);
  return {failures == 0, std::to_string(trials) + " configurations, " + std::to_string(failures) + " failures"};
}

Verdict_ rank_and_fiber() {
  const std::size_t trials = 10000;
  std::vector<char> rank_ok(trials, 0), fiber_ok(trials, 0);
  run_trials(trials, kDefaultSeed + 3, jobs(), [&](std::size_t t, std::mt19937_64& rng) {
    ProblemParams pp;
    pp.m = 1 + static_cast<int>(t % 2);
    pp.n = pp.m + static_cast<int>((t / 2) % 3);
    pp.p = 1 + static_cast<int>((t / 6) % 5);
    pp.q = static_cast<int>((t / 30) % (std::min(pp.p, 2) + 1));
    const int r = 1 + static_cast<int>(rng() % pp.p);
    rank_ok[t] = certify_hyperplane_general_position(random_configuration(pp.m, r, rng), pp);
    const int rf = 1 + static_cast<int>(rng() % ((pp.p + 1) / 2));
    auto fib = certify_fiber_dimension(random_configuration(pp.m, rf, rng), pp);
    const auto N = static_cast<long>(dimension_report(pp).N_pq);
    fiber_ok[t] = fib.matches_bundle_rank && fib.real_fiber_dim &&
                  *fib.real_fiber_dim == 2 * (N - (pp.n + 1L) * rf) + (rf - 1) &&
                  *fib.real_fiber_dim == 2 * N - (2L * pp.n + 1) * rf - 1;
  });
  const auto rf = std::count(rank_ok.begin(), rank_ok.end(), 0);
  const auto ff = std::count(fiber_ok.begin(), fiber_ok.end(), 0);
  return {rf == 0 && ff == 0, "full row rank failures " + std::to_string(rf) + "/" + std::to_string(trials) +
                                  ", fiber dimension failures " + std::to_string(ff) + "/" + std::to_string(trials)};
}

Verdict_ resolution_corpus() {
  std::mt19937_64 rng(kDefaultSeed + 4);
  int maps = 0, bad = 0, pairs = 0;
  std::size_t largest = 0;
  for (; maps < 20; ++maps) {
    auto map = random_surjection(rng);
    largest = std::max(largest, map.source.simplices().size() + map.target.simplices().size());
    auto res = build_resolution(map, ResolutionMode::Nondegenerate);
    for (auto field : {FieldKind::Rationals, FieldKind::F2}) {
      if (!check_resolution_equivalence(res, field)) ++bad;
      auto ss = spectral_sequence(res.complex, field);
      auto totals = total_ranks(ss.infinity, res.complex.max_dim());
      auto betti = trim_betti(betti_numbers(res.complex, field));
      totals.resize(std::max(totals.size(), betti.size()), 0);
      betti.resize(totals.size(), 0);
      if (totals != betti || !ss.converges) ++bad;
    }
    for (std::uint64_t s = 0; s < 10; ++s, ++pairs) {
      if (!compare_embeddings(map, 1000 * maps + 2 * s + 1, 1000 * maps + 2 * s + 2, FieldKind::Rationals)) ++bad;
    }
  }
  return {bad == 0 && largest <= 400, std::to_string(maps) + " maps (largest " + std::to_string(largest) +
                                          " simplices over source and target), " + std::to_string(pairs) +
                                          " embedding pairs, " + std::to_string(bad) + " failures"};
}

Verdict_ micro_example() {
  auto res = build_resolution(two_points_over_point(), ResolutionMode::Nondegenerate);
  // Hand-built filtered complex: vertices a, b at level 1, edge e at level 2, d e = b - a.
  CellComplex hand;
  hand.add_cell(0, 1, {});
  hand.add_cell(0, 1, {});
  hand.add_cell(1, 2, {{0, -1}, {1, 1}});
  bool ok = true;
  std::string detail;
  for (auto field : {FieldKind::Rationals, FieldKind::F2}) {
    auto ss = spectral_sequence(res.complex, field);
    auto hs = spectral_sequence(hand, field);
    ok = ok && ss.rank(1, 1, 0) == 2 && ss.rank(1, 2, 1) == 1;
    auto inf = total_ranks(ss.infinity, 1);
    ok = ok && inf.size() >= 1 && inf[0] == 1 && (inf.size() < 2 || inf[1] == 0);
    ok = ok && ss.pages == hs.pages && ss.infinity == hs.infinity;
  }
  ok = ok && res.complex.size() == hand.size();
  auto ss = spectral_sequence(res.complex, FieldKind::Rationals);
  detail = "E1(1,0)=" + std::to_string(ss.rank(1, 1, 0)) + " E1(2,1)=" + std::to_string(ss.rank(1, 2, 1)) +
           " E-inf degree 0 total=" + std::to_string(total_ranks(ss.infinity, 1)[0]);
  return {ok, detail};
}

Verdict_ betti_oracle() {
  auto b1 = fox_neuwirth_betti(1, FieldKind::Rationals);
  auto b2 = fox_neuwirth_betti(2, FieldKind::Rationals);
  auto strip = [](std::map<int, long> m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
  };
  const bool fn = strip(b1) == std::map<int, long>{{2, 1}} && strip(b2) == std::map<int, long>{{3, 1}, {4, 1}};
  const auto model_q = strip(c2_model_betti(FieldKind::Rationals));
  const auto model_f2 = strip(c2_model_betti(FieldKind::F2));
  const bool model = model_q == strip(b2) && model_f2 == strip(fox_neuwirth_betti(2, FieldKind::F2));
  std::ostringstream d;
  d << "r=1 {";
  for (auto [k, v] : strip(b1)) d << k << ":" << v << " ";
  d << "} r=2 {";
  for (auto [k, v] : strip(b2)) d << k << ":" << v << " ";
  d << "} triangulated model " << (model ? "agrees" : "disagrees");
  return {fn && model, d.str()};
}

Verdict_ page_evaluation() {
  std::ifstream in(std::string(RATMAPS_DATA_DIR) + "/betti_m1_rational.csv");
  if (!in) return {false, "shipped table missing"};
  auto table = BettiTable::read_csv(in);
  const ProblemParams pp{1, 2, 5, 0};
  const int half = (pp.p + 1) / 2;
  const int smax = (2 * pp.n - 2 * pp.m + 1) * (half + 1) + half;
  auto eval = evaluate_page(build_e1_page(pp, half, smax), table);
  std::map<long, long> strip;
  bool covered = true;
  for (const auto& e : eval.entries) {
    if (!stable_region(pp.m, pp.n, pp.p, e.r, e.s)) continue;
    if (e.status == EntryStatus::Uncovered) covered = false;
    if (e.status == EntryStatus::Evaluated && e.rank > 0) strip[e.group.contribution_degree] += e.rank;
  }
  auto lowest = std::find_if(strip.begin(), strip.end(), [](const auto& kv) { return kv.first > 0; });
  const bool ok = covered && lowest != strip.end() && lowest->first == 2 * pp.n - 1 && lowest->second == 1;
  std::ostringstream d;
  d << "stable-strip histogram {";
  for (auto [k, v] : strip) d << k << ":" << v << " ";
  d << "}";
  return {ok, d.str()};
}

Verdict_ discriminant() {
  std::mt19937_64 rng(kDefaultSeed + 8);
  int agree = 0, total = 0, stab_decided = 0, stab_bad = 0, planted = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 2, p = 1 + (t / 2) % 4;
    MapTuple tuple = [&] {
      if (t % 2 == 0) {
        ++planted;
        GaussianRational a0 = random_gaussian_rational(rng, 6), a1 = random_gaussian_rational(rng, 6);
        if (a0.is_zero() && a1.is_zero()) a1 = GaussianRational(1);
        return planted_zero_tuple(n, p, a0, a1, rng);
      }
      return random_tuple(1, n, p, 0, rng);
    }();
    ++total;
    auto exact = has_common_zero(tuple, ZeroMode::Exact, 1e-8);
    auto numeric = has_common_zero(tuple, ZeroMode::Numeric, 1e-8);
    if (exact.verdict == numeric.verdict) ++agree;
    auto stab = check_stabilization_membership(tuple, 1e-8);
    if (stab.agree) {
      ++stab_decided;
      if (!*stab.agree) ++stab_bad;
    }
  }
  return {agree == total && stab_bad == 0,
          std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree (" + std::to_string(planted) +
              " planted), stabilization preserved on " + std::to_string(stab_decided - stab_bad) + "/" +
              std::to_string(stab_decided) + " decidable"};
}

Verdict_ approximator() {
  std::mt19937_64 rng(kDefaultSeed + 9);
  double worst_fit = 0;
  for (int t = 0; t < 12; ++t) {
    const int m = 1 + t % 2, n = 1 + t % 3, p = 1 + t % 3, q = (t / 3) % 2;
    auto tuple = random_tuple(m, n, p, q, rng);
    auto fit = fit_pq_map(sample_tuple(tuple, 150, kDefaultSeed + t), p, q);
    worst_fit = std::max(worst_fit, fit.sup_error);
  }
  int correction_bad = 0;
  for (int t = 0; t < 40; ++t) {
    const int m = 1 + t % 3, p = 1 + t % 3, q = t % 2;
    auto S = random_tuple(m, 1, p, q, rng).components()[0];
    auto P = S + GaussianRational(mpq_class(1, 1 + t)) * random_tuple(m, 1, p, q, rng).components()[0];
    auto c = check_correction(P, S, sphere_points(m, 300, kDefaultSeed + t));
    if (!c.boundary_exact || !c.bound_holds) ++correction_bad;
  }
  auto ladder = fit_ladder(sample_function(1, 1, 400, kDefaultSeed, bump_identity), 1, 0, 4);
  bool monotone = true;
  std::ostringstream d;
  d << "rational fits sup error " << worst_fit << ", correction failures " << correction_bad << "/40, ladder ls";
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    d << " " << ladder[k].ls_residual;
    if (k > 0 && ladder[k].ls_residual > ladder[k - 1].ls_residual * (1 + 1e-12)) monotone = false;
  }
  return {worst_fit < 1e-9 && correction_bad == 0 && monotone, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict_()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "formula identities", 1, formula_identities},
      {2, "Veronese simplex certification", 60, simplex_span},
      {3, "full row rank and fiber dimension", 120, rank_and_fiber},
      {4, "resolution corpus", 300, resolution_corpus},
      {5, "two points over a point", 10, micro_example},
      {6, "Betti-table oracle", 10, betti_oracle},
      {7, "E1 page evaluation", 10, page_evaluation},
      {8, "discriminant verdicts", 120, discriminant},
      {9, "approximator", 120, approximator},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict_ v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d %-36s %s  %.2fs/%.0fs  %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.budget_s,
                v.detail.c_str(), in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
