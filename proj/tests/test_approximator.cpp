#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ratmaps/approximator.hpp"
#include "ratmaps/trials.hpp"

using namespace ratmaps;
using cplx = std::complex<double>;

namespace {

PQMonomial mono(std::vector<int> a, std::vector<int> b) { return {std::move(a), std::move(b)}; }

cvec random_vec(std::mt19937_64& rng, int len) {
  std::normal_distribution<double> g;
  cvec v(len);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("fs_distance examples") {
  const double pi = std::numbers::pi;
  cvec a{1.0, 0.0}, b{0.0, 1.0}, c{1.0, 1.0};
  CHECK(fs_distance(a, a) == 0.0);
  CHECK(fs_distance(a, b) == doctest::Approx(pi / 2));
  CHECK(fs_distance(c, a) == doctest::Approx(pi / 4));
  cvec ca{cplx(0, 3), 0.0};
  CHECK(fs_distance(a, ca) < 1e-15);
  cvec zero{0.0, 0.0};
  CHECK_THROWS_AS(fs_distance(a, zero), std::invalid_argument);
}

TEST_CASE("fs_distance is a metric on sampled points") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const int len = 2 + trial % 3;
    auto x = random_vec(rng, len), y = random_vec(rng, len), z = random_vec(rng, len);
    const double xy = fs_distance(x, y), yx = fs_distance(y, x);
    CHECK(std::abs(xy - yx) <= 1e-12);
    CHECK(fs_distance(x, x) <= 1e-12);
    CHECK(xy <= fs_distance(x, z) + fs_distance(z, y) + 1e-12);
    CHECK(xy >= 0);
    CHECK(xy <= std::numbers::pi / 2);
    // against the textbook arccos form
    cplx ip = 0;
    double nx = 0, ny = 0;
    for (int k = 0; k < len; ++k) {
      ip += std::conj(x[k]) * y[k];
      nx += std::norm(x[k]);
      ny += std::norm(y[k]);
    }
    CHECK(xy == doctest::Approx(std::acos(std::min(1.0, std::abs(ip) / std::sqrt(nx * ny)))).epsilon(1e-7));
  }
}

TEST_CASE("sphere points are unit, deterministic and distinct") {
  auto a = sphere_points(2, 200, 5), b = sphere_points(2, 200, 5), c = sphere_points(2, 200, 6);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& z : a) {
    double s = 0;
    for (auto v : z) s += std::norm(v);
    CHECK(s == doctest::Approx(1.0));
  }
  SampledMap s = sample_function(2, 2, 200, 5, [](const cvec& x) { return x; });
  CHECK_NOTHROW(s.validate());
  s.samples.push_back(s.samples.front());
  CHECK_THROWS(s.validate());
}

TEST_CASE("rational targets are recovered with zero residual") {
  std::mt19937_64 rng(kDefaultSeed);
  for (int trial = 0; trial < 8; ++trial) {
    const int m = 1 + trial % 2, n = 1 + trial % 3, p = 1 + trial % 3, q = trial % 2;
    auto t = random_tuple(m, n, p, q, rng);
    auto samples = sample_tuple(t, 150, 100 + trial);
    auto fit = fit_pq_map(samples, p, q);
    CHECK(fit.sup_error < 1e-9);
    CHECK(coefficient_gap(fit, t) < 1e-9);
    CHECK_FALSE(fit.underdetermined);
    CHECK(degree_of_map(fit.p, fit.q) == degree_of_map(t.p(), t.q()));
  }
}

TEST_CASE("conjugation map at (p,q) = (0,1)") {
  auto samples = sample_function(1, 1, 60, 3, [](const cvec& x) { return cvec{std::conj(x[0]), std::conj(x[1])}; });
  auto fit = fit_pq_map(samples, 0, 1);
  CHECK(fit.sup_error < 1e-10);
  CHECK(fit.ls_residual < 1e-10);
}

TEST_CASE("phase alignment undoes scrambled representatives") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  auto t = random_tuple(1, 2, 2, 0, rng);
  auto samples = sample_tuple(t, 120, 8);
  for (auto& s : samples.samples) {
    const cplx ph = std::polar(1.0, angle(rng));
    for (auto& y : s.y) y *= ph;
  }
  FitOptions options;
  options.rounds = 200;
  auto fit = fit_pq_map(samples, 2, 0, options);
  // Projective error never depends on the phases.
  CHECK(fit.sup_error < 0.05);
  FitOptions none;
  none.align_phases = false;
  auto raw = fit_pq_map(samples, 2, 0, none);
  CHECK(fit.ls_residual < raw.ls_residual);
}

TEST_CASE("too few samples gives a minimum-norm fit with a warning") {
  std::mt19937_64 rng(2);
  auto t = random_tuple(2, 2, 2, 1, rng);
  auto samples = sample_tuple(t, 10, 1);
  auto fit = fit_pq_map(samples, 2, 1);
  CHECK(fit.underdetermined);
  CHECK(fit.rank == 10);
  CHECK(fit.sup_error < 1e-8);
}

TEST_CASE("boundary_correct") {
  std::mt19937_64 rng(31);
  auto S = random_tuple(1, 1, 2, 1, rng).components()[0];
  // P matching S on the hyperplane is unchanged.
  PQPolynomial P = S;
  P.add_term(mono({1, 1}, {0, 1}), GaussianRational(3, 1));
  CHECK(boundary_correct(P, S.restrict_to_hyperplane()) == P);
  auto other = random_tuple(1, 1, 2, 1, rng).components()[0];
  auto P1 = boundary_correct(other, S.restrict_to_hyperplane());
  CHECK(P1.restrict_to_hyperplane() == S.restrict_to_hyperplane());
  CHECK_THROWS_AS(boundary_correct(other, PQPolynomial(0, 3, 1)), DimensionMismatch);
  CHECK_THROWS_AS(boundary_correct(other, PQPolynomial(1, 2, 1)), DimensionMismatch);
}

TEST_CASE("boundary correction at most doubles the sup error") {
  std::mt19937_64 rng(kDefaultSeed + 9);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 3, p = 1 + trial % 3, q = trial % 2;
    auto S = random_tuple(m, 1, p, q, rng).components()[0];
    auto noise = random_tuple(m, 1, p, q, rng).components()[0];
    auto P = S + GaussianRational(mpq_class(1, 1 + trial % 7 * 10)) * noise;
    auto check = check_correction(P, S, sphere_points(m, 300, trial));
    CHECK(check.boundary_exact);
    CHECK(check.bound_holds);
    CHECK(check.sup_after <= 2 * check.sup_before * (1 + 1e-12));
    CHECK(check.points > 300);
  }
}

TEST_CASE("fit ladder on the bump target") {
  auto samples = sample_function(1, 1, 400, kDefaultSeed, bump_identity);
  auto ladder = fit_ladder(samples, 1, 0, 4);
  REQUIRE(ladder.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(ladder[k].p == k + 1);
    CHECK(ladder[k].q == k);
    MESSAGE("rung " << k << " ls " << ladder[k].ls_residual << " sup " << ladder[k].sup_error);
  }
  for (int k = 1; k < 4; ++k) {
    CHECK(ladder[k].ls_residual <= ladder[k - 1].ls_residual * (1 + 1e-12));
  }
  // The sup error is not monotone rung by rung (the bump is even about
  // s = 1/2, so odd rungs add little); only the overall trend is checked.
  CHECK(ladder[0].sup_error > 0.05);
  CHECK(ladder[3].sup_error < ladder[0].sup_error);
}

TEST_CASE("approximate_with_boundary recovers rational maps exactly") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 1 + trial % 2, p = 1 + trial % 3, q = (trial / 2) % 2;
    auto t = random_tuple(m, m + trial % 2, p, q, rng);
    auto samples = sample_tuple(t, 150, trial);
    auto report = approximate_with_boundary(samples, t.boundary(), p, q, 1e-8);
    REQUIRE(report.corrected);
    CHECK(report.boundary_exact);
    CHECK(report.corrected->boundary() == t.boundary());
    CHECK(report.sup_error < 1e-9);
    CHECK(*report.within_eps);
    REQUIRE(report.certificate);
    CHECK(report.certificate->verdict == Verdict::NoCommonZero);
    CHECK(degree_of_map(report.p, report.q) == degree_of_map(t.p(), t.q()));
  }
}

TEST_CASE("approximate_with_boundary on the bump target keeps the identity boundary") {
  auto samples = sample_function(1, 1, 300, 4, bump_identity);
  // boundary: the identity restricted to z_1 = 0, stabilized to (2,1): z0^2 conj(z0), 0
  PQPolynomial b0(0, 2, 1), b1(0, 2, 1);
  b0.add_term(mono({2}, {1}), 1);
  auto report = approximate_with_boundary(samples, {b0, b1}, 2, 1, 0.5);
  CHECK(report.boundary_exact);
  CHECK(report.sup_error < std::numbers::pi / 4);
  REQUIRE(report.certificate);
  CHECK(report.certificate->verdict == Verdict::NoCommonZero);
  CHECK_THROWS_AS(approximate_with_boundary(samples, {b0}, 2, 1, 0.5), DimensionMismatch);
}
