#pragma once

// Least-squares approximation of sampled maps CP^m -> CP^n by (p,q)-maps,
// the boundary correction P + (s - p), and Fubini-Study error measurement.
// Works pointwise in one chart; the bundle-of-sections picture reduces to
// fitting coefficient vectors over the (p,q)-monomials.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ratmaps/discriminant.hpp"
#include "ratmaps/polynomial.hpp"

namespace ratmaps {

using cvec = std::vector<std::complex<double>>;

/// arccos(|<a,b>| / (|a||b|)) in [0, pi/2], evaluated in a form that stays
/// accurate near 0. Throws std::invalid_argument on a zero vector.
double fs_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

struct Sample {
  cvec x;  // source representative, m+1 coordinates
  cvec y;  // target representative, n+1 coordinates
};

struct SampledMap {
  int m = 1;
  int n = 1;
  std::vector<Sample> samples;
  std::vector<Sample> boundary;  // optional, x_m = 0

  /// Nonempty, consistent lengths, projectively distinct sources.
  void validate() const;
};

/// FS-uniform points on CP^m: scrambled Halton points pushed through
/// Box-Muller and normalized. Deterministic in (m, count, seed).
std::vector<cvec> sphere_points(int m, std::size_t count, std::uint64_t seed);

SampledMap sample_function(int m, int n, std::size_t count, std::uint64_t seed,
                           const std::function<cvec(const cvec&)>& target);
/// y = F(x) exactly (no renormalization), so the phases are already aligned.
SampledMap sample_tuple(const MapTuple& tuple, std::size_t count, std::uint64_t seed);

/// [z0 : z1 exp(i b(s))] with s = |z1|^2/|z|^2 and b(s) = exp(4 - 1/(s(1-s)))
/// on 0 < s < 1, zero elsewhere: smooth, not real-analytic, degree one.
cvec bump_identity(const cvec& z);

struct FitOptions {
  int rounds = 25;
  double rel_tol = 1e-10;
  bool align_phases = true;
};

struct FitReport {
  int m = 1, n = 1, p = 0, q = 0;
  std::vector<PQMonomial> monomials;
  Eigen::MatrixXcd coefficients;  // (n+1) x monomials
  cvec phases;                    // per-sample unit-modulus factors
  std::vector<double> residuals;  // FS distance per sample
  double sup_error = 0;
  double ls_residual = 0;  // sqrt of the least-squares objective
  int rounds = 0;
  std::size_t rank = 0;
  bool underdetermined = false;  // rank < monomials: minimum-norm solution
  std::optional<MapTuple> corrected;  // after boundary correction
  bool boundary_exact = false;
  std::optional<bool> within_eps;  // approximate_with_boundary: sup_error <= eps
  std::optional<ZeroCertificate> certificate;

  cvec evaluate(std::span<const std::complex<double>> x) const;
  /// Coefficients as an exact tuple (doubles are dyadic rationals).
  MapTuple exact_tuple() const;
};

FitReport fit_pq_map(const SampledMap& samples, int p, int q, const FitOptions& options = {},
                     const cvec* warm_phases = nullptr);

/// Rungs (p+k, q+k), k = 0..rungs-1, each warm-started from the previous
/// rung's phases so that the least-squares residual cannot increase.
std::vector<FitReport> fit_ladder(const SampledMap& samples, int p, int q, int rungs, const FitOptions& options = {});

/// Relative distance between the fitted coefficients and the tuple's, after
/// the best complex rescaling.
double coefficient_gap(const FitReport& fit, const MapTuple& tuple);

/// P + (s - p) where s is the target hyperplane restriction and p that of P,
/// both extended constantly in z_m.
PQPolynomial boundary_correct(const PQPolynomial& P, const PQPolynomial& s);

struct CorrectionCheck {
  double sup_before = 0;  // sup |P - S|
  double sup_after = 0;   // sup |P1 - S|
  bool bound_holds = false;
  bool boundary_exact = false;
  std::size_t points = 0;
};

/// Measures on unit-sphere points plus their normalized hyperplane
/// projections; the 2-epsilon bound is checked with 1e-12 relative slack.
CorrectionCheck check_correction(const PQPolynomial& P, const PQPolynomial& S, const std::vector<cvec>& points);

/// Fit, correct every component to the given hyperplane restrictions, and
/// certify the result has no common zero when sup error < pi/4.
FitReport approximate_with_boundary(const SampledMap& samples, const std::vector<PQPolynomial>& boundary, int p,
                                    int q, double eps, const FitOptions& options = {});

}  // namespace ratmaps
