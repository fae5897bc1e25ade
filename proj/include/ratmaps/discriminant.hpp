#pragma once

// Membership in the discriminant: does a tuple of (p,q)-forms have a common
// zero on CP^m?  Numeric search for m <= 2, exact gcd decision for m = 1,
// q = 0, and checks that stabilization preserves membership.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ratmaps/polynomial.hpp"

namespace ratmaps {

class UnsupportedMode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tuple with double coefficients over all (p,q)-monomials in m+1 variables,
/// for repeated evaluation.
class NumericTuple {
 public:
  explicit NumericTuple(const MapTuple& tuple);

  int m() const { return m_; }
  std::size_t monomials() const { return monomials_.size(); }
  std::vector<std::complex<double>> evaluate(std::span<const std::complex<double>> z) const;
  /// sum_i |F_i(z)|^2 / (sum_j |z_j|^2)^(p+q).
  double objective(std::span<const std::complex<double>> z) const;
  /// Objective at many points using the active SIMD kernel; points are
  /// stored consecutively, m+1 coordinates each.
  std::vector<double> objective_batch(const std::vector<std::complex<double>>& points) const;
  /// Same through the scalar reference kernel.
  std::vector<double> objective_batch_scalar(const std::vector<std::complex<double>>& points) const;

 private:
  std::vector<double> batch(const std::vector<std::complex<double>>& points, bool scalar) const;
  int m_, p_, q_;
  std::size_t components_;
  std::vector<PQMonomial> monomials_;
  std::vector<double> coeff_re_, coeff_im_;  // components x monomials
};

struct MinNormOptions {
  int density = 0;        // grid points per real dimension; 0 = 64 for m=1, 16 for m=2
  int refine_steps = 60;  // Levenberg-Marquardt iterations per start
  int starts = 8;         // best grid points refined
};

struct MinNormResult {
  double value = 0;
  std::vector<std::complex<double>> point;  // unit norm representative
  std::size_t grid_points = 0;
};

MinNormResult min_norm(const MapTuple& tuple, const MinNormOptions& options = {});

enum class Verdict { CommonZero, NoCommonZero, Unknown };
std::string verdict_name(Verdict v);

enum class ZeroMode { Exact, Numeric };

struct ZeroCertificate {
  Verdict verdict = Verdict::Unknown;
  ZeroMode mode = ZeroMode::Numeric;
  std::vector<std::complex<double>> witness;  // unit norm, CommonZero only
  std::optional<std::vector<GaussianRational>> exact_witness;
  bool witness_in_chart = false;  // z_m != 0
  double witness_value = 0;       // objective at the witness
  double minimum = 0;             // numeric minimum found (numeric mode)
  std::optional<bool> chart_zero;      // exact mode: a common zero with z_1 != 0
  std::optional<bool> hyperplane_zero; // exact mode: [1:0] is a common zero
  int gcd_degree = -1;                 // exact mode
  std::vector<std::string> trace;
};

/// Exact mode needs m = 1 and q = 0 (UnsupportedMode otherwise).
ZeroCertificate has_common_zero(const MapTuple& tuple, ZeroMode mode, double tol = 1e-8,
                                const MinNormOptions& options = {});

struct StabilizationCheck {
  Verdict before = Verdict::Unknown;
  Verdict after = Verdict::Unknown;
  std::optional<bool> agree;  // empty when either verdict is unknown
};

/// Verdict on t (exact when possible) against the numeric verdict on stabilize(t).
StabilizationCheck check_stabilization_membership(const MapTuple& tuple, double tol = 1e-8);

/// stabilize(a t1 + b t2 - (a+b-1) t0) = a S(t1) + b S(t2) - (a+b-1) S(t0) for
/// tuples sharing t0's boundary, checked exactly over `trials` random draws.
bool linearity_of_stabilization(int m, int n, int p, int q, int trials, std::uint64_t seed);

/// sum_k c_k t_k componentwise (all tuples must share m, n, p, q).
MapTuple affine_combination(const std::vector<GaussianRational>& weights, const std::vector<MapTuple>& tuples);

/// Random exact tuple; q = 0 forms have small Gaussian-integer coefficients.
MapTuple random_tuple(int m, int n, int p, int q, std::mt19937_64& rng, long magnitude = 5);
/// Random m = 1 tuple whose components share the linear factor (a1 z0 - a0 z1).
MapTuple planted_zero_tuple(int n, int p, const GaussianRational& a0, const GaussianRational& a1,
                            std::mt19937_64& rng, long magnitude = 5);

}  // namespace ratmaps
