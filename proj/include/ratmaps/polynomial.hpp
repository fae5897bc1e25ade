#pragma once

// Exact (p,q)-polynomials: homogeneous of degree p in z_0..z_m and of degree q
// in their conjugates, with Gaussian-rational coefficients.
//
// Monomial order (used for iteration, serialization and Veronese layouts):
// graded lexicographic on the concatenated exponent vector (alpha, beta).
// Monomials are sorted by ascending total degree |alpha| + |beta|; within one
// total degree the lexicographically larger (alpha, beta) comes first. For
// m = 1, p = q = 1 in the chart this yields 1, z, conj(z), z conj(z).

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "ratmaps/gaussian_rational.hpp"

namespace ratmaps {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PQMonomial {
  std::vector<int> alpha;  // holomorphic exponents
  std::vector<int> beta;   // anti-holomorphic exponents

  int holomorphic_degree() const;
  int antiholomorphic_degree() const;
  bool operator==(const PQMonomial&) const = default;
};

struct GradedLexOrder {
  bool operator()(const PQMonomial& a, const PQMonomial& b) const;
};

/// C(p+m, m) * C(q+m, m): monomials of V (degree <= p in z, <= q in conj z,
/// m chart variables). Throws std::overflow_error past 64 bits.
std::uint64_t monomial_count(int m, int p, int q);
/// Number of (p,q)-monomials in the m+1 homogeneous variables. Dehomogenizing
/// at z_m = 1 is a bijection onto the monomials of V, so this equals
/// monomial_count; it is computed independently as a multiset count.
std::uint64_t homogeneous_monomial_count(int m, int p, int q);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All (p,q)-monomials in `num_vars` variables, in graded-lex order.
std::vector<PQMonomial> homogeneous_monomials(int num_vars, int p, int q);
/// Chart monomials of V in m variables (|alpha| <= p, |beta| <= q), graded-lex.
std::vector<PQMonomial> chart_monomials(int m, int p, int q);
/// Chart monomial -> homogeneous monomial in m+1 variables (exponent of z_m
/// chosen to reach total degrees p and q).
PQMonomial homogenize(const PQMonomial& chart, int p, int q);

constexpr int degree_of_map(int p, int q) { return p - q; }

class PQPolynomial {
 public:
  using TermMap = std::map<PQMonomial, GaussianRational, GradedLexOrder>;

  /// Zero polynomial in z_0..z_m of bidegree (p, q). m = -1 is not allowed;
  /// m = 0 is the single-variable case that arises from restricting m = 1.
  PQPolynomial(int m, int p, int q);

  static PQPolynomial monomial(int m, int p, int q, const PQMonomial& mono,
                               const GaussianRational& coeff = GaussianRational(1));
  /// z_0 conj(z_0) + ... + z_m conj(z_m).
  static PQPolynomial norm_form(int m);

  int m() const { return m_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int num_vars() const { return m_ + 1; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff to the coefficient of mono; drops the term if it cancels.
  void add_term(const PQMonomial& mono, const GaussianRational& coeff);
  GaussianRational coefficient(const PQMonomial& mono) const;

  GaussianRational evaluate(std::span<const GaussianRational> point) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

  /// Substitutes z_m = 0: keeps the monomials with alpha_m = beta_m = 0 and
  /// drops the last variable. Requires m >= 1.
  PQPolynomial restrict_to_hyperplane() const;
  /// Views a polynomial in z_0..z_m as one in z_0..z_{m+1} that does not
  /// involve the new last variable.
  PQPolynomial extend_by_one_variable() const;

  PQPolynomial& operator+=(const PQPolynomial& o);
  PQPolynomial& operator-=(const PQPolynomial& o);
  PQPolynomial& operator*=(const GaussianRational& c);
  friend PQPolynomial operator+(PQPolynomial a, const PQPolynomial& b) { return a += b; }
  friend PQPolynomial operator-(PQPolynomial a, const PQPolynomial& b) { return a -= b; }
  friend PQPolynomial operator*(PQPolynomial a, const GaussianRational& c) { return a *= c; }
  friend PQPolynomial operator*(const GaussianRational& c, PQPolynomial a) { return a *= c; }
  /// Bidegrees add.
  friend PQPolynomial operator*(const PQPolynomial& a, const PQPolynomial& b);
  friend bool operator==(const PQPolynomial& a, const PQPolynomial& b);

 private:
  void check_monomial(const PQMonomial& mono) const;
  void check_compatible(const PQPolynomial& o) const;

  int m_;
  int p_;
  int q_;
  TermMap terms_;
};

template <class Scalar>
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<Scalar> coords, bool normalized = false)
      : coords_(std::move(coords)), normalized_(normalized) {
    bool all_zero = true;
    for (const auto& c : coords_) {
      if (c != Scalar(0)) all_zero = false;
    }
    if (coords_.empty() || all_zero) {
      throw std::invalid_argument("projective point must have a nonzero coordinate");
    }
  }
  const std::vector<Scalar>& coords() const { return coords_; }
  std::span<const Scalar> span() const { return coords_; }
  int dimension() const { return static_cast<int>(coords_.size()) - 1; }
  bool normalized() const { return normalized_; }

 private:
  std::vector<Scalar> coords_;
  bool normalized_;
};

using ExactPoint = ProjectivePoint<GaussianRational>;
using FloatPoint = ProjectivePoint<std::complex<double>>;

GaussianRational evaluate(const PQPolynomial& poly, const ExactPoint& point);
std::complex<double> evaluate(const PQPolynomial& poly, const FloatPoint& point);

/// (n+1) components at a shared (m, p, q) together with their restrictions to
/// z_m = 0. Construction verifies that every component restricts to its
/// boundary polynomial.
class MapTuple {
 public:
  MapTuple(int m, int n, int p, int q, std::vector<PQPolynomial> components,
           std::vector<PQPolynomial> boundary);
  /// Boundary derived by restricting each component.
  static MapTuple from_components(int m, int n, int p, int q, std::vector<PQPolynomial> components);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  const std::vector<PQPolynomial>& components() const { return components_; }
  const std::vector<PQPolynomial>& boundary() const { return boundary_; }

  std::vector<GaussianRational> evaluate(std::span<const GaussianRational> point) const;
  std::vector<std::complex<double>> evaluate(std::span<const std::complex<double>> point) const;

  friend bool operator==(const MapTuple&, const MapTuple&) = default;

 private:
  int m_, n_, p_, q_;
  std::vector<PQPolynomial> components_;
  std::vector<PQPolynomial> boundary_;
};

/// Multiplies every component by z_0 conj(z_0) + ... + z_m conj(z_m) and every
/// boundary polynomial by the norm form in m variables.
MapTuple stabilize(const MapTuple& tuple);

/// Values of all chart monomials of V at a point of the chart z_m = 1, in
/// chart_monomials order. point has m entries.
template <class Scalar>
std::vector<Scalar> veronese(int m, int p, int q, std::span<const Scalar> point);

extern template std::vector<GaussianRational> veronese(int, int, int, std::span<const GaussianRational>);
extern template std::vector<std::complex<double>> veronese(int, int, int,
                                                          std::span<const std::complex<double>>);

}  // namespace ratmaps
