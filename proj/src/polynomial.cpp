#include "ratmaps/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace ratmaps {

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// All exponent vectors of length `vars` summing to `degree`, lexicographically descending.
void compositions(int vars, int degree, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == vars - 1) {
    current.push_back(degree);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = degree; first >= 0; --first) {
    current.push_back(first);
    compositions(vars, degree - first, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> exponent_vectors(int vars, int degree) {
  std::vector<std::vector<int>> out;
  if (vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<int> current;
  compositions(vars, degree, current, out);
  return out;
}

inline GaussianRational conjugate(const GaussianRational& z) { return z.conj(); }
inline std::complex<double> conjugate(const std::complex<double>& z) { return std::conj(z); }

// table[j][k] = x_j^k for k <= max_degree.
template <class Scalar>
std::vector<std::vector<Scalar>> power_table(std::span<const Scalar> point, int max_degree) {
  std::vector<std::vector<Scalar>> table(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    table[j].reserve(max_degree + 1);
    table[j].push_back(Scalar(1));
    for (int k = 1; k <= max_degree; ++k) {
      table[j].push_back(table[j].back() * point[j]);
    }
  }
  return table;
}

template <class Scalar>
Scalar monomial_value(const PQMonomial& mono, const std::vector<std::vector<Scalar>>& hol,
                      const std::vector<std::vector<Scalar>>& anti) {
  Scalar value(1);
  for (std::size_t j = 0; j < mono.alpha.size(); ++j) {
    if (mono.alpha[j] > 0) value *= hol[j][mono.alpha[j]];
    if (mono.beta[j] > 0) value *= anti[j][mono.beta[j]];
  }
  return value;
}

template <class Scalar>
std::vector<std::vector<Scalar>> conjugate_table(const std::vector<std::vector<Scalar>>& hol) {
  auto anti = hol;
  for (auto& row : anti) {
    for (auto& v : row) v = conjugate(v);
  }
  return anti;
}

template <class Scalar>
Scalar evaluate_terms(const PQPolynomial& poly, std::span<const Scalar> point) {
  if (static_cast<int>(point.size()) != poly.num_vars()) {
    throw DimensionMismatch("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                            std::to_string(poly.num_vars()) + " variables");
  }
  Scalar total(0);
  if (poly.is_zero()) return total;
  auto hol = power_table(point, std::max(poly.p(), poly.q()));
  auto anti = conjugate_table(hol);
  for (const auto& [mono, coeff] : poly.terms()) {
    Scalar c;
    if constexpr (std::is_same_v<Scalar, GaussianRational>) {
      c = coeff;
    } else {
      c = coeff.to_complex();
    }
    total += c * monomial_value(mono, hol, anti);
  }
  return total;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("monomial count exceeds 64-bit range");
  }
  return out;
}

}  // namespace

int PQMonomial::holomorphic_degree() const { return sum(alpha); }
int PQMonomial::antiholomorphic_degree() const { return sum(beta); }

bool GradedLexOrder::operator()(const PQMonomial& a, const PQMonomial& b) const {
  int da = a.holomorphic_degree() + a.antiholomorphic_degree();
  int db = b.holomorphic_degree() + b.antiholomorphic_degree();
  if (da != db) return da < db;
  if (a.alpha != b.alpha) return a.alpha > b.alpha;
  return a.beta > b.beta;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Exact at every step: result * (n - i) / (i + 1) is C(n, i + 1).
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial coefficient exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t monomial_count(int m, int p, int q) {
  if (m < 0 || p < 0 || q < 0) {
    throw std::invalid_argument("monomial_count requires m, p, q >= 0");
  }
  return checked_mul(binomial(p + m, m), binomial(q + m, m));
}

std::uint64_t homogeneous_monomial_count(int m, int p, int q) {
  if (m < 0 || p < 0 || q < 0) {
    throw std::invalid_argument("homogeneous_monomial_count requires m, p, q >= 0");
  }
  // Multisets of size p (resp. q) drawn from m+1 variables.
  return checked_mul(binomial(p + (m + 1) - 1, p), binomial(q + (m + 1) - 1, q));
}

std::vector<PQMonomial> homogeneous_monomials(int num_vars, int p, int q) {
  std::vector<PQMonomial> out;
  for (const auto& a : exponent_vectors(num_vars, p)) {
    for (const auto& b : exponent_vectors(num_vars, q)) {
      out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), GradedLexOrder{});
  return out;
}

std::vector<PQMonomial> chart_monomials(int m, int p, int q) {
  std::vector<PQMonomial> out;
  for (int da = 0; da <= p; ++da) {
    for (int db = 0; db <= q; ++db) {
      for (const auto& a : exponent_vectors(m, da)) {
        for (const auto& b : exponent_vectors(m, db)) {
          out.push_back({a, b});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), GradedLexOrder{});
  return out;
}

PQMonomial homogenize(const PQMonomial& chart, int p, int q) {
  PQMonomial out = chart;
  out.alpha.push_back(p - chart.holomorphic_degree());
  out.beta.push_back(q - chart.antiholomorphic_degree());
  if (out.alpha.back() < 0 || out.beta.back() < 0) {
    throw std::invalid_argument("chart monomial exceeds bidegree");
  }
  return out;
}

PQPolynomial::PQPolynomial(int m, int p, int q) : m_(m), p_(p), q_(q) {
  if (m < 0 || p < 0 || q < 0) {
    throw std::invalid_argument("PQPolynomial requires m, p, q >= 0");
  }
}

PQPolynomial PQPolynomial::monomial(int m, int p, int q, const PQMonomial& mono,
                                   const GaussianRational& coeff) {
  PQPolynomial poly(m, p, q);
  poly.add_term(mono, coeff);
  return poly;
}

PQPolynomial PQPolynomial::norm_form(int m) {
  PQPolynomial poly(m, 1, 1);
  for (int i = 0; i <= m; ++i) {
    PQMonomial mono{std::vector<int>(m + 1, 0), std::vector<int>(m + 1, 0)};
    mono.alpha[i] = 1;
    mono.beta[i] = 1;
    poly.add_term(mono, GaussianRational(1));
  }
  return poly;
}

void PQPolynomial::check_monomial(const PQMonomial& mono) const {
  if (static_cast<int>(mono.alpha.size()) != num_vars() || static_cast<int>(mono.beta.size()) != num_vars()) {
    throw DimensionMismatch("monomial exponent vectors must have length m+1 = " + std::to_string(num_vars()));
  }
  for (std::size_t j = 0; j < mono.alpha.size(); ++j) {
    if (mono.alpha[j] < 0 || mono.beta[j] < 0) {
      throw std::invalid_argument("negative exponent");
    }
  }
  if (mono.holomorphic_degree() != p_ || mono.antiholomorphic_degree() != q_) {
    throw std::invalid_argument("monomial bidegree does not match (" + std::to_string(p_) + "," +
                                std::to_string(q_) + ")");
  }
}

void PQPolynomial::check_compatible(const PQPolynomial& o) const {
  if (m_ != o.m_ || p_ != o.p_ || q_ != o.q_) {
    throw DimensionMismatch("polynomials have different (m, p, q)");
  }
}

void PQPolynomial::add_term(const PQMonomial& mono, const GaussianRational& coeff) {
  check_monomial(mono);
  if (coeff.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

GaussianRational PQPolynomial::coefficient(const PQMonomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

GaussianRational PQPolynomial::evaluate(std::span<const GaussianRational> point) const {
  return evaluate_terms(*this, point);
}

std::complex<double> PQPolynomial::evaluate(std::span<const std::complex<double>> point) const {
  return evaluate_terms(*this, point);
}

PQPolynomial PQPolynomial::restrict_to_hyperplane() const {
  if (m_ < 1) {
    throw std::invalid_argument("restriction requires m >= 1");
  }
  PQPolynomial out(m_ - 1, p_, q_);
  for (const auto& [mono, coeff] : terms_) {
    if (mono.alpha.back() != 0 || mono.beta.back() != 0) continue;
    PQMonomial reduced{{mono.alpha.begin(), mono.alpha.end() - 1}, {mono.beta.begin(), mono.beta.end() - 1}};
    out.terms_.emplace(std::move(reduced), coeff);
  }
  return out;
}

PQPolynomial PQPolynomial::extend_by_one_variable() const {
  PQPolynomial out(m_ + 1, p_, q_);
  for (const auto& [mono, coeff] : terms_) {
    PQMonomial extended = mono;
    extended.alpha.push_back(0);
    extended.beta.push_back(0);
    out.terms_.emplace(std::move(extended), coeff);
  }
  return out;
}

PQPolynomial& PQPolynomial::operator+=(const PQPolynomial& o) {
  check_compatible(o);
  for (const auto& [mono, coeff] : o.terms_) add_term(mono, coeff);
  return *this;
}

PQPolynomial& PQPolynomial::operator-=(const PQPolynomial& o) {
  check_compatible(o);
  for (const auto& [mono, coeff] : o.terms_) add_term(mono, -coeff);
  return *this;
}

PQPolynomial& PQPolynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= c;
  return *this;
}

PQPolynomial operator*(const PQPolynomial& a, const PQPolynomial& b) {
  if (a.m_ != b.m_) throw DimensionMismatch("polynomials live in different numbers of variables");
  PQPolynomial out(a.m_, a.p_ + b.p_, a.q_ + b.q_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      PQMonomial prod = ma;
      for (std::size_t j = 0; j < prod.alpha.size(); ++j) {
        prod.alpha[j] += mb.alpha[j];
        prod.beta[j] += mb.beta[j];
      }
      out.add_term(prod, ca * cb);
    }
  }
  return out;
}

bool operator==(const PQPolynomial& a, const PQPolynomial& b) {
  return a.m_ == b.m_ && a.p_ == b.p_ && a.q_ == b.q_ && a.terms_ == b.terms_;
}

GaussianRational evaluate(const PQPolynomial& poly, const ExactPoint& point) {
  return poly.evaluate(point.span());
}

std::complex<double> evaluate(const PQPolynomial& poly, const FloatPoint& point) {
  return poly.evaluate(point.span());
}

MapTuple::MapTuple(int m, int n, int p, int q, std::vector<PQPolynomial> components,
                   std::vector<PQPolynomial> boundary)
    : m_(m), n_(n), p_(p), q_(q), components_(std::move(components)), boundary_(std::move(boundary)) {
  if (m < 1 || n < 1) throw std::invalid_argument("MapTuple requires m, n >= 1");
  if (static_cast<int>(components_.size()) != n + 1 || static_cast<int>(boundary_.size()) != n + 1) {
    throw DimensionMismatch("MapTuple needs exactly n+1 = " + std::to_string(n + 1) +
                            " components and boundary polynomials");
  }
  for (int i = 0; i <= n; ++i) {
    const auto& c = components_[i];
    if (c.m() != m || c.p() != p || c.q() != q) {
      throw DimensionMismatch("component " + std::to_string(i) + " does not match (m, p, q)");
    }
    const auto& b = boundary_[i];
    if (b.m() != m - 1 || b.p() != p || b.q() != q) {
      throw DimensionMismatch("boundary " + std::to_string(i) + " does not match (m-1, p, q)");
    }
    if (!(c.restrict_to_hyperplane() == b)) {
      throw std::invalid_argument("component " + std::to_string(i) +
                                  " does not restrict to its boundary polynomial on z_m = 0");
    }
  }
}

MapTuple MapTuple::from_components(int m, int n, int p, int q, std::vector<PQPolynomial> components) {
  std::vector<PQPolynomial> boundary;
  for (const auto& c : components) boundary.push_back(c.restrict_to_hyperplane());
  return MapTuple(m, n, p, q, std::move(components), std::move(boundary));
}

std::vector<GaussianRational> MapTuple::evaluate(std::span<const GaussianRational> point) const {
  std::vector<GaussianRational> out;
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

std::vector<std::complex<double>> MapTuple::evaluate(std::span<const std::complex<double>> point) const {
  std::vector<std::complex<double>> out;
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

MapTuple stabilize(const MapTuple& tuple) {
  const PQPolynomial norm = PQPolynomial::norm_form(tuple.m());
  const PQPolynomial boundary_norm = PQPolynomial::norm_form(tuple.m() - 1);
  std::vector<PQPolynomial> components;
  std::vector<PQPolynomial> boundary;
  for (const auto& c : tuple.components()) components.push_back(c * norm);
  for (const auto& b : tuple.boundary()) boundary.push_back(b * boundary_norm);
  return MapTuple(tuple.m(), tuple.n(), tuple.p() + 1, tuple.q() + 1, std::move(components),
                  std::move(boundary));
}

template <class Scalar>
std::vector<Scalar> veronese(int m, int p, int q, std::span<const Scalar> point) {
  if (static_cast<int>(point.size()) != m) {
    throw DimensionMismatch("chart point must have m = " + std::to_string(m) + " coordinates");
  }
  auto hol = power_table(point, std::max(p, q));
  auto anti = conjugate_table(hol);
  std::vector<Scalar> out;
  for (const auto& mono : chart_monomials(m, p, q)) {
    out.push_back(monomial_value(mono, hol, anti));
  }
  return out;
}

template std::vector<GaussianRational> veronese(int, int, int, std::span<const GaussianRational>);
template std::vector<std::complex<double>> veronese(int, int, int, std::span<const std::complex<double>>);

}  // namespace ratmaps
