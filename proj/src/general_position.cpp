#include "ratmaps/general_position.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ratmaps/exact_linalg.hpp"
#include "ratmaps/trials.hpp"

namespace ratmaps {

namespace {

using Point = std::vector<GaussianRational>;

Matrix<GaussianRational> veronese_rows(const Configuration& config, int p, int q) {
  Matrix<GaussianRational> rows;
  for (const auto& x : config.points()) rows.push_row(veronese<GaussianRational>(config.m(), p, q, x));
  return rows;
}

// Value of a homogeneous monomial at (x, 1).
GaussianRational chart_value(const PQMonomial& mono, const Point& x) {
  GaussianRational v(1);
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (mono.alpha[t] > 0) v *= pow(x[t], mono.alpha[t]);
    if (mono.beta[t] > 0) v *= pow(x[t].conj(), mono.beta[t]);
  }
  return v;
}

GaussianRational apply_form(const std::vector<GaussianRational>& form, const Point& x) {
  GaussianRational v(0);
  for (std::size_t t = 0; t < x.size(); ++t) v += form[t] * x[t];
  return v;
}

// Linear form (1, t, t^2, ...) with pairwise distinct values on the points.
std::vector<GaussianRational> separating_form(const Configuration& config) {
  for (long t = 0;; ++t) {
    std::vector<GaussianRational> form;
    GaussianRational c(1);
    for (int k = 0; k < config.m(); ++k) {
      form.push_back(c);
      c *= GaussianRational(t);
    }
    std::vector<GaussianRational> values;
    bool distinct = true;
    for (const auto& x : config.points()) {
      auto u = apply_form(form, x);
      for (const auto& prev : values) distinct = distinct && !(prev == u);
      values.push_back(u);
    }
    if (distinct) return form;
  }
}

VandermondeCertificate vandermonde_certificate(const Configuration& config, const Matrix<GaussianRational>& rows,
                                               int p, int q) {
  const int m = config.m();
  const int r = config.r();
  VandermondeCertificate cert;
  cert.linear_form = separating_form(config);
  for (const auto& x : config.points()) cert.nodes.push_back(apply_form(cert.linear_form, x));

  auto chart = chart_monomials(m, p, q);
  std::map<std::vector<int>, std::size_t> holomorphic_index;
  for (std::size_t idx = 0; idx < chart.size(); ++idx) {
    bool holomorphic = true;
    for (int b : chart[idx].beta) holomorphic = holomorphic && b == 0;
    if (holomorphic) holomorphic_index[chart[idx].alpha] = idx;
  }

  // Columns of T: coefficients of l^k, k = 0..r-1, over the holomorphic monomials.
  Matrix<GaussianRational> T(chart.size(), r);
  std::map<std::vector<int>, GaussianRational> power{{std::vector<int>(m, 0), GaussianRational(1)}};
  for (int k = 0; k < r; ++k) {
    for (const auto& [alpha, coeff] : power) T(holomorphic_index.at(alpha), k) = coeff;
    std::map<std::vector<int>, GaussianRational> next;
    for (const auto& [alpha, coeff] : power) {
      for (int t = 0; t < m; ++t) {
        if (cert.linear_form[t].is_zero()) continue;
        auto bumped = alpha;
        ++bumped[t];
        next[bumped] += coeff * cert.linear_form[t];
      }
    }
    power = std::move(next);
  }

  Matrix<GaussianRational> W(r, r);
  cert.matrix_matches = true;
  for (int j = 0; j < r; ++j) {
    GaussianRational uk(1);
    for (int k = 0; k < r; ++k) {
      GaussianRational s(0);
      for (std::size_t t = 0; t < chart.size(); ++t) {
        if (!T(t, k).is_zero()) s += rows(j, t) * T(t, k);
      }
      W(j, k) = s;
      cert.matrix_matches = cert.matrix_matches && s == uk;
      uk *= cert.nodes[j];
    }
  }
  cert.det_elimination = determinant(W);
  cert.det_product = GaussianRational(1);
  for (int j = 0; j < r; ++j) {
    for (int k = j + 1; k < r; ++k) cert.det_product *= cert.nodes[k] - cert.nodes[j];
  }
  return cert;
}

LpResult maximize_weight(const Matrix<mpq_class>& a, const std::vector<mpq_class>& b, std::size_t offset,
                         std::size_t count, const std::vector<bool>& shared) {
  std::vector<mpq_class> c(a.cols(), mpq_class(0));
  for (std::size_t i = 0; i < count; ++i) {
    if (!shared[i]) c[offset + i] = 1;
  }
  return lp_maximize(a, b, c);
}

}  // namespace

Configuration::Configuration(int m, std::vector<std::vector<GaussianRational>> points)
    : m_(m), points_(std::move(points)) {
  if (m < 1) throw std::invalid_argument("configuration needs m >= 1");
  if (points_.empty()) throw std::invalid_argument("configuration needs at least one point");
  for (const auto& x : points_) {
    if (static_cast<int>(x.size()) != m) throw DimensionMismatch("configuration point has the wrong dimension");
  }
  for (std::size_t j = 0; j < points_.size(); ++j) {
    for (std::size_t k = j + 1; k < points_.size(); ++k) {
      if (points_[j] == points_[k]) {
        throw std::invalid_argument("configuration has duplicate points (indices " + std::to_string(j) + " and " +
                                    std::to_string(k) + ")");
      }
    }
  }
}

Configuration random_configuration(int m, int r, std::mt19937_64& rng, long magnitude) {
  std::vector<Point> points;
  while (static_cast<int>(points.size()) < r) {
    Point x;
    for (int t = 0; t < m; ++t) x.push_back(random_gaussian_rational(rng, magnitude));
    bool fresh = true;
    for (const auto& y : points) fresh = fresh && !(x == y);
    if (fresh) points.push_back(std::move(x));
  }
  return Configuration(m, std::move(points));
}

SimplexSpanResult certify_simplex_span(const Configuration& config, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("bidegree must be non-negative");
  auto rows = veronese_rows(config, p, q);
  SimplexSpanResult out;
  const std::size_t rk = rank(rows);
  out.affine_rank = rk - 1;  // every row starts with the constant monomial
  out.is_simplex = static_cast<int>(rk) == config.r();
  out.guaranteed = config.r() <= p + 1;
  if (out.guaranteed) out.certificate = vandermonde_certificate(config, rows, p, q);
  return out;
}

std::vector<PQMonomial> free_monomials(int m, int p, int q) {
  std::vector<PQMonomial> out;
  for (auto& mono : homogeneous_monomials(m + 1, p, q)) {
    if (mono.alpha[m] + mono.beta[m] >= 1) out.push_back(std::move(mono));
  }
  return out;
}

std::vector<std::vector<GaussianRational>> vanishing_matrix(const Configuration& config, int p, int q) {
  auto cols = free_monomials(config.m(), p, q);
  std::vector<std::vector<GaussianRational>> out;
  for (const auto& x : config.points()) {
    std::vector<GaussianRational> row;
    row.reserve(cols.size());
    for (const auto& mono : cols) row.push_back(chart_value(mono, x));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Matrix<GaussianRational> to_matrix(const std::vector<std::vector<GaussianRational>>& rows, std::size_t cols) {
  Matrix<GaussianRational> a(rows.size(), cols);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t k = 0; k < cols; ++k) a(j, k) = rows[j][k];
  }
  return a;
}

void check_params(const Configuration& config, const ProblemParams& params) {
  params.validate();
  if (config.m() != params.m) throw DimensionMismatch("configuration dimension differs from m");
}

}  // namespace

bool certify_hyperplane_general_position(const Configuration& config, const ProblemParams& params) {
  check_params(config, params);
  auto rows = vanishing_matrix(config, params.p, params.q);
  const std::size_t cols = free_monomials(params.m, params.p, params.q).size();
  return rank(to_matrix(rows, cols)) == static_cast<std::size_t>(config.r());
}

VanishingResult vanishing_nullity(const Configuration& config, const ProblemParams& params,
                                  const PQPolynomial& boundary) {
  check_params(config, params);
  if (boundary.m() != params.m - 1 || boundary.p() != params.p || boundary.q() != params.q) {
    throw DimensionMismatch("boundary polynomial must be a (p,q)-form in z_0..z_{m-1}");
  }
  const std::size_t cols = free_monomials(params.m, params.p, params.q).size();
  auto a = to_matrix(vanishing_matrix(config, params.p, params.q), cols);
  std::vector<GaussianRational> rhs;
  for (const auto& x : config.points()) rhs.push_back(GaussianRational(0) - boundary.evaluate(x));
  auto sol = solve_affine(a, rhs);
  VanishingResult out;
  out.rank = sol.rank;
  out.solvable = sol.consistent;
  if (sol.consistent) out.nullity = sol.nullity;
  return out;
}

std::vector<PQPolynomial> default_boundary(const ProblemParams& params) {
  params.validate();
  std::vector<PQPolynomial> out;
  auto monos = homogeneous_monomials(params.m, params.p, params.q);
  for (int i = 0; i <= params.n; ++i) {
    PQPolynomial f(params.m - 1, params.p, params.q);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      f.add_term(monos[k], GaussianRational(mpq_class(static_cast<long>(i + k + 1), static_cast<long>(k + 2)),
                                            mpq_class(static_cast<long>(i) - static_cast<long>(k), 3)));
    }
    out.push_back(std::move(f));
  }
  return out;
}

FiberDimensionResult certify_fiber_dimension(const Configuration& config, const ProblemParams& params,
                                             const std::vector<PQPolynomial>& boundary) {
  check_params(config, params);
  FiberDimensionResult out;
  out.expected = bundle_rank(params, config.r());  // throws outside the bundle range
  auto used = boundary.empty() ? default_boundary(params) : boundary;
  if (static_cast<int>(used.size()) != params.n + 1) throw DimensionMismatch("boundary needs n+1 components");
  for (const auto& f : used) {
    if (f.m() != params.m - 1 || f.p() != params.p || f.q() != params.q) {
      throw DimensionMismatch("boundary polynomial must be a (p,q)-form in z_0..z_{m-1}");
    }
  }
  // One elimination for all components: the matrix is shared, only the
  // right-hand sides differ.
  const std::size_t cols = free_monomials(params.m, params.p, params.q).size();
  const auto rows = vanishing_matrix(config, params.p, params.q);
  Matrix<GaussianRational> aug(rows.size(), cols + used.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t c = 0; c < cols; ++c) aug(j, c) = rows[j][c];
    for (std::size_t i = 0; i < used.size(); ++i) aug(j, cols + i) = GaussianRational(0) - used[i].evaluate(config.points()[j]);
  }
  auto pivots = row_echelon(aug);
  const auto rank_a = static_cast<std::size_t>(std::count_if(pivots.begin(), pivots.end(), [&](std::size_t c) { return c < cols; }));
  long total = 0;
  bool all = true;
  for (std::size_t i = 0; i < used.size(); ++i) {
    bool consistent = true;
    for (std::size_t j = rank_a; j < aug.rows(); ++j) {
      if (!aug(j, cols + i).is_zero()) consistent = false;
    }
    if (consistent) {
      out.complex_dims.push_back(cols - rank_a);
      total += static_cast<long>(cols - rank_a);
    } else {
      out.complex_dims.push_back(std::nullopt);
      all = false;
    }
  }
  if (all) out.real_fiber_dim = 2 * total + (config.r() - 1);
  out.matches_bundle_rank = out.real_fiber_dim && *out.real_fiber_dim == out.expected;
  return out;
}

std::string simplex_intersection_name(SimplexIntersection kind) {
  switch (kind) {
    case SimplexIntersection::Disjoint: return "disjoint";
    case SimplexIntersection::CommonFace: return "common-face";
    case SimplexIntersection::Bad: return "bad-intersection";
  }
  return "?";
}

DisjointnessResult certify_disjoint_simplices(const Configuration& a, const Configuration& b, int p, int q) {
  if (a.m() != b.m()) throw DimensionMismatch("configurations live in different dimensions");
  const std::size_t na = a.points().size(), nb = b.points().size();
  std::vector<bool> shared_a(na, false), shared_b(nb, false);
  DisjointnessResult out;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (a.points()[i] == b.points()[j]) {
        shared_a[i] = shared_b[j] = true;
        out.common.push_back(i);
      }
    }
  }
  auto va = veronese_rows(a, p, q);
  auto vb = veronese_rows(b, p, q);
  const std::size_t dim = va.cols();
  // Rows: real and imaginary parts of sum lambda v(a) - sum mu v(b) = 0, then sum lambda = 1.
  Matrix<mpq_class> lp(2 * dim + 1, na + nb);
  std::vector<mpq_class> rhs(2 * dim + 1, mpq_class(0));
  for (std::size_t t = 0; t < dim; ++t) {
    for (std::size_t i = 0; i < na; ++i) {
      lp(2 * t, i) = va(i, t).re();
      lp(2 * t + 1, i) = va(i, t).im();
    }
    for (std::size_t j = 0; j < nb; ++j) {
      lp(2 * t, na + j) = -vb(j, t).re();
      lp(2 * t + 1, na + j) = -vb(j, t).im();
    }
  }
  for (std::size_t i = 0; i < na; ++i) lp(2 * dim, i) = 1;
  rhs[2 * dim] = 1;

  auto from_a = maximize_weight(lp, rhs, 0, na, shared_a);
  if (from_a.status == LpStatus::Infeasible) {
    out.kind = SimplexIntersection::Disjoint;
    return out;
  }
  auto from_b = maximize_weight(lp, rhs, na, nb, shared_b);
  const bool bad = sgn(from_a.value) > 0 || sgn(from_b.value) > 0;
  out.kind = bad ? SimplexIntersection::Bad : SimplexIntersection::CommonFace;
  out.dichotomy_holds = !bad;
  return out;
}

}  // namespace ratmaps
