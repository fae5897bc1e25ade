#include "ratmaps/exact_linalg.hpp"

namespace ratmaps {

namespace {

// Dense simplex tableau: `rows` constraint rows over `cols` variables plus a
// right-hand side column; basis[i] is the basic variable of row i.
struct Tableau {
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  std::vector<std::size_t> basis;

  void pivot(std::size_t row, std::size_t col) {
    const mpq_class inv = 1 / rows[row][col];
    for (auto& v : rows[row]) v *= inv;
    rhs[row] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == row || sgn(rows[r][col]) == 0) continue;
      const mpq_class factor = rows[r][col];
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (sgn(rows[row][c]) != 0) rows[r][c] -= factor * rows[row][c];
      }
      rhs[r] -= factor * rhs[row];
    }
    basis[row] = col;
  }

  // Reduced costs for maximizing obj over the current basis.
  std::vector<mpq_class> reduced_costs(const std::vector<mpq_class>& obj) const {
    std::vector<mpq_class> red = obj;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const mpq_class& cb = obj[basis[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t c = 0; c < red.size(); ++c) red[c] -= cb * rows[r][c];
    }
    return red;
  }

  // Bland's rule; returns false when unbounded. `allowed` masks entering columns.
  bool optimize(const std::vector<mpq_class>& obj, const std::vector<bool>& allowed) {
    while (true) {
      auto red = reduced_costs(obj);
      std::size_t entering = red.size();
      for (std::size_t c = 0; c < red.size(); ++c) {
        if (allowed[c] && sgn(red[c]) > 0) {
          entering = c;
          break;
        }
      }
      if (entering == red.size()) return true;
      std::size_t leaving = rows.size();
      mpq_class best_ratio;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (sgn(rows[r][entering]) <= 0) continue;
        mpq_class ratio = rhs[r] / rows[r][entering];
        if (leaving == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == rows.size()) return false;
      pivot(leaving, entering);
    }
  }
};

}  // namespace

LpResult lp_maximize(const Matrix<mpq_class>& a, const std::vector<mpq_class>& b,
                     const std::vector<mpq_class>& c) {
  const std::size_t n = a.cols();
  if (b.size() != a.rows() || c.size() != n) throw std::invalid_argument("LP dimension mismatch");

  // Drop redundant equations; detect inconsistency up front.
  Matrix<mpq_class> aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t col = 0; col < n; ++col) aug(r, col) = a(r, col);
    aug(r, n) = b[r];
  }
  auto pivots = row_echelon(aug, true);
  LpResult result;
  if (!pivots.empty() && pivots.back() == n) return result;  // infeasible
  const std::size_t m = pivots.size();

  // Phase 1 tableau with one artificial per row: columns [0, n) original, [n, n+m) artificial.
  Tableau t;
  t.rows.assign(m, std::vector<mpq_class>(n + m, mpq_class(0)));
  t.rhs.assign(m, mpq_class(0));
  t.basis.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = sgn(aug(r, n)) < 0;
    for (std::size_t col = 0; col < n; ++col) t.rows[r][col] = flip ? mpq_class(-aug(r, col)) : aug(r, col);
    t.rhs[r] = flip ? mpq_class(-aug(r, n)) : aug(r, n);
    t.rows[r][n + r] = 1;
    t.basis[r] = n + r;
  }
  std::vector<mpq_class> phase1(n + m, mpq_class(0));
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = -1;
  std::vector<bool> all(n + m, true);
  t.optimize(phase1, all);
  mpq_class infeasibility = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] >= n) infeasibility += t.rhs[r];
  }
  if (sgn(infeasibility) != 0) return result;

  // Pivot remaining (zero-level) artificials out; rows are independent so a
  // nonzero original column always exists.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] < n) continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (sgn(t.rows[r][col]) != 0) {
        t.pivot(r, col);
        break;
      }
    }
  }

  std::vector<mpq_class> phase2(n + m, mpq_class(0));
  for (std::size_t col = 0; col < n; ++col) phase2[col] = c[col];
  std::vector<bool> originals(n + m, false);
  for (std::size_t col = 0; col < n; ++col) originals[col] = true;
  if (!t.optimize(phase2, originals)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, mpq_class(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] < n) result.x[t.basis[r]] = t.rhs[r];
  }
  result.value = 0;
  for (std::size_t col = 0; col < n; ++col) result.value += c[col] * result.x[col];
  return result;
}

}  // namespace ratmaps
