#include "ratmaps/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ratmaps/simd/kernels.hpp"
#include "ratmaps/trials.hpp"

namespace ratmaps {

using cplx = std::complex<double>;

NumericTuple::NumericTuple(const MapTuple& tuple)
    : m_(tuple.m()), p_(tuple.p()), q_(tuple.q()), components_(tuple.components().size()) {
  monomials_ = homogeneous_monomials(m_ + 1, p_, q_);
  coeff_re_.assign(components_ * monomials_.size(), 0.0);
  coeff_im_.assign(components_ * monomials_.size(), 0.0);
  for (std::size_t i = 0; i < components_; ++i) {
    for (std::size_t k = 0; k < monomials_.size(); ++k) {
      const cplx c = tuple.components()[i].coefficient(monomials_[k]).to_complex();
      coeff_re_[i * monomials_.size() + k] = c.real();
      coeff_im_[i * monomials_.size() + k] = c.imag();
    }
  }
}

namespace {

cplx monomial_value(const PQMonomial& mono, std::span<const cplx> z) {
  cplx v = 1.0;
  for (std::size_t t = 0; t < z.size(); ++t) {
    for (int e = 0; e < mono.alpha[t]; ++e) v *= z[t];
    for (int e = 0; e < mono.beta[t]; ++e) v *= std::conj(z[t]);
  }
  return v;
}

double norm2(std::span<const cplx> z) {
  double s = 0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

}  // namespace

std::vector<cplx> NumericTuple::evaluate(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != m_ + 1) throw DimensionMismatch("point has the wrong number of coordinates");
  std::vector<cplx> values(monomials_.size());
  for (std::size_t k = 0; k < monomials_.size(); ++k) values[k] = monomial_value(monomials_[k], z);
  std::vector<cplx> out(components_);
  for (std::size_t i = 0; i < components_; ++i) {
    cplx s = 0;
    for (std::size_t k = 0; k < monomials_.size(); ++k) {
      s += cplx(coeff_re_[i * monomials_.size() + k], coeff_im_[i * monomials_.size() + k]) * values[k];
    }
    out[i] = s;
  }
  return out;
}

double NumericTuple::objective(std::span<const cplx> z) const {
  double s = 0;
  for (const auto& v : evaluate(z)) s += std::norm(v);
  return s / std::pow(norm2(z), p_ + q_);
}

std::vector<double> NumericTuple::batch(const std::vector<cplx>& points, bool scalar) const {
  const std::size_t dim = static_cast<std::size_t>(m_ + 1);
  const std::size_t count = points.size() / dim;
  const std::size_t M = monomials_.size();
  std::vector<double> mono_re(M * count), mono_im(M * count), weight(count), out(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::span<const cplx> z(points.data() + k * dim, dim);
    weight[k] = std::pow(norm2(z), p_ + q_);
    for (std::size_t j = 0; j < M; ++j) {
      const cplx v = monomial_value(monomials_[j], z);
      mono_re[j * count + k] = v.real();
      mono_im[j * count + k] = v.imag();
    }
  }
  simd::ObjectiveBatch b{components_, M, count, coeff_re_.data(), coeff_im_.data(),
                         mono_re.data(), mono_im.data(), weight.data()};
  const auto& kernels = scalar ? simd::scalar_kernels() : simd::active_kernels();
  kernels.objective(b, out.data());
  return out;
}

std::vector<double> NumericTuple::objective_batch(const std::vector<cplx>& points) const { return batch(points, false); }

std::vector<double> NumericTuple::objective_batch_scalar(const std::vector<cplx>& points) const {
  return batch(points, true);
}

namespace {

std::vector<cplx> unit(std::vector<cplx> z) {
  const double n = std::sqrt(norm2(z));
  for (auto& c : z) c /= n;
  return z;
}

// Levenberg-Marquardt on the chart z_chart = 1 over the real and imaginary
// parts of the other coordinates; residuals are F_i(z) / |z|^(p+q).
std::vector<cplx> refine(const NumericTuple& nt, std::vector<cplx> z, int chart, int steps, int pq) {
  const cplx scale = z[chart];
  for (auto& c : z) c /= scale;
  const int m = nt.m();
  std::vector<int> free;
  for (int t = 0; t <= m; ++t) {
    if (t != chart) free.push_back(t);
  }
  const int nv = 2 * m;
  auto pack = [&](const std::vector<cplx>& w) {
    Eigen::VectorXd x(nv);
    for (int k = 0; k < m; ++k) {
      x(2 * k) = w[free[k]].real();
      x(2 * k + 1) = w[free[k]].imag();
    }
    return x;
  };
  auto unpack = [&](const Eigen::VectorXd& x) {
    std::vector<cplx> w(m + 1, cplx(1.0, 0.0));
    for (int k = 0; k < m; ++k) w[free[k]] = cplx(x(2 * k), x(2 * k + 1));
    return w;
  };
  auto residual = [&](const Eigen::VectorXd& x) {
    auto w = unpack(x);
    auto vals = nt.evaluate(w);
    const double denom = std::pow(std::sqrt(norm2(w)), pq);
    Eigen::VectorXd r(2 * vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      r(2 * i) = vals[i].real() / denom;
      r(2 * i + 1) = vals[i].imag() / denom;
    }
    return r;
  };
  Eigen::VectorXd x = pack(z);
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < steps && cost > 1e-40; ++it) {
    Eigen::MatrixXd J(r.size(), nv);
    for (int k = 0; k < nv; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Eigen::VectorXd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      J.col(k) = (residual(xp) - residual(xm)) / (2 * h);
    }
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 8 && !improved; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += mu * (1.0 + JtJ.diagonal().array());
      const Eigen::VectorXd step = A.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd rn = residual(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 3, 1e-15);
        improved = true;
      } else {
        mu *= 4;
      }
    }
    if (!improved) break;
  }
  return unpack(x);
}

}  // namespace

MinNormResult min_norm(const MapTuple& tuple, const MinNormOptions& options) {
  const int m = tuple.m();
  if (m < 1 || m > 2) throw UnsupportedMode("numeric search supports m = 1 and m = 2");
  const int density = options.density > 0 ? options.density : (m == 1 ? 64 : 16);
  NumericTuple nt(tuple);
  const int pq = tuple.p() + tuple.q();

  std::vector<double> axis(density);
  for (int i = 0; i < density; ++i) axis[i] = -1.0 + 2.0 * i / (density - 1);
  std::vector<cplx> disk;
  for (double a : axis) {
    for (double b : axis) {
      if (a * a + b * b <= 1.0 + 1e-12) disk.emplace_back(a, b);
    }
  }

  // (value, chart, point) of the best candidates.
  struct Candidate {
    double value;
    int chart;
    std::vector<cplx> z;
  };
  std::vector<Candidate> best;
  MinNormResult result;
  const std::size_t chunk = 4096;
  for (int chart = 0; chart <= m; ++chart) {
    std::vector<cplx> points;
    auto flush = [&] {
      if (points.empty()) return;
      auto values = nt.objective_batch(points);
      for (std::size_t k = 0; k < values.size(); ++k) {
        std::vector<cplx> z(points.begin() + static_cast<long>(k * (m + 1)),
                            points.begin() + static_cast<long>((k + 1) * (m + 1)));
        if (static_cast<int>(best.size()) < options.starts || values[k] < best.back().value) {
          best.push_back({values[k], chart, std::move(z)});
          std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
          if (static_cast<int>(best.size()) > options.starts) best.pop_back();
        }
      }
      result.grid_points += values.size();
      points.clear();
    };
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<cplx> z(m + 1, cplx(1.0, 0.0));
      int k = 0;
      for (int t = 0; t <= m; ++t) {
        if (t != chart) z[t] = disk[idx[k++]];
      }
      points.insert(points.end(), z.begin(), z.end());
      if (points.size() >= chunk * (m + 1)) flush();
      int pos = 0;
      while (pos < m && ++idx[pos] == disk.size()) idx[pos++] = 0;
      if (pos == m) break;
    }
    flush();
  }

  result.value = std::numeric_limits<double>::infinity();
  for (const auto& c : best) {
    auto z = refine(nt, c.z, c.chart, options.refine_steps, pq);
    const double v = nt.objective(z);
    if (v < result.value) {
      result.value = v;
      result.point = unit(z);
    }
    if (c.value < result.value) {
      result.value = c.value;
      result.point = unit(c.z);
    }
  }
  return result;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CommonZero: return "common-zero";
    case Verdict::NoCommonZero: return "no-common-zero";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

using UPoly = std::vector<GaussianRational>;  // coefficient of x^k at index k

void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly poly_rem(UPoly a, const UPoly& b) {
  trim(a);
  const GaussianRational lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const GaussianRational factor = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const GaussianRational inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

cplx eval_numeric(const std::vector<cplx>& c, cplx x) {
  cplx v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// Durand-Kerner on a monic polynomial, then Newton polishing.
std::vector<cplx> roots(const UPoly& g) {
  std::vector<cplx> c;
  for (const auto& x : g) c.push_back(x.to_complex());
  const std::size_t d = c.size() - 1;
  std::vector<cplx> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::pow(cplx(0.4, 0.9), static_cast<double>(k));
  for (int it = 0; it < 1000; ++it) {
    double move = 0;
    for (std::size_t k = 0; k < d; ++k) {
      cplx denom = 1;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      const cplx delta = eval_numeric(c, z[k]) / denom;
      z[k] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-15) break;
  }
  std::vector<cplx> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<double>(k));
  for (auto& x : z) {
    for (int it = 0; it < 20; ++it) {
      const cplx d1 = eval_numeric(dc, x);
      if (std::abs(d1) < 1e-300) break;
      x -= eval_numeric(c, x) / d1;
    }
  }
  return z;
}

ZeroCertificate exact_zero(const MapTuple& tuple) {
  if (tuple.m() != 1 || tuple.q() != 0) {
    throw UnsupportedMode("exact mode needs m = 1 and q = 0 (got m=" + std::to_string(tuple.m()) +
                          ", q=" + std::to_string(tuple.q()) + ")");
  }
  const int p = tuple.p();
  ZeroCertificate cert;
  cert.mode = ZeroMode::Exact;
  bool all_zero = true;
  bool at_infinity = true;
  UPoly g;
  for (const auto& f : tuple.components()) {
    UPoly dehom(static_cast<std::size_t>(p + 1), GaussianRational(0));
    for (const auto& [mono, coeff] : f.terms()) dehom[mono.alpha[0]] = coeff;
    if (!dehom[p].is_zero()) at_infinity = false;
    trim(dehom);
    if (dehom.empty()) continue;
    all_zero = false;
    g = g.empty() ? poly_gcd(dehom, dehom) : poly_gcd(g, dehom);
  }
  cert.hyperplane_zero = at_infinity;
  cert.trace.push_back("dehomogenized at z_1 = 1; [1:0] checked via the z_0^p coefficients");
  if (all_zero) {
    cert.gcd_degree = -1;
    cert.chart_zero = true;
    cert.verdict = Verdict::CommonZero;
    cert.exact_witness = std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)};
    cert.trace.push_back("every component vanishes identically");
  } else {
    cert.gcd_degree = static_cast<int>(g.size()) - 1;
    cert.chart_zero = cert.gcd_degree >= 1;
    cert.trace.push_back("gcd over Q(i) has degree " + std::to_string(cert.gcd_degree));
    cert.verdict = (*cert.chart_zero || at_infinity) ? Verdict::CommonZero : Verdict::NoCommonZero;
    if (cert.gcd_degree == 1) {
      cert.exact_witness = std::vector<GaussianRational>{GaussianRational(0) - g[0] / g[1], GaussianRational(1)};
    } else if (cert.gcd_degree >= 2) {
      auto rs = roots(g);
      cert.witness = {rs.front(), cplx(1.0, 0.0)};
      cert.trace.push_back("witness root isolated numerically from the gcd");
    } else if (at_infinity) {
      cert.exact_witness = std::vector<GaussianRational>{GaussianRational(1), GaussianRational(0)};
    }
  }
  if (cert.exact_witness) {
    cert.witness.clear();
    for (const auto& c : *cert.exact_witness) cert.witness.push_back(c.to_complex());
  }
  if (!cert.witness.empty()) {
    cert.witness = unit(cert.witness);
    cert.witness_in_chart = std::abs(cert.witness[1]) > 0;
    cert.witness_value = NumericTuple(tuple).objective(cert.witness);
  }
  return cert;
}

}  // namespace

ZeroCertificate has_common_zero(const MapTuple& tuple, ZeroMode mode, double tol, const MinNormOptions& options) {
  if (mode == ZeroMode::Exact) return exact_zero(tuple);
  ZeroCertificate cert;
  cert.mode = ZeroMode::Numeric;
  auto res = min_norm(tuple, options);
  cert.minimum = res.value;
  cert.trace.push_back("grid search over " + std::to_string(res.grid_points) + " points in " +
                       std::to_string(tuple.m() + 1) + " charts, kernel " + simd::active_kernels().name);
  cert.trace.push_back("refined minimum " + std::to_string(res.value));
  if (res.value > tol) {
    cert.verdict = Verdict::NoCommonZero;
    cert.trace.push_back("minimum exceeds tol; the bound is numeric, not a rigorous enclosure");
  } else if (res.value < tol * tol) {
    cert.verdict = Verdict::CommonZero;
    cert.witness = res.point;
    cert.witness_value = res.value;
    cert.witness_in_chart = std::abs(res.point.back()) > 1e-12;
  } else {
    cert.verdict = Verdict::Unknown;
    cert.trace.push_back("minimum between tol^2 and tol");
  }
  return cert;
}

StabilizationCheck check_stabilization_membership(const MapTuple& tuple, double tol) {
  StabilizationCheck out;
  const bool exact = tuple.m() == 1 && tuple.q() == 0;
  out.before = has_common_zero(tuple, exact ? ZeroMode::Exact : ZeroMode::Numeric, tol).verdict;
  out.after = has_common_zero(stabilize(tuple), ZeroMode::Numeric, tol).verdict;
  if (out.before != Verdict::Unknown && out.after != Verdict::Unknown) out.agree = out.before == out.after;
  return out;
}

MapTuple affine_combination(const std::vector<GaussianRational>& weights, const std::vector<MapTuple>& tuples) {
  if (weights.size() != tuples.size() || tuples.empty()) throw std::invalid_argument("weights and tuples differ in length");
  const auto& t0 = tuples.front();
  std::vector<PQPolynomial> comps(t0.components().size(), PQPolynomial(t0.m(), t0.p(), t0.q()));
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const auto& t = tuples[k];
    if (t.m() != t0.m() || t.n() != t0.n() || t.p() != t0.p() || t.q() != t0.q()) {
      throw DimensionMismatch("tuples in a combination must share m, n, p, q");
    }
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += weights[k] * t.components()[i];
  }
  return MapTuple::from_components(t0.m(), t0.n(), t0.p(), t0.q(), std::move(comps));
}

MapTuple random_tuple(int m, int n, int p, int q, std::mt19937_64& rng, long magnitude) {
  std::uniform_int_distribution<long> coeff(-magnitude, magnitude);
  auto monos = homogeneous_monomials(m + 1, p, q);
  std::vector<PQPolynomial> comps;
  for (int i = 0; i <= n; ++i) {
    PQPolynomial f(m, p, q);
    for (const auto& mono : monos) f.add_term(mono, GaussianRational(coeff(rng), coeff(rng)));
    if (f.is_zero()) f.add_term(monos.front(), GaussianRational(1));
    comps.push_back(std::move(f));
  }
  return MapTuple::from_components(m, n, p, q, std::move(comps));
}

MapTuple planted_zero_tuple(int n, int p, const GaussianRational& a0, const GaussianRational& a1, std::mt19937_64& rng,
                            long magnitude) {
  if (p < 1) throw std::invalid_argument("a planted zero needs p >= 1");
  PQPolynomial linear(1, 1, 0);
  linear.add_term({{1, 0}, {0, 0}}, a1);
  linear.add_term({{0, 1}, {0, 0}}, GaussianRational(0) - a0);
  auto cofactors = random_tuple(1, n, p - 1, 0, rng, magnitude);
  std::vector<PQPolynomial> comps;
  for (const auto& g : cofactors.components()) comps.push_back(linear * g);
  return MapTuple::from_components(1, n, p, 0, std::move(comps));
}

bool linearity_of_stabilization(int m, int n, int p, int q, int trials, std::uint64_t seed) {
  bool ok = true;
  for (int t = 0; t < trials && ok; ++t) {
    std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    auto t0 = random_tuple(m, n, p, q, rng);
    // Same boundary: add components built only from monomials that involve z_m.
    auto shifted = [&] {
      auto r = random_tuple(m, n, p, q, rng);
      std::vector<PQPolynomial> comps;
      for (std::size_t i = 0; i < r.components().size(); ++i) {
        PQPolynomial f = t0.components()[i];
        for (const auto& [mono, c] : r.components()[i].terms()) {
          if (mono.alpha[m] + mono.beta[m] >= 1) f.add_term(mono, c);
        }
        comps.push_back(std::move(f));
      }
      return MapTuple::from_components(m, n, p, q, std::move(comps));
    };
    auto t1 = shifted(), t2 = shifted();
    const GaussianRational a = random_gaussian_rational(rng, 50), b = random_gaussian_rational(rng, 50);
    const GaussianRational c = GaussianRational(0) - (a + b - GaussianRational(1));
    auto combo = affine_combination({a, b, c}, {t1, t2, t0});
    ok = ok && combo.boundary() == t0.boundary();
    ok = ok && stabilize(combo) == affine_combination({a, b, c}, {stabilize(t1), stabilize(t2), stabilize(t0)});
    ok = ok && affine_combination({GaussianRational(1), GaussianRational(0), GaussianRational(0)}, {t1, t2, t0}) == t1;
    ok = ok && stabilize(combo).boundary() == affine_combination({a, b, c}, {stabilize(t1), stabilize(t2), stabilize(t0)}).boundary();
  }
  return ok;
}

}  // namespace ratmaps
