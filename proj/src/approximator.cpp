#include "ratmaps/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ratmaps {

using cplx = std::complex<double>;

namespace {

double norm(std::span<const cplx> z) {
  double s = 0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

cvec normalized(std::span<const cplx> z) {
  const double nz = norm(z);
  cvec out(z.begin(), z.end());
  for (auto& c : out) c /= nz;
  return out;
}

cplx monomial_value(const PQMonomial& mono, std::span<const cplx> z) {
  cplx v = 1.0;
  for (std::size_t t = 0; t < z.size(); ++t) {
    for (int e = 0; e < mono.alpha[t]; ++e) v *= z[t];
    for (int e = 0; e < mono.beta[t]; ++e) v *= std::conj(z[t]);
  }
  return v;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

double fs_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("points live in different projective spaces");
  const double na = norm(a), nb = norm(b);
  if (na == 0 || nb == 0) throw std::invalid_argument("zero vector is not a projective point");
  cplx ip = 0;
  for (std::size_t k = 0; k < a.size(); ++k) ip += std::conj(a[k]) * b[k];
  if (std::abs(ip) == 0) return std::numbers::pi / 2;
  // |a e^{i theta} - b| = 2 sin(d/2) for unit a, b with the optimal phase.
  const cplx phase = ip / std::abs(ip);
  double gap = 0;
  for (std::size_t k = 0; k < a.size(); ++k) gap += std::norm(a[k] / na * phase - b[k] / nb);
  return std::min(std::numbers::pi / 2, 2 * std::asin(std::min(1.0, std::sqrt(gap) / 2)));
}

void SampledMap::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("samples need m >= 1 and n >= 1");
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<cvec> sources;
  for (const auto* set : {&samples, &boundary}) {
    for (const auto& s : *set) {
      if (static_cast<int>(s.x.size()) != m + 1 || static_cast<int>(s.y.size()) != n + 1) {
        throw DimensionMismatch("sample has the wrong number of coordinates");
      }
      if (norm(s.x) == 0 || norm(s.y) == 0) throw std::invalid_argument("sample with a zero vector");
      sources.push_back(normalized(s.x));
    }
  }
  for (const auto& s : boundary) {
    if (s.x.back() != 0.0) throw std::invalid_argument("boundary sample off the hyperplane z_m = 0");
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      if (fs_distance(sources[i], sources[j]) == 0) throw std::invalid_argument("repeated source point");
    }
  }
}

std::vector<cvec> sphere_points(int m, std::size_t count, std::uint64_t seed) {
  const std::size_t dims = 2 * static_cast<std::size_t>(m + 1);
  if (m < 0 || dims > std::size(kPrimes)) throw std::invalid_argument("sphere_points supports 0 <= m <= 7");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> shift(dims);
  for (auto& s : shift) s = uni(rng);
  std::vector<cvec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    cvec z(m + 1);
    for (int k = 0; k <= m; ++k) {
      double u1 = std::fmod(radical_inverse(i + 1, kPrimes[2 * k]) + shift[2 * k], 1.0);
      double u2 = std::fmod(radical_inverse(i + 1, kPrimes[2 * k + 1]) + shift[2 * k + 1], 1.0);
      u1 = std::max(u1, 1e-300);
      const double r = std::sqrt(-2 * std::log(u1));
      z[k] = std::polar(r, 2 * std::numbers::pi * u2);
    }
    out.push_back(normalized(z));
  }
  return out;
}

SampledMap sample_function(int m, int n, std::size_t count, std::uint64_t seed,
                           const std::function<cvec(const cvec&)>& target) {
  SampledMap s;
  s.m = m;
  s.n = n;
  for (auto& x : sphere_points(m, count, seed)) {
    auto y = target(x);
    s.samples.push_back({std::move(x), std::move(y)});
  }
  return s;
}

SampledMap sample_tuple(const MapTuple& tuple, std::size_t count, std::uint64_t seed) {
  return sample_function(tuple.m(), tuple.n(), count, seed, [&](const cvec& x) { return tuple.evaluate(x); });
}

cvec bump_identity(const cvec& z) {
  if (z.size() != 2) throw DimensionMismatch("the bump target lives on CP^1");
  const double s = std::norm(z[1]) / (std::norm(z[0]) + std::norm(z[1]));
  const double b = (s > 0 && s < 1) ? std::exp(4 - 1 / (s * (1 - s))) : 0.0;
  return {z[0], z[1] * std::polar(1.0, b)};
}

cvec FitReport::evaluate(std::span<const cplx> x) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t k = 0; k < monomials.size(); ++k) v(static_cast<Eigen::Index>(k)) = monomial_value(monomials[k], x);
  Eigen::VectorXcd w = coefficients * v;
  return cvec(w.data(), w.data() + w.size());
}

MapTuple FitReport::exact_tuple() const {
  std::vector<PQPolynomial> comps;
  for (int i = 0; i <= n; ++i) {
    PQPolynomial f(m, p, q);
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      const cplx c = coefficients(i, static_cast<Eigen::Index>(k));
      if (c != 0.0) f.add_term(monomials[k], GaussianRational::from_complex(c));
    }
    comps.push_back(std::move(f));
  }
  return MapTuple::from_components(m, n, p, q, std::move(comps));
}

namespace {

void measure(FitReport& report, const std::vector<Sample>& all) {
  report.residuals.clear();
  report.sup_error = 0;
  for (const auto& s : all) {
    auto fx = report.evaluate(normalized(s.x));
    const double d = norm(fx) == 0 ? std::numbers::pi / 2 : fs_distance(fx, s.y);
    report.residuals.push_back(d);
    report.sup_error = std::max(report.sup_error, d);
  }
}

}  // namespace

FitReport fit_pq_map(const SampledMap& samples, int p, int q, const FitOptions& options, const cvec* warm_phases) {
  samples.validate();
  if (p < 0 || q < 0) throw std::invalid_argument("fit needs p, q >= 0");
  FitReport report;
  report.m = samples.m;
  report.n = samples.n;
  report.p = p;
  report.q = q;
  report.monomials = homogeneous_monomials(samples.m + 1, p, q);

  std::vector<Sample> all = samples.samples;
  all.insert(all.end(), samples.boundary.begin(), samples.boundary.end());
  const auto N = static_cast<Eigen::Index>(all.size());
  const auto M = static_cast<Eigen::Index>(report.monomials.size());
  const Eigen::Index cols = samples.n + 1;
  Eigen::MatrixXcd A(N, M), Y(N, cols);
  for (Eigen::Index j = 0; j < N; ++j) {
    auto x = normalized(all[j].x);
    for (Eigen::Index k = 0; k < M; ++k) A(j, k) = monomial_value(report.monomials[k], x);
    for (Eigen::Index i = 0; i < cols; ++i) Y(j, i) = all[j].y[i];
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(1e-11);
  cod.compute(A);
  report.rank = static_cast<std::size_t>(cod.rank());
  report.underdetermined = cod.rank() < M;

  if (warm_phases && warm_phases->size() == all.size()) {
    report.phases = *warm_phases;
  } else {
    report.phases.assign(all.size(), cplx(1.0, 0.0));
  }
  auto solve = [&] {
    Eigen::MatrixXcd B = Y;
    for (Eigen::Index j = 0; j < N; ++j) B.row(j) *= report.phases[j];
    Eigen::MatrixXcd Ct = cod.solve(B);
    report.coefficients = Ct.transpose();
    return (A * Ct - B).squaredNorm();
  };
  double obj = solve();
  report.rounds = 0;
  while (options.align_phases && report.rounds < options.rounds && obj > 0) {
    ++report.rounds;
    Eigen::MatrixXcd W = A * report.coefficients.transpose();
    for (Eigen::Index j = 0; j < N; ++j) {
      const cplx ip = (Y.row(j).conjugate().cwiseProduct(W.row(j))).sum();
      if (std::abs(ip) > 0) report.phases[j] = ip / std::abs(ip);
    }
    const double next = solve();
    const bool stalled = obj - next <= options.rel_tol * obj;
    obj = next;
    if (stalled) break;
  }
  report.ls_residual = std::sqrt(obj);
  measure(report, all);
  return report;
}

std::vector<FitReport> fit_ladder(const SampledMap& samples, int p, int q, int rungs, const FitOptions& options) {
  std::vector<FitReport> out;
  for (int k = 0; k < rungs; ++k) {
    out.push_back(fit_pq_map(samples, p + k, q + k, options, out.empty() ? nullptr : &out.back().phases));
  }
  return out;
}

double coefficient_gap(const FitReport& fit, const MapTuple& tuple) {
  if (tuple.m() != fit.m || tuple.n() != fit.n || tuple.p() != fit.p || tuple.q() != fit.q) {
    throw DimensionMismatch("tuple and fit have different shapes");
  }
  Eigen::MatrixXcd T(fit.coefficients.rows(), fit.coefficients.cols());
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    for (Eigen::Index k = 0; k < T.cols(); ++k) {
      T(i, k) = tuple.components()[i].coefficient(fit.monomials[k]).to_complex();
    }
  }
  const double cc = fit.coefficients.squaredNorm();
  if (cc == 0) return 1.0;
  const cplx scale = (fit.coefficients.conjugate().cwiseProduct(T)).sum() / cc;
  return (scale * fit.coefficients - T).norm() / T.norm();
}

PQPolynomial boundary_correct(const PQPolynomial& P, const PQPolynomial& s) {
  if (s.m() != P.m() - 1 || s.p() != P.p() || s.q() != P.q()) {
    throw DimensionMismatch("boundary data has an incompatible bidegree or dimension");
  }
  return P + (s - P.restrict_to_hyperplane()).extend_by_one_variable();
}

CorrectionCheck check_correction(const PQPolynomial& P, const PQPolynomial& S, const std::vector<cvec>& points) {
  const PQPolynomial P1 = boundary_correct(P, S.restrict_to_hyperplane());
  std::vector<cvec> pts;
  for (const auto& x : points) {
    pts.push_back(normalized(x));
    cvec h = x;
    h.back() = 0;
    if (norm(h) > 0) pts.push_back(normalized(h));
  }
  CorrectionCheck c;
  c.points = pts.size();
  std::vector<double> after;
  for (const auto& x : pts) {
    c.sup_before = std::max(c.sup_before, std::abs(P.evaluate(x) - S.evaluate(x)));
    after.push_back(std::abs(P1.evaluate(x) - S.evaluate(x)));
    c.sup_after = std::max(c.sup_after, after.back());
  }
  c.bound_holds = std::all_of(after.begin(), after.end(),
                              [&](double v) { return v <= 2 * c.sup_before * (1 + 1e-12) + 1e-300; });
  c.boundary_exact = P1.restrict_to_hyperplane() == S.restrict_to_hyperplane();
  return c;
}

FitReport approximate_with_boundary(const SampledMap& samples, const std::vector<PQPolynomial>& boundary, int p,
                                    int q, double eps, const FitOptions& options) {
  if (static_cast<int>(boundary.size()) != samples.n + 1) {
    throw DimensionMismatch("need one boundary polynomial per target coordinate");
  }
  FitReport report = fit_pq_map(samples, p, q, options);
  const MapTuple raw = report.exact_tuple();
  std::vector<PQPolynomial> comps;
  for (std::size_t i = 0; i < boundary.size(); ++i) comps.push_back(boundary_correct(raw.components()[i], boundary[i]));
  MapTuple corrected = MapTuple::from_components(samples.m, samples.n, p, q, std::move(comps));
  report.boundary_exact = corrected.boundary() == boundary;
  for (Eigen::Index i = 0; i < report.coefficients.rows(); ++i) {
    for (Eigen::Index k = 0; k < report.coefficients.cols(); ++k) {
      report.coefficients(i, k) = corrected.components()[i].coefficient(report.monomials[k]).to_complex();
    }
  }
  std::vector<Sample> all = samples.samples;
  all.insert(all.end(), samples.boundary.begin(), samples.boundary.end());
  measure(report, all);
  report.within_eps = report.sup_error <= eps;
  if (report.sup_error < std::numbers::pi / 4 && samples.m <= 2) {
    const bool exact = samples.m == 1 && q == 0;
    report.certificate = has_common_zero(corrected, exact ? ZeroMode::Exact : ZeroMode::Numeric);
  }
  report.corrected = std::move(corrected);
  return report;
}

}  // namespace ratmaps
