#include "ratmaps/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ratmaps/approximator.hpp"
#include "ratmaps/bookkeeping.hpp"
#include "ratmaps/discriminant.hpp"
#include "ratmaps/fox_neuwirth.hpp"
#include "ratmaps/general_position.hpp"
#include "ratmaps/polynomial_json.hpp"
#include "ratmaps/resolution.hpp"
#include "ratmaps/spectral_sequence.hpp"
#include "ratmaps/trials.hpp"

namespace ratmaps::cli {

using nlohmann::json;
using cplx = std::complex<double>;

namespace {

// Bad input of any kind; maps to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json result;
  int code = kOk;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw std::invalid_argument("complex number must be a number, [re, im] or {re, im}");
}

cvec cvec_from_json(const json& j) {
  cvec out;
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

json cvec_json(const cvec& v) {
  json out = json::array();
  for (auto z : v) out.push_back(complex_json(z));
  return out;
}

json points_json(const Configuration& c) {
  json out = json::array();
  for (const auto& pt : c.points()) {
    json row = json::array();
    for (const auto& z : pt) row.push_back(to_json(z));
    out.push_back(std::move(row));
  }
  return out;
}

json complex_to_json(const SimplicialComplex& k) { return {{"vertices", k.vertices()}, {"simplices", k.maximal()}}; }

SimplicialComplex complex_from_json_obj(const json& j) {
  return SimplicialComplex(j.at("vertices").get<int>(), j.at("simplices").get<std::vector<Simplex>>());
}

json map_to_json(const SimplicialSurjection& f) {
  return {{"source", complex_to_json(f.source)}, {"target", complex_to_json(f.target)}, {"vertex_map", f.vertex_map}};
}

SimplicialSurjection map_from_json(const json& j) {
  SimplicialSurjection f{complex_from_json_obj(j.at("source")), complex_from_json_obj(j.at("target")),
                         j.at("vertex_map").get<std::vector<int>>()};
  f.validate();
  return f;
}

json page_json(const PageTable& page) {
  json out = json::array();
  for (const auto& [key, rank] : page) {
    if (rank != 0) out.push_back({{"level", key.first}, {"degree", key.second}, {"rank", rank}});
  }
  return out;
}

std::string mode_name(ResolutionMode m) { return m == ResolutionMode::Embedded ? "embedded" : "nondegenerate"; }

ResolutionMode parse_mode(const std::string& s) {
  if (s == "nondegenerate") return ResolutionMode::Nondegenerate;
  if (s == "embedded") return ResolutionMode::Embedded;
  throw InputError("unknown resolution mode '" + s + "'");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

// ---- bookkeeping ----

json dimension_json(const ProblemParams& pp) {
  auto d = dimension_report(pp);
  json strata = json::array();
  for (int r = 1; r <= stable_bound(pp); ++r) {
    strata.push_back({{"r", r}, {"dim_bound", dim_bound(pp, r)}, {"bundle_rank", bundle_rank(pp, r)}});
  }
  auto codim = discriminant_codim(pp.m, pp.n);
  return {{"dim_V", d.dim_V},
          {"dim_unrestricted", d.dim_unrestricted},
          {"dim_Wi", d.dim_Wi},
          {"N", d.N_pq},
          {"degree", pp.d()},
          {"stable_range", stable_range(pp.m, pp.n, pp.d())},
          {"discriminant_codimension", codim.codimension},
          {"simply_connected", codim.simply_connected},
          {"segal_case", segal_case_flag(pp.m, pp.q)},
          {"stable_bound", stable_bound(pp)},
          {"strata", strata}};
}

json e1_json(const E1Page& page, const std::optional<PageEvaluation>& eval) {
  json entries = json::array();
  for (const auto& [key, g] : page.entries) {
    json e = {{"r", key.first}, {"s", key.second}, {"kind", group_kind_name(g.kind)}};
    if (g.kind != GroupKind::Zero) {
      e["degree"] = g.degree;
      e["contribution_degree"] = g.contribution_degree;
      e["group"] = g.describe();
    }
    entries.push_back(std::move(e));
  }
  json out = {{"rmax", page.rmax}, {"smax", page.smax}, {"stable_bound", page.stable_bound},
              {"sector_slope", page.sector_slope}, {"entries", entries}};
  if (eval) {
    json evaluated = json::array(), hist = json::array(), uncovered = json::array();
    for (const auto& e : eval->entries) {
      if (e.status == EntryStatus::Zero) continue;
      json row = {{"r", e.r}, {"s", e.s}, {"status", entry_status_name(e.status)}};
      if (e.status == EntryStatus::Evaluated) row["rank"] = e.rank;
      evaluated.push_back(std::move(row));
    }
    for (const auto& [deg, rank] : eval->degree_histogram) hist.push_back({{"degree", deg}, {"rank", rank}});
    for (const auto& [r, s] : eval->uncovered) uncovered.push_back({{"r", r}, {"s", s}});
    out["evaluation"] = {{"entries", evaluated}, {"degree_histogram", hist}, {"uncovered", uncovered},
                         {"ranks_consumed", eval->ranks_consumed}};
  }
  return out;
}

// ---- genpos ----

struct TrialOutcome {
  bool failed = false;
  bool counted = true;  // false when the trial is outside the certified range in explore mode
  json witness;
  long statistic = 0;
};

Outcome genpos_certify(const std::string& lemma, const ProblemParams& pp, int r, std::size_t trials,
                       std::uint64_t seed, unsigned jobs, bool explore, long magnitude) {
  if (r < 1) throw InputError("--r must be >= 1");
  pp.validate();
  int limit = 0;
  if (lemma == "vdm") {
    limit = pp.p + 1;
  } else if (lemma == "hyperplanes") {
    limit = pp.p;
  } else if (lemma == "fiber") {
    limit = stable_bound(pp);
  } else if (lemma == "simplices") {
    limit = (pp.p + 1) / 2;  // both simplices together use at most 2r <= p+1 points
  } else {
    throw InputError("unknown lemma '" + lemma + "' (expected vdm, hyperplanes, fiber or simplices)");
  }
  const bool guaranteed = r <= limit;
  if (!guaranteed && !explore) {
    throw InputError("r=" + std::to_string(r) + " is outside the certified range r <= " + std::to_string(limit) +
                     " for lemma " + lemma + "; pass --explore to sample it anyway");
  }
  std::vector<TrialOutcome> outcomes(trials);
  const auto boundary = default_boundary(pp);
  run_trials(trials, seed, jobs, [&](std::size_t t, std::mt19937_64& rng) {
    TrialOutcome& o = outcomes[t];
    if (lemma == "vdm") {
      auto c = random_configuration(pp.m, r, rng, magnitude);
      auto res = certify_simplex_span(c, pp.p, pp.q);
      o.statistic = static_cast<long>(res.affine_rank);
      o.failed = !res.is_simplex || (res.certificate && !res.certificate->valid());
      if (o.failed) o.witness = points_json(c);
    } else if (lemma == "hyperplanes") {
      auto c = random_configuration(pp.m, r, rng, magnitude);
      o.failed = !certify_hyperplane_general_position(c, pp);
      if (o.failed) o.witness = points_json(c);
    } else if (lemma == "fiber") {
      auto c = random_configuration(pp.m, r, rng, magnitude);
      if (guaranteed) {
        auto res = certify_fiber_dimension(c, pp, boundary);
        o.statistic = res.real_fiber_dim.value_or(-1);
        o.failed = !res.matches_bundle_rank;
      } else {
        // No closed form to compare against; record the measured dimension.
        long total = 0;
        bool solvable = true;
        for (const auto& b : boundary) {
          auto v = vanishing_nullity(c, pp, b);
          if (!v.nullity) solvable = false;
          total += static_cast<long>(v.nullity.value_or(0));
        }
        o.statistic = solvable ? 2 * total + r - 1 : -1;
        o.failed = !solvable;
      }
      if (o.failed) o.witness = points_json(c);
    } else {
      auto pool = random_configuration(pp.m, 2 * r, rng, magnitude);
      const int shared = static_cast<int>(t % static_cast<std::size_t>(r + 1));
      std::vector<std::vector<GaussianRational>> a(pool.points().begin(), pool.points().begin() + r);
      std::vector<std::vector<GaussianRational>> b(pool.points().begin(), pool.points().begin() + shared);
      b.insert(b.end(), pool.points().begin() + r, pool.points().begin() + (2 * r - shared));
      Configuration ca(pp.m, a), cb(pp.m, b);
      auto res = certify_disjoint_simplices(ca, cb, pp.p, pp.q);
      o.statistic = static_cast<long>(res.common.size());
      o.failed = !res.dichotomy_holds || static_cast<int>(res.common.size()) != shared;
      if (o.failed) o.witness = {{"a", points_json(ca)}, {"b", points_json(cb)}};
    }
  });
  std::size_t failures = 0;
  json witnesses = json::array();
  std::map<long, std::size_t> histogram;
  for (const auto& o : outcomes) {
    histogram[o.statistic]++;
    if (!o.failed) continue;
    ++failures;
    if (witnesses.size() < 5) witnesses.push_back(o.witness);
  }
  json hist = json::array();
  for (const auto& [k, v] : histogram) hist.push_back({{"value", k}, {"count", v}});
  Outcome out;
  out.result = {{"lemma", lemma},       {"trials", trials},         {"failures", failures},
                {"witnesses", witnesses}, {"guaranteed", guaranteed}, {"certified_range", limit},
                {"asserted", guaranteed}, {"statistic_histogram", hist}};
  if (guaranteed && failures > 0) out.code = kCertificationFailure;
  return out;
}

// ---- resolve ----

json resolution_json(const ResolutionData& res, std::uint64_t seed) {
  json cells = json::array();
  std::map<std::pair<int, int>, long> counts;
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    const auto& c = res.complex.cell(i);
    counts[{c.level, c.dim}]++;
    cells.push_back({{"dim", c.dim}, {"level", c.level}, {"target_simplex", res.cells[i].target_simplex},
                     {"sheets", res.cells[i].sheets}});
  }
  json count_rows = json::array();
  for (const auto& [key, n] : counts) count_rows.push_back({{"level", key.first}, {"dim", key.second}, {"cells", n}});
  json out = {{"map", map_to_json(res.map)},
              {"mode", mode_name(res.mode)},
              {"depth", res.depth},
              {"max_fiber", res.max_fiber},
              {"cell_count", res.cells.size()},
              {"cell_counts", count_rows},
              {"cells", cells}};
  if (res.embedding) {
    std::vector<std::string> params;
    for (const auto& v : res.embedding->parameters) params.push_back(rational_to_string(v));
    out["embedding"] = {{"k", res.embedding->k}, {"dimension", res.embedding->dimension}, {"parameters", params},
                        {"seed", seed}};
  }
  return out;
}

ResolutionData build_with_seed(const SimplicialSurjection& map, ResolutionMode mode, int depth, std::uint64_t seed) {
  if (mode == ResolutionMode::Embedded) {
    auto e = moment_embedding(map.source.vertices(), std::max(depth, 1), seed);
    return build_resolution(map, mode, depth, &e);
  }
  return build_resolution(map, mode, depth);
}

Outcome resolve_build(const json& map_json, const std::string& mode, int depth, std::uint64_t seed) {
  auto map = map_from_json(map_json);
  auto res = build_with_seed(map, parse_mode(mode), depth, seed);
  Outcome out;
  out.result = resolution_json(res, seed);
  json checks = {{"fibers", check_fibers(res)},
                 {"boundary_squared_zero", res.complex.boundary_squared_zero()},
                 {"betti_equivalence_q", check_resolution_equivalence(res, FieldKind::Rationals)},
                 {"betti_equivalence_f2", check_resolution_equivalence(res, FieldKind::F2)}};
  // Truncated resolutions are not expected to be equivalent.
  const bool full = res.depth >= res.max_fiber;
  bool ok = checks["fibers"].get<bool>() && checks["boundary_squared_zero"].get<bool>();
  if (full) ok = ok && checks["betti_equivalence_q"].get<bool>() && checks["betti_equivalence_f2"].get<bool>();
  checks["full_depth"] = full;
  out.result["checks"] = checks;
  out.result["source_betti_q"] = trim_betti(betti_numbers(map.source.chain_complex(), FieldKind::Rationals));
  out.result["resolution_betti_q"] = trim_betti(betti_numbers(res.complex, FieldKind::Rationals));
  if (!ok) out.code = kCertificationFailure;
  return out;
}

Outcome resolve_ss(const json& in, FieldKind field) {
  // Either a build report, its result object, or a bare map.
  const json& body = in.contains("result") ? in.at("result") : in;
  ResolutionData res;
  if (body.contains("source")) {
    res = build_resolution(map_from_json(body), ResolutionMode::Nondegenerate);
  } else {
    auto map = map_from_json(body.at("map"));
    const auto mode = parse_mode(body.value("mode", "nondegenerate"));
    const int depth = body.value("depth", 0);
    if (mode == ResolutionMode::Embedded) {
      const auto& e = body.at("embedding");
      std::vector<mpq_class> params;
      for (const auto& s : e.at("parameters")) params.push_back(parse_rational(s.get<std::string>()));
      auto emb = embedding_from_parameters(e.at("k").get<int>(), std::move(params));
      res = build_resolution(map, mode, depth, &emb);
    } else {
      res = build_resolution(map, mode, depth);
    }
  }
  auto ss = spectral_sequence(res.complex, field);
  json pages = json::array();
  for (std::size_t r = 0; r < ss.pages.size(); ++r) {
    pages.push_back({{"r", r + 1}, {"ranks", page_json(ss.pages[r])},
                     {"differential_ranks", page_json(ss.differential_ranks[r])}});
  }
  const int max_dim = res.complex.max_dim();
  Outcome out;
  out.result = {{"field", field_name(field)},
                {"pages", pages},
                {"infinity", page_json(ss.infinity)},
                {"infinity_totals", total_ranks(ss.infinity, max_dim)},
                {"betti", ss.betti},
                {"pages_are_homology", ss.pages_are_homology},
                {"converges", ss.converges}};
  if (!ss.converges || !ss.pages_are_homology) out.code = kCertificationFailure;
  return out;
}

// ---- disc ----

json certificate_json(const ZeroCertificate& c) {
  json out = {{"verdict", verdict_name(c.verdict)},
              {"mode", c.mode == ZeroMode::Exact ? "exact" : "numeric"},
              {"trace", c.trace}};
  if (!c.witness.empty()) {
    out["witness"] = cvec_json(c.witness);
    out["witness_in_chart"] = c.witness_in_chart;
    out["witness_value"] = c.witness_value;
  }
  if (c.exact_witness) {
    json w = json::array();
    for (const auto& z : *c.exact_witness) w.push_back(to_json(z));
    out["exact_witness"] = w;
  }
  if (c.mode == ZeroMode::Numeric) out["bound"] = c.minimum;
  if (c.chart_zero) out["chart_zero"] = *c.chart_zero;
  if (c.hyperplane_zero) out["hyperplane_zero"] = *c.hyperplane_zero;
  if (c.mode == ZeroMode::Exact) out["gcd_degree"] = c.gcd_degree;
  return out;
}

Outcome disc_check(const json& tuple_json, const std::string& mode, double tol, int density, bool stabilization) {
  MapTuple t = [&] {
    try {
      return tuple_from_json(tuple_json);
    } catch (const std::exception& e) {
      throw InputError(std::string("invalid tuple: ") + e.what());
    }
  }();
  ZeroMode zm;
  if (mode == "exact") {
    zm = ZeroMode::Exact;
  } else if (mode == "numeric") {
    zm = ZeroMode::Numeric;
  } else {
    throw InputError("unknown mode '" + mode + "' (expected exact or numeric)");
  }
  MinNormOptions options;
  options.density = density;
  auto cert = has_common_zero(t, zm, tol, options);
  Outcome out;
  out.result = certificate_json(cert);
  if (cert.verdict == Verdict::Unknown) out.code = kCertificationFailure;
  if (stabilization) {
    auto check = check_stabilization_membership(t, tol);
    out.result["stabilization"] = {{"before", verdict_name(check.before)}, {"after", verdict_name(check.after)}};
    if (check.agree) out.result["stabilization"]["agree"] = *check.agree;
    if (check.agree && !*check.agree) out.code = kCertificationFailure;
  }
  return out;
}

// ---- approx ----

SampledMap samples_from_json(const json& j) {
  SampledMap s;
  const json& rows = j.is_array() ? j : j.at("samples");
  if (!rows.is_array() || rows.empty()) throw InputError("samples must be a nonempty array of {x, y}");
  for (const auto& row : rows) s.samples.push_back({cvec_from_json(row.at("x")), cvec_from_json(row.at("y"))});
  if (j.is_object() && j.contains("boundary")) {
    for (const auto& row : j.at("boundary")) s.boundary.push_back({cvec_from_json(row.at("x")), cvec_from_json(row.at("y"))});
  }
  s.m = static_cast<int>(s.samples.front().x.size()) - 1;
  s.n = static_cast<int>(s.samples.front().y.size()) - 1;
  s.validate();
  return s;
}

json samples_to_json(const SampledMap& s) {
  json rows = json::array();
  for (const auto& smp : s.samples) rows.push_back({{"x", cvec_json(smp.x)}, {"y", cvec_json(smp.y)}});
  return rows;
}

json fit_json(const FitReport& f, bool detailed) {
  json out = {{"p", f.p},
              {"q", f.q},
              {"degree", degree_of_map(f.p, f.q)},
              {"ls_residual", f.ls_residual},
              {"sup_error", f.sup_error},
              {"rank", f.rank},
              {"monomials", f.monomials.size()},
              {"rounds", f.rounds},
              {"underdetermined", f.underdetermined}};
  json warnings = json::array();
  if (f.underdetermined) warnings.push_back("rank-deficient system; minimum-norm solution returned");
  out["warnings"] = warnings;
  if (detailed) {
    out["residuals"] = f.residuals;
    out["tuple"] = to_json(f.corrected ? *f.corrected : f.exact_tuple());
  }
  if (f.corrected) out["boundary_exact"] = f.boundary_exact;
  if (f.within_eps) out["within_eps"] = *f.within_eps;
  if (f.certificate) out["certificate"] = certificate_json(*f.certificate);
  return out;
}

Outcome approx_fit(const SampledMap& samples, int p, int q, const std::optional<json>& boundary, int ladder,
                   double eps, const FitOptions& options) {
  Outcome out;
  if (ladder > 0) {
    auto rungs = fit_ladder(samples, p, q, ladder, options);
    json rows = json::array();
    bool monotone = true;
    for (std::size_t k = 0; k < rungs.size(); ++k) {
      rows.push_back(fit_json(rungs[k], false));
      if (k > 0 && rungs[k].ls_residual > rungs[k - 1].ls_residual * (1 + 1e-12)) monotone = false;
    }
    out.result = {{"ladder", rows}, {"ls_residual_non_increasing", monotone}};
    if (!monotone) out.code = kCertificationFailure;
    return out;
  }
  if (boundary) {
    std::vector<PQPolynomial> polys;
    const json& arr = boundary->is_array() ? *boundary : boundary->at("boundary");
    try {
      for (const auto& b : arr) polys.push_back(polynomial_from_json(b));
    } catch (const std::exception& e) {
      throw InputError(std::string("invalid boundary: ") + e.what());
    }
    auto rep = approximate_with_boundary(samples, polys, p, q, eps, options);
    out.result = fit_json(rep, true);
    const bool certified = rep.certificate && rep.certificate->verdict == Verdict::NoCommonZero;
    out.result["certified"] = certified;
    if (!rep.boundary_exact || !certified || !*rep.within_eps) out.code = kCertificationFailure;
    return out;
  }
  out.result = fit_json(fit_pq_map(samples, p, q, options), true);
  return out;
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("RATMAPS_SEED");
  if (!env || !*env) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("RATMAPS_SEED is not an integer: '") + env + "'");
  }
}

json make_report(const std::string& command, const json& config, std::uint64_t seed, json result) {
  return {{"tool", "ratmaps"}, {"version", RATMAPS_VERSION}, {"command", command},
          {"config", config},  {"seed", seed},                {"result", std::move(result)}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_path;

  CLI::App app{"ratmaps: (p,q)-maps, resolutions and discriminants"};
  app.set_version_flag("--version", std::string(RATMAPS_VERSION));
  app.require_subcommand(1);
  app.add_option("--seed", seed, "base seed (default: RATMAPS_SEED or the built-in constant)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "report path (default stdout)");
  app.fallthrough();

  ProblemParams pp;
  auto add_params = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--m", pp.m)->required();
    if (with_n) sub->add_option("--n", pp.n)->required();
    sub->add_option("--p", pp.p)->required();
    sub->add_option("--q", pp.q)->required();
  };

  auto* book = app.add_subcommand("bookkeeping", "closed-form dimensions and the E1 page");
  book->require_subcommand(1);
  auto* book_report = book->add_subcommand("report", "dimensions, stable range, bundle ranks");
  add_params(book_report, true);
  auto* book_e1 = book->add_subcommand("e1", "symbolic E1 page, optionally evaluated");
  add_params(book_e1, true);
  int rmax = 1, smax = 0;
  std::string betti_path;
  book_e1->add_option("--rmax", rmax)->required();
  book_e1->add_option("--smax", smax)->required();
  book_e1->add_option("--betti", betti_path, "Betti table CSV");
  auto* book_sr = book->add_subcommand("stable-range", "(2n-2m+1)(floor((d+1)/2)+1)");
  int d = 0;
  book_sr->add_option("--m", pp.m)->required();
  book_sr->add_option("--n", pp.n)->required();
  book_sr->add_option("--d", d)->required();

  auto* genpos = app.add_subcommand("genpos", "general-position certification");
  genpos->require_subcommand(1);
  auto* certify = genpos->add_subcommand("certify", "random trials of one lemma");
  std::string lemma = "vdm";
  int r = 1;
  std::size_t trials = 1000;
  bool explore = false;
  long magnitude = 1L << 16;
  certify->add_option("--lemma", lemma)->check(CLI::IsMember({"vdm", "hyperplanes", "fiber", "simplices"}));
  certify->add_option("--m", pp.m)->required();
  certify->add_option("--n", pp.n);
  certify->add_option("--p", pp.p)->required();
  certify->add_option("--q", pp.q)->required();
  certify->add_option("--r", r)->required();
  certify->add_option("--trials", trials);
  certify->add_option("--magnitude", magnitude)->check(CLI::PositiveNumber);
  certify->add_flag("--explore", explore, "allow r beyond the certified range; nothing is asserted");

  auto* resolve = app.add_subcommand("resolve", "simplicial resolutions and spectral sequences");
  resolve->require_subcommand(1);
  auto* rbuild = resolve->add_subcommand("build", "resolve a simplicial surjection");
  std::string map_path, mode = "nondegenerate", in_path, field_str = "q";
  int depth = 0;
  rbuild->add_option("--map", map_path)->required();
  rbuild->add_option("--mode", mode)->check(CLI::IsMember({"nondegenerate", "embedded"}));
  rbuild->add_option("--depth", depth);
  auto* rss = resolve->add_subcommand("ss", "spectral sequence of the level filtration");
  rss->add_option("--in", in_path)->required();
  rss->add_option("--field", field_str);
  auto* rtable = resolve->add_subcommand("betti-table", "Betti table of compactified configuration spaces of C");
  std::string table_path;
  int bound = 4;
  rmax = 4;
  rtable->add_option("--rmax", rmax);
  rtable->add_option("--field", field_str);
  rtable->add_option("--bound", bound, "largest r computed");
  rtable->add_option("--table", table_path, "CSV path (default: alongside the report on stdout)");

  auto* disc = app.add_subcommand("disc", "discriminant membership");
  disc->require_subcommand(1);
  auto* dcheck = disc->add_subcommand("check", "common zero of a tuple");
  std::string tuple_path, disc_mode = "numeric";
  double tol = 1e-8;
  int density = 0;
  bool stab = false;
  dcheck->add_option("--tuple", tuple_path)->required();
  dcheck->add_option("--mode", disc_mode);
  dcheck->add_option("--tol", tol)->check(CLI::PositiveNumber);
  dcheck->add_option("--density", density, "grid points per real dimension");
  dcheck->add_flag("--stabilization", stab, "also compare with the stabilized tuple");

  auto* approx = app.add_subcommand("approx", "least-squares (p,q)-approximation");
  approx->require_subcommand(1);
  auto* afit = approx->add_subcommand("fit", "fit sampled data");
  std::string samples_path, boundary_path;
  int ladder = 0;
  double eps = 0.1;
  FitOptions fit_options;
  afit->add_option("--samples", samples_path)->required();
  afit->add_option("--p", pp.p)->required();
  afit->add_option("--q", pp.q)->required();
  afit->add_option("--boundary", boundary_path);
  afit->add_option("--ladder", ladder, "fit (p+k, q+k) for k < ladder");
  afit->add_option("--eps", eps);
  afit->add_option("--rounds", fit_options.rounds);
  auto* asample = approx->add_subcommand("sample", "write FS-uniform samples of a target");
  std::string target = "bump";
  std::size_t count = 200;
  asample->add_option("--target", target, "bump, or a tuple JSON path");
  asample->add_option("--count", count);

  // Name unknown subcommands explicitly instead of CLI11's generic message.
  {
    CLI::App* level = &app;
    for (std::size_t i = 0; i < args.size() && level && !level->get_subcommands({}).empty(); ++i) {
      const std::string& a = args[i];
      if (a == "--seed" || a == "--jobs" || a == "--out") {
        ++i;
        continue;
      }
      if (a.rfind("-", 0) == 0) continue;
      CLI::App* next = nullptr;
      for (auto* sub : level->get_subcommands({})) {
        if (sub->get_name() == a) next = sub;
      }
      if (!next) {
        err << "error: unknown subcommand '" << a << "'";
        if (level != &app) err << " for '" << level->get_name() << "'";
        err << "\n";
        return kInvalidInput;
      }
      level = next;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << RATMAPS_VERSION << "\n";
    return kOk;
  } catch (const CLI::RequiredError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const CLI::ExtrasError& e) {
    err << "error: unknown subcommand or argument: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  std::string command;
  for (auto* sub = app.get_subcommands().front(); sub; sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front()) {
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  json config = {{"jobs", jobs}};
  Outcome outcome;
  try {
    if (command == "bookkeeping report") {
      config.update({{"m", pp.m}, {"n", pp.n}, {"p", pp.p}, {"q", pp.q}});
      pp.validate();
      outcome.result = dimension_json(pp);
    } else if (command == "bookkeeping e1") {
      config.update({{"m", pp.m}, {"n", pp.n}, {"p", pp.p}, {"q", pp.q}, {"rmax", rmax}, {"smax", smax}});
      auto page = build_e1_page(pp, rmax, smax);
      std::optional<PageEvaluation> eval;
      if (!betti_path.empty()) {
        config["betti"] = betti_path;
        std::ifstream in(betti_path);
        if (!in) throw InputError("cannot open '" + betti_path + "'");
        eval = evaluate_page(page, BettiTable::read_csv(in));
      }
      outcome.result = e1_json(page, eval);
    } else if (command == "bookkeeping stable-range") {
      config.update({{"m", pp.m}, {"n", pp.n}, {"d", d}});
      outcome.result = {{"stable_range", stable_range(pp.m, pp.n, d)}};
    } else if (command == "genpos certify") {
      if (!certify->count("--n")) pp.n = std::max(pp.m, 1);
      config.update({{"lemma", lemma}, {"m", pp.m}, {"n", pp.n}, {"p", pp.p}, {"q", pp.q}, {"r", r},
                     {"trials", trials}, {"explore", explore}, {"magnitude", magnitude}});
      outcome = genpos_certify(lemma, pp, r, trials, seed, jobs, explore, magnitude);
    } else if (command == "resolve build") {
      config.update({{"map", map_path}, {"mode", mode}, {"depth", depth}});
      outcome = resolve_build(read_json_file(map_path), mode, depth, seed);
    } else if (command == "resolve ss") {
      config.update({{"in", in_path}, {"field", field_str}});
      outcome = resolve_ss(read_json_file(in_path), parse_field(field_str));
    } else if (command == "resolve betti-table") {
      config.update({{"rmax", rmax}, {"field", field_str}, {"bound", bound}});
      auto table = fox_neuwirth_table(rmax, parse_field(field_str), bound);
      std::ostringstream csv;
      table.write_csv(csv);
      if (!table_path.empty()) {
        config["table"] = table_path;
        write_output(table_path, csv.str(), out);
      }
      json rows = json::array();
      for (const auto& [key, rank] : table.rows()) rows.push_back({{"r", key.first}, {"degree", key.second}, {"rank", rank}});
      outcome.result = {{"m", table.m()}, {"field", field_name(table.field())}, {"rows", rows}};
    } else if (command == "disc check") {
      config.update({{"tuple", tuple_path}, {"mode", disc_mode}, {"tol", tol}, {"density", density},
                     {"stabilization", stab}});
      outcome = disc_check(read_json_file(tuple_path), disc_mode, tol, density, stab);
    } else if (command == "approx fit") {
      config.update({{"samples", samples_path}, {"p", pp.p}, {"q", pp.q}, {"ladder", ladder}, {"eps", eps},
                     {"rounds", fit_options.rounds}});
      std::optional<json> boundary;
      if (!boundary_path.empty()) {
        config["boundary"] = boundary_path;
        boundary = read_json_file(boundary_path);
      }
      SampledMap samples;
      try {
        samples = samples_from_json(read_json_file(samples_path));
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        throw InputError(std::string("invalid samples: ") + e.what());
      }
      outcome = approx_fit(samples, pp.p, pp.q, boundary, ladder, eps, fit_options);
    } else if (command == "approx sample") {
      config.update({{"target", target}, {"count", count}});
      SampledMap s;
      if (target == "bump") {
        s = sample_function(1, 1, count, seed, bump_identity);
      } else {
        s = sample_tuple(tuple_from_json(read_json_file(target)), count, seed);
      }
      // Samples are data, not a report.
      write_output(out_path, samples_to_json(s).dump(2) + "\n", out);
      return kOk;
    } else {
      throw InputError("unknown subcommand '" + command + "'");
    }
    auto report = make_report(command, config, seed, outcome.result);
    write_output(out_path, report.dump(2) + "\n", out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const UnsupportedMode& e) {
    err << "error: unsupported mode: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DegenerateEmbedding& e) {
    err << "error: embedding not in general position: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "error: out of range: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::overflow_error& e) {
    err << "error: overflow: " << e.what() << "\n";
    return kInvalidInput;
  }
  return outcome.code;
}

}  // namespace ratmaps::cli
