#include "ratmaps/bookkeeping.hpp"

#include <istream>
#include <limits>
#include <tuple>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ratmaps/polynomial.hpp"

namespace ratmaps {

namespace {

long to_long(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<long>::max())) {
    throw std::overflow_error("dimension exceeds the signed 64-bit range");
  }
  return static_cast<long>(v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

void ProblemParams::validate() const {
  if (m < 1 || m > n) {
    throw std::invalid_argument("parameters need 1 <= m <= n (got m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (q < 0 || p < q) {
    throw std::invalid_argument("parameters need p >= q >= 0 (got p=" + std::to_string(p) +
                                ", q=" + std::to_string(q) + ")");
  }
}

DimensionReport dimension_report(const ProblemParams& params) {
  params.validate();
  const int m = params.m, p = params.p, q = params.q;
  DimensionReport report;
  report.dim_V = monomial_count(m, p, q);
  report.dim_unrestricted = homogeneous_monomial_count(m, p, q);
  // Monomials with alpha_m = beta_m = 0 are the (p,q)-monomials in z_0..z_{m-1};
  // their coefficients are fixed by the boundary polynomial.
  const std::uint64_t fixed = homogeneous_monomial_count(m - 1, p, q);
  report.dim_Wi = report.dim_unrestricted - fixed;
  std::uint64_t total;
  if (__builtin_mul_overflow(report.dim_Wi, static_cast<std::uint64_t>(params.n + 1), &total)) {
    throw std::overflow_error("N_pq exceeds 64-bit range");
  }
  report.N_pq = total;
  return report;
}

long stable_range(int m, int n, int d) {
  if (m > n) throw std::invalid_argument("stable_range needs m <= n");
  if (d < 0) throw std::invalid_argument("stable_range needs d >= 0");
  return static_cast<long>(2 * n - 2 * m + 1) * ((d + 1) / 2 + 1);
}

DiscriminantCodim discriminant_codim(int m, int n) {
  if (m > n) throw std::invalid_argument("discriminant_codim needs m <= n");
  return {n - m + 1, m < n};
}

long dim_bound(const ProblemParams& params, int r) {
  if (r < 1) throw std::out_of_range("dim_bound needs r >= 1");
  const long N = to_long(dimension_report(params).N_pq);
  return 2 * N - 2L * r * (params.n - params.m + 1) + r - 1;
}

bool segal_case_flag(int m, int q) { return m == 1 && q == 0; }

int stable_bound(const ProblemParams& params) {
  return segal_case_flag(params.m, params.q) ? params.p : (params.p + 1) / 2;
}

long bundle_rank(const ProblemParams& params, int r) {
  const int bound = stable_bound(params);
  if (r < 1 || r > bound) {
    throw std::out_of_range("bundle_rank needs 1 <= r <= " + std::to_string(bound) + " (got r=" +
                            std::to_string(r) + ")");
  }
  const long N = to_long(dimension_report(params).N_pq);
  return 2 * N - static_cast<long>(2 * params.n + 1) * r - 1;
}

std::string group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::CompactifiedConfiguration: return "compactified-configuration-cohomology";
    case GroupKind::RelativeResolution: return "relative-resolution-cohomology";
    case GroupKind::Zero: return "zero";
  }
  return "?";
}

std::string SymbolicGroup::describe() const {
  std::ostringstream out;
  switch (kind) {
    case GroupKind::Zero: out << "0"; break;
    case GroupKind::CompactifiedConfiguration:
      out << "H^" << degree << "(C^_" << r << "(C^" << m << "))";
      break;
    case GroupKind::RelativeResolution:
      out << "H^" << degree << "(Z^_" << r << ", Z^_" << (r - 1) << ") at (p,q)=(" << p << "," << q << ")";
      break;
  }
  return out.str();
}

SymbolicGroup e1_entry_stable(int m, int n, int r, int s) {
  if (r < 1) throw std::out_of_range("E^1 entries need r >= 1");
  SymbolicGroup g;
  g.r = r;
  g.m = m;
  g.degree = 2L * (n + 1) * r - s;
  g.contribution_degree = s - r;
  g.kind = (g.degree < 0 || g.degree > 2L * m * r) ? GroupKind::Zero : GroupKind::CompactifiedConfiguration;
  return g;
}

SymbolicGroup e1_entry_general(const ProblemParams& params, int r, int s) {
  if (r < 1 || s < 0) throw std::out_of_range("E^1 entries need r >= 1 and s >= 0");
  const long N = to_long(dimension_report(params).N_pq);
  SymbolicGroup g;
  g.r = r;
  g.m = params.m;
  g.p = params.p;
  g.q = params.q;
  g.degree = 2 * N + r - s - 1;
  g.contribution_degree = s - r;
  const bool below_sector = s < 2L * (params.n - params.m + 1) * r;
  g.kind = (below_sector || g.degree < 0) ? GroupKind::Zero : GroupKind::RelativeResolution;
  return g;
}

bool stable_region(int m, int n, int p, int r, int s) {
  const int half = (p + 1) / 2;
  if (r < 1 || r > half) return false;
  const long lo = 2L * (n - m + 1) * r;
  const long hi = static_cast<long>(2 * n - 2 * m + 1) * (half + 1) + r;
  return lo <= s && s <= hi;
}

E1Page build_e1_page(const ProblemParams& params, int rmax, int smax) {
  params.validate();
  if (rmax < 1 || smax < 0) throw std::invalid_argument("page needs rmax >= 1 and smax >= 0");
  E1Page page;
  page.params = params;
  page.rmax = rmax;
  page.smax = smax;
  page.stable_bound = stable_bound(params);
  page.sector_slope = 2 * (params.n - params.m + 1);
  for (int r = 1; r <= rmax; ++r) {
    for (int s = 0; s <= smax; ++s) {
      SymbolicGroup g;
      if (s < page.sector_slope * r) {
        g = e1_entry_general(params, r, s);  // zero by the sector bound
      } else if (r <= page.stable_bound) {
        g = e1_entry_stable(params.m, params.n, r, s);
      } else {
        g = e1_entry_general(params, r, s);
      }
      page.entries.emplace(std::make_pair(r, s), g);
    }
  }
  return page;
}

void BettiTable::set(int r, int degree, long rank) {
  if (r < 1) throw std::invalid_argument("Betti table rows need r >= 1");
  if (rank < 0) throw std::invalid_argument("Betti table ranks must be >= 0");
  if (degree < 0 || degree > 2 * m_ * r) {
    throw std::invalid_argument("degree " + std::to_string(degree) + " outside [0, 2mr] for r=" +
                                std::to_string(r));
  }
  ranks_[{r, degree}] = rank;
}

std::optional<long> BettiTable::lookup(int r, int degree) const {
  auto it = ranks_.find({r, degree});
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

BettiTable BettiTable::read_csv(std::istream& in) {
  std::string line;
  int m = 1;
  std::optional<FieldKind> field;
  std::vector<std::tuple<int, int, long>> rows;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("m=");
      if (pos != std::string::npos) m = std::stoi(line.substr(pos + 2));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!header_seen) {
      if (cells != std::vector<std::string>{"r", "degree", "rank", "field"}) {
        throw std::invalid_argument("Betti table header must be 'r,degree,rank,field'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 4) {
      throw std::invalid_argument("Betti table line " + std::to_string(line_no) + " needs 4 columns");
    }
    try {
      FieldKind row_field = parse_field(cells[3]);
      if (field && *field != row_field) {
        throw std::invalid_argument("Betti table mixes coefficient fields");
      }
      field = row_field;
      std::size_t used = 0;
      int r = std::stoi(cells[0], &used);
      int degree = std::stoi(cells[1]);
      long rank = std::stol(cells[2]);
      rows.emplace_back(r, degree, rank);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("Betti table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument("Betti table is missing its header");
  BettiTable table(m, field.value_or(FieldKind::Rationals));
  for (const auto& [r, degree, rank] : rows) table.set(r, degree, rank);
  return table;
}

void BettiTable::write_csv(std::ostream& out) const {
  out << "# m=" << m_ << "\n";
  out << "r,degree,rank,field\n";
  for (const auto& [key, rank] : ranks_) {
    out << key.first << "," << key.second << "," << rank << "," << field_name(field_) << "\n";
  }
}

std::string entry_status_name(EntryStatus status) {
  switch (status) {
    case EntryStatus::Zero: return "zero";
    case EntryStatus::Evaluated: return "evaluated";
    case EntryStatus::Uncovered: return "uncovered";
    case EntryStatus::Unstable: return "unstable";
  }
  return "?";
}

PageEvaluation evaluate_page(const E1Page& page, const BettiTable& table) {
  if (table.m() != page.params.m) {
    throw std::invalid_argument("Betti table is for m=" + std::to_string(table.m()) + " but the page has m=" +
                                std::to_string(page.params.m));
  }
  PageEvaluation eval;
  for (const auto& [key, group] : page.entries) {
    EvaluatedEntry e;
    e.r = key.first;
    e.s = key.second;
    e.group = group;
    switch (group.kind) {
      case GroupKind::Zero:
        e.status = EntryStatus::Zero;
        break;
      case GroupKind::RelativeResolution:
        e.status = EntryStatus::Unstable;
        break;
      case GroupKind::CompactifiedConfiguration: {
        auto rank = table.lookup(group.r, static_cast<int>(group.degree));
        if (!rank) {
          e.status = EntryStatus::Uncovered;
          eval.uncovered.emplace_back(e.r, e.s);
        } else {
          e.status = EntryStatus::Evaluated;
          e.rank = *rank;
          eval.ranks_consumed += *rank;
          if (*rank > 0) eval.degree_histogram[group.contribution_degree] += *rank;
        }
        break;
      }
    }
    eval.entries.push_back(e);
  }
  return eval;
}

}  // namespace ratmaps
