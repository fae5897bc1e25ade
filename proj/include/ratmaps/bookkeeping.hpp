#pragma once

// Closed-form invariants of the spaces of (p,q)-maps CP^m -> CP^n with fixed
// boundary: dimensions, stable range, discriminant codimension, the
// dimension bound for the resolution strata, bundle ranks, and the E^1 page of
// the spectral sequence (symbolically, with numeric evaluation against a
// Betti table for the compactified configuration spaces).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratmaps/field.hpp"

namespace ratmaps {

struct ProblemParams {
  int m = 1;
  int n = 1;
  int p = 0;
  int q = 0;

  int d() const { return p - q; }
  /// 1 <= m <= n and p >= q >= 0; throws std::invalid_argument.
  void validate() const;
};

struct DimensionReport {
  std::uint64_t dim_V = 0;         // C(p+m,m) C(q+m,m)
  std::uint64_t dim_unrestricted = 0;  // all (p,q)-monomials in m+1 variables
  std::uint64_t dim_Wi = 0;        // monomials not fixed by the boundary
  std::uint64_t N_pq = 0;          // (n+1) dim_Wi
};

DimensionReport dimension_report(const ProblemParams& params);

/// (2n - 2m + 1) (floor((d+1)/2) + 1).
long stable_range(int m, int n, int d);

struct DiscriminantCodim {
  int codimension = 0;
  bool simply_connected = false;
};
DiscriminantCodim discriminant_codim(int m, int n);

/// Real dimension bound 2N - 2r(n-m+1) + r - 1 for the r-th stratum.
long dim_bound(const ProblemParams& params, int r);

/// True for m = 1, q = 0, where the resolution is non-degenerate and the
/// configuration-space description holds for every r <= p.
bool segal_case_flag(int m, int q);

/// Largest r for which the bundle description holds: floor((p+1)/2), or p in
/// the m = 1, q = 0 case.
int stable_bound(const ProblemParams& params);

/// 2N - (2n+1) r - 1; throws std::out_of_range unless 1 <= r <= stable_bound.
long bundle_rank(const ProblemParams& params, int r);

enum class GroupKind { CompactifiedConfiguration, RelativeResolution, Zero };

std::string group_kind_name(GroupKind kind);

/// H^degree(C^_r(C^m)) for the compactified-configuration kind, or
/// H^degree(Z^_r, Z^_{r-1}) for the relative-resolution kind.
struct SymbolicGroup {
  GroupKind kind = GroupKind::Zero;
  long degree = 0;
  int r = 0;
  int m = 0;
  int p = 0;  // relative-resolution kind only
  int q = 0;
  long contribution_degree = 0;  // s - r: the homological degree it feeds

  std::string describe() const;
};

SymbolicGroup e1_entry_stable(int m, int n, int r, int s);
SymbolicGroup e1_entry_general(const ProblemParams& params, int r, int s);

/// r <= floor((p+1)/2) and 2(n-m+1) r <= s <= (2n-2m+1)(floor((p+1)/2)+1) + r.
bool stable_region(int m, int n, int p, int r, int s);

struct E1Page {
  ProblemParams params;
  int rmax = 0;
  int smax = 0;
  int stable_bound = 0;    // entries with r <= stable_bound use the configuration description
  int sector_slope = 0;    // nonzero entries satisfy s >= sector_slope * r
  std::map<std::pair<int, int>, SymbolicGroup> entries;  // keyed by (r, s)
};

E1Page build_e1_page(const ProblemParams& params, int rmax, int smax);

/// Ranks of the reduced cohomology of C^_r(C^m) over one field. A missing
/// (r, degree) row means "unknown", never zero.
class BettiTable {
 public:
  BettiTable(int m, FieldKind field) : m_(m), field_(field) {}

  int m() const { return m_; }
  FieldKind field() const { return field_; }
  void set(int r, int degree, long rank);
  std::optional<long> lookup(int r, int degree) const;
  bool empty() const { return ranks_.empty(); }
  const std::map<std::pair<int, int>, long>& rows() const { return ranks_; }

  /// CSV with header "r,degree,rank,field". Lines starting with '#' are
  /// comments; "# m=<int>" sets the configuration-space dimension (default 1).
  static BettiTable read_csv(std::istream& in);
  void write_csv(std::ostream& out) const;

  bool operator==(const BettiTable&) const = default;

 private:
  int m_;
  FieldKind field_;
  std::map<std::pair<int, int>, long> ranks_;
};

enum class EntryStatus { Zero, Evaluated, Uncovered, Unstable };
std::string entry_status_name(EntryStatus status);

struct EvaluatedEntry {
  int r = 0;
  int s = 0;
  SymbolicGroup group;
  EntryStatus status = EntryStatus::Zero;
  long rank = 0;  // meaningful for Zero and Evaluated
};

struct PageEvaluation {
  std::vector<EvaluatedEntry> entries;
  std::map<long, long> degree_histogram;  // contribution degree -> total rank
  std::vector<std::pair<int, int>> uncovered;  // (r, s)
  long ranks_consumed = 0;
};

/// Replaces every stable entry by the table rank at (r, 2(n+1)r - s). Throws
/// std::invalid_argument when the table is for a different m.
PageEvaluation evaluate_page(const E1Page& page, const BettiTable& table);

}  // namespace ratmaps
