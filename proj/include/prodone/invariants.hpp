#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prodone/product_table.hpp"

namespace prodone {
namespace invariants {

enum class Kind { davenport, eta, egz, gao };

std::string to_string(Kind k);
std::optional<Kind> kind_from_string(const std::string& s);

struct SearchBudget {
    uint64_t max_nodes = 1'000'000'000;
    int64_t max_ms = 3'600'000;
    uint64_t state_cap = kDefaultStateCap;
};

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t canon_pruned = 0;
    uint64_t predicate_pruned = 0;
    int64_t ms = 0;
};

enum class Method { exhaustive, budget_exhausted, predicted_only };
std::string to_string(Method m);

/// Result of a pruned exhaustive search for one invariant.
///   davenport: value = maximum product-one free length, extremals at that length.
///   eta / egz / gao: value = 1 + maximum length avoiding the kind's forbidden
///   product-one lengths; extremals are the avoiding sequences at value - 1.
/// Extremals are canonical orbit representatives (see canonicalize).
struct InvariantReport {
    GroupView group;
    Kind kind;
    int value = 0;
    Method method = Method::exhaustive;
    std::vector<Sequence> extremal;
    SearchStats stats;
};

/// Forbidden product-one subsequence lengths {lo, hi} the kind's sequences
/// must avoid; hi = INT_MAX for davenport (any length).
std::pair<int, int> forbidden_lengths(const GroupView& v, Kind k);

/// Canonical-extension DFS over multisets, orbit-pruned by the view's
/// automorphisms, avoidance checked incrementally on a shared ProductTable.
InvariantReport run_search(const GroupView& v, Kind kind, const SearchBudget& b = {});

InvariantReport small_davenport(const GroupView& v, const SearchBudget& b = {});
InvariantReport eta(const GroupView& v, const SearchBudget& b = {});
InvariantReport egz_constant(const GroupView& v, const SearchBudget& b = {});
InvariantReport gao_constant(const GroupView& v, const SearchBudget& b = {});

/// Lexicographically least automorphism image of S. Multisets are ordered by
/// their sorted element lists, i.e. at the first flat index where the count
/// vectors differ, more copies sorts earlier.
Sequence canonicalize(const GroupView& v, const Sequence& s);

/// All canonical avoiding sequences at the kind's extremal length.
std::vector<Sequence> enumerate_extremal(const GroupView& v, Kind kind,
                                         const SearchBudget& b = {});

struct Prediction {
    enum class Status { ok, excluded, outside_range };
    Status status = Status::outside_range;
    int value = 0;
};

/// Closed-form values: C_n row for the abelian class, the dihedral row, and
/// for the remaining class d = n, eta = n+1, E = 3n, s = 2n (n even) or 3n
/// (n odd); n odd with n1 = 3 marks egz and gao excluded.
struct TheoremValues {
    Prediction d, eta, egz, gao;
};
TheoremValues theorem_values(const GroupSpec& g);
Prediction prediction_for(const TheoremValues& t, Kind k);

/// d <= eta <= s <= E.
bool check_chain(int d, int eta, int s, int E);
/// s >= eta + exp - 1 and E >= d + |G|.
bool check_lower_bounds(const GroupView& v, int d, int eta, int s, int E);
/// The conjectured equalities s = eta + exp - 1 and E = d + |G|.
bool check_conjectures(const GroupView& v, int d, int eta, int s, int E);

/// Stable fields: n, s, kind, value, method, extremal_count, nodes, ms
/// (JSON additionally carries the extremal sequences).
nlohmann::json report_to_json(const InvariantReport& r);
std::string report_csv_header();
std::string report_to_csv(const InvariantReport& r);

}  // namespace invariants
}  // namespace prodone
