#include "prodone/invariants.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prodone/structure.hpp"

namespace prodone {
namespace invariants {

std::string to_string(Kind k) {
    switch (k) {
        case Kind::davenport: return "davenport";
        case Kind::eta: return "eta";
        case Kind::egz: return "egz";
        default: return "gao";
    }
}

std::optional<Kind> kind_from_string(const std::string& s) {
    if (s == "davenport" || s == "d") return Kind::davenport;
    if (s == "eta") return Kind::eta;
    if (s == "egz" || s == "s") return Kind::egz;
    if (s == "gao" || s == "E") return Kind::gao;
    return std::nullopt;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::exhaustive: return "exhaustive";
        case Method::budget_exhausted: return "budget_exhausted";
        default: return "predicted_only";
    }
}

std::pair<int, int> forbidden_lengths(const GroupView& v, Kind k) {
    switch (k) {
        case Kind::davenport: return {1, INT_MAX};
        case Kind::eta: return {1, v.exponent()};
        case Kind::egz: return {v.exponent(), v.exponent()};
        default: return {v.size(), v.size()};
    }
}

namespace {

// multiset order on count vectors: at the first differing flat index, more
// copies of the (smaller) element sorts earlier
bool lex_smaller(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

struct Searcher {
    const GroupView& v;
    Kind kind;
    SearchBudget budget;
    std::vector<std::vector<int>> autos;  // identity permutation removed
    std::vector<int> counts;
    std::vector<int> image;
    std::vector<int> min_bad_mult;  // fewest copies of e alone forming a forbidden product-one
    ProductTable table;
    int lo_k, hi_k;
    int len = 0;
    int best = 0;
    std::vector<Sequence> extremal;
    SearchStats stats;
    bool incomplete = false;  // some branch skipped (state cap)
    bool stop_all = false;    // global node/time budget hit
    std::chrono::steady_clock::time_point t0;

    Searcher(const GroupView& view, Kind k, const SearchBudget& b)
        : v(view),
          kind(k),
          budget(b),
          counts(view.size(), 0),
          image(view.size(), 0),
          min_bad_mult(view.size(), INT_MAX),
          table(view, std::make_shared<MulTable>(view), b.state_cap) {
        auto [lo, hi] = forbidden_lengths(view, k);
        lo_k = lo;
        hi_k = hi;
        for (auto& perm : structure::view_automorphisms(view)) {
            bool ident = true;
            for (int i = 0; i < view.size(); ++i)
                if (perm[i] != i) ident = false;
            if (!ident) autos.push_back(perm);
        }
        for (int e = 0; e < view.size(); ++e) {
            int ord = view.spec().element_order(view.element(e));
            long long t = static_cast<long long>(ord) * ((lo_k + ord - 1) / ord);
            if (t >= lo_k && t <= hi_k) min_bad_mult[e] = static_cast<int>(t);
        }
        t0 = std::chrono::steady_clock::now();
    }

    bool over_budget() {
        if (stats.nodes >= budget.max_nodes) return true;
        if ((stats.nodes & 0xfff) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            if (ms >= budget.max_ms) return true;
        }
        return false;
    }

    bool canonical() {
        for (auto& perm : autos) {
            std::fill(image.begin(), image.end(), 0);
            for (int i = 0; i < v.size(); ++i)
                if (counts[i]) image[perm[i]] += counts[i];
            if (lex_smaller(image, counts)) return false;
        }
        return true;
    }

    void dfs(int lo) {
        ++stats.nodes;
        if (len > best) {
            best = len;
            extremal.clear();
        }
        if (len == best) extremal.push_back(Sequence::from_counts(v, counts));
        if (over_budget()) {
            stop_all = true;
            return;
        }
        for (int e = lo; e < v.size(); ++e) {
            if (counts[e] + 1 >= min_bad_mult[e]) {
                ++stats.predicate_pruned;
                continue;
            }
            ++counts[e];
            if (!autos.empty() && !canonical()) {
                --counts[e];
                ++stats.canon_pruned;
                continue;
            }
            uint64_t slab;
            try {
                slab = table.push_term(e);
            } catch (const BudgetExceededError&) {
                --counts[e];
                incomplete = true;
                continue;
            }
            int hi = std::min(hi_k, len + 1);
            if (lo_k <= hi && table.identity_reachable(lo_k, hi, slab)) {
                table.pop_term();
                --counts[e];
                ++stats.predicate_pruned;
                continue;
            }
            ++len;
            dfs(e);
            --len;
            table.pop_term();
            --counts[e];
            if (stop_all) return;
        }
    }
};

}  // namespace

InvariantReport run_search(const GroupView& v, Kind kind, const SearchBudget& b) {
    if (b.max_nodes == 0 || b.max_ms <= 0 || b.state_cap == 0)
        throw std::invalid_argument("search budget fields must be positive");
    Searcher s(v, kind, b);
    s.dfs(0);
    InvariantReport r{v, kind, 0, Method::exhaustive, {}, s.stats};
    r.value = kind == Kind::davenport ? s.best : s.best + 1;
    r.method = (s.stop_all || s.incomplete) ? Method::budget_exhausted : Method::exhaustive;
    r.extremal = std::move(s.extremal);
    r.stats.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - s.t0)
                     .count();
    return r;
}

InvariantReport small_davenport(const GroupView& v, const SearchBudget& b) {
    return run_search(v, Kind::davenport, b);
}
InvariantReport eta(const GroupView& v, const SearchBudget& b) {
    return run_search(v, Kind::eta, b);
}
InvariantReport egz_constant(const GroupView& v, const SearchBudget& b) {
    return run_search(v, Kind::egz, b);
}
InvariantReport gao_constant(const GroupView& v, const SearchBudget& b) {
    return run_search(v, Kind::gao, b);
}

Sequence canonicalize(const GroupView& v, const Sequence& s) {
    const std::vector<int> orig = s.counts(v);
    std::vector<int> bestc = orig;
    std::vector<int> image(v.size());
    for (auto& perm : structure::view_automorphisms(v)) {
        std::fill(image.begin(), image.end(), 0);
        for (int i = 0; i < v.size(); ++i)
            if (orig[i]) image[perm[i]] += orig[i];
        if (lex_smaller(image, bestc)) bestc = image;
    }
    return Sequence::from_counts(v, bestc);
}

std::vector<Sequence> enumerate_extremal(const GroupView& v, Kind kind, const SearchBudget& b) {
    return run_search(v, kind, b).extremal;
}

TheoremValues theorem_values(const GroupSpec& g) {
    using S = Prediction::Status;
    TheoremValues t;
    int n = g.n();
    switch (g.s_class()) {
        case SClass::abelian:
            t.d = {S::ok, n - 1};
            t.eta = {S::ok, n};
            t.egz = {S::ok, 2 * n - 1};
            t.gao = {S::ok, 2 * n - 1};
            break;
        case SClass::dihedral:
            if (n < 3) break;  // outside range
            t.d = {S::ok, n};
            t.eta = {S::ok, n + 1};
            t.egz = {S::ok, n % 2 == 0 ? 2 * n : 3 * n};
            t.gao = {S::ok, 3 * n};
            break;
        case SClass::proper:
            if (n < 8) break;  // outside range
            t.d = {S::ok, n};
            t.eta = {S::ok, n + 1};
            if (n % 2 == 0) {
                t.egz = {S::ok, 2 * n};
                t.gao = {S::ok, 3 * n};
            } else if (structure::factorize(n, g.s()).n1 > 3) {
                t.egz = {S::ok, 3 * n};
                t.gao = {S::ok, 3 * n};
            } else {
                t.egz = {S::excluded, 0};
                t.gao = {S::excluded, 0};
            }
            break;
    }
    return t;
}

Prediction prediction_for(const TheoremValues& t, Kind k) {
    switch (k) {
        case Kind::davenport: return t.d;
        case Kind::eta: return t.eta;
        case Kind::egz: return t.egz;
        default: return t.gao;
    }
}

bool check_chain(int d, int eta, int s, int E) { return d <= eta && eta <= s && s <= E; }

bool check_lower_bounds(const GroupView& v, int d, int eta, int s, int E) {
    return s >= eta + v.exponent() - 1 && E >= d + v.size();
}

bool check_conjectures(const GroupView& v, int d, int eta, int s, int E) {
    return s == eta + v.exponent() - 1 && E == d + v.size();
}

nlohmann::json report_to_json(const InvariantReport& r) {
    nlohmann::json j;
    j["n"] = r.group.spec().n();
    j["s"] = r.group.spec().s();
    j["kind"] = to_string(r.kind);
    j["value"] = r.value;
    j["method"] = to_string(r.method);
    j["extremal_count"] = r.extremal.size();
    j["nodes"] = r.stats.nodes;
    j["ms"] = r.stats.ms;
    j["cyclic_view"] = r.group.cyclic_only();
    nlohmann::json ex = nlohmann::json::array();
    for (auto& s : r.extremal) ex.push_back(format_sequence(s));
    j["extremal"] = std::move(ex);
    return j;
}

std::string report_csv_header() { return "n,s,kind,value,method,extremal_count,nodes,ms"; }

std::string report_to_csv(const InvariantReport& r) {
    std::ostringstream os;
    os << r.group.spec().n() << ',' << r.group.spec().s() << ',' << to_string(r.kind) << ','
       << r.value << ',' << to_string(r.method) << ',' << r.extremal.size() << ','
       << r.stats.nodes << ',' << r.stats.ms;
    return os.str();
}

}  // namespace invariants
}  // namespace prodone
