// Acceptance gate: ten criteria, each printing one PASS/FAIL line.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "prodone/invariants.hpp"
#include "prodone/witness_finder.hpp"

using namespace prodone;
namespace inv = prodone::invariants;
namespace st = prodone::structure;
namespace wit = prodone::witness;

namespace {

int failures = 0;
// exhaustive reports collected for criterion 9, keyed by (n, s, cyclic?)
std::map<std::tuple<int, int, bool>, std::map<inv::Kind, int>> exhaustive_values;

void record(const inv::InvariantReport& r) {
    if (r.method != inv::Method::exhaustive) return;
    auto key = std::make_tuple(r.group.spec().n(), r.group.spec().s(), r.group.cyclic_only());
    exhaustive_values[key][r.kind] = r.value;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double sec() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int crit, bool ok, const std::string& detail, double sec) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << crit << ": " << detail << " ("
              << sec << " s)\n";
    if (!ok) ++failures;
}

std::vector<int> valid_twists(int n) {
    std::vector<int> out;
    for (int s = 0; s < n; ++s)
        if ((s * s) % n == 1 % n) out.push_back(s);
    return out;
}

Sequence random_seq(const GroupSpec& g, int len, std::mt19937_64& rng) {
    Sequence s(g);
    std::uniform_int_distribution<int> dist(0, g.order() - 1);
    for (int i = 0; i < len; ++i) s.add(g.unflat(dist(rng)));
    return s;
}

uint64_t env_u64(const char* name, uint64_t dflt) {
    const char* v = std::getenv(name);
    return v ? std::strtoull(v, nullptr, 10) : dflt;
}

// ---- criterion 1: group axioms + oracle cross-check -------------------------

void criterion1() {
    Timer t;
    bool ok = true;
    std::string why;
    for (int n = 8; n <= 48 && ok; ++n)
        for (int s : valid_twists(n)) {
            GroupSpec g = GroupSpec::make(n, s);
            int m = g.order();
            if (g.exponent() != (n % 2 == 0 ? n : 2 * n)) {
                ok = false;
                why = "exponent formula at n=" + std::to_string(n);
                break;
            }
            for (int a = 0; a < m && ok; ++a) {
                Element ea = g.unflat(a);
                if (g.mul(ea, g.inverse(ea)) != g.identity() ||
                    g.mul(g.inverse(ea), ea) != g.identity()) {
                    ok = false;
                    why = "inverse axiom";
                }
                for (int b = 0; b < m && ok; ++b)
                    for (int c = 0; c < m; ++c)
                        if (g.mul(g.mul(ea, g.unflat(b)), g.unflat(c)) !=
                            g.mul(ea, g.mul(g.unflat(b), g.unflat(c)))) {
                            ok = false;
                            why = "associativity at n=" + std::to_string(n);
                            break;
                        }
            }
        }
    std::mt19937_64 rng(1);
    int checked = 0;
    for (auto [n, s] : {std::pair{8, 3}, {8, 5}, {12, 7}})
        if (ok) {
            GroupView v = GroupView::full(GroupSpec::make(n, s));
            std::uniform_int_distribution<int> ld(1, 6);
            for (int trial = 0; trial < 10000; ++trial, ++checked) {
                Sequence seq = random_seq(v.spec(), ld(rng), rng);
                ProductTable tbl = ProductTable::build(v, seq);
                if (tbl.pi() != naive_pi(v, seq)) {
                    ok = false;
                    why = "product_table vs naive_pi";
                    break;
                }
            }
        }
    report(1, ok,
           ok ? "axioms exhaustive for 8<=n<=48; naive_pi agrees on " +
                    std::to_string(checked) + " random sequences"
              : why,
           t.sec());
}

// ---- criterion 2: classical values for C_n and D_2n --------------------------

void criterion2() {
    Timer t;
    bool ok = true;
    std::string why;
    auto check4 = [&](const GroupView& v, int d, int e, int s, int E, const std::string& name) {
        int got[4];
        inv::Kind kinds[4] = {inv::Kind::davenport, inv::Kind::eta, inv::Kind::egz,
                              inv::Kind::gao};
        for (int i = 0; i < 4; ++i) {
            auto r = inv::run_search(v, kinds[i]);
            record(r);
            got[i] = r.method == inv::Method::exhaustive ? r.value : -1;
        }
        if (got[0] != d || got[1] != e || got[2] != s || got[3] != E) {
            ok = false;
            why = name + " got (" + std::to_string(got[0]) + "," + std::to_string(got[1]) +
                  "," + std::to_string(got[2]) + "," + std::to_string(got[3]) + ")";
        }
    };
    for (int n = 3; n <= 9 && ok; ++n)
        check4(GroupView::cyclic_group(n), n - 1, n, 2 * n - 1, 2 * n - 1,
               "C_" + std::to_string(n));
    for (int n = 3; n <= 6 && ok; ++n)
        check4(GroupView::full(GroupSpec::make(n, n - 1)), n, n + 1,
               n % 2 == 0 ? 2 * n : 3 * n, 3 * n, "D_" + std::to_string(2 * n));
    report(2, ok, ok ? "C_n (3..9) and D_2n (3..6) match the classical rows" : why, t.sec());
}

// ---- criteria 3 + 4: eta and d, direct + inverse, four groups ---------------

void criterion34() {
    const std::vector<std::pair<int, int>> groups{{8, 3}, {8, 5}, {12, 5}, {12, 7}};
    for (auto [crit, kind] : {std::pair{3, inv::Kind::eta}, {4, inv::Kind::davenport}}) {
        Timer t;
        bool ok = true;
        std::string why;
        int classified = 0;
        for (auto [n, s] : groups) {
            GroupSpec g = GroupSpec::make(n, s);
            auto r = inv::run_search(GroupView::full(g), kind);
            record(r);
            int want = kind == inv::Kind::eta ? n + 1 : n;
            if (r.method != inv::Method::exhaustive || r.value != want) {
                ok = false;
                why = "value for (" + std::to_string(n) + "," + std::to_string(s) + ")";
                break;
            }
            // inverse: every extremal is a family member...
            std::set<std::string> got;
            for (auto& e : r.extremal) {
                if (e.length() != n ||
                    !st::classify_inverse(g, e, st::FamilyKind::davenport_eta)) {
                    ok = false;
                    why = "unclassified extremal " + format_sequence(e);
                    break;
                }
                got.insert(format_sequence(e));
                ++classified;
            }
            if (!ok) break;
            // ...and every family member canonicalizes into the extremal set (no gaps)
            GroupView v = GroupView::full(g);
            for (auto& [a, b] : st::generating_pairs(g)) {
                for (int tv = 0; tv < n; ++tv) {
                    Sequence m = st::family_member(g, st::FamilyKind::davenport_eta,
                                                   {a, b, {tv}});
                    if (!got.count(format_sequence(inv::canonicalize(v, m)))) {
                        ok = false;
                        why = "family member missing from extremal set";
                        break;
                    }
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        report(crit, ok,
               ok ? std::string(kind == inv::Kind::eta ? "eta = n+1" : "d = n") +
                        " exhaustive on 4 groups; " + std::to_string(classified) +
                        " extremal classes = family, both directions"
                  : why,
               t.sec());
    }
}

// ---- criteria 5 + 6: s and E at n = 8, plus the egz inverse problem ----------

void criterion56() {
    // s(G) exhaustive for both twists; E(G) exhaustive within budget, else the
    // documented downgrade: certify E >= 24 via a free family member and apply
    // the statistical form of criterion 7 at length 24.
    Timer t5;
    bool ok5 = true;
    std::string note5;
    std::vector<inv::InvariantReport> egz_reports;
    inv::SearchBudget eb;
    eb.max_ms = static_cast<int64_t>(env_u64("ACCEPT_GAO_MS", 120'000));
    for (int s : {3, 5}) {
        GroupSpec g = GroupSpec::make(8, s);
        GroupView v = GroupView::full(g);
        auto rs = inv::run_search(v, inv::Kind::egz);
        record(rs);
        egz_reports.push_back(rs);
        if (rs.method != inv::Method::exhaustive || rs.value != 16) {
            ok5 = false;
            note5 = "s(G_{8," + std::to_string(s) + "}) != 16";
            break;
        }
        auto rE = inv::run_search(v, inv::Kind::gao, eb);
        record(rE);
        if (rE.method == inv::Method::exhaustive) {
            if (rE.value != 24) {
                ok5 = false;
                note5 = "E(G_{8," + std::to_string(s) + "}) = " + std::to_string(rE.value);
                break;
            }
            note5 += " E(G_{8," + std::to_string(s) + "})=24 exhaustive;";
        } else {
            // explicit downgrade path
            st::FamilyParams p{{1, 0}, {0, 1}, {1, 0, 0}};
            bool lower = st::is_family_free_analytic(g, st::FamilyKind::gao_even, p) &&
                         !has_product_one_of_length(
                              v, st::family_member(g, st::FamilyKind::gao_even, p), 16);
            std::mt19937_64 rng(800 + s);
            bool stat = true;
            for (int trial = 0; trial < 2000 && stat; ++trial) {
                Sequence seq = random_seq(g, 24, rng);
                auto o = wit::find_exp_product_one(g, seq, 16);
                stat = o && verify_witness(v, seq, o->witness);
            }
            if (!(lower && stat)) {
                ok5 = false;
                note5 = "downgrade certification failed for s=" + std::to_string(s);
                break;
            }
            note5 += " DOWNGRADED E(G_{8," + std::to_string(s) +
                     "}): budget exhausted; lower bound 24 certified via free family, "
                     "statistical form 2000/2000 at length 24;";
        }
    }
    report(5, ok5, ok5 ? "s(G_{8,3}) = s(G_{8,5}) = 16 exhaustive;" + note5 : note5, t5.sec());

    // criterion 6 reuses the egz extremal sets (length 15, n-product-one free)
    Timer t6;
    bool ok6 = true;
    std::string why6;
    int total = 0;
    for (auto& r : egz_reports) {
        if (ok6 && r.method != inv::Method::exhaustive) {
            ok6 = false;
            why6 = "egz enumeration not exhaustive";
        }
        if (!ok6) break;
        GroupSpec g = r.group.spec();
        GroupView v = r.group;
        std::set<std::string> enumerated;
        for (auto& e : r.extremal) {
            auto p = st::classify_inverse(g, e, st::FamilyKind::egz_even);
            if (!p || std::gcd(((p->t[0] - p->t[1]) % 8 + 8) % 8, 8) != 1) {
                ok6 = false;
                why6 = "extremal not in the egz family: " + format_sequence(e);
                break;
            }
            enumerated.insert(format_sequence(e));
            ++total;
        }
        if (!ok6) break;
        // generator side: canonical classes of all valid family members
        std::set<std::string> generated;
        for (auto& [a, b] : st::generating_pairs(g))
            for (int t1 = 0; t1 < 8; ++t1)
                for (int t2 = 0; t2 < 8; ++t2) {
                    if (std::gcd(((t1 - t2) % 8 + 8) % 8, 8) != 1) continue;
                    for (int t3 = 0; t3 < 8; ++t3) {
                        Sequence m = st::family_member(g, st::FamilyKind::egz_even,
                                                       {a, b, {t1, t2, t3}});
                        generated.insert(format_sequence(inv::canonicalize(v, m)));
                    }
                }
        if (generated != enumerated) {
            ok6 = false;
            why6 = "canonical class counts differ: enumerated " +
                   std::to_string(enumerated.size()) + ", generated " +
                   std::to_string(generated.size());
        }
    }
    report(6, ok6,
           ok6 ? std::to_string(total) +
                     " 15-length free classes all classify; generator classes match"
               : why6,
           t6.sec());
}

// ---- criterion 7: statistical upper bound, 10^4 witnesses each ---------------

void criterion7() {
    Timer t;
    bool ok = true;
    std::string why;
    long long found = 0;
    struct Row {
        int n, s, len, target;
    };
    for (auto [n, s, len, target] :
         {Row{12, 5, 24, 12}, {15, 4, 45, 30}, {16, 7, 32, 16}, {20, 11, 40, 20}}) {
        GroupSpec g = GroupSpec::make(n, s);
        GroupView v = GroupView::full(g);
        std::mt19937_64 rng(n * 10000 + s);
        for (int trial = 0; trial < 10000; ++trial) {
            Sequence seq = random_seq(g, len, rng);
            auto o = wit::find_exp_product_one(g, seq, target);
            if (!o || (int)o->witness.ordered.size() != target ||
                !verify_witness(v, seq, o->witness)) {
                ok = false;
                why = "miss at (" + std::to_string(n) + "," + std::to_string(s) +
                      ") trial " + std::to_string(trial);
                break;
            }
            ++found;
        }
        if (!ok) break;
    }
    report(7, ok, ok ? std::to_string(found) + "/40000 verified witnesses (100%)" : why,
           t.sec());
}

// ---- criterion 8: analytic freeness at scale ---------------------------------

void criterion8() {
    Timer t;
    bool ok = true;
    std::string why;
    int total = 0;
    for (auto [n, s] : {std::pair{8, 3}, {12, 7}, {15, 4}, {20, 9}, {24, 5}}) {
        GroupSpec g = GroupSpec::make(n, s);
        std::vector<st::FamilyKind> kinds =
            n % 2 == 0 ? std::vector{st::FamilyKind::egz_even, st::FamilyKind::gao_even}
                       : std::vector{st::FamilyKind::egz_odd};
        auto pairs = st::generating_pairs(g);
        for (auto k : kinds) {
            int per_kind = 0;
            for (auto& [a, b] : pairs) {
                for (int t1 = 0; t1 < n && ok && per_kind < 150; ++t1)
                    for (int t2 = 0; t2 < n && ok; ++t2) {
                        if (std::gcd(((t1 - t2) % n + n) % n, n) != 1) continue;
                        st::FamilyParams p{a, b, {t1, t2, (t1 * 3 + t2) % n}};
                        if (!st::is_family_free_analytic(g, k, p)) {
                            ok = false;
                            why = "family not free at (" + std::to_string(n) + "," +
                                  std::to_string(s) + ")";
                            break;
                        }
                        ++per_kind;
                        ++total;
                        if (n == 8) {  // DP cross-check where feasible
                            Sequence m = st::family_member(g, k, p);
                            int tgt = st::family_target_length(g, k);
                            if (has_product_one_of_length(GroupView::full(g), m, tgt)) {
                                ok = false;
                                why = "DP disagrees with analytic freeness at n=8";
                            }
                        }
                    }
                if (!ok || per_kind >= 150) break;
            }
            if (ok && per_kind < 100) {
                ok = false;
                why = "fewer than 100 parameter choices at n=" + std::to_string(n);
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    report(8, ok, ok ? std::to_string(total) + " parameter choices free; DP agrees at n=8" : why,
           t.sec());
}

// ---- criterion 9: chain / bounds / conjectures on every exhaustive report ----

void criterion9() {
    Timer t;
    bool ok = true;
    std::string why;
    int complete = 0;
    for (auto& [key, vals] : exhaustive_values) {
        auto [n, s, cyc] = key;
        GroupView v = cyc ? GroupView::cyclic(GroupSpec::make(n, s))
                          : GroupView::full(GroupSpec::make(n, s));
        if (vals.size() < 4) continue;  // chain checks need all four
        ++complete;
        int d = vals.at(inv::Kind::davenport), e = vals.at(inv::Kind::eta),
            sv = vals.at(inv::Kind::egz), E = vals.at(inv::Kind::gao);
        if (!inv::check_chain(d, e, sv, E) || !inv::check_lower_bounds(v, d, e, sv, E) ||
            !inv::check_conjectures(v, d, e, sv, E)) {
            ok = false;
            why = "violation at (" + std::to_string(n) + "," + std::to_string(s) + ")";
            break;
        }
    }
    if (ok && complete == 0) {
        ok = false;
        why = "no complete exhaustive reports collected";
    }
    report(9, ok,
           ok ? "chain, lower bounds and conjectured equalities hold on " +
                    std::to_string(complete) + " complete report sets"
              : why,
           t.sec());
}

// ---- criterion 10: EGZ cyclic completeness + inverse bounds -------------------

void for_each_multiset(int m, int len, std::vector<int>& c, int i,
                       const std::function<void(const std::vector<int>&)>& f) {
    if (i == m - 1) {
        c[i] = len;
        f(c);
        return;
    }
    for (int v = 0; v <= len; ++v) {
        c[i] = v;
        for_each_multiset(m, len - v, c, i + 1, f);
    }
}

void criterion10() {
    Timer t;
    bool ok = true;
    std::string why;
    long long egz_checked = 0, free_checked = 0;
    for (int n = 2; n <= 7 && ok; ++n) {
        GroupView v = GroupView::cyclic_group(n);
        std::vector<int> c(n);
        for_each_multiset(n, 2 * n - 1, c, 0, [&](const std::vector<int>& counts) {
            if (!ok) return;
            Sequence s = Sequence::from_counts(v, counts);
            auto w = wit::egz_cyclic(v, s);
            if (!w || (int)w->ordered.size() != n || !verify_witness(v, s, *w)) {
                ok = false;
                why = "egz_cyclic failed on " + format_sequence(s);
            }
            ++egz_checked;
        });
    }
    for (int n = 4; n <= 8 && ok; ++n)
        for (int k = 2; k <= 2 && ok; ++k) {
            GroupView v = GroupView::cyclic_group(n);
            std::vector<int> c(n);
            for_each_multiset(n, 2 * n - k, c, 0, [&](const std::vector<int>& counts) {
                if (!ok) return;
                Sequence s = Sequence::from_counts(v, counts);
                try {
                    auto p = wit::egz_cyclic_inverse_pair(v, s, k);
                    if (p) ++free_checked;
                } catch (const std::logic_error& e) {
                    ok = false;
                    why = std::string("bounds violated: ") + e.what();
                }
            });
        }
    report(10, ok,
           ok ? std::to_string(egz_checked) + " EGZ multisets complete; bounds hold on " +
                    std::to_string(free_checked) + " free sequences"
              : why,
           t.sec());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion34();
    criterion56();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS\n"
                                : std::to_string(failures) + " CRITERIA FAILED\n");
    return failures;
}
