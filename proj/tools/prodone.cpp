#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prodone/invariants.hpp"
#include "prodone/witness_finder.hpp"

using nlohmann::json;
using namespace prodone;

namespace {

// exit codes: 0 ok, 2 usage/validation, 3 budget-partial, 4 mismatch/verification failure
constexpr int kOk = 0, kUsage = 2, kPartial = 3, kMismatch = 4;

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const json& j, const std::string& text) const {
        std::ostream* os = &std::cout;
        std::ofstream f;
        if (!path.empty()) {
            f.open(path);
            os = &f;
        }
        if (format == "json")
            *os << j.dump(2) << "\n";
        else
            *os << text;
    }
};

uint64_t env_u64(const char* name, uint64_t dflt) {
    const char* v = std::getenv(name);
    return v ? std::strtoull(v, nullptr, 10) : dflt;
}

void add_common(CLI::App* cmd, int& n, int& s, Output& out) {
    cmd->add_option("--n", n, "cyclic part order n")->required();
    cmd->add_option("--s", s, "twist exponent s, s^2 = 1 (mod n)")->required();
    cmd->add_option("--format", out.format, "text|json|csv")->default_val("text");
    cmd->add_option("--out", out.path, "write the report to a file instead of stdout");
}

void add_budget(CLI::App* cmd, invariants::SearchBudget& b) {
    b.max_nodes = env_u64("PRODONE_MAX_NODES", b.max_nodes);
    b.max_ms = static_cast<int64_t>(env_u64("PRODONE_MAX_MS", b.max_ms));
    b.state_cap = env_u64("PRODONE_STATE_CAP", b.state_cap);
    cmd->add_option("--max-nodes", b.max_nodes, "search node budget");
    cmd->add_option("--max-ms", b.max_ms, "search wall-time budget (ms)");
    cmd->add_option("--state-cap", b.state_cap, "DP state budget per table");
    int threads = 1;
    cmd->add_option("--threads", threads, "worker count (current engine is sequential)");
}

// the view the invariants run on: abelian groups use the cyclic restriction
GroupView working_view(const GroupSpec& g) {
    return g.s_class() == SClass::abelian ? GroupView::cyclic(g) : GroupView::full(g);
}

json prediction_json(const invariants::Prediction& p, const GroupSpec& g) {
    using St = invariants::Prediction::Status;
    switch (p.status) {
        case St::ok: return {{"status", "ok"}, {"value", p.value}};
        case St::excluded:
            return {{"status", "excluded"},
                    {"note", "n odd with n1 = 3; no closed-form value"}};
        default:
            return {{"status", "outside_theorem_range"}, {"n", g.n()}};
    }
}

structure::FamilyKind family_for(const GroupSpec& g, invariants::Kind k) {
    using FK = structure::FamilyKind;
    switch (k) {
        case invariants::Kind::davenport:
        case invariants::Kind::eta: return FK::davenport_eta;
        case invariants::Kind::egz:
            return g.n() % 2 == 0 ? FK::egz_even : FK::egz_odd;
        default: return g.n() % 2 == 0 ? FK::gao_even : FK::egz_odd;
    }
}

Sequence random_sequence(const GroupSpec& g, int len, std::mt19937_64& rng) {
    Sequence s(g);
    std::uniform_int_distribution<int> dist(0, g.order() - 1);
    for (int i = 0; i < len; ++i) s.add(g.unflat(dist(rng)));
    return s;
}

json witness_json(const witness::FinderOutcome& o) {
    json w;
    w["strategy"] = witness::to_string(o.strategy);
    w["length"] = o.witness.ordered.size();
    json ord = json::array();
    for (auto& e : o.witness.ordered) ord.push_back(format_element(e));
    w["ordered"] = std::move(ord);
    w["positions"] = o.witness.positions;
    if (o.trace) {
        w["blocks"] = o.trace->blocks.size();
        w["block_size"] = o.trace->blocks.empty() ? 0 : o.trace->blocks[0].terms.length();
    }
    return w;
}

int cmd_constants(const GroupSpec& g, const std::vector<invariants::Kind>& kinds,
                  const invariants::SearchBudget& budget, const Output& out) {
    GroupView v = working_view(g);
    auto tv = invariants::theorem_values(g);
    json j;
    j["n"] = g.n();
    j["s"] = g.s();
    j["class"] = to_string(g.s_class());
    j["exponent"] = v.exponent();
    j["order"] = v.size();
    j["kinds"] = json::array();
    std::ostringstream text;
    text << "G(n=" << g.n() << ", s=" << g.s() << ")  class=" << to_string(g.s_class())
         << "  exp=" << v.exponent() << "  |G|=" << v.size() << "\n";
    text << "kind        computed  method             predicted\n";
    int rc = kOk;
    std::map<invariants::Kind, int> got;
    for (auto k : kinds) {
        auto r = invariants::run_search(v, k, budget);
        auto p = invariants::prediction_for(tv, k);
        json row = invariants::report_to_json(r);
        row["prediction"] = prediction_json(p, g);
        j["kinds"].push_back(row);
        got[k] = r.value;
        std::string pred = p.status == invariants::Prediction::Status::ok
                               ? std::to_string(p.value)
                           : p.status == invariants::Prediction::Status::excluded
                               ? "excluded (n1=3)"
                               : "outside theorem range";
        text << std::left << std::setw(12) << invariants::to_string(k) << std::setw(10)
             << r.value << std::setw(19) << invariants::to_string(r.method) << pred << "\n";
        if (r.method == invariants::Method::budget_exhausted) rc = std::max(rc, kPartial);
        if (r.method == invariants::Method::exhaustive &&
            p.status == invariants::Prediction::Status::ok && r.value != p.value) {
            text << "MISMATCH: exhaustive " << invariants::to_string(k) << " = " << r.value
                 << " but theorem predicts " << p.value << "\n";
            rc = kMismatch;
        }
    }
    if (got.size() == 4) {
        int d = got[invariants::Kind::davenport], e = got[invariants::Kind::eta],
            sv = got[invariants::Kind::egz], E = got[invariants::Kind::gao];
        j["checks"] = {{"chain", invariants::check_chain(d, e, sv, E)},
                       {"lower_bounds", invariants::check_lower_bounds(v, d, e, sv, E)},
                       {"conjectures", invariants::check_conjectures(v, d, e, sv, E)}};
    }
    if (out.format == "csv") {
        std::ostringstream csv;
        csv << invariants::report_csv_header() << "\n";
        for (auto& row : j["kinds"]) {
            csv << row["n"] << ',' << row["s"] << ',' << row["kind"].get<std::string>() << ','
                << row["value"] << ',' << row["method"].get<std::string>() << ','
                << row["extremal_count"] << ',' << row["nodes"] << ',' << row["ms"] << "\n";
        }
        Output o2 = out;
        o2.format = "text";
        o2.emit(j, csv.str());
    } else {
        out.emit(j, text.str());
    }
    return rc;
}

int cmd_inverse(const GroupSpec& g, invariants::Kind kind,
                const invariants::SearchBudget& budget, const Output& out) {
    GroupView v = working_view(g);
    auto r = invariants::run_search(v, kind, budget);
    auto fam = family_for(g, kind);
    int matched = 0, unmatched = 0;
    json exs = json::array();
    for (auto& s : r.extremal) {
        std::optional<structure::FamilyParams> p;
        if (s.length() == structure::family_length(g, fam))
            p = structure::classify_inverse(g, s, fam);
        json row;
        row["sequence"] = format_sequence(s);
        row["matched"] = p.has_value();
        if (p) {
            ++matched;
            row["alpha"] = format_element(p->alpha);
            row["beta"] = format_element(p->beta);
            row["t"] = p->t;
        } else {
            ++unmatched;
        }
        exs.push_back(std::move(row));
    }
    json j = invariants::report_to_json(r);
    j["family"] = structure::to_string(fam);
    j["matched"] = matched;
    j["unmatched"] = unmatched;
    j["classified"] = std::move(exs);
    std::ostringstream text;
    text << invariants::to_string(kind) << "(G_{" << g.n() << "," << g.s() << "}) = " << r.value
         << " [" << invariants::to_string(r.method) << "], extremal classes: "
         << r.extremal.size() << ", family " << structure::to_string(fam) << ": " << matched
         << " matched, " << unmatched << " unmatched\n";
    for (auto& row : j["classified"])
        text << (row["matched"].get<bool>() ? "  match   " : "  UNMATCHED ")
             << row["sequence"].get<std::string>() << "\n";
    out.emit(j, text.str());
    if (r.method == invariants::Method::budget_exhausted) return kPartial;
    return unmatched == 0 ? kOk : kMismatch;
}

int cmd_witness(const GroupSpec& g, const std::string& seq_text, int random_len,
                uint64_t seed, int target, bool dp_only, uint64_t state_cap,
                const Output& out) {
    Sequence s(g);
    if (!seq_text.empty()) {
        s = parse_sequence(seq_text, g);
    } else if (random_len > 0) {
        std::mt19937_64 rng(seed);
        s = random_sequence(g, random_len, rng);
    } else {
        std::cerr << "witness: provide --seq or --random-len\n";
        return kUsage;
    }
    if (target <= 0) target = GroupView::full(g).exponent();
    std::optional<witness::FinderOutcome> o;
    if (dp_only) {
        if (auto w = has_product_one_of_length(GroupView::full(g), s, target, state_cap))
            o = witness::FinderOutcome{*w, witness::Strategy::fallback_dp, std::nullopt};
    } else {
        o = witness::find_exp_product_one(g, s, target, state_cap);
    }
    json j;
    j["n"] = g.n();
    j["s"] = g.s();
    j["seed"] = seed;
    j["sequence"] = format_sequence(s);
    j["target"] = target;
    j["found"] = o.has_value();
    std::ostringstream text;
    if (o) {
        if (!verify_witness(GroupView::full(g), s, o->witness)) return kMismatch;
        j["witness"] = witness_json(*o);
        text << "witness of length " << target << " via " << witness::to_string(o->strategy)
             << ":\n  ";
        for (auto& e : o->witness.ordered) text << format_element(e) << " ";
        text << "\n";
    } else {
        text << "no witness of length " << target << " found\n";
    }
    out.emit(j, text.str());
    return kOk;
}

int cmd_fuzz(const GroupSpec& g, int len, int count, uint64_t seed, int target,
             uint64_t state_cap, const Output& out) {
    if (target <= 0) target = GroupView::full(g).exponent();
    std::mt19937_64 rng(seed);
    int found = 0, quotient = 0, fallback = 0;
    auto tv = invariants::theorem_values(g);
    auto egz_pred = invariants::prediction_for(tv, invariants::Kind::egz);
    bool at_threshold = egz_pred.status == invariants::Prediction::Status::ok &&
                        len >= egz_pred.value && target == GroupView::full(g).exponent();
    int rc = kOk;
    for (int i = 0; i < count; ++i) {
        Sequence s = random_sequence(g, len, rng);
        auto o = witness::find_exp_product_one(g, s, target, state_cap);
        if (o) {
            if (!verify_witness(GroupView::full(g), s, o->witness)) rc = kMismatch;
            ++found;
            (o->strategy == witness::Strategy::quotient_combine ? quotient : fallback)++;
        } else if (at_threshold) {
            rc = kMismatch;  // theorem guarantees a witness here
        }
    }
    json j = {{"n", g.n()},       {"s", g.s()},
              {"seed", seed},     {"len", len},
              {"count", count},   {"target", target},
              {"found", found},   {"strategy_quotient_combine", quotient},
              {"strategy_fallback_dp", fallback}};
    std::ostringstream text;
    text << "fuzz: " << found << "/" << count << " witnesses (quotient_combine " << quotient
         << ", fallback_dp " << fallback << "), seed " << seed << "\n";
    out.emit(j, text.str());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum invariants and product-one witnesses over C_n x| C_2"};
    app.require_subcommand(1);

    int n = 0, s = 0;
    Output out;
    invariants::SearchBudget budget;
    std::string kinds_csv = "d,eta,s,E";
    std::string kind_str = "eta";
    std::string seq_text;
    int random_len = 0, target = 0, len = 0, count = 0;
    uint64_t seed = 0;
    bool dp_only = false;

    auto* c_const = app.add_subcommand("constants", "compute d, eta, s, E vs theorem values");
    add_common(c_const, n, s, out);
    add_budget(c_const, budget);
    c_const->add_option("--kinds", kinds_csv, "comma list from d,eta,s,E");

    auto* c_inv = app.add_subcommand("inverse", "enumerate + classify extremal sequences");
    add_common(c_inv, n, s, out);
    add_budget(c_inv, budget);
    c_inv->add_option("--kind", kind_str, "davenport|eta|egz|gao")->required();

    auto* c_wit = app.add_subcommand("witness", "find an exp/|G|-product-one witness");
    add_common(c_wit, n, s, out);
    c_wit->add_option("--seq", seq_text, "sequence literal");
    c_wit->add_option("--random-len", random_len, "generate a seeded random sequence");
    c_wit->add_option("--seed", seed, "rng seed")->default_val(0);
    c_wit->add_option("--target", target, "witness length (default exp(G))");
    c_wit->add_flag("--dp-only", dp_only, "skip the quotient strategy ladder");
    c_wit->add_option("--state-cap", budget.state_cap, "DP state budget");

    auto* c_fuzz = app.add_subcommand("fuzz", "seeded random witness campaign");
    add_common(c_fuzz, n, s, out);
    c_fuzz->add_option("--len", len, "sequence length")->required();
    c_fuzz->add_option("--count", count, "number of trials")->required();
    c_fuzz->add_option("--seed", seed, "rng seed")->default_val(0);
    c_fuzz->add_option("--target", target, "witness length (default exp(G))");
    c_fuzz->add_option("--state-cap", budget.state_cap, "DP state budget");

    auto* c_fact = app.add_subcommand("factorize", "n = h*n1*n2 residue factorization");
    add_common(c_fact, n, s, out);

    auto* c_cls = app.add_subcommand("classify", "match a sequence against a family");
    add_common(c_cls, n, s, out);
    c_cls->add_option("--kind", kind_str, "davenport|eta|egz|gao")->required();
    c_cls->add_option("--seq", seq_text, "sequence literal")->required();

    auto* c_quot = app.add_subcommand("quotients", "list applicable normal subgroups");
    add_common(c_quot, n, s, out);

    CLI11_PARSE(app, argc, argv);

    try {
        GroupSpec g = GroupSpec::make(n, s);
        if (c_const->parsed()) {
            std::vector<invariants::Kind> kinds;
            std::stringstream ss(kinds_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto k = invariants::kind_from_string(tok);
                if (!k) {
                    std::cerr << "unknown kind: " << tok << "\n";
                    return kUsage;
                }
                kinds.push_back(*k);
            }
            return cmd_constants(g, kinds, budget, out);
        }
        if (c_inv->parsed()) {
            auto k = invariants::kind_from_string(kind_str);
            if (!k) {
                std::cerr << "unknown kind: " << kind_str << "\n";
                return kUsage;
            }
            return cmd_inverse(g, *k, budget, out);
        }
        if (c_wit->parsed())
            return cmd_witness(g, seq_text, random_len, seed, target, dp_only,
                               budget.state_cap, out);
        if (c_fuzz->parsed()) return cmd_fuzz(g, len, count, seed, target, budget.state_cap, out);
        if (c_fact->parsed()) {
            auto f = structure::factorize(g.n(), g.s());
            json j = {{"n", g.n()}, {"s", g.s()}, {"n1", f.n1}, {"n2", f.n2}, {"h", f.h}};
            std::ostringstream text;
            text << "n1=" << f.n1 << " n2=" << f.n2 << " h=" << f.h << "\n";
            out.emit(j, text.str());
            return kOk;
        }
        if (c_cls->parsed()) {
            auto k = invariants::kind_from_string(kind_str);
            if (!k) {
                std::cerr << "unknown kind: " << kind_str << "\n";
                return kUsage;
            }
            auto fam = family_for(g, *k);
            Sequence sq = parse_sequence(seq_text, g);
            json j = {{"n", g.n()}, {"s", g.s()}, {"kind", structure::to_string(fam)}};
            std::ostringstream text;
            if (sq.length() != structure::family_length(g, fam)) {
                std::cerr << "classify: |S| must be " << structure::family_length(g, fam)
                          << " for this kind\n";
                return kUsage;
            }
            auto p = structure::classify_inverse(g, sq, fam);
            j["matched"] = p.has_value();
            if (p) {
                j["alpha"] = format_element(p->alpha);
                j["beta"] = format_element(p->beta);
                j["t"] = p->t;
                text << "match: alpha=" << format_element(p->alpha)
                     << " beta=" << format_element(p->beta) << " t=[";
                for (size_t i = 0; i < p->t.size(); ++i) text << (i ? "," : "") << p->t[i];
                text << "]\n";
            } else {
                text << "absent\n";
            }
            out.emit(j, text.str());
            return kOk;
        }
        if (c_quot->parsed()) {
            auto f = structure::factorize(g.n(), g.s());
            auto qs = structure::applicable_quotients(g, f);
            json j = {{"n", g.n()}, {"s", g.s()}, {"cases", json::array()}};
            std::ostringstream text;
            for (auto& q : qs) {
                const char* name = q.which == structure::QuotientCase::a   ? "a"
                                   : q.which == structure::QuotientCase::b ? "b"
                                                                           : "c";
                std::string qkind =
                    q.quotient.cyclic_only()
                        ? "C_" + std::to_string(q.quotient.spec().n())
                        : (q.quotient.spec().n() == 2 ? std::string("Klein")
                                                      : "D_" + std::to_string(
                                                                   2 * q.quotient.spec().n()));
                j["cases"].push_back({{"case", name},
                                      {"kernel_size", q.subgroup.size()},
                                      {"quotient", qkind}});
                text << "case (" << name << "): |H| = " << q.subgroup.size() << ", G/H = "
                     << qkind << "\n";
            }
            out.emit(j, text.str());
            return kOk;
        }
    } catch (const NotAGroupError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "sequence parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
