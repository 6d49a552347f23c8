#include "prodone/witness_finder.hpp"

#include <algorithm>
#include <numeric>

namespace prodone {
namespace witness {

std::string to_string(Strategy s) {
    return s == Strategy::quotient_combine ? "quotient_combine" : "fallback_dp";
}

bool commutes(const GroupSpec& g, Element a, Element b) {
    return g.mul(a, b) == g.mul(b, a);
}

std::optional<OrderedWitness> cyclic_zero_subset(const GroupView& cn, const Sequence& s, int k) {
    if (!cn.cyclic_only()) throw std::invalid_argument("cyclic_zero_subset needs a cyclic view");
    if (k <= 0 || k > s.length()) return std::nullopt;
    const int n = cn.size();
    auto items = s.expand();
    const int L = static_cast<int>(items.size());
    const int UNSET = -2;
    // first item reaching (count, sum), plus the predecessor sum
    std::vector<int> step(static_cast<size_t>(k + 1) * n, UNSET);
    std::vector<int> prev_sum(static_cast<size_t>(k + 1) * n, -1);
    step[0] = -1;
    for (int t = 0; t < L; ++t) {
        int val = cn.index(items[t]);
        for (int c = std::min(k, t + 1); c >= 1; --c) {
            const int* lower = step.data() + static_cast<size_t>(c - 1) * n;
            int* cur = step.data() + static_cast<size_t>(c) * n;
            int* ps = prev_sum.data() + static_cast<size_t>(c) * n;
            for (int v = 0; v < n; ++v) {
                if (lower[v] == UNSET) continue;
                int w = (v + val) % n;
                if (cur[w] == UNSET) {
                    cur[w] = t;
                    ps[w] = v;
                }
            }
        }
    }
    if (step[static_cast<size_t>(k) * n] == UNSET) return std::nullopt;
    std::vector<int> picks;
    for (int c = k, v = 0; c > 0; --c) {
        picks.push_back(step[static_cast<size_t>(c) * n + v]);
        v = prev_sum[static_cast<size_t>(c) * n + v];
    }
    std::sort(picks.begin(), picks.end());
    OrderedWitness w;
    for (int t : picks) {
        w.ordered.push_back(items[t]);
        w.positions.push_back(t);
    }
    if (!verify_witness(cn, s, w)) throw std::logic_error("cyclic_zero_subset: bad witness");
    return w;
}

std::optional<OrderedWitness> egz_cyclic(const GroupView& cn, const Sequence& s) {
    return cyclic_zero_subset(cn, s, cn.size());
}

std::optional<EgzPairBounds> egz_cyclic_inverse_pair(const GroupView& cn, const Sequence& s,
                                                     int k) {
    const int n = cn.size();
    if (k < 2 || k > n / 2 + 2) throw std::invalid_argument("egz_cyclic_inverse_pair: k range");
    if (s.length() != 2 * n - k)
        throw std::invalid_argument("egz_cyclic_inverse_pair: |S| must be 2n - k");
    if (cyclic_zero_subset(cn, s, n)) return std::nullopt;  // not n-product-one free
    std::vector<int> v(n, 0);
    for (auto& [e, m] : s.terms()) v[cn.index(e)] += m;
    std::optional<EgzPairBounds> best;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || v[a] < v[b]) continue;
            if (std::gcd((a - b + n) % n, n) != 1) continue;
            if (std::min(v[a], v[b]) < n - 2 * k + 3) continue;
            if (v[a] + v[b] < 2 * n - 2 * k + 2) continue;
            if (!best || v[a] + v[b] > best->va + best->vb)
                best = EgzPairBounds{a, b, v[a], v[b]};
        }
    if (!best) throw std::logic_error("egz_cyclic_inverse_pair: no pair meets the bounds");
    return best;
}

namespace {

// EGZ threshold of the quotient group types that arise here.
int egz_threshold(const GroupView& v) {
    if (v.cyclic_only()) return 2 * v.size() - 1;
    int n = v.spec().n();
    if (n == 2) return 5;  // Klein
    if (v.spec().s_class() == SClass::dihedral) return n % 2 == 0 ? 2 * n : 3 * n;
    throw std::invalid_argument("no known EGZ threshold for this quotient type");
}

constexpr int kMaxBlockOptions = 16;

// Positions of the projected window's expansion map back to window slots by
// stable sort on the quotient flat index.
std::vector<int> window_slot_map(const std::vector<int>& qflats) {
    std::vector<int> order(qflats.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return qflats[a] < qflats[b]; });
    return order;
}

// All products of the full selection of `terms` that land in the kernel,
// each with a concrete ordering; positions rewritten to `global` indices.
std::vector<std::pair<Element, OrderedWitness>> kernel_options(
    const GroupView& gv, const structure::QuotientDesc& q, const Sequence& terms,
    const std::vector<int>& global, int card) {
    std::vector<std::pair<Element, OrderedWitness>> out;
    ProductTable tb = ProductTable::build(gv, terms);
    for (uint64_t st = tb.num_states() - 1;; --st) {
        if (tb.state_cardinality(st) == card) {
            for (int p : tb.products_at(st)) {
                if (q.project(p) != 0) continue;
                OrderedWitness w = tb.extract_witness(st, p);
                for (int& pos : w.positions) pos = global[pos];
                out.push_back({gv.element(p), std::move(w)});
                if (static_cast<int>(out.size()) >= kMaxBlockOptions) return out;
            }
        }
        if (st == 0 || card == terms.length()) break;  // full-selection case: last state only
    }
    return out;
}

}  // namespace

BlockDecomposition block_decompose(const GroupSpec& g, const structure::QuotientDesc& q,
                                   const Sequence& s, int skip) {
    GroupView gv = GroupView::full(g);
    const GroupView& qv = q.quotient;
    const int block_len = qv.exponent();
    const int window_len = egz_threshold(qv);

    auto expanded = s.expand();
    std::vector<int> pool(expanded.size());
    std::iota(pool.begin(), pool.end(), 0);
    if (skip > 0 && !pool.empty())
        std::rotate(pool.begin(), pool.begin() + skip % pool.size(), pool.end());

    BlockDecomposition out{q, {}, Sequence(g), {}};
    while (static_cast<int>(pool.size()) >= block_len) {
        int w = std::min<int>(window_len, pool.size());
        std::vector<int> qflats(w);
        Sequence qseq(qv.spec());
        for (int i = 0; i < w; ++i) {
            qflats[i] = q.project(gv.index(expanded[pool[i]]));
            qseq.add(qv.element(qflats[i]));
        }
        ProductTable qt = ProductTable::build(qv, qseq);
        auto st = qt.find_state(0, block_len, block_len);
        if (!st) break;
        OrderedWitness qw = qt.extract_witness(*st, 0);
        auto slot = window_slot_map(qflats);
        std::vector<int> picked;
        for (int p : qw.positions) picked.push_back(slot[p]);
        std::sort(picked.begin(), picked.end());

        Block b;
        b.terms = Sequence(g);
        for (int i : picked) {
            b.positions.push_back(pool[i]);
            b.terms.add(expanded[pool[i]]);
        }
        std::sort(b.positions.begin(), b.positions.end());
        b.options = kernel_options(gv, q, b.terms, b.positions, block_len);
        if (b.options.empty())
            throw std::logic_error("block_decompose: extracted block has no kernel product");
        out.blocks.push_back(std::move(b));
        for (int i = static_cast<int>(picked.size()) - 1; i >= 0; --i)
            pool.erase(pool.begin() + picked[i]);
    }
    std::sort(pool.begin(), pool.end());
    for (int idx : pool) {
        out.remainder.add(expanded[idx]);
        out.remainder_positions.push_back(idx);
    }
    return out;
}

namespace {

// Choose exactly k candidates, one option each, with residues summing to
// 0 mod `mod`; returns (candidate, option) pairs in candidate order.
std::optional<std::vector<std::pair<int, int>>> pick_zero_sum(
    const std::vector<std::vector<int>>& cands, int k, int mod) {
    const int N = static_cast<int>(cands.size());
    if (k < 0 || k > N) return std::nullopt;
    const int UNSET = -3, SKIP = -1;
    auto at = [&](int i, int c, int r) -> size_t {
        return (static_cast<size_t>(i) * (k + 1) + c) * mod + r;
    };
    std::vector<int> choice(static_cast<size_t>(N + 1) * (k + 1) * mod, UNSET);
    choice[at(0, 0, 0)] = -2;  // start marker
    for (int i = 0; i < N; ++i)
        for (int c = 0; c <= std::min(i, k); ++c)
            for (int r = 0; r < mod; ++r) {
                if (choice[at(i, c, r)] == UNSET) continue;
                if (choice[at(i + 1, c, r)] == UNSET) choice[at(i + 1, c, r)] = SKIP;
                if (c == k) continue;
                for (int o = 0; o < static_cast<int>(cands[i].size()); ++o) {
                    int rr = (r + cands[i][o]) % mod;
                    if (choice[at(i + 1, c + 1, rr)] == UNSET) choice[at(i + 1, c + 1, rr)] = o;
                }
            }
    if (choice[at(N, k, 0)] == UNSET) return std::nullopt;
    std::vector<std::pair<int, int>> out;
    for (int i = N, c = k, r = 0; i > 0; --i) {
        int ch = choice[at(i, c, r)];
        if (ch >= 0) {
            out.push_back({i - 1, ch});
            r = ((r - cands[i - 1][ch]) % mod + mod) % mod;
            --c;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

FinderOutcome make_outcome(const GroupView& gv, const Sequence& s, OrderedWitness w,
                           Strategy strat, std::optional<BlockDecomposition> trace) {
    w.product = gv.spec().identity();
    if (!verify_witness(gv, s, w)) throw std::logic_error("finder produced an invalid witness");
    return FinderOutcome{std::move(w), strat, std::move(trace)};
}

// n even, target n: H = <y^d> for the largest even d | n with s = -1 (mod d),
// blocks of size d with products y^{rd}, then a zero-sum selection of n/d
// residues mod n/d. With d >= 4 and |S| >= 2n this is guaranteed: 2(n/d) - 1
// blocks always come out and EGZ in C_{n/d} does the rest. At d = 2 the
// block count can fall one short; the remainder then contributes an extra
// candidate when it can reach H.
std::optional<FinderOutcome> even_route(const GroupSpec& g, const Sequence& s,
                                        uint64_t state_cap) {
    const int n = g.n();
    GroupView gv = GroupView::full(g);
    int d = 2;
    for (int dd = n - 2; dd >= 4; dd -= 2)
        if (n % dd == 0 && (g.s() + 1) % dd == 0) {
            d = dd;
            break;
        }
    const int m = n / d;
    auto q = structure::power_kernel_quotient(g, d);
    std::optional<BlockDecomposition> dec;
    try {
        dec = block_decompose(g, q, s);
    } catch (const BudgetExceededError&) {
        return std::nullopt;
    }
    BlockDecomposition& decomp = *dec;
    std::vector<std::vector<int>> residues;
    for (auto& b : decomp.blocks) {
        std::vector<int> r;
        for (auto& opt : b.options) r.push_back(opt.first.k / d);
        residues.push_back(std::move(r));
    }
    std::vector<std::pair<Element, OrderedWitness>> rem_opts;
    if (static_cast<int>(decomp.blocks.size()) < 2 * m - 1 &&
        decomp.remainder.length() >= d) {
        try {
            rem_opts = kernel_options(gv, q, decomp.remainder, decomp.remainder_positions, d);
        } catch (const BudgetExceededError&) {
        }
        if (!rem_opts.empty()) {
            std::vector<int> r;
            for (auto& opt : rem_opts) r.push_back(opt.first.k / d);
            residues.push_back(std::move(r));
        }
    }
    auto sel = pick_zero_sum(residues, m, m);
    if (!sel) return std::nullopt;
    OrderedWitness w;
    for (auto& [cand, opt] : *sel) {
        const OrderedWitness* part;
        if (cand < static_cast<int>(decomp.blocks.size())) {
            decomp.blocks[cand].chosen = opt;
            part = &decomp.blocks[cand].options[opt].second;
        } else {
            part = &rem_opts[opt].second;
        }
        w.ordered.insert(w.ordered.end(), part->ordered.begin(), part->ordered.end());
        w.positions.insert(w.positions.end(), part->positions.begin(), part->positions.end());
    }
    (void)state_cap;
    return make_outcome(gv, s, std::move(w), Strategy::quotient_combine, std::move(decomp));
}

// n odd, target 2n: case (c) blocks of size n2 with products in
// H = <x, y^{n2}>, mapped through the isomorphism H -> D_{2n1},
// (eps, t*n2) -> (eps, t), then a 2n1-subset with product one found by DP
// over the h_i. Ladders: swap one block's product for an alternative,
// re-decompose at an offset, include the remainder as an extra candidate.
std::optional<FinderOutcome> odd_route(const GroupSpec& g, const Sequence& s,
                                       uint64_t state_cap) {
    const int n = g.n();
    GroupView gv = GroupView::full(g);
    auto f = structure::factorize(n, g.s());
    const int n1 = f.n1, n2 = f.n2;

    // direct: 2n terms of <y> summing to 0 mod n
    {
        Sequence sy(g);
        for (auto& [e, mm] : s.terms())
            if (e.eps == 0) sy.add(e, mm);
        if (sy.length() >= 2 * n) {
            if (auto w = cyclic_zero_subset(GroupView::cyclic(g), sy, 2 * n))
                return make_outcome(gv, s, std::move(*w), Strategy::quotient_combine,
                                    std::nullopt);
        }
    }

    auto q = structure::normal_subgroup(g, f, structure::QuotientCase::c);
    GroupSpec dgrp = GroupSpec::make(n1, g.s() % n1);
    GroupView dv = GroupView::full(dgrp);
    auto to_d = [&](Element h) { return Element{h.eps, (h.k / n2) % n1}; };

    // try a selection: images[i] is candidate i's element of D_{2n1}
    auto attempt = [&](const std::vector<Element>& images)
        -> std::optional<std::vector<int>> {  // candidate indices in product order
        Sequence hs(dgrp);
        for (auto& e : images) hs.add(e);
        ProductTable ht(dv, std::make_shared<MulTable>(dv), state_cap);
        try {
            for (auto& [e, mm] : hs.terms())
                for (int i = 0; i < mm; ++i) ht.push_term(dv.index(e));
        } catch (const BudgetExceededError&) {
            return std::nullopt;
        }
        auto st = ht.find_state(0, 2 * n1, 2 * n1);
        if (!st) return std::nullopt;
        OrderedWitness hw = ht.extract_witness(*st, 0);
        std::vector<int> flats;
        for (auto& e : images) flats.push_back(dv.index(e));
        auto slot = window_slot_map(flats);
        std::vector<int> order;
        for (int p : hw.positions) order.push_back(slot[p]);
        return order;
    };

    const int max_skip = std::min(2 * n2 - 2, 12);
    for (int skip = 0; skip <= max_skip; ++skip) {
        std::optional<BlockDecomposition> dec;
        try {
            dec = block_decompose(g, q, s, skip);
        } catch (const BudgetExceededError&) {
            continue;
        }
        BlockDecomposition& decomp = *dec;
        const int nb = static_cast<int>(decomp.blocks.size());
        if (nb < 2 * n1) continue;
        std::vector<Element> images;
        for (auto& b : decomp.blocks) images.push_back(to_d(b.options[0].first));
        std::vector<std::pair<Element, OrderedWitness>> rem_opts;
        if (decomp.remainder.length() >= n2) {
            try {
                rem_opts =
                    kernel_options(gv, q, decomp.remainder, decomp.remainder_positions, n2);
            } catch (const BudgetExceededError&) {
            }
        }
        // candidate list = blocks, then at most one remainder pseudo-candidate
        auto finish = [&](const std::vector<int>& order,
                          int rem_opt) -> std::optional<FinderOutcome> {
            OrderedWitness w;
            for (int cand : order) {
                const OrderedWitness& part = cand < nb
                                                 ? decomp.blocks[cand]
                                                       .options[decomp.blocks[cand].chosen]
                                                       .second
                                                 : rem_opts[rem_opt].second;
                w.ordered.insert(w.ordered.end(), part.ordered.begin(), part.ordered.end());
                w.positions.insert(w.positions.end(), part.positions.begin(),
                                   part.positions.end());
            }
            return make_outcome(gv, s, std::move(w), Strategy::quotient_combine,
                                std::move(decomp));
        };
        if (auto order = attempt(images)) return finish(*order, -1);
        // single-block swaps
        for (int i = 0; i < nb; ++i) {
            Element base = images[i];
            for (int o = 1; o < static_cast<int>(decomp.blocks[i].options.size()); ++o) {
                images[i] = to_d(decomp.blocks[i].options[o].first);
                if (auto order = attempt(images)) {
                    decomp.blocks[i].chosen = o;
                    return finish(*order, -1);
                }
            }
            images[i] = base;
        }
        // remainder as an extra candidate
        for (int o = 0; o < static_cast<int>(rem_opts.size()); ++o) {
            images.push_back(to_d(rem_opts[o].first));
            if (auto order = attempt(images)) return finish(*order, o);
            images.pop_back();
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<FinderOutcome> find_exp_product_one(const GroupSpec& g, const Sequence& s,
                                                  int target_len, uint64_t state_cap) {
    if (target_len <= 0) throw std::invalid_argument("target length must be positive");
    if (target_len > s.length()) return std::nullopt;
    const int n = g.n();
    GroupView gv = GroupView::full(g);
    if (g.s_class() == SClass::proper) {
        if (n % 2 == 0 && target_len == n) {
            if (auto o = even_route(g, s, state_cap)) return o;
        } else if (n % 2 == 0 && target_len == 2 * n) {
            if (auto pair = find_two_disjoint(g, s, state_cap)) {
                auto& [o1, o2] = *pair;
                OrderedWitness w = o1.witness;
                w.ordered.insert(w.ordered.end(), o2.witness.ordered.begin(),
                                 o2.witness.ordered.end());
                w.positions.insert(w.positions.end(), o2.witness.positions.begin(),
                                   o2.witness.positions.end());
                Strategy st = (o1.strategy == Strategy::fallback_dp ||
                               o2.strategy == Strategy::fallback_dp)
                                  ? Strategy::fallback_dp
                                  : Strategy::quotient_combine;
                return make_outcome(gv, s, std::move(w), st, std::move(o1.trace));
            }
        } else if (n % 2 == 1 && target_len == 2 * n) {
            if (auto o = odd_route(g, s, state_cap)) return o;
        }
    }
    try {
        auto w = has_product_one_of_length(gv, s, target_len, state_cap);
        if (!w) return std::nullopt;
        return FinderOutcome{std::move(*w), Strategy::fallback_dp, std::nullopt};
    } catch (const BudgetExceededError&) {
        return std::nullopt;
    }
}

std::optional<std::pair<FinderOutcome, FinderOutcome>> find_two_disjoint(const GroupSpec& g,
                                                                         const Sequence& s,
                                                                         uint64_t state_cap) {
    const int n = g.n();
    auto o1 = find_exp_product_one(g, s, n, state_cap);
    if (!o1) return std::nullopt;
    Sequence rest = s;
    for (auto& e : o1->witness.ordered) rest.remove(e);
    auto o2 = find_exp_product_one(g, rest, n, state_cap);
    if (!o2) return std::nullopt;
    // remap the second witness's positions into the full sequence's expansion
    std::vector<bool> used(s.length(), false);
    for (int p : o1->witness.positions) used[p] = true;
    std::vector<int> free;
    for (int p = 0; p < s.length(); ++p)
        if (!used[p]) free.push_back(p);
    for (int& p : o2->witness.positions) p = free[p];
    if (!verify_witness(GroupView::full(g), s, o2->witness))
        throw std::logic_error("disjoint witness remap failed verification");
    return std::make_pair(std::move(*o1), std::move(*o2));
}

}  // namespace witness
}  // namespace prodone
