#include "prodone/product_table.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace prodone {

namespace {

inline bool test_bit(const uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(uint64_t* w, int i) { w[i >> 6] |= uint64_t{1} << (i & 63); }

// dst |= { p*g : p in src }, with tab = by_right row of g.
inline void accumulate_right_mul(uint64_t* dst, const uint64_t* src, const int* tab, int words) {
    for (int w = 0; w < words; ++w) {
        uint64_t bitsw = src[w];
        while (bitsw) {
            int b = std::countr_zero(bitsw);
            bitsw &= bitsw - 1;
            set_bit(dst, tab[(w << 6) + b]);
        }
    }
}

}  // namespace

bool verify_witness(const GroupView& v, const Sequence& src, const OrderedWitness& w) {
    Element acc = v.spec().identity();
    for (const Element& e : w.ordered) acc = v.spec().mul(acc, e);
    if (!(acc == w.product)) return false;
    Sequence used(src.group());
    for (const Element& e : w.ordered) used.add(e);
    for (auto& [e, m] : used.terms())
        if (src.multiplicity(e) < m) return false;
    if (!w.positions.empty()) {
        if (w.positions.size() != w.ordered.size()) return false;
        auto expanded = src.expand();
        std::vector<int> seen;
        for (size_t i = 0; i < w.positions.size(); ++i) {
            int p = w.positions[i];
            if (p < 0 || p >= static_cast<int>(expanded.size())) return false;
            if (!(expanded[p] == w.ordered[i])) return false;
            seen.push_back(p);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

ProductTable::ProductTable(const GroupView& v, std::shared_ptr<const MulTable> tab,
                           uint64_t state_cap)
    : view_(v), mul_(std::move(tab)), state_cap_(state_cap), m_(v.size()), words_((v.size() + 63) / 64) {
    bits_.assign(words_, 0);
    set_bit(bits_.data(), 0);  // empty selection reaches exactly the identity
    card_.assign(1, 0);
    if (words_ == 1) {
        chunks_ = (m_ + 7) / 8;
        chunk_tbl_.assign(static_cast<size_t>(m_) * chunks_ * 256, 0);
        for (int g = 0; g < m_; ++g) {
            const int* row = mul_->by_right.data() + static_cast<size_t>(g) * m_;
            for (int c = 0; c < chunks_; ++c) {
                uint64_t* tbl = chunk_tbl_.data() + (static_cast<size_t>(g) * chunks_ + c) * 256;
                for (int b = 1; b < 256; ++b) {
                    int i = std::countr_zero(static_cast<unsigned>(b));
                    uint64_t img = tbl[b & (b - 1)];
                    if (c * 8 + i < m_) img |= uint64_t{1} << row[c * 8 + i];
                    tbl[b] = img;
                }
            }
        }
    }
}

ProductTable ProductTable::build(const GroupView& v, const Sequence& s, uint64_t state_cap) {
    ProductTable t(v, std::make_shared<MulTable>(v), state_cap);
    for (auto& [e, m] : s.terms())
        for (int i = 0; i < m; ++i) t.push_term(v.index(e));
    return t;
}

uint64_t ProductTable::push_term(int e) {
    if (!elems_.empty() && e < elems_.back())
        throw std::logic_error("push_term: elements must be pushed in non-decreasing order");
    uint64_t slab_size;
    if (elems_.empty() || e > elems_.back()) {
        slab_size = num_states_;
        elems_.push_back(e);
        mults_.push_back(1);
        weights_.push_back(num_states_);
    } else {
        slab_size = weights_.back();
        ++mults_.back();
    }
    uint64_t base = num_states_;
    if (base + slab_size > state_cap_) {
        // roll back the bookkeeping so the table stays usable
        if (mults_.back() == 1) {
            elems_.pop_back();
            mults_.pop_back();
            weights_.pop_back();
        } else {
            --mults_.back();
        }
        throw BudgetExceededError(base + slab_size, state_cap_);
    }
    num_states_ = base + slab_size;
    ++length_;
    slab_starts_.push_back(base);
    bits_.resize(num_states_ * words_, 0);
    card_.resize(num_states_, 0);

    int top = static_cast<int>(elems_.size()) - 1;
    const int* top_row = mul_->by_right.data() + static_cast<size_t>(elems_[top]) * m_;
    auto chunk_row = [&](int g) {
        return chunk_tbl_.data() + static_cast<size_t>(g) * chunks_ * 256;
    };
    // odometer over the digits below the top one
    std::vector<int> digits(top, 0);
    for (uint64_t off = 0; off < slab_size; ++off) {
        uint64_t state = base + off;
        uint64_t* dst = state_bits(state);
        // predecessor through the top digit (one fewer copy of elems_[top])
        uint64_t pred_top = state - slab_size;
        if (words_ == 1) {
            uint64_t acc = 0;
            uint64_t src = *state_bits(pred_top);
            const uint64_t* tbl = chunk_row(elems_[top]);
            for (int c = 0; src; ++c, src >>= 8)
                if (uint8_t b = static_cast<uint8_t>(src); b) acc |= tbl[(c << 8) | b];
            for (int j = 0; j < top; ++j) {
                if (digits[j] == 0) continue;
                src = *state_bits(state - weights_[j]);
                tbl = chunk_row(elems_[j]);
                for (int c = 0; src; ++c, src >>= 8)
                    if (uint8_t b = static_cast<uint8_t>(src); b) acc |= tbl[(c << 8) | b];
            }
            *dst |= acc;
        } else {
            accumulate_right_mul(dst, state_bits(pred_top), top_row, words_);
            for (int j = 0; j < top; ++j) {
                if (digits[j] == 0) continue;
                const int* row = mul_->by_right.data() + static_cast<size_t>(elems_[j]) * m_;
                accumulate_right_mul(dst, state_bits(state - weights_[j]), row, words_);
            }
        }
        card_[state] = static_cast<uint8_t>(card_[pred_top] + 1);
        for (int j = 0; j < top; ++j) {
            if (++digits[j] <= mults_[j]) break;
            digits[j] = 0;
        }
    }
    return base;
}

void ProductTable::pop_term() {
    if (slab_starts_.empty()) throw std::logic_error("pop_term on empty table");
    uint64_t base = slab_starts_.back();
    slab_starts_.pop_back();
    num_states_ = base;
    bits_.resize(num_states_ * words_);
    card_.resize(num_states_);
    --length_;
    if (mults_.back() == 1) {
        elems_.pop_back();
        mults_.pop_back();
        weights_.pop_back();
    } else {
        --mults_.back();
    }
}

bool ProductTable::state_reaches(uint64_t state, int flat_elem) const {
    return test_bit(state_bits(state), flat_elem);
}

bool ProductTable::identity_reachable(int lo, int hi, uint64_t slab_start) const {
    for (uint64_t st = std::max<uint64_t>(slab_start, 1); st < num_states_; ++st)
        if (card_[st] >= lo && card_[st] <= hi && test_bit(state_bits(st), 0)) return true;
    return false;
}

std::optional<uint64_t> ProductTable::find_state(int flat_elem, int lo, int hi) const {
    for (uint64_t st = 1; st < num_states_; ++st)
        if (card_[st] >= lo && card_[st] <= hi && test_bit(state_bits(st), flat_elem)) return st;
    return std::nullopt;
}

std::vector<int> ProductTable::products_at(uint64_t state) const {
    std::vector<int> out;
    const uint64_t* w = state_bits(state);
    for (int i = 0; i < m_; ++i)
        if (test_bit(w, i)) out.push_back(i);
    return out;
}

std::set<int> ProductTable::pi() const {
    auto v = products_at(num_states_ - 1);  // last state is the full multiplicity vector
    return {v.begin(), v.end()};
}

std::set<int> ProductTable::subproducts() const {
    std::set<int> out;
    for (uint64_t st = 1; st < num_states_; ++st)
        for (int p : products_at(st)) out.insert(p);
    return out;
}

std::set<int> ProductTable::subproducts_of_length(int k) const {
    std::set<int> out;
    for (uint64_t st = 1; st < num_states_; ++st)
        if (card_[st] == k)
            for (int p : products_at(st)) out.insert(p);
    return out;
}

std::vector<int> ProductTable::state_vector(uint64_t state) const {
    std::vector<int> m(elems_.size(), 0);
    for (int j = static_cast<int>(elems_.size()) - 1; j >= 0; --j) {
        m[j] = static_cast<int>(state / weights_[j]);
        state %= weights_[j];
    }
    return m;
}

uint64_t ProductTable::state_index(const std::vector<int>& m) const {
    uint64_t idx = 0;
    for (size_t j = 0; j < m.size(); ++j) {
        if (m[j] < 0 || m[j] > mults_[j]) throw std::out_of_range("state_index: bad multiplicity");
        idx += static_cast<uint64_t>(m[j]) * weights_[j];
    }
    return idx;
}

OrderedWitness ProductTable::extract_witness(uint64_t state, int flat_elem) const {
    if (!state_reaches(state, flat_elem))
        throw std::invalid_argument("extract_witness: target not reachable at state");
    OrderedWitness w;
    w.product = view_.element(flat_elem);
    std::vector<int> m = state_vector(state);
    std::vector<int> used(elems_.size(), 0);
    std::vector<int> rev;  // distinct-term indices, last factor first
    int target = flat_elem;
    uint64_t st = state;
    while (st != 0) {
        bool stepped = false;
        for (size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0) continue;
            int pred = mul_->product(target, mul_->inv[elems_[j]]);
            if (state_reaches(st - weights_[j], pred)) {
                rev.push_back(static_cast<int>(j));
                --m[j];
                st -= weights_[j];
                target = pred;
                stepped = true;
                break;
            }
        }
        if (!stepped) throw std::logic_error("extract_witness: inconsistent table");
    }
    std::reverse(rev.begin(), rev.end());
    // expanded-source positions: term j occupies [sum of earlier mults, +mults_[j])
    std::vector<int> bases(elems_.size(), 0);
    for (size_t j = 1; j < elems_.size(); ++j) bases[j] = bases[j - 1] + mults_[j - 1];
    for (int j : rev) {
        w.ordered.push_back(view_.element(elems_[j]));
        w.positions.push_back(bases[j] + used[j]++);
    }
    return w;
}

std::set<int> naive_pi(const GroupView& v, const Sequence& s) {
    auto terms = s.expand();
    if (terms.size() > 8) throw std::invalid_argument("naive_pi: length cap (8) exceeded");
    std::set<int> out;
    if (terms.empty()) return out;
    std::vector<int> flat;
    for (auto& e : terms) flat.push_back(v.index(e));
    std::sort(flat.begin(), flat.end());
    do {
        int acc = 0;
        for (int f : flat) acc = v.mul(acc, f);
        out.insert(acc);
    } while (std::next_permutation(flat.begin(), flat.end()));
    return out;
}

std::set<int> naive_subproducts(const GroupView& v, const Sequence& s) {
    std::set<int> out;
    auto& terms = s.terms();
    std::vector<int> pick(terms.size(), 0);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == terms.size()) {
            Sequence t(s.group());
            bool nonempty = false;
            for (size_t j = 0; j < terms.size(); ++j)
                if (pick[j] > 0) {
                    t.add(terms[j].first, pick[j]);
                    nonempty = true;
                }
            if (nonempty)
                for (int p : naive_pi(v, t)) out.insert(p);
            return;
        }
        for (pick[i] = 0; pick[i] <= terms[i].second; ++pick[i]) self(self, i + 1);
        pick[i] = 0;
    };
    rec(rec, 0);
    return out;
}

bool is_product_one_free(const GroupView& v, const Sequence& s, uint64_t state_cap) {
    auto t = ProductTable::build(v, s, state_cap);
    return !t.identity_reachable(1, s.length());
}

std::optional<OrderedWitness> has_product_one_of_length(const GroupView& v, const Sequence& s,
                                                        int k, uint64_t state_cap) {
    if (k <= 0 || k > s.length())
        throw std::invalid_argument("has_product_one_of_length: k out of range");
    auto t = ProductTable::build(v, s, state_cap);
    auto st = t.find_state(0, k, k);
    if (!st) return std::nullopt;
    auto w = t.extract_witness(*st, 0);
    if (!verify_witness(v, s, w)) throw std::logic_error("witness failed verification");
    return w;
}

std::optional<OrderedWitness> has_short_product_one(const GroupView& v, const Sequence& s,
                                                    int bound, uint64_t state_cap) {
    if (s.empty()) return std::nullopt;
    auto t = ProductTable::build(v, s, state_cap);
    auto st = t.find_state(0, 1, bound);
    if (!st) return std::nullopt;
    auto w = t.extract_witness(*st, 0);
    if (!verify_witness(v, s, w)) throw std::logic_error("witness failed verification");
    return w;
}

}  // namespace prodone
