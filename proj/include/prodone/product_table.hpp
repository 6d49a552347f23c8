#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "prodone/sequence.hpp"

namespace prodone {

struct BudgetExceededError : std::runtime_error {
    BudgetExceededError(uint64_t states, uint64_t cap)
        : std::runtime_error("product table budget exceeded: " + std::to_string(states) +
                             " states > cap " + std::to_string(cap)),
          states(states),
          cap(cap) {}
    uint64_t states;
    uint64_t cap;
};

/// An ordering of a submultiset together with its claimed product. Positions
/// refer to the expanded source sequence (sorted by flat index, one entry per
/// copy); they make disjointness bookkeeping possible downstream.
struct OrderedWitness {
    std::vector<Element> ordered;
    std::vector<int> positions;
    Element product{0, 0};
};

/// Re-multiplies the ordering and checks it is a genuine subsequence of src.
bool verify_witness(const GroupView& v, const Sequence& src, const OrderedWitness& w);

constexpr uint64_t kDefaultStateCap = uint64_t{1} << 26;

/// Dynamic program over submultisets of a sequence. A state is a multiplicity
/// vector m (0 <= m_i <= v_i) over the distinct terms, addressed by the mixed
/// radix index sum(m_i * w_i); per state it holds the exact set pi(m) of
/// ordered products as a bitset over the view's elements.
///
/// The table is append-only: push_term adds one copy of an element whose flat
/// index is >= every term already present, appending one slab of states;
/// pop_term truncates it. This is what lets the search extend a parent's
/// table by one term instead of rebuilding it.
class ProductTable {
public:
    ProductTable(const GroupView& v, std::shared_ptr<const MulTable> tab,
                 uint64_t state_cap = kDefaultStateCap);

    static ProductTable build(const GroupView& v, const Sequence& s,
                              uint64_t state_cap = kDefaultStateCap);

    const GroupView& view() const { return view_; }
    int distinct_terms() const { return static_cast<int>(elems_.size()); }
    int term_element(int i) const { return elems_[i]; }
    int term_multiplicity(int i) const { return mults_[i]; }
    int length() const { return length_; }
    uint64_t num_states() const { return num_states_; }

    /// Appends one copy of flat element e (e >= last term). Returns the index
    /// of the first state of the new slab.
    uint64_t push_term(int e);
    void pop_term();

    bool state_reaches(uint64_t state, int flat_elem) const;
    int state_cardinality(uint64_t state) const { return card_[state]; }

    /// True iff some state with cardinality in [lo, hi] reaches the identity.
    /// With slab_start > 0 only states >= slab_start are scanned.
    bool identity_reachable(int lo, int hi, uint64_t slab_start = 0) const;
    /// Least state index with cardinality in [lo, hi] reaching flat_elem.
    std::optional<uint64_t> find_state(int flat_elem, int lo, int hi) const;

    /// All achievable ordered products over a full or partial selection.
    std::vector<int> products_at(uint64_t state) const;
    std::set<int> pi() const;                       // products of the whole sequence
    std::set<int> subproducts() const;              // Pi: union over nonempty states
    std::set<int> subproducts_of_length(int k) const;  // Pi_k

    /// Recovers an ordering that reaches `flat_elem` at `state`, walking the
    /// table by right division; ties broken by lowest distinct-term index, so
    /// the result is deterministic. Throws if unreachable.
    OrderedWitness extract_witness(uint64_t state, int flat_elem) const;

    std::vector<int> state_vector(uint64_t state) const;
    uint64_t state_index(const std::vector<int>& m) const;

private:
    const uint64_t* state_bits(uint64_t state) const { return bits_.data() + state * words_; }
    uint64_t* state_bits(uint64_t state) { return bits_.data() + state * words_; }

    GroupView view_;
    std::shared_ptr<const MulTable> mul_;
    uint64_t state_cap_;
    int m_;      // number of group elements in the view
    int words_;  // 64-bit words per state bitset

    // For views with <= 64 elements: chunk_tbl_[(g * chunks_ + c) * 256 + b]
    // is the right-multiplication image of byte b at bit offset 8c, letting
    // the DP OR eight source bits per lookup instead of one.
    std::vector<uint64_t> chunk_tbl_;
    int chunks_ = 0;

    std::vector<int> elems_;
    std::vector<int> mults_;
    std::vector<uint64_t> weights_;
    uint64_t num_states_ = 1;
    int length_ = 0;

    std::vector<uint64_t> bits_;
    std::vector<uint8_t> card_;
    std::vector<uint64_t> slab_starts_;  // one per pushed copy, for pop_term
};

/// Permutation-enumeration oracle for pi(S); |S| <= 8.
std::set<int> naive_pi(const GroupView& v, const Sequence& s);

/// Products over every nonempty submultiset, via naive_pi; |S| <= 8.
std::set<int> naive_subproducts(const GroupView& v, const Sequence& s);

bool is_product_one_free(const GroupView& v, const Sequence& s,
                         uint64_t state_cap = kDefaultStateCap);
std::optional<OrderedWitness> has_product_one_of_length(const GroupView& v, const Sequence& s,
                                                        int k,
                                                        uint64_t state_cap = kDefaultStateCap);
std::optional<OrderedWitness> has_short_product_one(const GroupView& v, const Sequence& s,
                                                    int bound,
                                                    uint64_t state_cap = kDefaultStateCap);

}  // namespace prodone
