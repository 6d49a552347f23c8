#pragma once

#include <optional>
#include <vector>

#include "prodone/product_table.hpp"
#include "prodone/structure.hpp"

namespace prodone {
namespace witness {

/// A k-term subsequence of S (over a cyclic view) whose terms sum to 0 mod n,
/// by dynamic programming over (terms used, partial sum). Guaranteed to exist
/// for k = n when |S| >= 2n - 1; below that the DP still runs and reports
/// whatever it finds.
std::optional<OrderedWitness> cyclic_zero_subset(const GroupView& cn, const Sequence& s, int k);
std::optional<OrderedWitness> egz_cyclic(const GroupView& cn, const Sequence& s);

/// The dominant residue pair of an n-product-one free sequence of length
/// 2n - k: values a, b with gcd(a - b, n) = 1, min(v_a, v_b) >= n - 2k + 3
/// and v_a + v_b >= 2n - 2k + 2. Absent when S is not n-product-one free.
struct EgzPairBounds {
    int a, b;
    int va, vb;
};
std::optional<EgzPairBounds> egz_cyclic_inverse_pair(const GroupView& cn, const Sequence& s,
                                                     int k);

/// One extracted block: terms form a submultiset of the source whose
/// quotient projection has a product-one ordering. Every achievable product
/// in H is kept as an option (element of H + an ordering realizing it, with
/// positions into the source sequence's expansion).
struct Block {
    Sequence terms;
    std::vector<int> positions;  // global expanded positions, ascending
    std::vector<std::pair<Element, OrderedWitness>> options;
    int chosen = 0;
};

struct BlockDecomposition {
    structure::QuotientDesc quotient;
    std::vector<Block> blocks;
    Sequence remainder;
    std::vector<int> remainder_positions;
};

/// Greedy first-fit extraction: repeatedly take the first s(quotient) terms
/// of what is left (canonical order) and pull out an exp(quotient)-sized
/// sub-block whose projection is product-one, until that window no longer
/// yields one. Sum of block sizes + |remainder| = |S|.
BlockDecomposition block_decompose(const GroupSpec& g, const structure::QuotientDesc& q,
                                   const Sequence& s, int skip = 0);

enum class Strategy { quotient_combine, fallback_dp };
std::string to_string(Strategy s);

struct FinderOutcome {
    OrderedWitness witness;
    Strategy strategy;
    std::optional<BlockDecomposition> trace;
};

/// Constructive search for a product-one subsequence of exactly target_len
/// terms (target_len = exp(G) or |G|). Strategy ladder: quotient block
/// decomposition + zero-sum selection in H, per-block product swaps, offset
/// re-decompositions, then a state-capped full DP. The returned witness is
/// always re-verified against S.
std::optional<FinderOutcome> find_exp_product_one(const GroupSpec& g, const Sequence& s,
                                                  int target_len,
                                                  uint64_t state_cap = kDefaultStateCap);

/// Two disjoint product-one subsequences of length n each (n even,
/// |S| >= 3n); their concatenation is a |G|-product-one witness.
std::optional<std::pair<FinderOutcome, FinderOutcome>> find_two_disjoint(
    const GroupSpec& g, const Sequence& s, uint64_t state_cap = kDefaultStateCap);

/// ab = ba.
bool commutes(const GroupSpec& g, Element a, Element b);

}  // namespace witness
}  // namespace prodone
