#pragma once

#include <optional>
#include <vector>

#include "prodone/sequence.hpp"

namespace prodone {
namespace structure {

/// n = h*n1*n2 with gcd(n1,n2)=1, s = -1 (mod n1), s = +1 (mod n2), h in {1,2}.
struct Factorization {
    int n1 = 1;
    int n2 = 1;
    int h = 1;
};

/// Deterministic CRT assignment: each odd prime power goes to the side its
/// residue forces; the 2-part goes whole if s = +-1 there, else it splits off
/// a factor 2 into h. Requires s != +-1 (mod n) and n >= 8.
Factorization factorize(int n, int s);

enum class QuotientCase { a, b, c };

/// A normal subgroup H of G together with the quotient realized as a GroupView
/// (dihedral / Klein for cases a,b; cyclic for case c) and the projection as a
/// total flat-index map. Normality and the homomorphism property are verified
/// exhaustively at construction.
struct QuotientDesc {
    QuotientCase which;
    GroupView group;                 // the source group, full view
    GroupView quotient;              // dihedral / Klein / cyclic view
    std::vector<int> projection;     // flat index in group -> flat index in quotient
    std::vector<Element> subgroup;   // the kernel H, as elements of the source group

    int project(int flat) const { return projection[flat]; }
};

/// Kernel constructions: (a) H = <y^n1> (needs n2 odd), (b) H = <y^{2n1}>
/// (needs n2 even), (c) H = <x, y^n2> (needs h = 1). Throws on an inapplicable
/// case.
QuotientDesc normal_subgroup(const GroupSpec& g, const Factorization& f, QuotientCase which);

/// All cases applicable to (g, f), in order a, b, c.
std::vector<QuotientDesc> applicable_quotients(const GroupSpec& g, const Factorization& f);

/// H = <y^d> for any d | n with d >= 2; quotient GroupSpec(d, s mod d). This
/// generalizes cases (a) and (b) (the `which` tag is set to whichever of the
/// two d matches, defaulting to b). Verified like the other constructions.
QuotientDesc power_kernel_quotient(const GroupSpec& g, int d);

/// Termwise projection; |result| = |s|.
Sequence project(const QuotientDesc& q, const Sequence& s);

/// All ordered pairs (alpha, beta) with alpha^2 = 1, beta^n = 1,
/// beta*alpha = alpha*beta^s and <alpha,beta> = G, by exhaustive scan.
std::vector<std::pair<Element, Element>> generating_pairs(const GroupSpec& g);

/// Automorphisms as flat-index permutations, one per generating pair
/// (x -> alpha, y -> beta extends uniquely to x^e y^k -> alpha^e beta^k).
std::vector<std::vector<int>> automorphisms(const GroupSpec& g);

/// Automorphism group of the view: units of C_n for a cyclic view, the
/// generating-pair automorphisms for a full view.
std::vector<std::vector<int>> view_automorphisms(const GroupView& v);

enum class FamilyKind { davenport_eta, egz_even, gao_even, egz_odd };

struct FamilyParams {
    Element alpha;
    Element beta;
    std::vector<int> t;  // {t} for davenport_eta, {t1,t2,t3} otherwise
};

/// The explicit extremal sequences:
///   davenport_eta: beta^[n-1] . (alpha beta^t)
///   egz_even:      (beta^t1)^[n-1]  . (beta^t2)^[n-1] . (alpha beta^t3), gcd(t1-t2,n)=1
///   gao_even/egz_odd: (beta^t1)^[2n-1] . (beta^t2)^[n-1] . (alpha beta^t3), gcd(t1-t2,n)=1
Sequence family_member(const GroupSpec& g, FamilyKind kind, const FamilyParams& p);

/// Inverse direction: parameters reproducing S, scanning generating pairs in
/// canonical order; absent when S is not of the family's shape. Throws if |S|
/// differs from the kind's required length.
std::optional<FamilyParams> classify_inverse(const GroupSpec& g, const Sequence& s,
                                             FamilyKind kind);

/// Decides the family's product-one freeness without dynamic programming:
/// subsequences containing the single reflection term multiply into <y>x, and
/// the rest reduce to a*t1 + b*t2 = 0 (mod n) with a+b fixed, enumerated in a.
bool is_family_free_analytic(const GroupSpec& g, FamilyKind kind, const FamilyParams& p);

int family_length(const GroupSpec& g, FamilyKind kind);
/// Forbidden product-one subsequence length the family avoids (n or 2n);
/// for davenport_eta this is 0, meaning "free at every length".
int family_target_length(const GroupSpec& g, FamilyKind kind);

std::string to_string(FamilyKind k);
std::optional<FamilyKind> family_kind_from_string(const std::string& s);

}  // namespace structure
}  // namespace prodone
