#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prodone {

/// Thrown by make_group when (n, s) does not define a group, i.e. s^2 != 1 (mod n).
struct NotAGroupError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class SClass { abelian, dihedral, proper };

/// Element x^eps * y^k with 0 <= k < n, eps in {0,1}. Canonical: every group
/// element has exactly one encoding.
struct Element {
    int eps = 0;
    int k = 0;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

/// The group <x, y | x^2 = y^n = 1, yx = xy^s> of order 2n. Valid iff
/// s^2 = 1 (mod n). s = 1 gives C_n x C_2, s = n-1 gives the dihedral group.
class GroupSpec {
public:
    static GroupSpec make(int n, int s);

    int n() const { return n_; }
    int s() const { return s_; }
    SClass s_class() const { return s_class_; }
    int order() const { return 2 * n_; }

    Element identity() const { return {0, 0}; }
    Element mul(Element a, Element b) const;
    Element inverse(Element a) const;
    Element power(Element a, int e) const;
    int element_order(Element a) const;

    /// lcm of all element orders, computed directly from element_order.
    int exponent() const;

    /// Flat index eps*n + k; identity is 0, <y> occupies [0, n).
    int flat(Element a) const { return a.eps * n_ + a.k; }
    Element unflat(int idx) const { return {idx / n_, idx % n_}; }

    bool valid(Element a) const {
        return (a.eps == 0 || a.eps == 1) && a.k >= 0 && a.k < n_;
    }

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
    GroupSpec(int n, int s, SClass c) : n_(n), s_(s), s_class_(c) {}
    int n_;
    int s_;
    SClass s_class_;
};

/// A group the sequence machinery runs on: either the full 2n elements of a
/// GroupSpec, or its cyclic subgroup <y> (used to model C_n and the cyclic
/// quotients). Flat indices are dense in [0, size()).
class GroupView {
public:
    static GroupView full(GroupSpec g) { return GroupView(g, false); }
    static GroupView cyclic(GroupSpec g) { return GroupView(g, true); }
    /// Standalone C_m, materialized as <y> of GroupSpec(m, 1).
    static GroupView cyclic_group(int m);

    const GroupSpec& spec() const { return spec_; }
    bool cyclic_only() const { return cyclic_; }
    int size() const { return cyclic_ ? spec_.n() : 2 * spec_.n(); }
    int exponent() const;

    Element element(int idx) const {
        return cyclic_ ? Element{0, idx} : spec_.unflat(idx);
    }
    int index(Element a) const { return cyclic_ ? a.k : spec_.flat(a); }

    int mul(int a, int b) const;
    int inverse(int a) const;

    friend bool operator==(const GroupView&, const GroupView&) = default;

private:
    GroupView(GroupSpec g, bool cyc) : spec_(g), cyclic_(cyc) {}
    GroupSpec spec_;
    bool cyclic_;
};

/// Dense multiplication tables for a view; the DP inner loops index these.
struct MulTable {
    explicit MulTable(const GroupView& v);

    int size;
    std::vector<int> mul;      // mul[a*size + b]
    std::vector<int> inv;      // inv[a]
    std::vector<int> by_right; // by_right[g*size + p] = mul[p*size + g]

    int product(int a, int b) const { return mul[a * size + b]; }
};

std::string to_string(SClass c);

}  // namespace prodone
