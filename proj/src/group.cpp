#include "prodone/group.hpp"

#include <numeric>

namespace prodone {

GroupSpec GroupSpec::make(int n, int s) {
    if (n < 2) throw std::invalid_argument("GroupSpec: n must be >= 2");
    s %= n;
    if (s < 0) s += n;
    if (static_cast<long long>(s) * s % n != 1)
        throw NotAGroupError("not a group: s^2 != 1 (mod " + std::to_string(n) +
                             ") for s=" + std::to_string(s));
    SClass c = SClass::proper;
    if (s == 1 % n) c = SClass::abelian;
    else if (s == n - 1) c = SClass::dihedral;
    return GroupSpec(n, s, c);
}

Element GroupSpec::mul(Element a, Element b) const {
    // (x^e1 y^k1)(x^e2 y^k2) = x^(e1^e2) y^(k1*s^e2 + k2)
    long long k1 = a.k;
    if (b.eps == 1) k1 = k1 * s_ % n_;
    return {a.eps ^ b.eps, static_cast<int>((k1 + b.k) % n_)};
}

Element GroupSpec::inverse(Element a) const {
    if (a.eps == 0) return {0, (n_ - a.k) % n_};
    // (xy^k)^-1 = x y^j with k*s + j = 0 (mod n)
    int j = static_cast<int>((n_ - static_cast<long long>(a.k) * s_ % n_) % n_);
    return {1, j};
}

Element GroupSpec::power(Element a, int e) const {
    Element acc = identity();
    Element base = a;
    if (e < 0) {
        base = inverse(a);
        e = -e;
    }
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int GroupSpec::element_order(Element a) const {
    Element p = a;
    int t = 1;
    while (!(p == identity())) {
        p = mul(p, a);
        ++t;
    }
    return t;
}

int GroupSpec::exponent() const {
    long long l = 1;
    for (int idx = 0; idx < order(); ++idx) {
        int o = element_order(unflat(idx));
        l = std::lcm(l, static_cast<long long>(o));
    }
    return static_cast<int>(l);
}

GroupView GroupView::cyclic_group(int m) { return GroupView::cyclic(GroupSpec::make(m, 1)); }

int GroupView::exponent() const {
    if (cyclic_) return spec_.n();
    return spec_.exponent();
}

int GroupView::mul(int a, int b) const {
    return index(spec_.mul(element(a), element(b)));
}

int GroupView::inverse(int a) const { return index(spec_.inverse(element(a))); }

MulTable::MulTable(const GroupView& v) : size(v.size()) {
    mul.resize(static_cast<size_t>(size) * size);
    inv.resize(size);
    by_right.resize(static_cast<size_t>(size) * size);
    for (int a = 0; a < size; ++a) {
        inv[a] = v.inverse(a);
        for (int b = 0; b < size; ++b) mul[a * size + b] = v.mul(a, b);
    }
    for (int g = 0; g < size; ++g)
        for (int p = 0; p < size; ++p) by_right[g * size + p] = mul[p * size + g];
}

std::string to_string(SClass c) {
    switch (c) {
        case SClass::abelian: return "abelian";
        case SClass::dihedral: return "dihedral";
        default: return "proper";
    }
}

}  // namespace prodone
