#include "prodone/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace prodone {
namespace structure {

namespace {

int mod_reduce(int a, int m) {
    a %= m;
    return a < 0 ? a + m : a;
}

}  // namespace

Factorization factorize(int n, int s) {
    if (n < 8) throw std::invalid_argument("factorize: n must be >= 8");
    s = mod_reduce(s, n);
    if (static_cast<long long>(s) * s % n != 1)
        throw NotAGroupError("factorize: s^2 != 1 (mod n)");
    if (s == 1 || s == n - 1)
        throw std::invalid_argument("factorize: s = +-1 (mod n), no proper factorization");

    Factorization f;
    int rest = n;
    // 2-part
    int two = 1;
    while (rest % 2 == 0) {
        rest /= 2;
        two *= 2;
    }
    if (two > 1) {
        if (two == 2) {
            f.h = 2;  // lone factor 2: absorbed into h
        } else if (mod_reduce(s, two) == 1) {
            f.n2 *= two;
        } else if (mod_reduce(s, two) == two - 1) {
            f.n1 *= two;
        } else {
            f.h = 2;
            int half = two / 2;
            if (mod_reduce(s, half) == 1)
                f.n2 *= half;
            else if (mod_reduce(s, half) == half - 1)
                f.n1 *= half;
            else
                throw std::logic_error("factorize: 2-part residue not +-1 at half modulus");
        }
    }
    // odd prime powers
    for (int p = 3; p <= rest; p += 2) {
        if (rest % p != 0) continue;
        int pe = 1;
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
        }
        if (mod_reduce(s, pe) == 1)
            f.n2 *= pe;
        else if (mod_reduce(s, pe) == pe - 1)
            f.n1 *= pe;
        else
            throw std::logic_error("factorize: odd prime power residue not +-1");
    }
    if (f.h * f.n1 * f.n2 != n) throw std::logic_error("factorize: product mismatch");
    if (std::gcd(f.n1, f.n2) != 1) throw std::logic_error("factorize: n1, n2 not coprime");
    return f;
}

namespace {

QuotientDesc make_quotient(const GroupSpec& g, QuotientCase which, const GroupView& quotient,
                           std::vector<int> projection) {
    QuotientDesc q{which, GroupView::full(g), quotient, std::move(projection), {}};
    const int qid = 0;
    // kernel
    for (int i = 0; i < q.group.size(); ++i)
        if (q.projection[i] == qid) q.subgroup.push_back(g.unflat(i));
    // homomorphism + kernel size checks, exhaustive
    for (int a = 0; a < q.group.size(); ++a)
        for (int b = 0; b < q.group.size(); ++b)
            if (q.projection[q.group.mul(a, b)] !=
                q.quotient.mul(q.projection[a], q.projection[b]))
                throw std::logic_error("quotient projection is not a homomorphism");
    if (static_cast<int>(q.subgroup.size()) * q.quotient.size() != q.group.size())
        throw std::logic_error("kernel size * quotient size != group size");
    // normality: g h g^-1 in H for all g, h
    std::set<int> hset;
    for (auto& h : q.subgroup) hset.insert(g.flat(h));
    for (int a = 0; a < q.group.size(); ++a)
        for (auto& h : q.subgroup) {
            Element conj = g.mul(g.mul(g.unflat(a), h), g.inverse(g.unflat(a)));
            if (!hset.count(g.flat(conj))) throw std::logic_error("subgroup is not normal");
        }
    return q;
}

}  // namespace

QuotientDesc normal_subgroup(const GroupSpec& g, const Factorization& f, QuotientCase which) {
    int n = g.n();
    switch (which) {
        case QuotientCase::a:
        case QuotientCase::b: {
            bool n2_even = f.n2 % 2 == 0;
            if (which == QuotientCase::a && n2_even)
                throw std::invalid_argument("case (a) needs n2 odd");
            if (which == QuotientCase::b && !n2_even)
                throw std::invalid_argument("case (b) needs n2 even");
            int d = which == QuotientCase::a ? f.n1 : 2 * f.n1;  // H = <y^d>
            if (d < 2) throw std::invalid_argument("quotient parameter below 2");
            GroupSpec qspec = GroupSpec::make(d, mod_reduce(g.s(), d));
            GroupView qv = GroupView::full(qspec);
            std::vector<int> proj(2 * n);
            for (int i = 0; i < 2 * n; ++i) {
                Element e = g.unflat(i);
                proj[i] = qv.index({e.eps, e.k % d});
            }
            return make_quotient(g, which, qv, std::move(proj));
        }
        case QuotientCase::c: {
            if (f.h != 1) throw std::invalid_argument("case (c) needs n = n1*n2 (h = 1)");
            if (f.n2 < 2) throw std::invalid_argument("case (c) needs n2 >= 2");
            GroupView qv = GroupView::cyclic(GroupSpec::make(f.n2, 1));
            std::vector<int> proj(2 * n);
            for (int i = 0; i < 2 * n; ++i) {
                Element e = g.unflat(i);
                proj[i] = e.k % f.n2;
            }
            return make_quotient(g, QuotientCase::c, qv, std::move(proj));
        }
    }
    throw std::logic_error("unreachable");
}

QuotientDesc power_kernel_quotient(const GroupSpec& g, int d) {
    int n = g.n();
    if (d < 2 || n % d != 0) throw std::invalid_argument("power_kernel_quotient: d must divide n");
    GroupSpec qspec = GroupSpec::make(d, mod_reduce(g.s(), d));
    GroupView qv = GroupView::full(qspec);
    std::vector<int> proj(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        Element e = g.unflat(i);
        proj[i] = qv.index({e.eps, e.k % d});
    }
    QuotientCase which = QuotientCase::b;
    if (g.s_class() == SClass::proper) {
        Factorization f = factorize(n, g.s());
        if (d == f.n1) which = QuotientCase::a;
    }
    return make_quotient(g, which, qv, std::move(proj));
}

std::vector<QuotientDesc> applicable_quotients(const GroupSpec& g, const Factorization& f) {
    std::vector<QuotientDesc> out;
    if (f.n2 % 2 == 1 && f.n1 >= 2) out.push_back(normal_subgroup(g, f, QuotientCase::a));
    if (f.n2 % 2 == 0) out.push_back(normal_subgroup(g, f, QuotientCase::b));
    if (f.h == 1 && f.n2 >= 2) out.push_back(normal_subgroup(g, f, QuotientCase::c));
    return out;
}

Sequence project(const QuotientDesc& q, const Sequence& s) {
    Sequence out(q.quotient.spec());
    for (auto& [e, m] : s.terms())
        out.add(q.quotient.element(q.project(q.group.index(e))), m);
    return out;
}

std::vector<std::pair<Element, Element>> generating_pairs(const GroupSpec& g) {
    std::vector<std::pair<Element, Element>> out;
    int order = g.order();
    for (int ai = 0; ai < order; ++ai) {
        Element a = g.unflat(ai);
        if (!(g.mul(a, a) == g.identity())) continue;
        for (int bi = 0; bi < order; ++bi) {
            Element b = g.unflat(bi);
            if (!(g.power(b, g.n()) == g.identity())) continue;
            // beta * alpha = alpha * beta^s
            if (!(g.mul(b, a) == g.mul(a, g.power(b, g.s())))) continue;
            // closure: <alpha, beta> must be the whole group
            std::set<int> gen{g.flat(g.identity())};
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<int> cur(gen.begin(), gen.end());
                for (int e : cur)
                    for (Element m : {a, b}) {
                        int f = g.flat(g.mul(g.unflat(e), m));
                        if (gen.insert(f).second) grew = true;
                    }
            }
            if (static_cast<int>(gen.size()) == order) out.push_back({a, b});
        }
    }
    return out;
}

std::vector<std::vector<int>> automorphisms(const GroupSpec& g) {
    std::vector<std::vector<int>> out;
    for (auto& [a, b] : generating_pairs(g)) {
        std::vector<int> perm(g.order());
        std::vector<bool> hit(g.order(), false);
        bool bijective = true;
        for (int i = 0; i < g.order(); ++i) {
            Element e = g.unflat(i);
            Element img = g.power(b, e.k);
            if (e.eps) img = g.mul(a, img);
            perm[i] = g.flat(img);
            if (hit[perm[i]]) bijective = false;
            hit[perm[i]] = true;
        }
        if (bijective) out.push_back(std::move(perm));
    }
    return out;
}

std::vector<std::vector<int>> view_automorphisms(const GroupView& v) {
    if (!v.cyclic_only()) return automorphisms(v.spec());
    int n = v.spec().n();
    std::vector<std::vector<int>> out;
    for (int u = 1; u < std::max(n, 2); ++u) {
        if (std::gcd(u, n) != 1) continue;
        std::vector<int> perm(n);
        for (int k = 0; k < n; ++k) perm[k] = static_cast<int>(static_cast<long long>(u) * k % n);
        out.push_back(std::move(perm));
    }
    if (out.empty()) out.push_back({0});
    return out;
}

int family_length(const GroupSpec& g, FamilyKind kind) {
    switch (kind) {
        case FamilyKind::davenport_eta: return g.n();
        case FamilyKind::egz_even: return 2 * g.n() - 1;
        default: return 3 * g.n() - 1;
    }
}

int family_target_length(const GroupSpec& g, FamilyKind kind) {
    switch (kind) {
        case FamilyKind::davenport_eta: return 0;
        case FamilyKind::egz_even: return g.n();
        default: return 2 * g.n();
    }
}

Sequence family_member(const GroupSpec& g, FamilyKind kind, const FamilyParams& p) {
    Sequence s(g);
    int n = g.n();
    if (kind == FamilyKind::davenport_eta) {
        if (p.t.size() != 1) throw std::invalid_argument("davenport_eta needs one exponent");
        s.add(p.beta, n - 1);
        s.add(g.mul(p.alpha, g.power(p.beta, p.t[0])));
        return s;
    }
    if (p.t.size() != 3) throw std::invalid_argument("family needs exponents (t1,t2,t3)");
    int t1 = mod_reduce(p.t[0], n), t2 = mod_reduce(p.t[1], n), t3 = mod_reduce(p.t[2], n);
    if (std::gcd(mod_reduce(t1 - t2, n), n) != 1)
        throw std::invalid_argument("family needs gcd(t1-t2, n) = 1");
    int m1 = kind == FamilyKind::egz_even ? n - 1 : 2 * n - 1;
    s.add(g.power(p.beta, t1), m1);
    s.add(g.power(p.beta, t2), n - 1);
    s.add(g.mul(p.alpha, g.power(p.beta, t3)));
    return s;
}

namespace {

// discrete log in <beta>; beta has order n in a generating pair
std::optional<int> dlog(const GroupSpec& g, Element beta, Element target) {
    Element acc = g.identity();
    for (int t = 0; t < g.n(); ++t) {
        if (acc == target) return t;
        acc = g.mul(acc, beta);
    }
    return std::nullopt;
}

}  // namespace

std::optional<FamilyParams> classify_inverse(const GroupSpec& g, const Sequence& s,
                                             FamilyKind kind) {
    int n = g.n();
    if (s.length() != family_length(g, kind))
        throw std::invalid_argument("classify_inverse: wrong sequence length");

    auto& terms = s.terms();
    auto pairs = generating_pairs(g);

    if (kind == FamilyKind::davenport_eta) {
        if (terms.size() != 2) return std::nullopt;
        for (auto& [alpha, beta] : pairs) {
            if (s.multiplicity(beta) != n - 1) continue;
            Element w = terms[0].second == 1 ? terms[0].first : terms[1].first;
            auto t = dlog(g, beta, g.mul(g.inverse(alpha), w));
            if (!t) continue;
            FamilyParams p{alpha, beta, {*t}};
            if (family_member(g, kind, p) == s) return p;
        }
        return std::nullopt;
    }

    if (terms.size() != 3) return std::nullopt;
    int m1 = kind == FamilyKind::egz_even ? n - 1 : 2 * n - 1;
    // locate the multiplicity profile {m1, n-1, 1}
    const std::pair<Element, int>* big = nullptr;
    const std::pair<Element, int>* mid = nullptr;
    const std::pair<Element, int>* one = nullptr;
    for (auto& tp : terms) {
        if (tp.second == 1 && !one) one = &tp;
        else if (tp.second == m1 && !big) big = &tp;
        else if (tp.second == n - 1) mid = &tp;
        else return std::nullopt;
    }
    if (!big || !mid || !one) return std::nullopt;
    for (auto& [alpha, beta] : pairs) {
        auto t3e = dlog(g, beta, g.mul(g.inverse(alpha), one->first));
        if (!t3e) continue;
        for (int flip = 0; flip < (m1 == n - 1 ? 2 : 1); ++flip) {
            Element u1 = flip ? mid->first : big->first;
            Element u2 = flip ? big->first : mid->first;
            auto t1e = dlog(g, beta, u1);
            auto t2e = dlog(g, beta, u2);
            if (!t1e || !t2e) continue;
            if (std::gcd(mod_reduce(*t1e - *t2e, n), n) != 1) continue;
            FamilyParams p{alpha, beta, {*t1e, *t2e, *t3e}};
            if (family_member(g, kind, p) == s) return p;
        }
    }
    return std::nullopt;
}

bool is_family_free_analytic(const GroupSpec& g, FamilyKind kind, const FamilyParams& p) {
    int n = g.n();
    // validate the pair shape: alpha a reflection-like involution outside <beta>
    if (!(g.mul(p.alpha, p.alpha) == g.identity()))
        throw std::invalid_argument("invalid params: alpha^2 != 1");
    if (g.element_order(p.beta) != n) throw std::invalid_argument("invalid params: ord(beta) != n");

    if (kind == FamilyKind::davenport_eta) {
        // beta^[n-1] . (alpha beta^t): subsequences inside <beta> give beta^a,
        // a in [1, n-1], never 1; anything containing the alpha-term lands in
        // the reflection coset.
        return true;
    }
    int t1 = mod_reduce(p.t.at(0), n), t2 = mod_reduce(p.t.at(1), n);
    int c1 = kind == FamilyKind::egz_even ? n - 1 : 2 * n - 1;
    int c2 = n - 1;
    int target = family_target_length(g, kind);
    // a copies of beta^t1 and target-a of beta^t2 multiply to beta^(a*t1+b*t2);
    // any selection containing the single alpha-term has odd reflection parity.
    for (int a = std::max(0, target - c2); a <= std::min(c1, target); ++a) {
        int b = target - a;
        long long e = (static_cast<long long>(a) * t1 + static_cast<long long>(b) * t2) % n;
        if (e == 0) return false;
    }
    return true;
}

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::davenport_eta: return "davenport_eta";
        case FamilyKind::egz_even: return "egz_even";
        case FamilyKind::gao_even: return "gao_even";
        default: return "egz_odd";
    }
}

std::optional<FamilyKind> family_kind_from_string(const std::string& s) {
    if (s == "davenport_eta") return FamilyKind::davenport_eta;
    if (s == "egz_even") return FamilyKind::egz_even;
    if (s == "gao_even") return FamilyKind::gao_even;
    if (s == "egz_odd") return FamilyKind::egz_odd;
    return std::nullopt;
}

}  // namespace structure
}  // namespace prodone
