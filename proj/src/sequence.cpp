#include "prodone/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <nlohmann/json.hpp>

namespace prodone {

Sequence::Sequence(GroupSpec g, std::vector<std::pair<Element, int>> terms) : group_(g) {
    for (auto& [e, m] : terms) add(e, m);
}

int Sequence::length() const {
    int len = 0;
    for (auto& [e, m] : terms_) len += m;
    return len;
}

int Sequence::multiplicity(Element e) const {
    for (auto& [t, m] : terms_)
        if (t == e) return m;
    return 0;
}

void Sequence::add(Element e, int mult) {
    if (mult < 1) throw std::invalid_argument("Sequence::add: multiplicity must be >= 1");
    if (!group_.valid(e)) throw std::invalid_argument("Sequence::add: element not in group");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [&](const auto& p, const Element& x) {
                                   return group_.flat(p.first) < group_.flat(x);
                               });
    if (it != terms_.end() && it->first == e)
        it->second += mult;
    else
        terms_.insert(it, {e, mult});
}

void Sequence::remove(Element e, int mult) {
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->first == e) {
            if (it->second < mult)
                throw std::invalid_argument("Sequence::remove: multiplicity underflow");
            it->second -= mult;
            if (it->second == 0) terms_.erase(it);
            return;
        }
    }
    throw std::invalid_argument("Sequence::remove: element not present");
}

std::vector<int> Sequence::counts(const GroupView& v) const {
    std::vector<int> c(v.size(), 0);
    for (auto& [e, m] : terms_) c[v.index(e)] += m;
    return c;
}

Sequence Sequence::from_counts(const GroupView& v, const std::vector<int>& counts) {
    Sequence s(v.spec());
    for (int i = 0; i < static_cast<int>(counts.size()); ++i)
        if (counts[i] > 0) s.add(v.element(i), counts[i]);
    return s;
}

std::vector<Element> Sequence::expand() const {
    std::vector<Element> out;
    out.reserve(length());
    for (auto& [e, m] : terms_)
        for (int i = 0; i < m; ++i) out.push_back(e);
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    bool eat(char c) {
        if (!done() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat(const std::string& s) {
        if (text.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }
    long long number() {
        size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) throw ParseError("expected number", start);
        return std::stoll(text.substr(start, pos - start));
    }
};

Element parse_atom(Cursor& c, const GroupSpec& g) {
    size_t start = c.pos;
    if (c.eat("x*y^")) {
        return {1, static_cast<int>(c.number() % g.n())};
    }
    if (c.eat("y^")) {
        return {0, static_cast<int>(c.number() % g.n())};
    }
    if (c.eat('x')) return {1, 0};
    if (c.eat('1')) return {0, 0};
    throw ParseError("expected atom ('1', 'x', 'y^k' or 'x*y^k')", start);
}

}  // namespace

Sequence parse_sequence(const std::string& text, const GroupSpec& g) {
    Sequence s(g);
    Cursor c{text};
    if (c.done()) return s;
    while (true) {
        Element e = parse_atom(c, g);
        int mult = 1;
        if (c.eat("^[")) {
            size_t mpos = c.pos;
            long long m = c.number();
            if (m < 1) throw ParseError("multiplicity must be >= 1", mpos);
            if (!c.eat(']')) throw ParseError("expected ']'", c.pos);
            mult = static_cast<int>(m);
        }
        s.add(e, mult);
        if (c.done()) break;
        if (!c.eat(" . ")) throw ParseError("expected ' . ' between terms", c.pos);
    }
    return s;
}

std::string format_element(const Element& e) {
    if (e.eps == 0 && e.k == 0) return "1";
    if (e.eps == 0) return "y^" + std::to_string(e.k);
    if (e.k == 0) return "x";
    return "x*y^" + std::to_string(e.k);
}

std::string format_sequence(const Sequence& s) {
    std::string out;
    bool first = true;
    for (auto& [e, m] : s.terms()) {
        if (!first) out += " . ";
        first = false;
        out += format_element(e);
        if (m > 1) out += "^[" + std::to_string(m) + "]";
    }
    return out;
}

nlohmann::json sequence_to_json(const Sequence& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [e, m] : s.terms())
        arr.push_back({{"elem", {{"eps", e.eps}, {"k", e.k}}}, {"mult", m}});
    return arr;
}

Sequence sequence_from_json(const nlohmann::json& j, const GroupSpec& g) {
    Sequence s(g);
    for (auto& item : j)
        s.add({item.at("elem").at("eps").get<int>(), item.at("elem").at("k").get<int>()},
              item.at("mult").get<int>());
    return s;
}

}  // namespace prodone
