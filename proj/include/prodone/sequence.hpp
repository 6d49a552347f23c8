#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prodone/group.hpp"

namespace prodone {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

/// Finite multiset of group elements with explicit multiplicities. Terms are
/// kept sorted by flat index, multiplicities >= 1, elements distinct.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(GroupSpec g) : group_(g) {}
    Sequence(GroupSpec g, std::vector<std::pair<Element, int>> terms);

    const GroupSpec& group() const { return group_; }
    const std::vector<std::pair<Element, int>>& terms() const { return terms_; }

    int length() const;
    int multiplicity(Element e) const;
    bool contains(Element e) const { return multiplicity(e) > 0; }
    bool empty() const { return terms_.empty(); }

    void add(Element e, int mult = 1);
    /// Removes `mult` copies; throws if not present.
    void remove(Element e, int mult = 1);

    /// Count vector over the view's flat indices (view must carry all terms).
    std::vector<int> counts(const GroupView& v) const;
    static Sequence from_counts(const GroupView& v, const std::vector<int>& counts);

    /// Terms expanded one copy per entry, sorted by flat index.
    std::vector<Element> expand() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    GroupSpec group_ = GroupSpec::make(2, 1);
    std::vector<std::pair<Element, int>> terms_;
};

/// Grammar:  sequence := term (" . " term)* ;  term := atom ("^[" m "]")? ;
/// atom := "1" | "x" | "y^" k | "x*y^" k.  Exponents are reduced mod n,
/// multiplicities must be >= 1. The empty string is the empty sequence.
Sequence parse_sequence(const std::string& text, const GroupSpec& g);

/// Canonical text form: terms sorted by flat index; round-trip stable.
std::string format_sequence(const Sequence& s);

std::string format_element(const Element& e);

nlohmann::json sequence_to_json(const Sequence& s);
Sequence sequence_from_json(const nlohmann::json& j, const GroupSpec& g);

}  // namespace prodone
