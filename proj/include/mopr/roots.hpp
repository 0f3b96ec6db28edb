#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/poly.hpp"
#include "mopr/rational.hpp"

namespace mopr {

struct Root {
    Rat value;
    unsigned multiplicity = 1;

    friend bool operator==(const Root&, const Root&) = default;
};

/// One entry of the expanded root list: the root and how many equal roots precede it.
struct ExpandedRoot {
    Rat value;
    unsigned order = 0;
};

/// Zero set of a monic polynomial, stored compactly as distinct roots with multiplicities.
class RootList {
public:
    RootList() = default;
    explicit RootList(std::vector<Root> roots) : roots_(std::move(roots)) {
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            if (roots_[i].multiplicity == 0)
                throw InvalidRootList("root " + format_rat(roots_[i].value) + " has multiplicity 0");
            for (std::size_t j = 0; j < i; ++j)
                if (roots_[j].value == roots_[i].value)
                    throw InvalidRootList("root " + format_rat(roots_[i].value) + " listed twice");
        }
    }
    RootList(std::initializer_list<Root> roots) : RootList(std::vector<Root>(roots)) {}

    static RootList simple(const std::vector<Rat>& values) {
        std::vector<Root> r;
        for (const auto& v : values) r.push_back({v, 1});
        return RootList(std::move(r));
    }

    const std::vector<Root>& roots() const { return roots_; }
    bool empty() const { return roots_.empty(); }

    std::size_t degree() const {
        std::size_t n = 0;
        for (const auto& r : roots_) n += r.multiplicity;
        return n;
    }

    unsigned multiplicity_of(const Rat& value) const {
        for (const auto& r : roots_)
            if (r.value == value) return r.multiplicity;
        return 0;
    }

    bool has_repeated_roots() const {
        return std::any_of(roots_.begin(), roots_.end(), [](const Root& r) { return r.multiplicity > 1; });
    }

    /// z_1..z_N in compact order, each root repeated consecutively with its derivative order.
    std::vector<ExpandedRoot> expanded() const {
        std::vector<ExpandedRoot> out;
        for (const auto& r : roots_)
            for (unsigned l = 0; l < r.multiplicity; ++l) out.push_back({r.value, l});
        return out;
    }

    /// Set equality: same roots with the same multiplicities, order ignored.
    friend bool operator==(const RootList& a, const RootList& b) {
        if (a.roots_.size() != b.roots_.size()) return false;
        return std::all_of(a.roots_.begin(), a.roots_.end(),
                           [&](const Root& r) { return b.multiplicity_of(r.value) == r.multiplicity; });
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            if (i) out += ", ";
            out += "(" + format_rat(roots_[i].value) + "," + std::to_string(roots_[i].multiplicity) + ")";
        }
        return out + "]";
    }

private:
    std::vector<Root> roots_;
};

/// Monic polynomial with exactly the listed roots.
inline Poly poly_from_roots(const RootList& roots) {
    Poly out = Poly::constant(Rat(1));
    for (const auto& r : roots.roots())
        for (unsigned l = 0; l < r.multiplicity; ++l) out *= Poly{Rat(-r.value), Rat(1)};
    return out;
}

/// Per-root maximum of multiplicities. Roots of a come first, then new roots of b.
inline RootList root_lcm(const RootList& a, const RootList& b) {
    std::vector<Root> out = a.roots();
    for (auto& r : out) r.multiplicity = std::max(r.multiplicity, b.multiplicity_of(r.value));
    for (const auto& r : b.roots())
        if (a.multiplicity_of(r.value) == 0) out.push_back(r);
    return RootList(std::move(out));
}

/// Multiplicities added: the roots of the product polynomial.
inline RootList root_product(const RootList& a, const RootList& b) {
    std::vector<Root> out = a.roots();
    for (auto& r : out) r.multiplicity += b.multiplicity_of(r.value);
    for (const auto& r : b.roots())
        if (a.multiplicity_of(r.value) == 0) out.push_back(r);
    return RootList(std::move(out));
}

/// Roots of a/b; every root of b must divide a with at least its multiplicity.
inline RootList root_quotient(const RootList& a, const RootList& b) {
    for (const auto& r : b.roots())
        if (a.multiplicity_of(r.value) < r.multiplicity)
            throw NegativeMultiplicity("root " + format_rat(r.value) + " of the divisor exceeds the dividend");
    std::vector<Root> out;
    for (const auto& r : a.roots()) {
        const unsigned m = r.multiplicity - b.multiplicity_of(r.value);
        if (m > 0) out.push_back({r.value, m});
    }
    return RootList(std::move(out));
}

}  // namespace mopr
