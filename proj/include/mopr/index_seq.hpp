#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/multi_index.hpp"

namespace mopr {

enum class Direction { Increasing, Decreasing };

enum class TieBreak {
    Interleaved,     ///< components in ascending order within each level
    ComponentMajor,  ///< components in descending order within each level
};

/// A sequence of multi-indices starting at `from` and moving towards `to`.
/// Witnesses, when known, are 0-based component ids k_1..k_d.
struct IndexSeq {
    Direction direction = Direction::Increasing;
    MultiIndex from;
    MultiIndex to;
    std::vector<MultiIndex> elements;
    std::vector<std::size_t> witnesses;

    std::size_t size() const { return elements.size(); }
    const MultiIndex& operator[](std::size_t j) const { return elements[j]; }

    /// s_j, always with nonnegative entries for a well-formed sequence.
    MultiIndex offset(std::size_t j) const {
        return direction == Direction::Increasing ? elements[j] - from : from - elements[j];
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t j = 0; j < elements.size(); ++j) out += (j ? "," : "") + elements[j].to_string();
        return out;
    }
};

namespace detail {

inline Direction direction_between(const MultiIndex& from, const MultiIndex& to) {
    if (from.size() != to.size()) throw ArityMismatch("endpoints " + from.to_string() + " and " + to.to_string());
    if (componentwise_le(from, to)) return Direction::Increasing;
    if (componentwise_le(to, from)) return Direction::Decreasing;
    throw BadStepMultiset("endpoints " + from.to_string() + " and " + to.to_string() + " are not comparable");
}

}  // namespace detail

/// Path from `from` to `to` taking one unit step in component step_order[i] at a time.
inline IndexSeq path(const MultiIndex& from, const MultiIndex& to, const std::vector<std::size_t>& step_order) {
    const Direction dir = detail::direction_between(from, to);
    std::vector<int> remaining(from.size());
    for (std::size_t k = 0; k < from.size(); ++k) remaining[k] = std::abs(to[k] - from[k]);
    IndexSeq seq{dir, from, to, {from}, {}};
    MultiIndex cur = from;
    for (std::size_t k : step_order) {
        if (k >= from.size()) throw BadStepMultiset("step component " + std::to_string(k + 1) + " out of range");
        if (remaining[k]-- == 0)
            throw BadStepMultiset("too many steps in component " + std::to_string(k + 1) + " from " +
                                  from.to_string() + " to " + to.to_string());
        cur[k] += dir == Direction::Increasing ? 1 : -1;
        seq.elements.push_back(cur);
        seq.witnesses.push_back(k);
    }
    for (std::size_t k = 0; k < remaining.size(); ++k)
        if (remaining[k] != 0)
            throw BadStepMultiset("path from " + from.to_string() + " to " + to.to_string() + " is missing " +
                                  std::to_string(remaining[k]) + " steps in component " + std::to_string(k + 1));
    return seq;
}

/// Step order cycling through the components that still need steps: 1,2,..,r,1,2,...
inline std::vector<std::size_t> round_robin_order(const MultiIndex& from, const MultiIndex& to) {
    std::vector<int> remaining(from.size());
    int total = 0;
    for (std::size_t k = 0; k < from.size(); ++k) total += remaining[k] = std::abs(to[k] - from[k]);
    std::vector<std::size_t> order;
    while (total > 0)
        for (std::size_t k = 0; k < remaining.size(); ++k)
            if (remaining[k] > 0) {
                --remaining[k];
                --total;
                order.push_back(k);
            }
    return order;
}

inline IndexSeq path(const MultiIndex& from, const MultiIndex& to) {
    return path(from, to, round_robin_order(from, to));
}

/// The frame {from +- j e_k}, ordered by level j.
inline IndexSeq frame(const MultiIndex& from, const MultiIndex& to, TieBreak tie_break = TieBreak::Interleaved) {
    const Direction dir = detail::direction_between(from, to);
    const int sign = dir == Direction::Increasing ? 1 : -1;
    IndexSeq seq{dir, from, to, {from}, {}};
    int levels = 0;
    for (std::size_t k = 0; k < from.size(); ++k) levels = std::max(levels, std::abs(to[k] - from[k]));
    std::vector<std::size_t> comps(from.size());
    for (std::size_t k = 0; k < comps.size(); ++k) comps[k] = k;
    if (tie_break == TieBreak::ComponentMajor) std::reverse(comps.begin(), comps.end());
    for (int j = 1; j <= levels; ++j)
        for (std::size_t k : comps)
            if (std::abs(to[k] - from[k]) >= j) {
                seq.elements.push_back(from + MultiIndex::unit(from.size(), k, sign * j));
                seq.witnesses.push_back(k);
            }
    return seq;
}

struct AdmissibilityResult {
    bool admissible = false;
    std::vector<std::size_t> witnesses;  ///< 0-based, one per element after the first
    std::string reason;
};

/// Checks the admissibility conditions and finds witnesses k_j. The strict-growth condition
/// for element j involves only k_j, so each witness is chosen independently: the smallest
/// component in which s_j exceeds every earlier offset.
inline AdmissibilityResult is_admissible(const IndexSeq& seq, const MultiIndex& from, const MultiIndex& to) {
    AdmissibilityResult out;
    if (seq.elements.empty()) {
        out.reason = "empty sequence";
        return out;
    }
    if (from.size() != to.size()) throw ArityMismatch("endpoints of different arity");
    if (seq.elements.front() != from) {
        out.reason = "sequence starts at " + seq.elements.front().to_string() + ", not " + from.to_string();
        return out;
    }
    Direction dir;
    try {
        dir = detail::direction_between(from, to);
    } catch (const BadStepMultiset& e) {
        out.reason = e.what();
        return out;
    }
    if (from == to) dir = seq.direction;
    const std::size_t r = from.size();
    const MultiIndex& lo = dir == Direction::Increasing ? from : to;
    const MultiIndex& hi = dir == Direction::Increasing ? to : from;

    std::vector<int> running_max(r, 0);
    for (std::size_t j = 1; j < seq.elements.size(); ++j) {
        const MultiIndex& e = seq.elements[j];
        if (e.size() != r) throw ArityMismatch("element " + e.to_string() + " has the wrong arity");
        if (!componentwise_le(lo, e) || !componentwise_le(e, hi)) {
            out.reason = "element " + std::to_string(j) + " = " + e.to_string() + " leaves the box";
            return out;
        }
        const MultiIndex s = dir == Direction::Increasing ? e - from : from - e;
        std::optional<std::size_t> witness;
        for (std::size_t k = 0; k < r && !witness; ++k)
            if (s[k] > running_max[k]) witness = k;
        if (!witness) {
            out.reason = "element " + std::to_string(j) + " = " + e.to_string() + " grows in no component";
            return out;
        }
        out.witnesses.push_back(*witness);
        for (std::size_t k = 0; k < r; ++k) running_max[k] = std::max(running_max[k], s[k]);
    }
    out.admissible = true;
    return out;
}

/// Explicit sequence with direction inferred from the endpoints (increasing when they coincide).
inline IndexSeq explicit_sequence(const MultiIndex& from, const MultiIndex& to, std::vector<MultiIndex> elements) {
    IndexSeq seq{detail::direction_between(from, to), from, to, std::move(elements), {}};
    return seq;
}

}  // namespace mopr
