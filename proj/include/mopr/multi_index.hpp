#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "mopr/errors.hpp"

namespace mopr {

/// n = (n_1, ..., n_r). Entries are signed so that offsets and differences can be formed;
/// indices handed to a System must be nonnegative.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t r) : v_(r, 0) {}
    explicit MultiIndex(std::vector<int> v) : v_(std::move(v)) {}
    MultiIndex(std::initializer_list<int> v) : v_(v) {}

    static MultiIndex unit(std::size_t r, std::size_t k, int scale = 1) {
        MultiIndex e(r);
        e[k] = scale;
        return e;
    }

    std::size_t size() const { return v_.size(); }
    int& operator[](std::size_t k) { return v_[k]; }
    int operator[](std::size_t k) const { return v_[k]; }
    const std::vector<int>& values() const { return v_; }

    /// |n|
    int total() const { return std::accumulate(v_.begin(), v_.end(), 0); }
    bool is_zero() const {
        for (int x : v_)
            if (x != 0) return false;
        return true;
    }
    bool is_nonnegative() const {
        for (int x : v_)
            if (x < 0) return false;
        return true;
    }

    MultiIndex& operator+=(const MultiIndex& o) {
        check_arity(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    MultiIndex& operator-=(const MultiIndex& o) {
        check_arity(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    /// Lexicographic, for use as an ordered-map key.
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

    /// "(1,2)"
    std::string to_string() const {
        std::string out = "(";
        for (std::size_t k = 0; k < v_.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(v_[k]);
        }
        return out + ")";
    }

private:
    void check_arity(const MultiIndex& o) const {
        if (o.v_.size() != v_.size())
            throw ArityMismatch("multi-indices of length " + std::to_string(v_.size()) + " and " +
                                std::to_string(o.v_.size()));
    }

    std::vector<int> v_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiIndex& n) { return os << n.to_string(); }

/// Componentwise a <= b.
inline bool componentwise_le(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw ArityMismatch("componentwise comparison of different arities");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

/// Orders by |n| first, then lexicographically.
struct MultiIndexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int ta = a.total(), tb = b.total();
        return ta != tb ? ta < tb : a < b;
    }
};

/// Every n with 0 <= n <= nmax, in lexicographic order (first component slowest).
inline std::vector<MultiIndex> box(const MultiIndex& nmax) {
    if (!nmax.is_nonnegative()) throw DimensionMismatch("box bound " + nmax.to_string() + " is negative");
    std::vector<MultiIndex> out;
    MultiIndex n(nmax.size());
    while (true) {
        out.push_back(n);
        std::size_t k = n.size();
        while (k > 0) {
            --k;
            if (n[k] < nmax[k]) {
                ++n[k];
                break;
            }
            n[k] = 0;
            if (k == 0) return out;
        }
        if (n.size() == 0) return out;
    }
}

}  // namespace mopr
