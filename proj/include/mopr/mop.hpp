#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/functional.hpp"
#include "mopr/matrix.hpp"
#include "mopr/multi_index.hpp"
#include "mopr/poly.hpp"

namespace mopr {

struct TypeIIPoly {
    MultiIndex index;
    Poly p;
    bool monic = false;
};

struct TypeIVector {
    MultiIndex index;
    std::vector<Poly> a;
    bool normalized = false;
};

struct PerfectReport {
    bool perfect = true;
    std::vector<MultiIndex> failing;
};

/// r moment functionals mu_1..mu_r. Type I/II polynomials are obtained by direct moment solves;
/// results and normality verdicts are cached and shared between copies.
class System {
public:
    explicit System(std::vector<MomentFunctional> mus)
        : mus_(std::move(mus)), cache_(std::make_shared<Cache>()) {
        if (mus_.empty()) throw DimensionMismatch("a system needs at least one functional");
    }

    std::size_t r() const { return mus_.size(); }
    const MomentFunctional& operator[](std::size_t j) const { return mus_[j]; }
    const std::vector<MomentFunctional>& functionals() const { return mus_; }

    /// |n| x |n| block matrix; block j has rows (nu^j_{i+t})_t for i < n_j.
    Matrix moment_matrix(const MultiIndex& n) const {
        check(n);
        const std::size_t size = static_cast<std::size_t>(n.total());
        Matrix m(size, size);
        std::size_t row = 0;
        for (std::size_t j = 0; j < r(); ++j)
            for (int i = 0; i < n[j]; ++i, ++row)
                for (std::size_t t = 0; t < size; ++t) m(row, t) = mus_[j].moment(static_cast<std::size_t>(i) + t);
        return m;
    }

    bool is_normal(const MultiIndex& n) const {
        check(n);
        if (n.is_zero()) return true;
        {
            std::lock_guard lock(cache_->mutex);
            if (auto it = cache_->normal.find(n); it != cache_->normal.end()) return it->second;
        }
        const bool normal = det_rat(moment_matrix(n)) != 0;
        std::lock_guard lock(cache_->mutex);
        cache_->normal.emplace(n, normal);
        return normal;
    }

    /// The monic polynomial of degree |n| with mu_j[P x^p] = 0 for p < n_j.
    TypeIIPoly type2_monic(const MultiIndex& n) const {
        check(n);
        {
            std::lock_guard lock(cache_->mutex);
            if (auto it = cache_->type2.find(n); it != cache_->type2.end()) return it->second;
        }
        const std::size_t size = static_cast<std::size_t>(n.total());
        std::vector<Rat> rhs;
        for (std::size_t j = 0; j < r(); ++j)
            for (int i = 0; i < n[j]; ++i) rhs.push_back(-mus_[j].moment(static_cast<std::size_t>(i) + size));
        auto kappa = solve(moment_matrix(n), rhs);
        if (!kappa) throw NotNormal("index " + n.to_string() + " is not normal");
        kappa->push_back(1);
        TypeIIPoly out{n, Poly(std::move(*kappa)), true};
        remember(n, true);
        std::lock_guard lock(cache_->mutex);
        cache_->type2.emplace(n, out);
        return out;
    }

    /// The type I vector with deg A_j <= n_j - 1 and sum_j mu_j[A_j x^p] = 0 for p < |n|-1, = 1 at p = |n|-1.
    TypeIVector type1_normalized(const MultiIndex& n) const {
        check(n);
        if (n.is_zero()) throw ZeroIndex("the type I vector at n = 0 has no normalization");
        {
            std::lock_guard lock(cache_->mutex);
            if (auto it = cache_->type1.find(n); it != cache_->type1.end()) return it->second;
        }
        const std::size_t size = static_cast<std::size_t>(n.total());
        std::vector<Rat> rhs(size);
        rhs.back() = 1;
        auto a = solve(moment_matrix(n).transposed(), rhs);
        if (!a) throw NotNormal("index " + n.to_string() + " is not normal");
        TypeIVector out{n, {}, true};
        std::size_t offset = 0;
        for (std::size_t j = 0; j < r(); ++j) {
            const auto nj = static_cast<std::size_t>(n[j]);
            out.a.emplace_back(std::vector<Rat>(a->begin() + offset, a->begin() + offset + nj));
            offset += nj;
        }
        remember(n, true);
        std::lock_guard lock(cache_->mutex);
        cache_->type1.emplace(n, out);
        return out;
    }

    PerfectReport is_perfect_box(const MultiIndex& nmax) const {
        check(nmax);
        PerfectReport report;
        for (const auto& n : box(nmax))
            if (!is_normal(n)) {
                report.perfect = false;
                report.failing.push_back(n);
            }
        return report;
    }

    /// mu_j[p x^power]
    Rat apply_shifted(std::size_t j, const Poly& p, std::size_t power) const {
        return mus_[j].apply(p * Poly::monomial(1, power));
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<MultiIndex, bool> normal;
        std::map<MultiIndex, TypeIIPoly> type2;
        std::map<MultiIndex, TypeIVector> type1;
    };

    void check(const MultiIndex& n) const {
        if (n.size() != r())
            throw ArityMismatch("index " + n.to_string() + " for a system of " + std::to_string(r()) +
                                " functionals");
        if (!n.is_nonnegative()) throw DimensionMismatch("index " + n.to_string() + " has a negative entry");
    }

    void remember(const MultiIndex& n, bool normal) const {
        std::lock_guard lock(cache_->mutex);
        cache_->normal.emplace(n, normal);
    }

    std::vector<MomentFunctional> mus_;
    std::shared_ptr<Cache> cache_;
};

inline Matrix moment_matrix(const System& s, const MultiIndex& n) { return s.moment_matrix(n); }
inline bool is_normal(const System& s, const MultiIndex& n) { return s.is_normal(n); }
inline TypeIIPoly type2_monic(const System& s, const MultiIndex& n) { return s.type2_monic(n); }
inline TypeIVector type1_normalized(const System& s, const MultiIndex& n) { return s.type1_normalized(n); }
inline PerfectReport is_perfect_box(const System& s, const MultiIndex& nmax) { return s.is_perfect_box(nmax); }

}  // namespace mopr
