#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/poly.hpp"
#include "mopr/rational.hpp"
#include "mopr/roots.hpp"

namespace mopr {

struct PointMass {
    Rat location;
    Rat weight;
};

/// Linear functional on polynomials, represented by a lazily generated moment sequence.
/// Copies share the source and the moment cache; concurrent moment() calls are safe.
class MomentFunctional {
public:
    enum class Kind { Explicit, Lebesgue, PointMasses, Scaled, Sum, Christoffel, Rational };

    static MomentFunctional explicit_moments(std::vector<Rat> moments) {
        auto s = std::make_shared<State>(Kind::Explicit);
        s->cache = std::move(moments);
        s->finite = true;
        return MomentFunctional(std::move(s));
    }

    /// Lebesgue measure on [a, b]: nu_k = (b^{k+1} - a^{k+1}) / (k+1).
    static MomentFunctional lebesgue(const Rat& a, const Rat& b) {
        auto s = std::make_shared<State>(Kind::Lebesgue);
        s->a = a;
        s->b = b;
        return MomentFunctional(std::move(s));
    }

    static MomentFunctional point_masses(std::vector<PointMass> masses) {
        auto s = std::make_shared<State>(Kind::PointMasses);
        s->masses = std::move(masses);
        return MomentFunctional(std::move(s));
    }

    static MomentFunctional scaled(const Rat& factor, const MomentFunctional& base) {
        auto s = std::make_shared<State>(Kind::Scaled);
        s->a = factor;
        s->children = {base};
        return MomentFunctional(std::move(s));
    }

    static MomentFunctional sum(std::vector<MomentFunctional> terms) {
        auto s = std::make_shared<State>(Kind::Sum);
        s->children = std::move(terms);
        return MomentFunctional(std::move(s));
    }

    /// Phi * base.
    static MomentFunctional christoffel(const MomentFunctional& base, const RootList& phi) {
        auto s = std::make_shared<State>(Kind::Christoffel);
        s->children = {base};
        s->phi = phi;
        s->phi_poly = poly_from_roots(phi);
        return MomentFunctional(std::move(s));
    }

    /// The functional f with Psi * f = Phi * base whose first deg(Psi) moments are `free`.
    static MomentFunctional rational(const MomentFunctional& base, const RootList& phi, const RootList& psi,
                                     std::vector<Rat> free) {
        if (free.size() != psi.degree())
            throw FreeMomentArity("rational perturbation by a degree-" + std::to_string(psi.degree()) +
                                  " denominator needs " + std::to_string(psi.degree()) + " free moments, got " +
                                  std::to_string(free.size()));
        auto s = std::make_shared<State>(Kind::Rational);
        s->children = {base};
        s->phi = phi;
        s->psi = psi;
        s->phi_poly = poly_from_roots(phi);
        s->psi_poly = poly_from_roots(psi);
        s->cache = std::move(free);
        return MomentFunctional(std::move(s));
    }

    Kind kind() const { return state_->kind; }

    Rat moment(std::size_t k) const {
        State& s = *state_;
        std::lock_guard lock(s.mutex);
        if (k < s.cache.size()) return s.cache[k];
        if (s.finite)
            throw MomentOutOfRange("moment " + std::to_string(k) + " requested but only " +
                                   std::to_string(s.cache.size()) + " were given");
        s.cache.reserve(k + 1);
        while (s.cache.size() <= k) s.cache.push_back(next_moment(s));
        return s.cache[k];
    }

    /// Sum of c_i * nu_i over the coefficients of p.
    Rat apply(const Poly& p) const {
        Rat out = 0;
        const auto& c = p.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) out += c[i] * moment(i);
        return out;
    }

    std::vector<Rat> moments(std::size_t count) const {
        std::vector<Rat> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) out.push_back(moment(k));
        return out;
    }

    /// Number of available moments, or none for an unbounded sequence.
    std::optional<std::size_t> moment_limit() const {
        switch (state_->kind) {
            case Kind::Explicit: return state_->cache.size();
            case Kind::Lebesgue:
            case Kind::PointMasses: return std::nullopt;
            default: break;
        }
        std::optional<std::size_t> out;
        for (const auto& c : state_->children) {
            auto l = c.moment_limit();
            if (!l) continue;
            std::size_t shift = 0;
            if (state_->kind == Kind::Christoffel || state_->kind == Kind::Rational) shift = state_->phi.degree();
            const std::size_t usable = *l >= shift ? *l - shift : 0;
            std::size_t mine = usable;
            if (state_->kind == Kind::Rational) mine = usable + state_->psi.degree();
            out = out ? std::min(*out, mine) : mine;
        }
        return out;
    }

    bool shares_state_with(const MomentFunctional& other) const { return state_ == other.state_; }

private:
    struct State {
        explicit State(Kind k) : kind(k) {}
        Kind kind;
        Rat a, b;
        std::vector<PointMass> masses;
        std::vector<MomentFunctional> children;
        RootList phi, psi;
        Poly phi_poly, psi_poly;
        bool finite = false;
        std::mutex mutex;
        std::vector<Rat> cache;
    };

    explicit MomentFunctional(std::shared_ptr<State> s) : state_(std::move(s)) {}

    /// base[Phi(x) x^p]
    static Rat shifted_apply(const MomentFunctional& base, const Poly& phi, std::size_t p) {
        Rat out = 0;
        const auto& c = phi.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) out += c[i] * base.moment(i + p);
        return out;
    }

    /// Computes moment s.cache.size(); the caller holds s.mutex.
    static Rat next_moment(State& s) {
        const std::size_t k = s.cache.size();
        switch (s.kind) {
            case Kind::Explicit: break;
            case Kind::Lebesgue: return (pow_rat(s.b, k + 1) - pow_rat(s.a, k + 1)) / Rat(k + 1);
            case Kind::PointMasses: {
                Rat out = 0;
                for (const auto& m : s.masses) out += m.weight * pow_rat(m.location, k);
                return out;
            }
            case Kind::Scaled: return s.a * s.children[0].moment(k);
            case Kind::Sum: {
                Rat out = 0;
                for (const auto& c : s.children) out += c.moment(k);
                return out;
            }
            case Kind::Christoffel: return shifted_apply(s.children[0], s.phi_poly, k);
            case Kind::Rational: {
                // Psi monic of degree M: nu_{p+M} = base[Phi x^p] - sum_{i<M} psi_i nu_{p+i}.
                const std::size_t m = s.psi.degree();
                const std::size_t p = k - m;
                Rat out = shifted_apply(s.children[0], s.phi_poly, p);
                const auto& psi = s.psi_poly.coefficients();
                for (std::size_t i = 0; i < m; ++i) out -= psi[i] * s.cache[p + i];
                return out;
            }
        }
        throw std::logic_error("unreachable moment source");
    }

    std::shared_ptr<State> state_;
};

inline Rat moment(const MomentFunctional& f, std::size_t k) { return f.moment(k); }
inline Rat apply(const MomentFunctional& f, const Poly& p) { return f.apply(p); }

inline MomentFunctional rational_perturb(const MomentFunctional& base, const RootList& phi, const RootList& psi,
                                         std::vector<Rat> free) {
    return MomentFunctional::rational(base, phi, psi, std::move(free));
}

inline MomentFunctional christoffel_of(const MomentFunctional& base, const RootList& phi) {
    return MomentFunctional::christoffel(base, phi);
}

/// base plus finitely many point masses.
inline MomentFunctional uvarov_of(const MomentFunctional& base, std::vector<PointMass> masses) {
    for (std::size_t i = 0; i < masses.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (masses[i].location == masses[j].location)
                throw InvalidRootList("point mass location " + format_rat(masses[i].location) + " repeated");
    return MomentFunctional::sum({base, MomentFunctional::point_masses(std::move(masses))});
}

/// Free moments for the auxiliary Geronimus functionals, one list per component.
/// An empty list of lists means all zeros.
struct GeronimusChoice {
    std::vector<std::vector<Rat>> free;

    static GeronimusChoice zeros() { return {}; }

    std::vector<Rat> for_component(std::size_t j, std::size_t arity) const {
        if (free.empty()) return std::vector<Rat>(arity);
        if (j >= free.size())
            throw ArityMismatch("Geronimus choice has " + std::to_string(free.size()) + " components, need index " +
                                std::to_string(j));
        if (free[j].size() != arity)
            throw FreeMomentArity("Geronimus choice for component " + std::to_string(j + 1) + " has " +
                                  std::to_string(free[j].size()) + " moments, need " + std::to_string(arity));
        return free[j];
    }
};

}  // namespace mopr
