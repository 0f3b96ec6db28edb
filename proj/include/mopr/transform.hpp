#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/functional.hpp"
#include "mopr/index_seq.hpp"
#include "mopr/matrix.hpp"
#include "mopr/mop.hpp"
#include "mopr/multi_index.hpp"
#include "mopr/poly.hpp"
#include "mopr/roots.hpp"

namespace mopr {

/// One component of a rational perturbation Psi_j mu~_j = Phi_j mu_j. `free` holds the first
/// deg(Psi_j) moments of mu~_j.
struct ComponentSpec {
    RootList phi;
    RootList psi;
    std::vector<Rat> free;
};

struct TransformSpec {
    std::vector<ComponentSpec> components;

    std::size_t r() const { return components.size(); }
};

/// Common denominator Psi = lcm(Psi_j) with numerators Phi_j* = Phi_j Psi / Psi_j.
struct ReducedSpecI {
    RootList psi;
    std::vector<RootList> phi_star;
};

/// Common numerator Phi = lcm(Phi_j) with denominators Psi_j* = Psi_j Phi / Phi_j.
struct ReducedSpecII {
    RootList phi;
    std::vector<RootList> psi_star;
};

inline ReducedSpecI reduce_type1(const TransformSpec& spec) {
    ReducedSpecI out;
    for (const auto& c : spec.components) out.psi = root_lcm(out.psi, c.psi);
    for (const auto& c : spec.components) out.phi_star.push_back(root_product(c.phi, root_quotient(out.psi, c.psi)));
    return out;
}

inline ReducedSpecII reduce_type2(const TransformSpec& spec) {
    ReducedSpecII out;
    for (const auto& c : spec.components) out.phi = root_lcm(out.phi, c.phi);
    for (const auto& c : spec.components) out.psi_star.push_back(root_product(c.psi, root_quotient(out.phi, c.phi)));
    return out;
}

/// mu~_j = RationalPerturb(mu_j, Phi_j, Psi_j, free_j).
inline System make_transformed_system(const System& s, const TransformSpec& spec) {
    if (spec.r() != s.r())
        throw ArityMismatch("transform has " + std::to_string(spec.r()) + " components, system has " +
                            std::to_string(s.r()));
    std::vector<MomentFunctional> out;
    for (std::size_t j = 0; j < s.r(); ++j) {
        const auto& c = spec.components[j];
        out.push_back(rational_perturb(s[j], c.phi, c.psi, c.free));
    }
    return System(std::move(out));
}

enum class Side { TypeI, TypeII };

/// Geronimus functionals mu^_j with Phi_j* mu^_j = mu~_j (type I) or Phi mu^_j = mu~_j (type II).
inline std::vector<MomentFunctional> geronimus_for(const System& transformed, const TransformSpec& spec, Side side,
                                                   const GeronimusChoice& choice) {
    std::vector<MomentFunctional> out;
    if (side == Side::TypeI) {
        const auto red = reduce_type1(spec);
        for (std::size_t j = 0; j < transformed.r(); ++j)
            out.push_back(rational_perturb(transformed[j], RootList{}, red.phi_star[j],
                                           choice.for_component(j, red.phi_star[j].degree())));
    } else {
        const auto red = reduce_type2(spec);
        for (std::size_t j = 0; j < transformed.r(); ++j)
            out.push_back(rational_perturb(transformed[j], RootList{}, red.phi,
                                           choice.for_component(j, red.phi.degree())));
    }
    return out;
}

/// l! Psi(x) / (x - w)^{l+1}, an exact polynomial whenever l < multiplicity of w.
inline Poly second_kind_kernel(const Poly& psi, const ExpandedRoot& w) {
    Poly den = Poly::constant(1);
    for (unsigned i = 0; i <= w.order; ++i) den *= Poly{Rat(-w.value), Rat(1)};
    return divide_exact(psi * factorial(w.order), den);
}

/// B_n(w_k) = sum_j mu^_j[A_j(x) l_k! Psi(x) / (x - w_k)^{l_k+1}], one value per expanded root of Psi.
inline std::vector<Rat> b_values(const std::vector<MomentFunctional>& geronimus, const std::vector<Poly>& a,
                                 const RootList& psi) {
    if (a.size() != geronimus.size()) throw ArityMismatch("type I vector and Geronimus list differ in length");
    const Poly psi_poly = poly_from_roots(psi);
    std::vector<Rat> out;
    for (const auto& w : psi.expanded()) {
        const Poly kernel = second_kind_kernel(psi_poly, w);
        Rat sum = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!a[j].is_zero()) sum += geronimus[j].apply(a[j] * kernel);
        out.push_back(sum);
    }
    return out;
}

/// Q_n^{(j)}(w_k) = mu^_j[P(x) l_k! Psi_j(x) / (x - w_k)^{l_k+1}], one value per expanded root of Psi_j.
inline std::vector<Rat> q_values(const MomentFunctional& geronimus, const Poly& p, const RootList& psi) {
    const Poly psi_poly = poly_from_roots(psi);
    std::vector<Rat> out;
    for (const auto& w : psi.expanded()) out.push_back(geronimus.apply(p * second_kind_kernel(psi_poly, w)));
    return out;
}

/// Point-mass weights c_{j,k} of mu~_j = mu_j + sum_k c_{j,k} delta_{z_k} when Phi_j = Psi_j has
/// simple roots, recovered from the free moments by a Vandermonde solve.
inline std::vector<Rat> uvarov_masses(const MomentFunctional& base, const ComponentSpec& c) {
    if (!(c.phi == c.psi)) throw UnsupportedSpec("point masses need equal numerator and denominator roots");
    if (c.psi.has_repeated_roots()) throw UnsupportedSpec("point masses need simple roots");
    const auto roots = c.psi.roots();
    const std::size_t n = roots.size();
    Matrix v(n, n);
    std::vector<Rat> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) v(i, k) = pow_rat(roots[k].value, static_cast<unsigned>(i));
        rhs[i] = c.free[i] - base.moment(i);
    }
    auto x = solve(v, rhs);
    if (!x) throw UnsupportedSpec("point mass locations are not distinct");
    return *x;
}

/// Free moments of mu_j + sum_k c_k delta_{z_k} for the component Phi_j = Psi_j = prod (x - z_k).
inline std::vector<Rat> free_moments_for_masses(const MomentFunctional& base, const std::vector<PointMass>& masses) {
    std::vector<Rat> out;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        Rat v = base.moment(i);
        for (const auto& m : masses) v += m.weight * pow_rat(m.location, static_cast<unsigned>(i));
        out.push_back(v);
    }
    return out;
}

/// How the Q-rows of the type II determinant are filled.
enum class QMode {
    Full,              ///< mu^_j[P Psi_j* / (x - w)] with mu^_j from the Geronimus choice
    SimplifiedUvarov,  ///< G_j[P Phi / (x - z_k)] + c_{j,k} P'(z_k), with Phi G_j = mu_j
};

struct Type2Plan {
    ReducedSpecII reduced;
    std::size_t N = 0;
    MultiIndex M, Mstar, target;
    int start_total = 0;  ///< |m| = |n| + N
    std::size_t length = 0;
};

inline Type2Plan plan_type2(const TransformSpec& spec, const MultiIndex& n) {
    if (n.size() != spec.r()) throw ArityMismatch("index " + n.to_string() + " for a transform of arity " +
                                                  std::to_string(spec.r()));
    if (!n.is_nonnegative()) throw DimensionMismatch("index " + n.to_string() + " has a negative entry");
    Type2Plan plan;
    plan.reduced = reduce_type2(spec);
    plan.N = plan.reduced.phi.degree();
    plan.M = plan.Mstar = MultiIndex(spec.r());
    for (std::size_t j = 0; j < spec.r(); ++j) {
        plan.M[j] = static_cast<int>(plan.reduced.psi_star[j].degree());
        plan.Mstar[j] = std::min(n[j], plan.M[j]);
    }
    plan.target = n - plan.Mstar;
    plan.start_total = n.total() + static_cast<int>(plan.N);
    plan.length = plan.N + static_cast<std::size_t>(plan.Mstar.total()) + 1;
    return plan;
}

/// Default decreasing sequence: interleaved frame from n + N e_1 towards n - M*.
inline IndexSeq default_type2_sequence(const TransformSpec& spec, const MultiIndex& n) {
    const auto plan = plan_type2(spec, n);
    return frame(n + MultiIndex::unit(n.size(), 0, static_cast<int>(plan.N)), plan.target);
}

struct Type1Plan {
    ReducedSpecI reduced;
    std::size_t M = 0;
    MultiIndex Nstar;
    MultiIndex to;               ///< n + N*
    bool small = false;          ///< |n| <= M
    std::size_t pure_virtual = 0;  ///< M - |n| columns before the sequence when small
    int start_total = 0;         ///< |m| = |n| - M, or 0 when small
    std::size_t length = 0;      ///< required length of the user sequence
};

inline Type1Plan plan_type1(const TransformSpec& spec, const MultiIndex& n) {
    if (n.size() != spec.r()) throw ArityMismatch("index " + n.to_string() + " for a transform of arity " +
                                                  std::to_string(spec.r()));
    if (!n.is_nonnegative()) throw DimensionMismatch("index " + n.to_string() + " has a negative entry");
    if (n.is_zero()) throw ZeroIndex("type I transform at n = 0");
    Type1Plan plan;
    plan.reduced = reduce_type1(spec);
    plan.M = plan.reduced.psi.degree();
    plan.Nstar = MultiIndex(spec.r());
    for (std::size_t j = 0; j < spec.r(); ++j) plan.Nstar[j] = static_cast<int>(plan.reduced.phi_star[j].degree());
    plan.to = n + plan.Nstar;
    const int total = n.total(), M = static_cast<int>(plan.M);
    plan.small = total <= M;
    if (plan.small) {
        plan.pure_virtual = static_cast<std::size_t>(M - total);
        plan.start_total = 0;
        plan.length = static_cast<std::size_t>(plan.Nstar.total() + total) + 1;
    } else {
        plan.start_total = total - M;
        plan.length = static_cast<std::size_t>(plan.Nstar.total()) + plan.M + 1;
    }
    return plan;
}

/// Default type I start: remove M units from n one at a time, each from the currently largest
/// component (lowest index on ties).
inline MultiIndex default_type1_start(const TransformSpec& spec, const MultiIndex& n) {
    const auto plan = plan_type1(spec, n);
    if (plan.small) return MultiIndex(n.size());
    MultiIndex m = n;
    for (std::size_t u = 0; u < plan.M; ++u) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < m.size(); ++k)
            if (m[k] > m[best]) best = k;
        --m[best];
    }
    return m;
}

inline IndexSeq default_type1_sequence(const TransformSpec& spec, const MultiIndex& n) {
    const auto plan = plan_type1(spec, n);
    return frame(default_type1_start(spec, n), plan.to);
}

struct Type2TransformResult {
    MultiIndex index;
    Poly raw;
    Rat dn;
    IndexSeq sequence;

    bool has_normalization() const { return dn != 0; }
    Poly normalized() const {
        if (dn == 0) throw NotNormal("D_n = 0 at " + index.to_string());
        return raw / dn;
    }
};

struct Type1TransformResult {
    MultiIndex index;
    std::vector<Poly> raw;
    Rat dn;
    IndexSeq sequence;
    /// With |n| <= M the leading column is virtual and the unit pairing of raw is -D_n.
    bool virtual_start = false;

    bool has_normalization() const { return dn != 0; }
    Rat normalizer() const { return virtual_start ? Rat(-dn) : dn; }
    std::vector<Poly> normalized() const {
        if (dn == 0) throw NotNormal("D_n = 0 at " + index.to_string());
        std::vector<Poly> out;
        for (const auto& a : raw) out.push_back(a / normalizer());
        return out;
    }
};

/// A base system with a fixed rational perturbation. Holds the perturbed system and the
/// Geronimus functionals for each side so their moment caches are shared across indices.
class RationalTransform {
public:
    RationalTransform(System base, TransformSpec spec, GeronimusChoice choice_type1 = {},
                      GeronimusChoice choice_type2 = {})
        : base_(std::move(base)),
          spec_(std::move(spec)),
          transformed_(make_transformed_system(base_, spec_)),
          geronimus_i_(geronimus_for(transformed_, spec_, Side::TypeI, choice_type1)),
          geronimus_ii_(geronimus_for(transformed_, spec_, Side::TypeII, choice_type2)) {}

    const System& base() const { return base_; }
    const System& transformed() const { return transformed_; }
    const TransformSpec& spec() const { return spec_; }

    Type2TransformResult type2(const MultiIndex& n, const std::optional<IndexSeq>& seq = std::nullopt,
                               QMode mode = QMode::Full, const GeronimusChoice& simplified_choice = {}) const {
        const auto plan = plan_type2(spec_, n);
        const IndexSeq s = seq ? *seq : default_type2_sequence(spec_, n);
        check_sequence(s, plan.target, plan.start_total, plan.length, "type II");
        const std::size_t r = spec_.r();

        std::vector<Poly> polys;
        for (const auto& e : s.elements) polys.push_back(base_.type2_monic(e).p);

        // Q-row sources: either the Geronimus functionals of mu~, or (simplified) Geronimus
        // functionals of mu together with the point masses.
        std::vector<MomentFunctional> q_source = geronimus_ii_;
        std::vector<std::vector<Rat>> masses(r);
        if (mode == QMode::SimplifiedUvarov) {
            q_source.clear();
            for (std::size_t j = 0; j < r; ++j) {
                const auto& c = spec_.components[j];
                if (!(c.phi == c.psi) || plan.reduced.phi.has_repeated_roots())
                    throw UnsupportedSpec("simplified Q-rows need Phi_j = Psi_j with simple roots");
                const auto cj = uvarov_masses(base_[j], c);
                masses[j].assign(plan.reduced.phi.roots().size(), Rat(0));
                for (std::size_t k = 0; k < c.phi.roots().size(); ++k)
                    for (std::size_t t = 0; t < masses[j].size(); ++t)
                        if (plan.reduced.phi.roots()[t].value == c.phi.roots()[k].value) masses[j][t] = cj[k];
                q_source.push_back(rational_perturb(base_[j], RootList{}, plan.reduced.phi,
                                                    simplified_choice.for_component(j, plan.N)));
            }
        }

        const auto z = plan.reduced.phi.expanded();
        const std::size_t virtual_cols = static_cast<std::size_t>(plan.M.total() - plan.Mstar.total());
        const std::size_t cols = s.size() + virtual_cols;
        Matrix body(0, 0);
        for (const auto& root : z) {
            std::vector<Rat> row(cols);
            for (std::size_t c = 0; c < s.size(); ++c) row[c] = polys[c].eval(root.value, root.order);
            body.append_row(row);
        }
        const Poly phi_poly = poly_from_roots(plan.reduced.phi);
        std::size_t virtual_offset = s.size();
        for (std::size_t j = 0; j < r; ++j) {
            const auto& psi = plan.reduced.psi_star[j];
            const Poly psi_poly = poly_from_roots(psi);
            const auto w = psi.expanded();
            const std::size_t extra = static_cast<std::size_t>(plan.M[j] - plan.Mstar[j]);
            for (std::size_t k = 0; k < w.size(); ++k) {
                std::vector<Rat> row(cols);
                if (mode == QMode::Full) {
                    const Poly kernel = second_kind_kernel(psi_poly, w[k]);
                    for (std::size_t c = 0; c < s.size(); ++c) row[c] = q_source[j].apply(polys[c] * kernel);
                } else {
                    const Poly kernel = second_kind_kernel(phi_poly, w[k]);
                    const std::size_t t = root_position(plan.reduced.phi, w[k].value);
                    for (std::size_t c = 0; c < s.size(); ++c)
                        row[c] = q_source[j].apply(polys[c] * kernel) + masses[j][t] * polys[c].eval(w[k].value, 1);
                }
                for (std::size_t q = 0; q < extra; ++q)
                    row[virtual_offset + q] =
                        derivative_of_power(static_cast<unsigned>(q), w[k].order, w[k].value);
                body.append_row(row);
            }
            virtual_offset += extra;
        }

        std::vector<Poly> first(cols);
        std::copy(polys.begin(), polys.end(), first.begin());
        Type2TransformResult out;
        out.index = n;
        out.raw = divide_exact(det_poly_bordered(first, body), phi_poly);
        out.dn = det_rat(body.without_column(0));
        out.sequence = s;
        return out;
    }

    Type1TransformResult type1(const MultiIndex& n, const std::optional<IndexSeq>& seq = std::nullopt) const {
        const auto plan = plan_type1(spec_, n);
        const IndexSeq s = seq ? *seq : default_type1_sequence(spec_, n);
        check_sequence(s, plan.to, plan.start_total, plan.length, "type I");
        const std::size_t r = spec_.r();

        // Column c < pure_virtual carries exponent M - |n| - c; in the small case the sequence
        // start (the zero index) is the last virtual column, with exponent 0.
        const std::size_t cols = plan.pure_virtual + s.size();
        std::vector<std::optional<unsigned>> exponent(cols);
        std::vector<std::vector<Poly>> vecs(cols, std::vector<Poly>(r));
        for (std::size_t c = 0; c < plan.pure_virtual; ++c)
            exponent[c] = static_cast<unsigned>(plan.pure_virtual - c);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::size_t c = plan.pure_virtual + i;
            if (plan.small && i == 0) {
                exponent[c] = 0;
                continue;
            }
            vecs[c] = base_.type1_normalized(s[i]).a;
        }

        Matrix body(0, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (const auto& root : plan.reduced.phi_star[i].expanded()) {
                std::vector<Rat> row(cols);
                for (std::size_t c = 0; c < cols; ++c)
                    if (!exponent[c]) row[c] = vecs[c][i].eval(root.value, root.order);
                body.append_row(row);
            }
        const auto w = plan.reduced.psi.expanded();
        std::vector<std::vector<Rat>> b(cols);
        for (std::size_t c = 0; c < cols; ++c)
            if (!exponent[c]) b[c] = b_values(geronimus_i_, vecs[c], plan.reduced.psi);
        for (std::size_t k = 0; k < w.size(); ++k) {
            std::vector<Rat> row(cols);
            for (std::size_t c = 0; c < cols; ++c)
                row[c] = exponent[c] ? derivative_of_power(*exponent[c], w[k].order, w[k].value) : b[c][k];
            body.append_row(row);
        }

        Type1TransformResult out;
        out.index = n;
        out.sequence = s;
        out.virtual_start = plan.small;
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<Poly> first(cols);
            for (std::size_t c = 0; c < cols; ++c) first[c] = vecs[c][j];
            const Poly phi_j = poly_from_roots(plan.reduced.phi_star[j]);
            out.raw.push_back(divide_exact(det_poly_bordered(first, body), phi_j));
        }
        out.dn = det_rat(body.without_column(0));
        return out;
    }

private:
    static std::size_t root_position(const RootList& roots, const Rat& value) {
        for (std::size_t t = 0; t < roots.roots().size(); ++t)
            if (roots.roots()[t].value == value) return t;
        throw InvalidRootList("root " + format_rat(value) + " not found");
    }

    static void check_sequence(const IndexSeq& s, const MultiIndex& towards, int start_total, std::size_t length,
                               const char* what) {
        if (s.elements.empty()) throw NotAdmissible(std::string(what) + " sequence is empty");
        const MultiIndex& start = s.elements.front();
        if (start.size() != towards.size()) throw ArityMismatch(std::string(what) + " sequence has the wrong arity");
        if (s.size() != length)
            throw NotAdmissible(std::string(what) + " sequence has " + std::to_string(s.size()) +
                                " elements, need " + std::to_string(length));
        if (start.total() != start_total)
            throw NotAdmissible(std::string(what) + " sequence starts at " + start.to_string() + ", need |m| = " +
                                std::to_string(start_total));
        auto res = is_admissible(s, start, towards);
        if (!res.admissible)
            throw NotAdmissible(std::string(what) + " sequence " + s.to_string() + " is not admissible towards " +
                                towards.to_string() + ": " + res.reason);
    }

    System base_;
    TransformSpec spec_;
    System transformed_;
    std::vector<MomentFunctional> geronimus_i_;
    std::vector<MomentFunctional> geronimus_ii_;
};

inline Type2TransformResult type2_transform(const System& s, const TransformSpec& spec, const MultiIndex& n,
                                            const std::optional<IndexSeq>& seq = std::nullopt,
                                            const GeronimusChoice& choice = {}) {
    return RationalTransform(s, spec, {}, choice).type2(n, seq);
}

inline Type1TransformResult type1_transform(const System& s, const TransformSpec& spec, const MultiIndex& n,
                                            const std::optional<IndexSeq>& seq = std::nullopt,
                                            const GeronimusChoice& choice = {}) {
    return RationalTransform(s, spec, choice, {}).type1(n, seq);
}

struct VerifyFailure {
    std::string condition;
    MultiIndex index;
    std::optional<std::size_t> component;  ///< 0-based
    std::optional<std::size_t> power;
    std::string detail;

    std::string to_string() const {
        std::string out = condition + " at n=" + index.to_string();
        if (component) out += " component " + std::to_string(*component + 1);
        if (power) out += " p=" + std::to_string(*power);
        if (!detail.empty()) out += ": " + detail;
        return out;
    }
};

struct VerifyReport {
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
    void merge(const VerifyReport& o) { failures.insert(failures.end(), o.failures.begin(), o.failures.end()); }
};

/// Checks degree and orthogonality against mu~, the D_n / normality dichotomy, and, where
/// D_n != 0, monic normalization and equality with the moment-matrix oracle.
inline VerifyReport verify_transform(const System& transformed, const Type2TransformResult& res) {
    VerifyReport rep;
    const MultiIndex& n = res.index;
    const int size = n.total();
    auto fail = [&](std::string cond, std::optional<std::size_t> j, std::optional<std::size_t> p, std::string d) {
        rep.failures.push_back({std::move(cond), n, j, p, std::move(d)});
    };
    if (!res.raw.degree().at_most(size)) fail("degree", std::nullopt, std::nullopt, "deg > |n|");
    for (std::size_t j = 0; j < transformed.r(); ++j)
        for (int p = 0; p < n[j]; ++p) {
            const Rat v = transformed.apply_shifted(j, res.raw, static_cast<std::size_t>(p));
            if (v != 0) fail("orthogonality", j, static_cast<std::size_t>(p), "value " + format_rat(v));
        }
    const bool normal = transformed.is_normal(n);
    if (normal != res.has_normalization())
        fail("dichotomy", std::nullopt, std::nullopt,
             "D_n = " + format_rat(res.dn) + " but index is " + (normal ? "normal" : "not normal"));
    if (res.has_normalization()) {
        const Poly p = res.normalized();
        if (p.degree() != Degree(static_cast<std::size_t>(size)) || p.leading() != 1)
            fail("normalization", std::nullopt, std::nullopt, "not monic of degree |n|: " + p.to_string());
        if (normal && p != transformed.type2_monic(n).p)
            fail("oracle", std::nullopt, std::nullopt,
                 p.to_string() + " != " + transformed.type2_monic(n).p.to_string());
    }
    return rep;
}

inline VerifyReport verify_transform(const System& transformed, const Type1TransformResult& res) {
    VerifyReport rep;
    const MultiIndex& n = res.index;
    const int size = n.total();
    auto fail = [&](std::string cond, std::optional<std::size_t> j, std::optional<std::size_t> p, std::string d) {
        rep.failures.push_back({std::move(cond), n, j, p, std::move(d)});
    };
    for (std::size_t j = 0; j < transformed.r(); ++j)
        if (!res.raw[j].degree().at_most(n[j] - 1)) fail("degree", j, std::nullopt, "deg > n_j - 1");
    auto pairing = [&](const std::vector<Poly>& a, int p) {
        Rat sum = 0;
        for (std::size_t j = 0; j < transformed.r(); ++j)
            sum += transformed.apply_shifted(j, a[j], static_cast<std::size_t>(p));
        return sum;
    };
    for (int p = 0; p + 1 < size; ++p) {
        const Rat v = pairing(res.raw, p);
        if (v != 0) fail("orthogonality", std::nullopt, static_cast<std::size_t>(p), "value " + format_rat(v));
    }
    const bool normal = transformed.is_normal(n);
    if (normal != res.has_normalization())
        fail("dichotomy", std::nullopt, std::nullopt,
             "D_n = " + format_rat(res.dn) + " but index is " + (normal ? "normal" : "not normal"));
    if (res.has_normalization()) {
        const auto a = res.normalized();
        const Rat v = pairing(a, size - 1);
        if (v != 1)
            fail("normalization", std::nullopt, static_cast<std::size_t>(size - 1), "pairing " + format_rat(v));
        if (normal) {
            const auto expect = transformed.type1_normalized(n).a;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a[j] != expect[j])
                    fail("oracle", j, std::nullopt, a[j].to_string() + " != " + expect[j].to_string());
        }
    }
    return rep;
}

}  // namespace mopr
