#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/rational.hpp"

namespace mopr {

/// Polynomial degree with a distinguished minus-infinity value for the zero polynomial.
class Degree {
public:
    static Degree minus_infinity() { return Degree(); }
    explicit Degree(std::size_t d) : value_(d) {}

    bool is_minus_infinity() const { return !value_.has_value(); }
    std::size_t value() const {
        if (!value_) throw std::logic_error("degree of the zero polynomial has no value");
        return *value_;
    }
    /// deg <= bound; the zero polynomial satisfies every bound, including negative ones.
    bool at_most(long long bound) const {
        return !value_ || (bound >= 0 && *value_ <= static_cast<std::size_t>(bound));
    }

    friend bool operator==(const Degree&, const Degree&) = default;

private:
    Degree() = default;
    std::optional<std::size_t> value_;
};

/// Dense univariate polynomial over the rationals, c_0 + c_1 x + ... + c_d x^d.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rat& value) { return Poly(std::vector<Rat>{value}); }
    static Poly monomial(const Rat& coeff, std::size_t power) {
        std::vector<Rat> c(power + 1);
        c[power] = coeff;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(Rat(1), 1); }

    bool is_zero() const { return c_.empty(); }
    Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }
    const std::vector<Rat>& coefficients() const { return c_; }
    Rat coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Poly derivative(std::size_t order = 1) const {
        if (order >= c_.size()) return {};
        std::vector<Rat> out(c_.size() - order);
        for (std::size_t k = order; k < c_.size(); ++k) {
            Rat f = 1;
            for (std::size_t i = 0; i < order; ++i) f *= k - i;
            out[k - order] = f * c_[k];
        }
        return Poly(std::move(out));
    }

    /// Horner evaluation of the order-th derivative.
    Rat eval(const Rat& at, std::size_t order = 0) const {
        if (order > 0) return derivative(order).eval(at);
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Rat& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    Poly& operator/=(const Rat& s) {
        if (s == 0) throw std::domain_error("polynomial divided by zero scalar");
        for (auto& v : c_) v /= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rat(-1); }
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend Poly operator/(Poly a, const Rat& s) { return a /= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Human-readable form, highest power first: "x^2 - x + 1/6", "-3*x + 6".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rat& v = c_[k];
            if (v == 0) continue;
            const bool negative = v < 0;
            const Rat mag = negative ? Rat(-v) : v;
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            if (k == 0) {
                out += format_rat(mag);
                continue;
            }
            if (mag != 1) out += format_rat(mag) + "*";
            out += "x";
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline Rat poly_eval(const Poly& p, const Rat& at, std::size_t order = 0) { return p.eval(at, order); }

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};

inline PolyDivision divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rat> rem = num.coefficients();
    const auto& d = den.coefficients();
    if (rem.size() < d.size()) return {Poly{}, num};
    std::vector<Rat> quot(rem.size() - d.size() + 1);
    const Rat lead = d.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rat q = rem[k + d.size() - 1] / lead;
        quot[k] = q;
        if (q == 0) continue;
        for (std::size_t i = 0; i < d.size(); ++i) rem[k + i] -= q * d[i];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Quotient of a division that must be exact; throws NonzeroRemainder otherwise.
inline Poly divide_exact(const Poly& num, const Poly& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero())
        throw NonzeroRemainder("(" + num.to_string() + ") / (" + den.to_string() + ") leaves remainder " +
                               r.to_string());
    return q;
}

}  // namespace mopr
