#pragma once

/**
 * @file laurent.hpp
 * @brief Laurent polynomials in two variables z1, z2 over Gauss<R>.
 *
 * A polynomial is a sorted map from exponent pairs (possibly negative) to
 * nonzero coefficients. Ring operations drop coefficients that are exactly
 * zero; approximate cancellation is handled by the division routines, which
 * know the scale of their inputs.
 */

#include "fourbar/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fourbar {

/// Exponent vector (e1, e2) of the monomial z1^e1 z2^e2.
struct Exponent {
    std::int64_t e1{0};
    std::int64_t e2{0};

    friend auto operator<=>(const Exponent&, const Exponent&) = default;
    friend Exponent operator+(Exponent a, Exponent b) { return {a.e1 + b.e1, a.e2 + b.e2}; }
    friend Exponent operator-(Exponent a, Exponent b) { return {a.e1 - b.e1, a.e2 - b.e2}; }
    friend Exponent operator-(Exponent a) { return {-a.e1, -a.e2}; }
};

inline std::ostream& operator<<(std::ostream& os, Exponent e) { return os << '(' << e.e1 << ',' << e.e2 << ')'; }

template<RealField R>
class LaurentPoly {
public:
    using Coeff = Gauss<R>;
    using Terms = std::map<Exponent, Coeff>;

    LaurentPoly() = default;
    LaurentPoly(Coeff constant) { add_term({0, 0}, std::move(constant)); }  // NOLINT: constants lift into the ring
    LaurentPoly(std::initializer_list<std::pair<Exponent, Coeff>> terms) {
        for (const auto& [e, c] : terms) add_term(e, c);
    }

    static LaurentPoly monomial(Exponent e, Coeff c = Coeff(1)) {
        LaurentPoly p;
        p.add_term(e, std::move(c));
        return p;
    }
    static LaurentPoly z1() { return monomial({1, 0}); }
    static LaurentPoly z2() { return monomial({0, 1}); }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    [[nodiscard]] Coeff coeff(Exponent e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff{} : it->second;
    }

    [[nodiscard]] std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    /// Adds c·z^e, removing the term if it cancels exactly.
    void add_term(Exponent e, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void erase(Exponent e) { terms_.erase(e); }

    /// Drops every coefficient with magnitude at most `tol`.
    void prune(double tol) {
        std::erase_if(terms_, [tol](const auto& kv) { return kv.second.is_zero(tol); });
    }

    [[nodiscard]] double max_coeff_magnitude() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, magnitude(c));
        return m;
    }

    LaurentPoly& operator+=(const LaurentPoly& b) {
        for (const auto& [e, c] : b.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& b) {
        for (const auto& [e, c] : b.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const Coeff& s) {
        if (s.is_zero()) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend LaurentPoly operator*(LaurentPoly a, const Coeff& s) { return a *= s; }
    friend LaurentPoly operator*(const Coeff& s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    /// Multiplies by the monomial unit z^shift.
    [[nodiscard]] LaurentPoly shifted(Exponent shift) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift, c);
        return out;
    }

    /// Value at (z1, z2); both must be nonzero when negative exponents occur.
    template<typename V>
    [[nodiscard]] V evaluate(const V& z1, const V& z2) const {
        V total{};
        for (const auto& [e, c] : terms_) total += coeff_as<V>(c) * power(z1, e.e1) * power(z2, e.e2);
        return total;
    }

    /// z1·∂/∂z1 (k = 1) or z2·∂/∂z2 (k = 2): multiplies each term by its exponent.
    [[nodiscard]] LaurentPoly euler_derivative(int k) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) {
            auto n = k == 1 ? e.e1 : e.e2;
            out.add_term(e, c * Coeff(real_traits<R>::from_int(static_cast<long>(n))));
        }
        return out;
    }

private:
    template<typename V>
    static V coeff_as(const Coeff& c) {
        if constexpr (std::same_as<V, Coeff>) return c;
        else return V(to_complex(c));
    }
    template<typename V>
    static V power(const V& z, std::int64_t n) {
        V base = n < 0 ? V(1) / z : z;
        V out(1);
        for (std::int64_t k = 0, m = n < 0 ? -n : n; k < m; ++k) out *= base;
        return out;
    }

    Terms terms_;
};

using LaurentQ = LaurentPoly<Rational>;
using LaurentD = LaurentPoly<double>;

/// On the unit torus conj(z_i) = z_i⁻¹: negate exponents, conjugate coefficients.
template<RealField R>
LaurentPoly<R> conjugate_on_torus(const LaurentPoly<R>& p) {
    LaurentPoly<R> out;
    for (const auto& [e, c] : p) out.add_term(-e, conj(c));
    return out;
}

template<RealField To, RealField From>
LaurentPoly<To> convert(const LaurentPoly<From>& p) {
    LaurentPoly<To> out;
    for (const auto& [e, c] : p) out.add_term(e, convert<To>(c));
    return out;
}

template<RealField R>
std::ostream& operator<<(std::ostream& os, const LaurentPoly<R>& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << '(' << c << ')';
        if (e.e1 != 0) os << "*z1^" << e.e1;
        if (e.e2 != 0) os << "*z2^" << e.e2;
    }
    return os;
}

}  // namespace fourbar
