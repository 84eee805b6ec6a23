#pragma once

/**
 * @file toric_division.hpp
 * @brief Division of Laurent polynomials guided by Newton polygons.
 *
 * Given F and a nonzero divisor G over a field, toric_divide returns (Q, R)
 * with F = Q·G + R, supp(R) ⊆ NP(F), and supp(R) a remainder support set for
 * G: no nonzero multiple of G is supported inside it. R = 0 is therefore
 * equivalent to G dividing F.
 *
 * Each step takes the support point f of the current F that maximizes a
 * linear functional h, and the maximizer g of h on supp(G). If the shifted
 * polygon NP(G) + f − g fits in NP(F), the leading term is cancelled by a
 * monomial multiple of G; otherwise it is moved to the remainder. NP(F)
 * shrinks strictly in both branches, which bounds the loop.
 */

#include "fourbar/laurent.hpp"
#include "fourbar/newton_polygon.hpp"

#include <stdexcept>
#include <tuple>

namespace fourbar {

/// Linear functional (x, y) ↦ alpha·x + beta·y with lexicographic tie-break.
///
/// Comparing by the key (alpha·e1 + beta·e2, e1, e2) behaves like a functional
/// whose slope is perturbed by an infinitesimal irrational amount: every
/// finite set has exactly one maximizer.
struct DirectionFunctional {
    std::int64_t alpha{1};
    std::int64_t beta{1000003};

    DirectionFunctional() = default;
    DirectionFunctional(std::int64_t a, std::int64_t b) : alpha(a), beta(b) {
        if (a == 0 && b == 0) throw std::invalid_argument("direction functional must be nonzero");
    }

    [[nodiscard]] auto key(Exponent e) const { return std::make_tuple(alpha * e.e1 + beta * e.e2, e.e1, e.e2); }
    [[nodiscard]] bool less(Exponent a, Exponent b) const { return key(a) < key(b); }
};

template<RealField R>
Exponent support_max(const LaurentPoly<R>& p, const DirectionFunctional& h) {
    if (p.is_zero()) throw std::invalid_argument("support_max of the zero polynomial");
    auto it = p.begin();
    Exponent best = it->first;
    for (++it; it != p.end(); ++it)
        if (h.less(best, it->first)) best = it->first;
    return best;
}

template<RealField R>
struct QuotientRemainder {
    LaurentPoly<R> quotient;
    LaurentPoly<R> remainder;
};

struct DivisionOptions {
    DirectionFunctional h{};
    /// Relative zero tolerance, only consulted for approximate coefficients:
    /// |c| ≤ tol·(1 + max input coefficient magnitude) counts as zero.
    double tol = 1e-10;
};

template<RealField R>
QuotientRemainder<R> toric_divide(LaurentPoly<R> f, const LaurentPoly<R>& g, const DivisionOptions& opt = {}) {
    if (g.is_zero()) throw std::invalid_argument("toric division by the zero polynomial");
    const auto& h = opt.h;
    double zero_tol = 0.0;
    if constexpr (!real_traits<R>::exact) {
        zero_tol = opt.tol * (1.0 + std::max(f.max_coeff_magnitude(), g.max_coeff_magnitude()));
        f.prune(zero_tol);
    }

    const NewtonPolygon np_g = newton_polygon(g);
    const Exponent g_top = support_max(g, h);
    const auto g_lead = g.coeff(g_top);

    QuotientRemainder<R> out;
    while (!f.is_zero()) {
        const Exponent f_top = support_max(f, h);
        const auto f_lead = f.coeff(f_top);
        const Exponent shift = f_top - g_top;
        if (newton_polygon(f).contains(np_g.translated(shift))) {
            auto m = LaurentPoly<R>::monomial(shift, f_lead / g_lead);
            out.quotient += m;
            f -= m * g;
        } else {
            out.remainder.add_term(f_top, f_lead);
        }
        // The leading term cancels by construction; force it for inexact fields.
        f.erase(f_top);
        if constexpr (!real_traits<R>::exact) f.prune(zero_tol);
    }
    return out;
}

template<RealField R>
QuotientRemainder<R> toric_divide(const LaurentPoly<R>& f, const LaurentPoly<R>& g, const DirectionFunctional& h) {
    DivisionOptions opt;
    opt.h = h;
    return toric_divide(f, g, opt);
}

template<RealField R>
struct DivisibilityResult {
    bool divisible{false};
    LaurentPoly<R> quotient;
    LaurentPoly<R> remainder;  // witness when not divisible
};

template<RealField R>
DivisibilityResult<R> is_divisible(const LaurentPoly<R>& f, const LaurentPoly<R>& g, const DivisionOptions& opt = {}) {
    auto qr = toric_divide(f, g, opt);
    return {qr.remainder.is_zero(), std::move(qr.quotient), std::move(qr.remainder)};
}

}  // namespace fourbar
