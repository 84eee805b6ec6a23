#pragma once

/**
 * @file balance.hpp
 * @brief Kinematic case analysis and balance decisions for four-bar mechanisms.
 *
 * The closure curve G = 0 splits into kinematic modes when the link lengths
 * satisfy one of the special equalities. Each mode is an irreducible factor
 * of G found by toric division against a fixed set of linear candidates, and
 * on an irreducible factor Gc a polynomial vanishes identically iff Gc
 * divides it. A mode is statically balanced iff Gc divides the COM
 * constraint F and dynamically balanced iff, in addition, Gc divides the
 * velocity determinant K.
 *
 * The closed-form conditions in terms of the lumped parameters
 * q_i = m_i r_i p_i and J_i = I_i + m_i r_i² are evaluated alongside as an
 * independent route to the same verdicts.
 */

#include "fourbar/mechanism.hpp"
#include "fourbar/newton_polygon.hpp"
#include "fourbar/toric_division.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fourbar {

enum class KinematicCase { Irreducible, CaseII, CaseIII, CaseIV, CaseV };

inline const char* to_string(KinematicCase c) {
    switch (c) {
    case KinematicCase::Irreducible: return "Irreducible";
    case KinematicCase::CaseII: return "CaseII";
    case KinematicCase::CaseIII: return "CaseIII";
    case KinematicCase::CaseIV: return "CaseIV";
    case KinematicCase::CaseV: return "CaseV";
    }
    return "?";
}

/// Relative tolerance for length equalities with approximate lengths. The
/// case structure is a measure-zero stratification, so any tolerance is a
/// judgement call; exact inputs compare exactly.
inline constexpr double kLengthTolerance = 1e-9;

template<RealField R>
KinematicCase classify_case(const R& l1, const R& l2, const R& l3, const R& d, double tol = kLengthTolerance) {
    auto eq = [tol](const R& a, const R& b) {
        if constexpr (real_traits<R>::exact) return a == b;
        else return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
    };
    if (eq(l1, l2) && eq(l2, l3) && eq(l3, d)) return KinematicCase::CaseV;
    if (eq(l1, l2) && eq(l3, d)) return KinematicCase::CaseII;
    if (eq(l1, d) && eq(l2, l3)) return KinematicCase::CaseIII;
    if (eq(l2, d) && eq(l1, l3)) return KinematicCase::CaseIV;
    return KinematicCase::Irreducible;
}

template<RealField R>
KinematicCase classify_case(const DesignParams<R>& p, double tol = kLengthTolerance) {
    return classify_case(p.l1, p.l2, p.l3, p.d, tol);
}

template<RealField R>
struct ModeComponent {
    std::string label;       // e.g. "II-A"
    LaurentPoly<R> factor;   // irreducible factor of G
    std::string constraint;  // configuration constraint, e.g. "z1 = z2"
    bool linear{false};      // one of the linear candidates
};

namespace detail {

template<RealField R>
struct LinearCandidate {
    const char* name;
    const char* constraint;
    LaurentPoly<R> poly;
};

template<RealField R>
std::vector<LinearCandidate<R>> linear_candidates() {
    using P = LaurentPoly<R>;
    using C = Gauss<R>;
    return {
        {"z1 - z2", "z1 = z2", P{{{1, 0}, C(1)}, {{0, 1}, C(-1)}}},
        {"z1 - 1", "z1 = 1", P{{{1, 0}, C(1)}, {{0, 0}, C(-1)}}},
        {"z2 - 1", "z2 = 1", P{{{0, 1}, C(1)}, {{0, 0}, C(-1)}}},
        {"z2 + 1", "z2 = -1", P{{{0, 1}, C(1)}, {{0, 0}, C(1)}}},
    };
}

/// Removes the monomial unit (minimum exponents become 0) and scales so the
/// h-leading coefficient is 1.
template<RealField R>
LaurentPoly<R> normalize_unit(const LaurentPoly<R>& p, const DirectionFunctional& h) {
    std::int64_t m1 = p.begin()->first.e1, m2 = p.begin()->first.e2;
    for (const auto& [e, c] : p) {
        m1 = std::min(m1, e.e1);
        m2 = std::min(m2, e.e2);
    }
    auto q = p.shifted({-m1, -m2});
    return q * (Gauss<R>(1) / q.coeff(support_max(q, h)));
}

template<RealField R>
bool is_unit(const LaurentPoly<R>& p) { return p.size() == 1; }

}  // namespace detail

/// Splits G into mode components. Linear candidates z1−z2, z1−1, z2−1, z2+1
/// are tried in that order; each one that divides the running cofactor is a
/// B/C mode and the final non-unit cofactor is mode A.
template<RealField R>
std::vector<ModeComponent<R>> mode_factors(KinematicCase kc, const DerivedParams<R>& dp,
                                           const DivisionOptions& opt = {}) {
    auto G = geometric_constraint(dp);
    if (kc == KinematicCase::Irreducible) return {{"I", G, "G = 0", false}};

    std::vector<ModeComponent<R>> linear;
    auto cof = G;
    for (auto& cand : detail::linear_candidates<R>()) {
        auto res = is_divisible(cof, cand.poly, opt);
        if (!res.divisible) continue;
        linear.push_back({cand.name, cand.poly, cand.constraint, true});
        cof = std::move(res.quotient);
    }
    if (linear.empty())
        throw DerivationError(std::string("no linear factor divides G although the lengths classify as ") +
                              to_string(kc));

    const std::string roman = kc == KinematicCase::CaseII    ? "II"
                              : kc == KinematicCase::CaseIII ? "III"
                              : kc == KinematicCase::CaseIV  ? "IV"
                                                             : "V";
    std::vector<ModeComponent<R>> out;
    if (kc == KinematicCase::CaseV) {
        // Mode letters follow the usual table order: z2 = -1, z1 = 1, z1 = z2.
        const std::pair<const char*, const char*> order[] = {{"z2 + 1", "A"}, {"z1 - 1", "B"}, {"z1 - z2", "C"}};
        for (auto [name, letter] : order)
            for (auto& m : linear)
                if (m.label == name) out.push_back({roman + "-" + letter, m.factor, m.constraint, true});
        char next = 'D';
        for (auto& m : linear)
            if (std::none_of(std::begin(order), std::end(order), [&](auto& o) { return m.label == o.first; }))
                out.push_back({roman + "-" + next++, m.factor, m.constraint, true});
    } else {
        char next = 'B';
        for (auto& m : linear) out.push_back({roman + "-" + next++, m.factor, m.constraint, true});
    }
    if (!detail::is_unit(cof)) {
        std::string constraint = "not on";
        for (auto& m : linear) constraint += (constraint == "not on" ? " " : ", ") + m.constraint;
        out.insert(out.begin(), {roman + "-A", detail::normalize_unit(cof, opt.h), constraint, false});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Balance decision
// ---------------------------------------------------------------------------

template<RealField R>
struct ModeReport {
    ModeComponent<R> component;
    bool static_ok{false};
    bool dynamic_ok{false};
    Gauss<R> com_constant;             // C' used for this mode
    LaurentPoly<R> static_remainder;   // F mod factor
    LaurentPoly<R> dynamic_remainder;  // K mod factor
};

template<RealField R>
struct ResidualEntry {
    enum class Kind { Equality, Slack, Witness };
    std::string name;
    Kind kind;
    Gauss<R> value;
    bool satisfied{false};
};

template<RealField R>
struct ModeResiduals {
    std::string mode;
    std::vector<ResidualEntry<R>> entries;
    bool feasible{false};
    std::string note;
};

template<RealField R>
struct BalanceReport {
    KinematicCase kinematic_case{KinematicCase::Irreducible};
    DirectionFunctional h{};
    std::vector<ModeReport<R>> modes;
    std::vector<ModeResiduals<R>> closed_form;

    [[nodiscard]] bool dynamically_balanced() const {
        return std::any_of(modes.begin(), modes.end(), [](const auto& m) { return m.dynamic_ok; });
    }
    [[nodiscard]] bool statically_balanced() const {
        return std::any_of(modes.begin(), modes.end(), [](const auto& m) { return m.static_ok; });
    }
    [[nodiscard]] const ModeReport<R>* mode(const std::string& label) const {
        for (const auto& m : modes)
            if (m.component.label == label) return &m;
        return nullptr;
    }
};

/// Lumped parameters in which the balancing conditions become linear.
template<RealField R>
struct LumpedParams {
    R l1, l2, l3, d;
    std::array<R, 3> m;
    std::array<Gauss<R>, 3> q;
    std::array<R, 3> J;
};

template<RealField R>
LumpedParams<R> lumped(const DesignParams<R>& p) {
    LumpedParams<R> out{p.l1, p.l2, p.l3, p.d, p.m, {}, {}};
    for (int i = 0; i < 3; ++i) {
        out.q[i] = Gauss<R>(p.m[i] * p.r[i]) * p.p[i];
        out.J[i] = p.I[i] + p.m[i] * p.r[i] * p.r[i];
    }
    return out;
}

/// Mirror image about the perpendicular bisector of the base (x ↦ d − x̄).
/// Links 1 and 2 swap, the coupler is traversed backwards, and cases III and
/// IV are exchanged.
template<RealField R>
LumpedParams<R> mirror(const LumpedParams<R>& x) {
    LumpedParams<R> out{x.l2, x.l1, x.l3, x.d, {x.m[1], x.m[0], x.m[2]}, {}, {}};
    out.q = {conj(x.q[1]), conj(x.q[0]), Gauss<R>(x.m[2] * x.l3) - conj(x.q[2])};
    out.J = {x.J[1], x.J[0], x.J[2] + x.m[2] * x.l3 * x.l3 - R(2) * x.l3 * x.q[2].re};
    return out;
}

namespace detail {

template<RealField R>
bool real_sqrt(const R& x, R& out) {
    if constexpr (real_traits<R>::exact) {
        if (sgn(x) < 0) return false;
        mpz_class n = x.get_num(), dd = x.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(dd.get_mpz_t())) return false;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), dd.get_mpz_t());
        out = R(sn, sd);
        out.canonicalize();
        return true;
    } else {
        if (x < 0) return false;
        out = std::sqrt(x);
        return true;
    }
}

}  // namespace detail

/// Physical mirror image. Exact only when |l3 − r3·conj(p3)| is rational.
template<RealField R>
DesignParams<R> mirror(const DesignParams<R>& p) {
    DesignParams<R> out;
    out.l1 = p.l2;
    out.l2 = p.l1;
    out.l3 = p.l3;
    out.d = p.d;
    out.m = {p.m[1], p.m[0], p.m[2]};
    out.r = {p.r[1], p.r[0], R(0)};
    out.p = {conj(p.p[1]), conj(p.p[0]), Gauss<R>(1)};
    out.I = {p.I[1], p.I[0], p.I[2]};
    Gauss<R> v = Gauss<R>(p.l3) - Gauss<R>(p.r[2]) * conj(p.p[2]);
    R len;
    if (!detail::real_sqrt(norm2(v), len))
        throw std::domain_error("mirrored coupler offset has irrational length");
    out.r[2] = len;
    if (!real_traits<R>::is_zero(len)) out.p[2] = v / Gauss<R>(len);
    return out;
}

namespace detail {

template<RealField R>
struct ResidualBuilder {
    ModeResiduals<R> out;
    double tol;

    void equality(std::string name, Gauss<R> v) {
        bool ok = v.is_zero(tol);
        out.entries.push_back({std::move(name), ResidualEntry<R>::Kind::Equality, std::move(v), ok});
    }
    void slack(std::string name, R v) {
        bool ok = real_traits<R>::sign(v) > 0 && !real_traits<R>::is_zero(v, tol);
        out.entries.push_back({std::move(name), ResidualEntry<R>::Kind::Slack, Gauss<R>(std::move(v)), ok});
    }
    /// A quantity that must vanish for balancing; physically it cannot.
    void witness(std::string name, R v) {
        bool ok = real_traits<R>::is_zero(v, tol);
        out.entries.push_back({std::move(name), ResidualEntry<R>::Kind::Witness, Gauss<R>(std::move(v)), ok});
    }
    ModeResiduals<R> finish() {
        out.feasible = std::all_of(out.entries.begin(), out.entries.end(), [](auto& e) { return e.satisfied; });
        return std::move(out);
    }
};

template<RealField R>
void physical_slacks(ResidualBuilder<R>& b, const LumpedParams<R>& x) {
    for (int i = 0; i < 3; ++i) {
        auto n = std::to_string(i + 1);
        b.slack("m" + n, x.m[i]);
        b.slack("J" + n + "*m" + n + " - |q" + n + "|^2", x.J[i] * x.m[i] - norm2(x.q[i]));
    }
}

/// Case II, mode A (l1 = l2 = l, l3 = d).
template<RealField R>
ModeResiduals<R> residuals_IIA(const LumpedParams<R>& x, double tol) {
    using C = Gauss<R>;
    ResidualBuilder<R> b{{"II-A", {}, false, {}}, tol};
    const R l = x.l1, d = x.d;
    const auto& q = x.q;
    b.equality("q1 - ((l/d)*q3 - l*m3)", q[0] - (C(l / d) * q[2] - C(l * x.m[2])));
    b.equality("q2 + (l/d)*q3", q[1] + C(l / d) * q[2]);
    b.equality("J1 - ((d^2+l^2)/d*q3 - J3 - l^2*m3)",
               C(x.J[0]) - (C((d * d + l * l) / d) * q[2] - C(x.J[2]) - C(l * l * x.m[2])));
    b.equality("J2 - ((d^2-l^2)/d*q3 - J3)", C(x.J[1]) - (C((d * d - l * l) / d) * q[2] - C(x.J[2])));
    b.equality("Im(q3)", C(q[2].im));
    b.slack("q3", q[2].re);
    physical_slacks(b, x);
    return b.finish();
}

/// Case IV, mode A (l2 = d, l1 = l3 = l).
template<RealField R>
ModeResiduals<R> residuals_IVA(const LumpedParams<R>& x, double tol, std::string label = "IV-A") {
    using C = Gauss<R>;
    ResidualBuilder<R> b{{std::move(label), {}, false, {}}, tol};
    const R l = x.l1, d = x.d;
    const auto& q = x.q;
    b.equality("q1 - (q3 - l*m3)", q[0] - (q[2] - C(l * x.m[2])));
    b.equality("q2 + (d/l)*q3", q[1] + C(d / l) * q[2]);
    b.equality("J1 - (J3 - l^2*m3)", C(x.J[0]) - C(x.J[2] - l * l * x.m[2]));
    b.equality("J2 - ((l^2-d^2)/l*q3 - J3)", C(x.J[1]) - (C((l * l - d * d) / l) * q[2] - C(x.J[2])));
    b.equality("Im(q3)", C(q[2].im));
    b.slack("-q3", -q[2].re);
    physical_slacks(b, x);
    return b.finish();
}

template<RealField R>
ModeResiduals<R> witness_mode(std::string label, std::string name, R value, double tol) {
    ResidualBuilder<R> b{{std::move(label), {}, false, {}}, tol};
    b.witness(std::move(name), std::move(value));
    return b.finish();
}

// z1 = z2: the constant coefficient of K3 + K4 on the mode.
template<RealField R>
R witness_parallelogram(const LumpedParams<R>& x) { return x.J[0] + x.l2 * x.l2 * x.m[2] + x.J[1]; }

// z1 = 1: w·l3² with w the constant coefficient of K4.
template<RealField R>
R witness_locked_input(const LumpedParams<R>& x) { return x.l2 * x.l2 * x.J[2] + x.l3 * x.l3 * x.J[1]; }

// z2 = -1: links 1 and 3 turn rigidly about the base pivot.
template<RealField R>
R witness_locked_output(const LumpedParams<R>& x) {
    return x.J[0] + x.J[2] + x.m[2] * x.l1 * x.l1 - R(2) * x.l1 * x.q[2].re;
}

}  // namespace detail

/// Closed-form balancing conditions for the case of the given parameters.
template<RealField R>
std::vector<ModeResiduals<R>> closed_form_residuals(const DesignParams<R>& p, double tol = 0.0) {
    using namespace detail;
    const auto x = lumped(p);
    switch (classify_case(p)) {
    case KinematicCase::Irreducible:
        return {witness_mode<R>("I", "l2^2*J3 + l3^2*J2", witness_locked_input(x), tol)};
    case KinematicCase::CaseII:
        return {residuals_IIA(x, tol), witness_mode<R>("II-B", "J1 + l2^2*m3 + J2", witness_parallelogram(x), tol)};
    case KinematicCase::CaseIII: {
        auto a = residuals_IVA(mirror(x), tol, "III-A");
        a.note = "evaluated as case IV-A on the mirror image (links 1 and 2 exchanged)";
        return {a, witness_mode<R>("III-B", "l2^2*J3 + l3^2*J2", witness_locked_input(x), tol)};
    }
    case KinematicCase::CaseIV:
        return {residuals_IVA(x, tol),
                witness_mode<R>("IV-B", "J1 + J3 + l1^2*m3 - 2*l1*Re(q3)", witness_locked_output(x), tol)};
    case KinematicCase::CaseV:
        return {witness_mode<R>("V-A", "J1 + J3 + l1^2*m3 - 2*l1*Re(q3)", witness_locked_output(x), tol),
                witness_mode<R>("V-B", "l2^2*J3 + l3^2*J2", witness_locked_input(x), tol),
                witness_mode<R>("V-C", "J1 + l2^2*m3 + J2", witness_parallelogram(x), tol)};
    }
    return {};
}

namespace detail {

/// A point of the component's zero set with coordinates ±1, if any.
template<RealField R>
std::optional<std::pair<Gauss<R>, Gauss<R>>> reference_point(const LaurentPoly<R>& factor, double tol) {
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            Gauss<R> z1(s1), z2(s2);
            if (factor.evaluate(z1, z2).is_zero(tol)) return std::pair{z1, z2};
        }
    return std::nullopt;
}

}  // namespace detail

/// Decides static and dynamic balance in every kinematic mode.
///
/// The COM constant C' is not a design parameter: on a mode it must equal
/// F1 z1 + F2 z2 at any point of that mode, so it is taken at a reference
/// point of the component (falling back to z1 = z2 = 1). When the component
/// has a two-dimensional Newton polygon this choice is immaterial, since
/// only F ≡ 0 can be divisible by it.
template<RealField R>
BalanceReport<R> check_balance(const DesignParams<R>& p, const DivisionOptions& opt = {}) {
    auto dp = derive(p);
    BalanceReport<R> report;
    report.kinematic_case = classify_case(p);
    report.h = opt.h;
    const double tol = real_traits<R>::exact ? 0.0 : opt.tol;

    const auto K = dynamic_determinant(dp);
    using P = LaurentPoly<R>;
    const P F0 = P::z1() * dp.F1 + P::z2() * dp.F2;
    for (auto& comp : mode_factors(report.kinematic_case, dp, opt)) {
        ModeReport<R> m;
        auto ref = detail::reference_point(comp.factor, tol);
        m.com_constant = ref ? F0.evaluate(ref->first, ref->second) : dp.C_prime;
        auto st = is_divisible(F0 - P(m.com_constant), comp.factor, opt);
        auto dy = is_divisible(K, comp.factor, opt);
        m.static_ok = st.divisible;
        m.dynamic_ok = st.divisible && dy.divisible;
        m.static_remainder = std::move(st.remainder);
        m.dynamic_remainder = std::move(dy.remainder);
        m.component = std::move(comp);
        report.modes.push_back(std::move(m));
    }
    report.closed_form = closed_form_residuals(p, real_traits<R>::exact ? 0.0 : opt.tol);
    return report;
}

// ---------------------------------------------------------------------------
// Synthesis of balanced designs (cases II-A and IV-A)
// ---------------------------------------------------------------------------

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Free choices of a synthesized design; unset values are filled in from the
/// seed (q3, J3, m3) or as the smallest admissible integer (m1, m2).
struct SynthesisChoices {
    std::optional<Rational> q3, J3, m3, m1, m2;
};

namespace detail {

class SynthesisRng {
public:
    explicit SynthesisRng(std::uint64_t seed) : engine_(seed) {}

    /// Midpoint of (lo, hi) perturbed by at most half the half-width.
    Rational interior(const Rational& lo, const Rational& hi) {
        Rational mid = (lo + hi) / 2, half = (hi - lo) / 2;
        Rational frac(static_cast<long>(engine_() % 101) - 50, 100);
        frac.canonicalize();
        return mid + frac * half;
    }
    Rational magnitude() {
        Rational v(static_cast<long>(1 + engine_() % 8), static_cast<long>(1 + engine_() % 3));
        v.canonicalize();
        return v;
    }

private:
    std::mt19937_64 engine_;
};

inline Rational floor_plus_one(const Rational& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(f + 1);
}

inline std::string str(const Rational& x) { return x.get_str(); }

inline Rational pick(const std::optional<Rational>& chosen, const Rational& lo, const Rational& hi,
                     SynthesisRng& rng, const char* name) {
    if (!chosen) return rng.interior(lo, hi);
    if (!(lo < *chosen && *chosen < hi))
        throw InfeasibleError(std::string(name) + " = " + str(*chosen) + " is outside the admissible interval (" +
                              str(lo) + ", " + str(hi) + ")");
    return *chosen;
}

inline Rational pick_mass(const std::optional<Rational>& chosen, const Rational& q, const Rational& J,
                          const char* name) {
    Rational bound = q * q / J;
    if (!chosen) return floor_plus_one(bound);
    if (!(*chosen > bound))
        throw InfeasibleError(std::string(name) + " = " + str(*chosen) + " must exceed q^2/J = " + str(bound));
    return *chosen;
}

/// (m_i, q_i, J_i) ↦ (m_i, r_i, p_i, I_i) for real q_i: p_i = sign(q_i), r_i = |q_i|/m_i.
inline void realize(DesignParams<Rational>& out, int i, const Rational& m, const Rational& q, const Rational& J) {
    out.m[i] = m;
    out.r[i] = abs(q) / m;
    out.p[i] = GaussRational(sgn(q) < 0 ? -1 : 1);
    out.I[i] = J - m * out.r[i] * out.r[i];
}

inline void require_bound(const Rational& l, const Rational& d, const char* which) {
    if (sgn(l) <= 0 || sgn(d) <= 0) throw InfeasibleError("lengths must be positive");
    // d is rational, so d² = 2l² is impossible and d ≥ √2·l means d² > 2l².
    if (!(d * d > 2 * l * l))
        throw InfeasibleError(std::string("case ") + which + " requires d >= sqrt(2)*l; got d^2 = " + str(d * d) +
                              " < 2*l^2 = " + str(2 * l * l));
}

}  // namespace detail

/// Case II, mode A: l1 = l2 = l, l3 = d, with q3 > 0.
inline DesignParams<Rational> synthesize_case_IIA(const Rational& l, const Rational& d,
                                                  const SynthesisChoices& ch = {}, std::uint64_t seed = 0) {
    using namespace detail;
    require_bound(l, d, "IIA");
    SynthesisRng rng(seed);
    const Rational q3 = ch.q3 ? *ch.q3 : rng.magnitude();
    if (sgn(q3) <= 0) throw InfeasibleError("case IIA requires q3 > 0; got " + str(q3));
    const Rational l2 = l * l, d2 = d * d;
    const Rational J3 = pick(ch.J3, l2 / d * q3, (d2 - l2) / d * q3, rng, "J3");
    const Rational m3 = pick(ch.m3, q3 * q3 / J3, ((d2 + l2) / d * q3 - J3) / l2, rng, "m3");
    const Rational q1 = l / d * q3 - l * m3;
    const Rational q2 = -(l / d) * q3;
    const Rational J1 = (d2 + l2) / d * q3 - J3 - l2 * m3;
    const Rational J2 = (d2 - l2) / d * q3 - J3;

    DesignParams<Rational> out;
    out.l1 = l;
    out.l2 = l;
    out.l3 = d;
    out.d = d;
    realize(out, 0, pick_mass(ch.m1, q1, J1, "m1"), q1, J1);
    realize(out, 1, pick_mass(ch.m2, q2, J2, "m2"), q2, J2);
    realize(out, 2, m3, q3, J3);
    validate(out);
    return out;
}

/// Case IV, mode A: l2 = d, l1 = l3 = l, with q3 < 0.
inline DesignParams<Rational> synthesize_case_IVA(const Rational& l, const Rational& d,
                                                  const SynthesisChoices& ch = {}, std::uint64_t seed = 0) {
    using namespace detail;
    require_bound(l, d, "IVA");
    SynthesisRng rng(seed);
    const Rational q3 = ch.q3 ? *ch.q3 : Rational(-rng.magnitude());
    if (sgn(q3) >= 0) throw InfeasibleError("case IVA requires q3 < 0; got " + str(q3));
    const Rational l2 = l * l, d2 = d * d;
    const Rational J3 = pick(ch.J3, -l * q3, -(d2 - l2) / l * q3, rng, "J3");
    const Rational m3 = pick(ch.m3, q3 * q3 / J3, J3 / l2, rng, "m3");
    const Rational q1 = q3 - l * m3;
    const Rational q2 = -(d / l) * q3;
    const Rational J1 = J3 - l2 * m3;
    const Rational J2 = (l2 - d2) / l * q3 - J3;

    DesignParams<Rational> out;
    out.l1 = l;
    out.l2 = d;
    out.l3 = l;
    out.d = d;
    realize(out, 0, pick_mass(ch.m1, q1, J1, "m1"), q1, J1);
    realize(out, 1, pick_mass(ch.m2, q2, J2, "m2"), q2, J2);
    realize(out, 2, m3, q3, J3);
    validate(out);
    return out;
}

}  // namespace fourbar
