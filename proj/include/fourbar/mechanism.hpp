#pragma once

/**
 * @file mechanism.hpp
 * @brief Constraint polynomials of a planar four-bar mechanism.
 *
 * Joint directions are unit complex numbers z1 (input link, pivot at 0),
 * z2 (output link, pivot at d) and z3 (coupler). The closure
 * l1·z1 + l3·z3 = d + l2·z2 gives z3 = G1·z1 + G2·z2 + G3, and every
 * quantity below is a Laurent polynomial in z1, z2 obtained by eliminating z3
 * with conj(z3) = z3⁻¹ on the torus.
 */

#include "fourbar/laurent.hpp"

#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fourbar {

struct ValidationError : std::runtime_error {
    std::vector<std::string> failures;
    explicit ValidationError(std::vector<std::string> f)
        : std::runtime_error(join(f)), failures(std::move(f)) {}

private:
    static std::string join(const std::vector<std::string>& f) {
        std::string s = "invalid design parameters:";
        for (const auto& x : f) s += "\n  - " + x;
        return s;
    }
};

/// The sixteen design parameters. Body i has mass m[i], centre of mass at
/// distance r[i] in direction p[i] = e^{iψ_i} relative to the link, and
/// inertia I[i] about its centre of mass (index 0 is body 1).
template<RealField R>
struct DesignParams {
    R l1{1}, l2{1}, l3{1}, d{1};
    std::array<R, 3> m{R(1), R(1), R(1)};
    std::array<R, 3> r{R(0), R(0), R(0)};
    std::array<Gauss<R>, 3> p{Gauss<R>(1), Gauss<R>(1), Gauss<R>(1)};
    std::array<R, 3> I{R(0), R(0), R(0)};

    friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Tolerance on |p_i| = 1 for approximate parameters.
inline constexpr double kUnitTolerance = 1e-12;

template<RealField R>
std::vector<std::string> validation_failures(const DesignParams<R>& dp) {
    using T = real_traits<R>;
    std::vector<std::string> out;
    auto positive = [&](const R& x, const char* name) {
        if (T::sign(x) <= 0) out.push_back(std::string(name) + " must be > 0 (got " + T::to_string(x) + ")");
    };
    auto nonneg = [&](const R& x, const std::string& name) {
        if (T::sign(x) < 0) out.push_back(name + " must be >= 0 (got " + T::to_string(x) + ")");
    };
    positive(dp.l1, "l1");
    positive(dp.l2, "l2");
    positive(dp.l3, "l3");
    positive(dp.d, "d");
    const char* mn[] = {"m1", "m2", "m3"};
    for (int i = 0; i < 3; ++i) {
        positive(dp.m[i], mn[i]);
        nonneg(dp.r[i], "r" + std::to_string(i + 1));
        nonneg(dp.I[i], "I" + std::to_string(i + 1));
        R n = norm2(dp.p[i]);
        bool unit = T::exact ? n == R(1) : std::abs(T::to_double(n) - 1.0) <= kUnitTolerance;
        if (!unit) {
            std::ostringstream msg;
            msg << "p" << i + 1 << " must have unit modulus (got " << dp.p[i] << ")";
            out.push_back(msg.str());
        }
    }
    return out;
}

template<RealField R>
void validate(const DesignParams<R>& dp) {
    if (auto f = validation_failures(dp); !f.empty()) throw ValidationError(std::move(f));
}

template<RealField R>
struct DerivedParams {
    DesignParams<R> params;
    R G1, G2, G3;
    R M;
    std::array<Gauss<R>, 3> q;  // q_i = m_i r_i p_i
    std::array<R, 3> J;         // J_i = I_i + m_i r_i²
    Gauss<R> F1, F2, F3;
    Gauss<R> C_prime;           // C·M − F3 with C the COM at z1 = z2 = 1
};

template<RealField R>
DerivedParams<R> derive(const DesignParams<R>& dp) {
    validate(dp);
    DerivedParams<R> out;
    out.params = dp;
    out.G1 = -dp.l1 / dp.l3;
    out.G2 = dp.l2 / dp.l3;
    out.G3 = dp.d / dp.l3;
    out.M = dp.m[0] + dp.m[1] + dp.m[2];
    for (int i = 0; i < 3; ++i) {
        out.q[i] = Gauss<R>(dp.m[i] * dp.r[i]) * dp.p[i];
        out.J[i] = dp.I[i] + dp.m[i] * dp.r[i] * dp.r[i];
    }
    using C = Gauss<R>;
    out.F1 = out.q[0] + C(dp.m[2] * dp.l1) + C(out.G1) * out.q[2];
    out.F2 = out.q[1] + C(out.G2) * out.q[2];
    out.F3 = C(dp.m[1] * dp.d) + C(out.G3) * out.q[2];
    out.C_prime = out.F1 + out.F2;
    return out;
}

namespace detail {

template<RealField R>
LaurentPoly<R> lp(const R& x) { return LaurentPoly<R>(Gauss<R>(x)); }

/// Planar scalar product on the torus: ⟨u, v⟩ = (conj(u)·v + u·conj(v)) / 2.
template<RealField R>
LaurentPoly<R> scalar_product(const LaurentPoly<R>& u, const LaurentPoly<R>& v) {
    auto s = conjugate_on_torus(u) * v + u * conjugate_on_torus(v);
    return s * Gauss<R>(R(1) / R(2));
}

template<RealField R>
LaurentPoly<R> coupler_direction(const DerivedParams<R>& dp) {
    using P = LaurentPoly<R>;
    return lp(dp.G1) * P::z1() + lp(dp.G2) * P::z2() + lp(dp.G3);
}

}  // namespace detail

/// G = (G1 z1 + G2 z2 + G3)(G1 z1⁻¹ + G2 z2⁻¹ + G3) − 1.
template<RealField R>
LaurentPoly<R> geometric_constraint(const DerivedParams<R>& dp) {
    auto z3 = detail::coupler_direction(dp);
    return z3 * conjugate_on_torus(z3) - LaurentPoly<R>(Gauss<R>(1));
}

template<RealField R>
struct VelocityCoefficients {
    LaurentPoly<R> K1, K2;
};

/// dG/dt = i(K1 θ̇1 + K2 θ̇2); K_k = z_k ∂G/∂z_k.
template<RealField R>
VelocityCoefficients<R> velocity_coefficients(const DerivedParams<R>& dp) {
    using P = LaurentPoly<R>;
    using C = Gauss<R>;
    const C g12(dp.G1 * dp.G2), g13(dp.G1 * dp.G3), g23(dp.G2 * dp.G3);
    P z1z2i = P::monomial({1, -1}), z1iz2 = P::monomial({-1, 1});
    P z1 = P::z1(), z1i = P::monomial({-1, 0}), z2 = P::z2(), z2i = P::monomial({0, -1});
    return {(z1z2i - z1iz2) * g12 + (z1 - z1i) * g13, (z1iz2 - z1z2i) * g12 + (z2 - z2i) * g23};
}

/// F = F1 z1 + F2 z2 − C'.
template<RealField R>
LaurentPoly<R> static_constraint(const DerivedParams<R>& dp) {
    using P = LaurentPoly<R>;
    return P::z1() * dp.F1 + P::z2() * dp.F2 - P(dp.C_prime);
}

/// Constants of H = K3 θ̇1 + K4 θ̇2 with
///   K3 = a1 z1 + a2 z1⁻¹ + b1 z1 z2⁻¹ + b2 z1⁻¹ z2 + c,
///   K4 = u1 z2 + u2 z2⁻¹ + v1 z1 z2⁻¹ + v2 z1⁻¹ z2 + w.
template<RealField R>
struct MomentumForm {
    using C = Gauss<R>;
    C a1, a2, b1, b2, c;
    C u1, u2, v1, v2, w;

    [[nodiscard]] LaurentPoly<R> K3() const {
        return {{{1, 0}, a1}, {{-1, 0}, a2}, {{1, -1}, b1}, {{-1, 1}, b2}, {{0, 0}, c}};
    }
    [[nodiscard]] LaurentPoly<R> K4() const {
        return {{{0, 1}, u1}, {{0, -1}, u2}, {{1, -1}, v1}, {{-1, 1}, v2}, {{0, 0}, w}};
    }
};

struct DerivationError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Collects the θ̇1 and θ̇2 coefficients of the total angular momentum.
///
/// Body positions and the rotated velocities −i·v are written in the Laurent
/// ring with z3 = G1 z1 + G2 z2 + G3 and z3·θ̇3 = G1 z1 θ̇1 + G2 z2 θ̇2. The
/// coupler rate is θ̇3 = ⟨z3, z3 θ̇3⟩, which keeps each coefficient real on
/// the torus; it differs from (z3 θ̇3)·z3⁻¹ only by a multiple of the
/// kinematic constraint K1 θ̇1 + K2 θ̇2.
template<RealField R>
std::pair<LaurentPoly<R>, LaurentPoly<R>> momentum_coefficients(const DerivedParams<R>& dp) {
    using P = LaurentPoly<R>;
    using C = Gauss<R>;
    using detail::lp;
    using detail::scalar_product;
    const auto& x = dp.params;
    const P z1 = P::z1(), z2 = P::z2();
    const P z3 = detail::coupler_direction(dp);
    const std::array<P, 2> z3_rate{lp(dp.G1) * z1, lp(dp.G2) * z2};

    const P pos1 = z1 * (C(x.r[0]) * x.p[0]);
    const P pos2 = lp(x.d) + z2 * (C(x.r[1]) * x.p[1]);
    const P pos3 = lp(x.l1) * z1 + z3 * (C(x.r[2]) * x.p[2]);

    std::array<P, 2> out;
    for (int k = 0; k < 2; ++k) {
        const P theta3_rate = scalar_product(z3, z3_rate[k]);
        P v1 = k == 0 ? pos1 : P{};
        P v2 = k == 1 ? z2 * (C(x.r[1]) * x.p[1]) : P{};
        P v3 = (k == 0 ? lp(x.l1) * z1 : P{}) + z3_rate[k] * (C(x.r[2]) * x.p[2]);
        P h = scalar_product(pos1, v1) * C(x.m[0]) + scalar_product(pos2, v2) * C(x.m[1]) +
              scalar_product(pos3, v3) * C(x.m[2]) + theta3_rate * C(x.I[2]);
        h += lp(k == 0 ? x.I[0] : x.I[1]);
        out[k] = std::move(h);
    }
    return {std::move(out[0]), std::move(out[1])};
}

template<RealField R>
MomentumForm<R> momentum_form(const DerivedParams<R>& dp) {
    auto [k3, k4] = momentum_coefficients(dp);
    auto check = [](const LaurentPoly<R>& p, std::initializer_list<Exponent> allowed, const char* name) {
        for (const auto& [e, c] : p) {
            if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) {
                std::ostringstream msg;
                msg << name << " has a term outside its template at " << e;
                throw DerivationError(msg.str());
            }
        }
    };
    check(k3, {{1, 0}, {-1, 0}, {1, -1}, {-1, 1}, {0, 0}}, "K3");
    check(k4, {{0, 1}, {0, -1}, {1, -1}, {-1, 1}, {0, 0}}, "K4");
    MomentumForm<R> f;
    f.a1 = k3.coeff({1, 0});
    f.a2 = k3.coeff({-1, 0});
    f.b1 = k3.coeff({1, -1});
    f.b2 = k3.coeff({-1, 1});
    f.c = k3.coeff({0, 0});
    f.u1 = k4.coeff({0, 1});
    f.u2 = k4.coeff({0, -1});
    f.v1 = k4.coeff({1, -1});
    f.v2 = k4.coeff({-1, 1});
    f.w = k4.coeff({0, 0});
    return f;
}

/// K = K1 K4 − K2 K3, the determinant of the velocity system.
template<RealField R>
LaurentPoly<R> dynamic_determinant(const DerivedParams<R>& dp) {
    auto [K1, K2] = velocity_coefficients(dp);
    auto mf = momentum_form(dp);
    return K1 * mf.K4() - K2 * mf.K3();
}

template<RealField To, RealField From>
MomentumForm<To> convert(const MomentumForm<From>& f) {
    return {convert<To>(f.a1), convert<To>(f.a2), convert<To>(f.b1), convert<To>(f.b2), convert<To>(f.c),
            convert<To>(f.u1), convert<To>(f.u2), convert<To>(f.v1), convert<To>(f.v2), convert<To>(f.w)};
}

template<RealField To, RealField From>
DesignParams<To> convert(const DesignParams<From>& dp) {
    DesignParams<To> out;
    out.l1 = convert_real<To>(dp.l1);
    out.l2 = convert_real<To>(dp.l2);
    out.l3 = convert_real<To>(dp.l3);
    out.d = convert_real<To>(dp.d);
    for (int i = 0; i < 3; ++i) {
        out.m[i] = convert_real<To>(dp.m[i]);
        out.r[i] = convert_real<To>(dp.r[i]);
        out.p[i] = convert<To>(dp.p[i]);
        out.I[i] = convert_real<To>(dp.I[i]);
    }
    return out;
}

}  // namespace fourbar
