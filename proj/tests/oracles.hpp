#pragma once

// Reference computations used by the tests. Nothing here calls the code it
// is meant to check: divisibility is decided by a dense linear solve, and
// mechanism kinematics come from plane geometry with finite differences.

#include "fourbar/fourbar.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using fourbar::Exponent;
using fourbar::Gauss;
using fourbar::LaurentQ;
using fourbar::Rational;
using GQ = Gauss<Rational>;
using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

/// n/d in lowest terms (the two-argument gmpxx constructor does not reduce).
inline Rational rat(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    /// Nonzero small rational n/k.
    Rational nonzero_rational(long num = 9, long den = 6) {
        long n = 0;
        while (n == 0) n = integer(-num, num);
        return rat(n, integer(1, den));
    }
    Rational rational(long num = 9, long den = 6) { return rat(integer(-num, num), integer(1, den)); }
    Rational positive_rational(long num = 9, long den = 6) { return rat(integer(1, num), integer(1, den)); }

    GQ gauss() {
        GQ z{rational(), rational()};
        while (z.is_zero()) z = {rational(), rational()};
        return z;
    }

    LaurentQ laurent(int max_terms = 8, int lo = -5, int hi = 5) {
        LaurentQ p;
        while (p.is_zero()) {
            int n = static_cast<int>(integer(1, max_terms));
            for (int k = 0; k < n; ++k) p.add_term({integer(lo, hi), integer(lo, hi)}, gauss());
        }
        return p;
    }

    /// A point of the unit circle with rational coordinates, from a
    /// Pythagorean triple.
    GQ unit() {
        long a = integer(1, 6), b = integer(0, 6);
        Rational n(a * a + b * b);
        GQ z{Rational(a * a - b * b) / n, Rational(2 * a * b) / n};  // quotients are reduced
        int s = static_cast<int>(integer(0, 3));
        for (int k = 0; k < s; ++k) z = {-z.im, z.re};
        return z;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Divisibility by dense linear algebra
// ---------------------------------------------------------------------------

struct Box {
    std::int64_t lo1, hi1, lo2, hi2;
};

inline Box bounding_box(const LaurentQ& p) {
    Box b{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (const auto& [e, c] : p) {
        b.lo1 = std::min(b.lo1, e.e1);
        b.hi1 = std::max(b.hi1, e.e1);
        b.lo2 = std::min(b.lo2, e.e2);
        b.hi2 = std::max(b.hi2, e.e2);
    }
    return b;
}

/// Solves Q·g = f for Q over the Gaussian rationals. The bounding box of a
/// product is the sum of the boxes, so the unknown support of Q is the box
/// difference. Returns the cofactor when one exists.
inline std::optional<LaurentQ> exact_cofactor(const LaurentQ& f, const LaurentQ& g) {
    if (f.is_zero()) return LaurentQ{};
    const Box bf = bounding_box(f), bg = bounding_box(g);
    const Box bq{bf.lo1 - bg.lo1, bf.hi1 - bg.hi1, bf.lo2 - bg.lo2, bf.hi2 - bg.hi2};
    if (bq.lo1 > bq.hi1 || bq.lo2 > bq.hi2) return std::nullopt;

    std::vector<Exponent> unknowns;
    for (auto a = bq.lo1; a <= bq.hi1; ++a)
        for (auto b = bq.lo2; b <= bq.hi2; ++b) unknowns.push_back({a, b});
    std::map<Exponent, std::size_t> row_of;
    for (auto a = bf.lo1; a <= bf.hi1; ++a)
        for (auto b = bf.lo2; b <= bf.hi2; ++b) row_of.emplace(Exponent{a, b}, row_of.size());

    const std::size_t rows = row_of.size(), cols = unknowns.size();
    std::vector<std::vector<GQ>> A(rows, std::vector<GQ>(cols + 1, GQ{}));
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [e, c] : g) A[row_of.at(unknowns[j] + e)][j] = c;
    for (const auto& [e, c] : f) A[row_of.at(e)][cols] = c;

    // Gauss-Jordan elimination.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        const GQ inv = GQ(1) / A[r][c];
        for (std::size_t k = c; k <= cols; ++k) A[r][k] = A[r][k] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            const GQ factor = A[i][c];
            for (std::size_t k = c; k <= cols; ++k) A[i][k] = A[i][k] - factor * A[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!A[i][cols].is_zero()) return std::nullopt;
    LaurentQ q;
    for (std::size_t i = 0; i < r; ++i) q.add_term(unknowns[pivot_col[i]], A[i][cols]);
    return q;
}

/// a = c·z^s·b for some nonzero constant c and monomial shift s.
inline bool same_up_to_unit(const LaurentQ& a, const LaurentQ& b) {
    if (a.is_zero() || b.is_zero() || a.size() != b.size()) return a.is_zero() && b.is_zero();
    const auto& [ea, ca] = *a.begin();
    const auto& [eb, cb] = *b.begin();
    return a == b.shifted(ea - eb) * (ca / cb);
}

// ---------------------------------------------------------------------------
// Planar geometry of the linkage
// ---------------------------------------------------------------------------

/// Mechanism in floating point, straight from the design parameters.
struct Linkage {
    double l1, l2, l3, d;
    double m[3], r[3], I[3];
    cplx p[3];

    template<fourbar::RealField R>
    static Linkage from(const fourbar::DesignParams<R>& x) {
        using T = fourbar::real_traits<R>;
        Linkage k{T::to_double(x.l1), T::to_double(x.l2), T::to_double(x.l3), T::to_double(x.d), {}, {}, {}, {}};
        for (int i = 0; i < 3; ++i) {
            k.m[i] = T::to_double(x.m[i]);
            k.r[i] = T::to_double(x.r[i]);
            k.I[i] = T::to_double(x.I[i]);
            k.p[i] = {T::to_double(x.p[i].re), T::to_double(x.p[i].im)};
        }
        return k;
    }
};

/// Joint positions: A on the input crank, B on the output crank.
struct Pose {
    double theta1, theta2, theta3;
    cplx A, B;
};

/// Intersects the circle of radius l3 about A with the circle of radius l2
/// about the output pivot; picks the intersection nearest `near_B`.
inline std::optional<Pose> pose(const Linkage& k, double theta1, cplx near_B) {
    const cplx A = std::polar(k.l1, theta1), O(k.d, 0);
    const cplx v = O - A;
    const double dist = std::abs(v);
    if (dist == 0) return std::nullopt;
    const double a = (k.l3 * k.l3 - k.l2 * k.l2 + dist * dist) / (2 * dist);
    const double h2 = k.l3 * k.l3 - a * a;
    if (h2 < -1e-12) return std::nullopt;
    const double h = std::sqrt(std::max(0.0, h2));
    const cplx u = v / dist, mid = A + a * u, n = u * cplx(0, 1);
    const cplx B1 = mid + h * n, B2 = mid - h * n;
    const cplx B = std::abs(B1 - near_B) <= std::abs(B2 - near_B) ? B1 : B2;
    return Pose{theta1, std::arg(B - O), std::arg(B - A), A, B};
}

struct BodyState {
    cplx pos[3];
};

inline BodyState bodies(const Linkage& k, const Pose& s) {
    const cplx z1 = std::polar(1.0, s.theta1), z2 = std::polar(1.0, s.theta2), z3 = std::polar(1.0, s.theta3);
    return {{k.r[0] * k.p[0] * z1, k.d + k.r[1] * k.p[1] * z2, k.l1 * z1 + k.r[2] * k.p[2] * z3}};
}

inline cplx centre_of_mass(const Linkage& k, const Pose& s) {
    auto b = bodies(k, s);
    return (k.m[0] * b.pos[0] + k.m[1] * b.pos[1] + k.m[2] * b.pos[2]) / (k.m[0] + k.m[1] + k.m[2]);
}

inline double unwrap(double a, double ref) {
    constexpr double two_pi = 2 * 3.14159265358979323846;
    return a + two_pi * std::round((ref - a) / two_pi);
}

/// Angular momentum about the base pivot at input angle θ1 moving at rate
/// ω, with every velocity obtained by central differences of the pose.
struct MomentumSample {
    double H;
    double ratio;  // dθ2/dθ1
    Pose pose;
};

inline std::optional<MomentumSample> momentum(const Linkage& k, double theta1, double omega, cplx near_B,
                                              double step = 1e-6) {
    auto s0 = pose(k, theta1, near_B);
    auto sp = pose(k, theta1 + step, near_B);
    auto sm = pose(k, theta1 - step, near_B);
    if (!s0 || !sp || !sm) return std::nullopt;
    const auto b0 = bodies(k, *s0), bp = bodies(k, *sp), bm = bodies(k, *sm);
    const double dt2 = (unwrap(sp->theta2, s0->theta2) - unwrap(sm->theta2, s0->theta2)) / (2 * step);
    const double dt3 = (unwrap(sp->theta3, s0->theta3) - unwrap(sm->theta3, s0->theta3)) / (2 * step);
    const double rates[3] = {omega, dt2 * omega, dt3 * omega};
    double H = 0;
    for (int i = 0; i < 3; ++i) {
        const cplx v = (bp.pos[i] - bm.pos[i]) / (2 * step) * omega;
        H += k.m[i] * std::imag(std::conj(b0.pos[i]) * v) + k.I[i] * rates[i];
    }
    return MomentumSample{H, dt2, *s0};
}

/// Angular momentum per unit input rate, averaged over one turn of a motion
/// given by explicit joint angles (θ1, θ2, θ3)(t); velocities by central
/// differences of body positions.
template<typename Angles>
double mean_momentum(const Linkage& k, Angles angles, int n = 64) {
    double sum = 0;
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
        double t = 2 * 3.14159265358979323846 * i / n;
        auto pose_at = [&](double s) {
            auto [a, b, c] = angles(s);
            return Pose{a, b, c, {}, {}};
        };
        auto p0 = pose_at(t), pp = pose_at(t + h), pm = pose_at(t - h);
        auto b0 = bodies(k, p0), bp = bodies(k, pp), bm = bodies(k, pm);
        double rates[3] = {(pp.theta1 - pm.theta1) / (2 * h), (pp.theta2 - pm.theta2) / (2 * h),
                           (pp.theta3 - pm.theta3) / (2 * h)};
        double H = 0;
        for (int j = 0; j < 3; ++j) {
            auto v = (bp.pos[j] - bm.pos[j]) / (2 * h);
            H += k.m[j] * std::imag(std::conj(b0.pos[j]) * v) + k.I[j] * rates[j];
        }
        sum += H;
    }
    return sum / n;
}

// ---------------------------------------------------------------------------
// Random designs
// ---------------------------------------------------------------------------

/// Mass distribution with I > 0 on the given lengths.
inline void randomize_masses(Random& rng, fourbar::DesignParams<Rational>& p) {
    for (int i = 0; i < 3; ++i) {
        p.m[i] = rng.positive_rational(6, 3);
        p.r[i] = rng.positive_rational(4, 3);
        p.p[i] = rng.unit();
        p.I[i] = rng.positive_rational(6, 4);
    }
}

inline fourbar::DesignParams<Rational> random_design(Random& rng) {
    fourbar::DesignParams<Rational> p;
    p.l1 = rng.positive_rational(8, 3);
    p.l2 = rng.positive_rational(8, 3);
    p.l3 = rng.positive_rational(8, 3);
    p.d = rng.positive_rational(8, 3);
    randomize_masses(rng, p);
    return p;
}

/// Random design whose lengths realize exactly the requested case (small
/// random rationals collide often, so unintended coincidences are redrawn).
inline fourbar::DesignParams<Rational> random_case_design(Random& rng, fourbar::KinematicCase target) {
    using fourbar::KinematicCase;
    for (;;) {
        auto p = random_design(rng);
        switch (target) {
        case KinematicCase::Irreducible: break;
        case KinematicCase::CaseII: p.l2 = p.l1; p.l3 = p.d; break;
        case KinematicCase::CaseIII: p.d = p.l1; p.l3 = p.l2; break;
        case KinematicCase::CaseIV: p.d = p.l2; p.l3 = p.l1; break;
        case KinematicCase::CaseV: p.l2 = p.l3 = p.d = p.l1; break;
        }
        if (fourbar::classify_case(p) == target) return p;
    }
}

/// Lengths with no coincidence, so the closure curve is irreducible.
inline fourbar::DesignParams<Rational> random_generic_design(Random& rng) {
    return random_case_design(rng, fourbar::KinematicCase::Irreducible);
}

/// Lengths l1 = l2 = l, l3 = d and nothing else, so the curve splits into
/// exactly two modes.
inline fourbar::DesignParams<Rational> random_parallelogram_design(Random& rng) {
    return random_case_design(rng, fourbar::KinematicCase::CaseII);
}

}  // namespace oracle
