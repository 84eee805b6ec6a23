#pragma once

/**
 * @file trajectory.hpp
 * @brief Numeric simulation of a four-bar along a driven input angle.
 *
 * The closure is solved for z2 on the requested kinematic mode, the output
 * rate follows from the velocity constraint, and the angular momentum is
 * evaluated twice: through the K3/K4 momentum form and body by body from
 * positions and velocities. All arithmetic here is double precision.
 */

#include "fourbar/balance.hpp"
#include "fourbar/mechanism.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <optional>
#include <string>
#include <vector>

namespace fourbar {

using cplx = std::complex<double>;

struct SimulationError : std::runtime_error {
    std::optional<std::size_t> sample;
    SimulationError(const std::string& what, std::optional<std::size_t> at = std::nullopt)
        : std::runtime_error(at ? what + " at sample " + std::to_string(*at) : what), sample(at) {}
};
struct WorkspaceError : SimulationError { using SimulationError::SimulationError; };
struct BranchError : SimulationError { using SimulationError::SimulationError; };
struct SingularError : SimulationError { using SimulationError::SimulationError; };

inline constexpr double kClosureTolerance = 1e-10;
inline constexpr double kBalanceTolerance = 1e-10;
inline constexpr double kOracleTolerance = 1e-9;
/// Roots farther than this from the unit circle are outside the workspace.
inline constexpr double kTorusTolerance = 1e-6;

struct Configuration {
    double theta1{0}, theta2{0}, theta3{0};
    cplx z1{1}, z2{1}, z3{1};
};

struct TrajectorySample {
    double t{0};
    Configuration config;
    double theta1_dot{0}, theta2_dot{0};
    cplx com;
    double H_form{0}, H_direct{0};
    double closure_residual{0};
};

struct VerificationSummary {
    double max_com_drift{0};
    double max_abs_H_form{0};
    double max_abs_H_direct{0};
    double max_rel_deviation{0};  // |H_form − H_direct| / max(1, max|H_direct|)
    std::size_t samples{0};
    std::string branch;
    double theta1_start{0}, theta1_end{0};
    std::vector<std::size_t> uncertainty_samples;

    [[nodiscard]] double max_abs_H() const { return std::max(max_abs_H_form, max_abs_H_direct); }
    [[nodiscard]] bool balanced(double tol = kBalanceTolerance) const {
        return max_com_drift <= tol && max_abs_H() <= tol;
    }
};

/// Double-precision view of a mechanism on one kinematic branch.
struct NumericModel {
    DesignParams<double> params;
    double G1{0}, G2{0}, G3{0}, M{0};
    cplx F1, F2, F3;
    LaurentD G, K1, K2, K3, K4;
    /// Polynomial whose zero set is the branch; G itself when irreducible.
    LaurentD branch_poly;
    /// The remaining mode components; meeting one marks an uncertainty configuration.
    std::vector<LaurentD> other_modes;
    bool reducible{false};
    std::string branch;        // full label, e.g. "II-A", or "A"/"B" for an irreducible G
    bool prefer_far_root{true};
};

namespace detail {

inline std::string branch_suffix(const std::string& label) {
    auto dash = label.find('-');
    return dash == std::string::npos ? label : label.substr(dash + 1);
}

}  // namespace detail

/// Builds the numeric model. Branch labels are mode letters ("A", "B", "C")
/// or full mode labels ("II-A"); for an irreducible G, "A" starts on the
/// assembly with z2 farthest from z1 and "B" on the nearer one.
template<RealField R>
NumericModel make_model(const DesignParams<R>& p, const std::string& branch, const DivisionOptions& opt = {}) {
    auto dp = derive(p);
    auto kc = classify_case(p);
    NumericModel m;
    m.params = convert<double>(p);
    m.G1 = real_traits<R>::to_double(dp.G1);
    m.G2 = real_traits<R>::to_double(dp.G2);
    m.G3 = real_traits<R>::to_double(dp.G3);
    m.M = real_traits<R>::to_double(dp.M);
    m.F1 = to_complex(dp.F1);
    m.F2 = to_complex(dp.F2);
    m.F3 = to_complex(dp.F3);
    auto G = geometric_constraint(dp);
    auto [K1, K2] = velocity_coefficients(dp);
    auto mf = momentum_form(dp);
    m.G = convert<double>(G);
    m.K1 = convert<double>(K1);
    m.K2 = convert<double>(K2);
    m.K3 = convert<double>(mf.K3());
    m.K4 = convert<double>(mf.K4());

    const std::string want = detail::branch_suffix(branch);
    if (kc == KinematicCase::Irreducible) {
        if (want != "A" && want != "B")
            throw BranchError("irreducible mechanisms have assembly branches A and B, not '" + branch + "'");
        m.branch_poly = m.G;
        m.branch = want;
        m.prefer_far_root = want == "A";
        return m;
    }
    for (auto& comp : mode_factors(kc, dp, opt)) {
        if (detail::branch_suffix(comp.label) == want && !m.reducible) {
            m.branch_poly = convert<double>(comp.factor);
            m.branch = comp.label;
            m.reducible = true;
        } else {
            m.other_modes.push_back(convert<double>(comp.factor));
        }
    }
    if (!m.reducible) throw BranchError(std::string("no mode '") + branch + "' in " + to_string(kc));
    return m;
}

namespace detail {

/// Coefficients of p as a polynomial in z2 (lowest power first), at fixed z1.
inline std::vector<cplx> z2_coefficients(const LaurentD& p, cplx z1) {
    std::int64_t lo = p.begin()->first.e2, hi = lo;
    for (const auto& [e, c] : p) {
        lo = std::min(lo, e.e2);
        hi = std::max(hi, e.e2);
    }
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, c] : p) out[static_cast<std::size_t>(e.e2 - lo)] += to_complex(c) * std::pow(z1, double(e.e1));
    return out;
}

inline cplx eval_poly(const std::vector<cplx>& c, cplx z) {
    cplx v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

inline cplx eval_dpoly(const std::vector<cplx>& c, cplx z) {
    cplx v = 0;
    for (std::size_t k = c.size(); k-- > 1;) v = v * z + double(k) * c[k];
    return v;
}

inline double wrap_near(double angle, double reference) {
    constexpr double two_pi = 2 * std::numbers::pi;
    return angle + two_pi * std::round((reference - angle) / two_pi);
}

struct Roots {
    std::vector<cplx> on_torus;
    bool coincide{false};
};

inline Roots branch_roots(const NumericModel& m, cplx z1, std::optional<std::size_t> at) {
    auto c = z2_coefficients(m.branch_poly, z1);
    double scale = 0;
    for (auto& x : c) scale = std::max(scale, std::abs(x));
    std::vector<cplx> roots;
    if (c.size() == 1)
        throw BranchError("mode " + m.branch + " does not constrain z2; the input joint is locked", at);
    if (c.size() == 2) {
        if (std::abs(c[1]) <= 1e-14 * scale) throw BranchError("mode " + m.branch + " is degenerate here", at);
        roots.push_back(-c[0] / c[1]);
    } else if (c.size() == 3) {
        if (std::abs(c[2]) <= 1e-14 * scale) {
            if (std::abs(c[1]) <= 1e-14 * scale)
                throw BranchError("closure leaves z2 undetermined (uncertainty configuration)", at);
            roots.push_back(-c[0] / c[1]);
        } else {
            cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
            cplx qq = -0.5 * (c[1] + (std::real(std::conj(c[1]) * disc) >= 0 ? disc : -disc));
            roots.push_back(qq / c[2]);
            roots.push_back(std::abs(qq) > 0 ? c[0] / qq : qq / c[2]);
        }
    } else {
        throw BranchError("branch polynomial has unexpected degree in z2", at);
    }
    Roots out;
    for (auto r : roots) {
        if (std::abs(std::abs(r) - 1.0) > kTorusTolerance) continue;
        r /= std::abs(r);
        for (int it = 0; it < 3; ++it) {  // polish; the projection above keeps it on the torus
            cplx dv = eval_dpoly(c, r);
            if (std::abs(dv) <= 1e-8 * scale) break;
            r -= eval_poly(c, r) / dv;
            r /= std::abs(r);
        }
        out.on_torus.push_back(r);
    }
    if (out.on_torus.empty()) throw WorkspaceError("input angle outside the workspace of branch " + m.branch, at);
    if (roots.size() == 2 && std::abs(roots[0] - roots[1]) <= 1e-6) out.coincide = true;
    return out;
}

}  // namespace detail

/// Solves the closure at the given input angle. With `previous`, the root
/// nearest its z2 is taken; otherwise the branch's start rule applies.
inline Configuration solve_closure(const NumericModel& m, double theta1,
                                   const std::optional<Configuration>& previous = std::nullopt,
                                   std::optional<std::size_t> at = std::nullopt, bool* uncertainty = nullptr) {
    Configuration c;
    c.theta1 = theta1;
    c.z1 = std::polar(1.0, theta1);
    auto roots = detail::branch_roots(m, c.z1, at);
    if (uncertainty) *uncertainty = roots.coincide;
    const auto& rs = roots.on_torus;
    std::size_t pick = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
        if (previous) {
            if (std::abs(rs[i] - previous->z2) < std::abs(rs[pick] - previous->z2)) pick = i;
        } else {
            double di = std::abs(rs[i] - c.z1), dp = std::abs(rs[pick] - c.z1);
            if (m.prefer_far_root ? di > dp : di < dp) pick = i;
        }
    }
    c.z2 = rs[pick];
    cplx z3 = m.G1 * c.z1 + m.G2 * c.z2 + m.G3;
    if (std::abs(std::abs(z3) - 1.0) > 1e-6) throw WorkspaceError("closure not satisfied on branch " + m.branch, at);
    c.z3 = z3 / std::abs(z3);
    c.theta2 = std::arg(c.z2);
    c.theta3 = std::arg(c.z3);
    if (previous) {
        c.theta2 = detail::wrap_near(c.theta2, previous->theta2);
        c.theta3 = detail::wrap_near(c.theta3, previous->theta3);
    }
    return c;
}

/// |G(z1, z2)| at a configuration.
inline double closure_residual(const NumericModel& m, const Configuration& c) {
    return std::abs(m.G.evaluate(c.z1, c.z2));
}

/// θ̇2/θ̇1 = −K1/K2, which is real on the curve.
inline double velocity_ratio(const NumericModel& m, const Configuration& c, double* imag_residual = nullptr) {
    cplx k1 = m.K1.evaluate(c.z1, c.z2), k2 = m.K2.evaluate(c.z1, c.z2);
    double scale = std::max({1.0, std::abs(m.G1 * m.G2), std::abs(m.G1 * m.G3), std::abs(m.G2 * m.G3)});
    if (std::abs(k2) <= 1e-12 * scale) throw SingularError("K2 vanishes; the output rate is undetermined");
    cplx ratio = -k1 / k2;
    if (imag_residual) *imag_residual = std::abs(ratio.imag());
    return ratio.real();
}

/// θ̇2/θ̇1 from the branch component Gc: −(z1 ∂Gc/∂z1)/(z2 ∂Gc/∂z2). Unlike
/// −K1/K2 this stays defined where two modes cross.
inline double branch_velocity_ratio(const NumericModel& m, const Configuration& c) {
    cplx d1 = m.branch_poly.euler_derivative(1).evaluate(c.z1, c.z2);
    cplx d2 = m.branch_poly.euler_derivative(2).evaluate(c.z1, c.z2);
    if (std::abs(d2) <= 1e-12 * std::max(1.0, std::abs(d1)))
        throw SingularError("branch " + m.branch + " does not determine the output rate");
    return (-d1 / d2).real();
}

/// Angular momentum from the momentum form.
inline double momentum_from_form(const NumericModel& m, const Configuration& c, double rate1, double rate2) {
    return (m.K3.evaluate(c.z1, c.z2) * rate1 + m.K4.evaluate(c.z1, c.z2) * rate2).real();
}

/// Angular momentum summed body by body: m·(r × v) + I·θ̇ about the base pivot.
inline double momentum_direct(const NumericModel& m, const Configuration& c, double rate1, double rate2) {
    const auto& x = m.params;
    const cplx i(0, 1);
    auto cross = [](cplx r, cplx v) { return std::imag(std::conj(r) * v); };
    const double rate3 = ((m.G1 * c.z1 * rate1 + m.G2 * c.z2 * rate2) / c.z3).real();
    const cplx a1 = x.r[0] * to_complex(x.p[0]) * c.z1;
    const cplx a2 = x.r[1] * to_complex(x.p[1]) * c.z2;
    const cplx a3 = x.r[2] * to_complex(x.p[2]) * c.z3;
    const cplx pos1 = a1, vel1 = i * a1 * rate1;
    const cplx pos2 = x.d + a2, vel2 = i * a2 * rate2;
    const cplx pos3 = x.l1 * c.z1 + a3, vel3 = i * (x.l1 * c.z1 * rate1 + a3 * rate3);
    return x.m[0] * cross(pos1, vel1) + x.I[0] * rate1 + x.m[1] * cross(pos2, vel2) + x.I[1] * rate2 +
           x.m[2] * cross(pos3, vel3) + x.I[2] * rate3;
}

inline cplx centre_of_mass(const NumericModel& m, const Configuration& c) {
    return (m.F1 * c.z1 + m.F2 * c.z2 + m.F3) / m.M;
}

/// Input rate θ̇1 as a function of (θ1, sample index).
using RateProfile = std::function<double(double, std::size_t)>;

inline RateProfile constant_rate(double rate = 1.0) {
    return [rate](double, std::size_t) { return rate; };
}

/// Seeded piecewise rates in [0.5, 1.5); reproducible for a given seed.
inline RateProfile random_rate(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 engine(seed);
    auto rates = std::make_shared<std::vector<double>>(n);
    for (auto& r : *rates) r = 0.5 + double(engine() >> 11) * 0x1.0p-53;
    return [rates](double, std::size_t k) { return (*rates)[k % rates->size()]; };
}

inline std::vector<TrajectorySample> trajectory(const NumericModel& m, double theta1_start, double theta1_end,
                                                std::size_t n, const RateProfile& rate = constant_rate(),
                                                std::vector<std::size_t>* uncertainty = nullptr) {
    if (n < 2) throw std::invalid_argument("a trajectory needs at least 2 samples");
    std::vector<TrajectorySample> out;
    out.reserve(n);
    const double step = (theta1_end - theta1_start) / double(n - 1);
    std::optional<Configuration> prev, prev2;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta1 = theta1_start + step * double(k);
        std::optional<Configuration> guess = prev;
        if (prev && prev2) {  // extrapolate so crossing roots are followed
            guess->z2 = prev->z2 * (prev->z2 / prev2->z2);
            guess->z2 /= std::abs(guess->z2);
        }
        bool coincide = false;
        TrajectorySample s;
        s.config = solve_closure(m, theta1, guess, k, &coincide);
        if (prev) {
            s.config.theta2 = detail::wrap_near(s.config.theta2, prev->theta2);
            s.config.theta3 = detail::wrap_near(s.config.theta3, prev->theta3);
        }
        for (const auto& other : m.other_modes)
            coincide = coincide || std::abs(other.evaluate(s.config.z1, s.config.z2)) <= 1e-9 * std::max(1.0, other.max_coeff_magnitude());
        if (coincide && uncertainty) uncertainty->push_back(k);
        s.theta1_dot = rate(theta1, k);
        double ratio;
        try {
            ratio = m.reducible ? branch_velocity_ratio(m, s.config) : velocity_ratio(m, s.config);
        } catch (const SingularError& e) {
            throw SingularError(e.what(), k);
        }
        s.theta2_dot = ratio * s.theta1_dot;
        if (k > 0) {
            double avg = 0.5 * (out.back().theta1_dot + s.theta1_dot);
            s.t = out.back().t + (avg > 0 ? std::abs(step) / avg : 0.0);
        }
        s.com = centre_of_mass(m, s.config);
        s.H_form = momentum_from_form(m, s.config, s.theta1_dot, s.theta2_dot);
        s.H_direct = momentum_direct(m, s.config, s.theta1_dot, s.theta2_dot);
        s.closure_residual = closure_residual(m, s.config);
        prev2 = prev;
        prev = s.config;
        out.push_back(s);
    }
    return out;
}

/// Input arc traversed by default: a full turn when the branch admits one,
/// otherwise the longest workspace arc, pulled in slightly from its dead
/// points where the output rate diverges.
struct Arc {
    double start{0}, end{2 * std::numbers::pi};
    bool full_turn{true};
};

inline Arc workspace_arc(const NumericModel& m, std::size_t grid = 4096, double margin = 1e-3) {
    constexpr double two_pi = 2 * std::numbers::pi;
    auto ok = [&](double th) {
        try {
            detail::branch_roots(m, std::polar(1.0, th), std::nullopt);
            return true;
        } catch (const WorkspaceError&) {
            return false;
        }
    };
    std::vector<char> inside(grid);
    bool all = true, any = false;
    for (std::size_t k = 0; k < grid; ++k) {
        inside[k] = ok(two_pi * double(k) / double(grid));
        all = all && inside[k];
        any = any || inside[k];
    }
    if (all) return {};
    if (!any) throw WorkspaceError("branch " + m.branch + " has no workspace");
    // Longest circular run of inside samples.
    std::size_t best_len = 0, best_start = 0;
    for (std::size_t k = 0; k < grid; ++k) {
        if (!inside[k] || inside[(k + grid - 1) % grid]) continue;
        std::size_t len = 0;
        while (len < grid && inside[(k + len) % grid]) ++len;
        if (len > best_len) best_len = len, best_start = k;
    }
    const double h = two_pi / double(grid);
    auto refine = [&](double in, double out) {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (in + out);
            (ok(mid) ? in : out) = mid;
        }
        return in;
    };
    double a = refine(double(best_start) * h, double(best_start) * h - h);
    double b = refine(double(best_start + best_len - 1) * h, double(best_start + best_len) * h);
    double pad = margin * (b - a);
    return {a + pad, b - pad, false};
}

inline VerificationSummary summarize(const std::vector<TrajectorySample>& samples, const std::string& branch) {
    VerificationSummary s;
    s.samples = samples.size();
    s.branch = branch;
    if (samples.empty()) return s;
    s.theta1_start = samples.front().config.theta1;
    s.theta1_end = samples.back().config.theta1;
    double max_direct = 0, max_dev = 0;
    for (const auto& x : samples) {
        s.max_com_drift = std::max(s.max_com_drift, std::abs(x.com - samples.front().com));
        s.max_abs_H_form = std::max(s.max_abs_H_form, std::abs(x.H_form));
        s.max_abs_H_direct = std::max(s.max_abs_H_direct, std::abs(x.H_direct));
        max_direct = std::max(max_direct, std::abs(x.H_direct));
        max_dev = std::max(max_dev, std::abs(x.H_form - x.H_direct));
    }
    s.max_rel_deviation = max_dev / std::max(1.0, max_direct);
    return s;
}

/// Runs the default trajectory (constant unit rate unless given) over the
/// branch's workspace arc and aggregates the balance diagnostics.
inline VerificationSummary verify_balanced(const NumericModel& m, std::size_t n,
                                           const RateProfile& rate = constant_rate(),
                                           std::vector<TrajectorySample>* samples_out = nullptr) {
    auto arc = workspace_arc(m);
    std::vector<std::size_t> uncertainty;
    auto samples = trajectory(m, arc.start, arc.end, n, rate, &uncertainty);
    auto s = summarize(samples, m.branch);
    s.uncertainty_samples = std::move(uncertainty);
    if (samples_out) *samples_out = std::move(samples);
    return s;
}

}  // namespace fourbar
