// Acceptance run: one PASS/FAIL line per criterion, each with its own
// runtime budget. Exits nonzero if any criterion fails.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace fourbar;
using oracle::GQ;
using oracle::rat;

namespace {

struct Outcome {
    bool ok{true};
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

DesignParams<Rational> table2a() { return load_params<Rational>(FOURBAR_DATA_DIR "/table2a.json"); }

LaurentQ term(Exponent e, GQ c) { return LaurentQ::monomial(e, std::move(c)); }

GQ nonzero_gauss(oracle::Random& rng) {
    for (;;) {
        GQ g = rng.gauss();
        if (!g.is_zero()) return g;
    }
}

LaurentQ nonzero_laurent(oracle::Random& rng, int terms, int lo, int hi) {
    for (;;) {
        auto p = rng.laurent(terms, lo, hi);
        if (!p.is_zero()) return p;
    }
}

bool exact_balance(const DesignParams<Rational>& p, const std::string& label) {
    auto rep = check_balance(p);
    const auto* m = rep.mode(label);
    return m && m->static_ok && m->dynamic_ok && m->static_remainder.is_zero() && m->dynamic_remainder.is_zero();
}

/// True when some ±l1 ± l2 ± l3 ± d vanishes: the real closure curve then has
/// a singular point (change point or collapsed workspace) where the output
/// rate is undetermined.
bool singular_lengths(const DesignParams<Rational>& p) {
    for (int s = 0; s < 8; ++s) {
        const Rational sum = p.l1 + (s & 1 ? -p.l2 : p.l2) + (s & 2 ? -p.l3 : p.l3) + (s & 4 ? -p.d : p.d);
        if (sum == 0) return true;
    }
    return false;
}

Outcome division_example() {
    Outcome o;
    oracle::Random rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        GQ c02 = rng.gauss(), c11 = rng.gauss(), c01 = rng.gauss(), c10 = rng.gauss(), c00 = rng.gauss();
        GQ d01 = nonzero_gauss(rng), d10 = rng.gauss(), d00 = rng.gauss();
        auto f = term({0, 2}, c02) + term({1, 1}, c11) + term({0, 1}, c01) + term({1, 0}, c10) + term({0, 0}, c00);
        auto g = term({0, 1}, d01) + term({1, 0}, d10) + term({0, 0}, d00);
        const GQ A = c01 - c02 * d00 / d01;
        auto expected = term({1, 1}, c11 - c02 * d10 / d01) + term({1, 0}, c10 - A * d10 / d01) +
                        term({0, 0}, c00 - A * d00 / d01);
        o.require(toric_divide(f, g).remainder == expected, "remainder differs at trial " + std::to_string(trial));
    }
    o.detail = o.ok ? "20 symbolic assignments, exact remainder" : o.detail;
    return o;
}

Outcome ostrowski() {
    Outcome o;
    oracle::Random rng(102);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = nonzero_laurent(rng, 8, -5, 5), b = nonzero_laurent(rng, 8, -5, 5);
        o.require(newton_polygon(a * b) == minkowski_sum(newton_polygon(a), newton_polygon(b)),
                  "NP(ab) != NP(a) + NP(b) at pair " + std::to_string(trial));
    }
    o.detail = o.ok ? "200 pairs, exact vertex equality" : o.detail;
    return o;
}

Outcome division_soundness() {
    Outcome o;
    oracle::Random rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        auto Q = nonzero_laurent(rng, 6, -4, 4), g = nonzero_laurent(rng, 5, -3, 3);
        auto qr = toric_divide(Q * g, g);
        o.require(qr.remainder.is_zero() && qr.quotient == Q, "multiple " + std::to_string(trial) + " not recovered");
    }
    int confirmed = 0, draws = 0;
    while (confirmed < 50 && draws < 1000) {
        ++draws;
        auto g = nonzero_laurent(rng, 4, -2, 2);
        auto f = rng.laurent(4, -2, 2) * g + term({rng.integer(-2, 2), rng.integer(-2, 2)}, nonzero_gauss(rng));
        if (f.is_zero() || oracle::exact_cofactor(f, g)) continue;  // oracle says it is a multiple after all
        o.require(!toric_divide(f, g).remainder.is_zero(), "zero remainder for a non-multiple");
        ++confirmed;
    }
    o.require(confirmed == 50, "only " + std::to_string(confirmed) + " oracle-confirmed non-multiples drawn");
    if (o.ok) o.detail = "200 multiples with zero remainder, 50 oracle-confirmed non-multiples with nonzero remainder";
    return o;
}

Outcome table_end_to_end() {
    Outcome o;
    const auto p = table2a();
    const auto dp = derive(p);
    o.require(dp.q[0] == GQ(rat(-3, 2)) && dp.q[1] == GQ(rat(-1, 2)), "q1, q2 differ from -3/2, -1/2");
    o.require(dp.J[0] == rat(3) && dp.J[1] == rat(4), "J1, J2 differ from 3, 4");
    o.require(check_balance(p).kinematic_case == KinematicCase::CaseII, "not classified as case II");
    o.require(exact_balance(p, "II-A"), "check does not report II-A balanced with zero remainders");
    auto m = make_model(p, "A");
    o.require(workspace_arc(m).full_turn, "branch A is not a full revolution");
    std::ostringstream diag;
    for (const auto& [name, rate] : {std::pair{"constant", constant_rate()}, {"random", random_rate(2024, 720)}}) {
        auto s = verify_balanced(m, 720, rate);
        o.require(s.samples == 720, "wrong sample count");
        o.require(s.max_com_drift <= 1e-10, std::string(name) + " rate: COM drift above 1e-10");
        o.require(s.max_abs_H_form <= 1e-10 && s.max_abs_H_direct <= 1e-10,
                  std::string(name) + " rate: |H| above 1e-10");
        diag << name << " drift " << s.max_com_drift << " |H| " << s.max_abs_H() << "; ";
    }
    if (o.ok) o.detail = diag.str() + "720 samples";
    return o;
}

Outcome feasibility_bound() {
    Outcome o;
    using Synth = DesignParams<Rational> (*)(const Rational&, const Rational&, const SynthesisChoices&, std::uint64_t);
    const std::pair<const char*, Synth> cases[] = {{"II-A", synthesize_case_IIA}, {"IV-A", synthesize_case_IVA}};
    for (const auto& [label, synth] : cases) {
        const std::string tag(label);
        // (10d)² − 2(10l)² = ∓1: d² = 2l² − 1/100 and d² = 2l² + 1/100 exactly.
        bool below_rejected = false;
        try {
            synth(rat(1, 2), rat(7, 10), {}, 0);
        } catch (const InfeasibleError&) {
            below_rejected = true;
        }
        o.require(below_rejected, tag + ": accepted d^2 = 2l^2 - 1/100");
        try {
            o.require(exact_balance(synth(rat(6, 5), rat(17, 10), {}, 0), tag), tag + ": d^2 = 2l^2 + 1/100 fails check");
        } catch (const InfeasibleError&) {
            o.require(false, tag + ": rejected d^2 = 2l^2 + 1/100");
        }
        oracle::Random rng(105);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Rational l = rng.positive_rational(5, 4);
            const Rational d = l * rat(3, 2) + rng.positive_rational(4, 4);
            try {
                o.require(exact_balance(synth(l, d, {}, seed), tag), tag + ": seeded design fails check");
            } catch (const InfeasibleError&) {
                o.require(false, tag + ": rejected a pair above the bound");
            }
        }
    }
    if (o.ok) o.detail = "Pell pairs bracket the bound; 20 seeded designs per case pass check";
    return o;
}

Outcome witnesses() {
    Outcome o;
    oracle::Random rng(106);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = oracle::random_generic_design(rng);
        auto dp = derive(p);
        o.require(!check_balance(p).dynamically_balanced(), "a generic design was reported balanced");
        auto mf = momentum_form(dp);
        o.require(mf.w * GQ(p.l3 * p.l3) == GQ(p.l2 * p.l2 * dp.J[2] + p.l3 * p.l3 * dp.J[1]),
                  "w l3^2 != l2^2 J3 + l3^2 J2");
    }
    // The multiple is fixed once from the geometric oracle: the mean momentum
    // of the parallelogram motion over one turn at unit rate.
    std::optional<Rational> multiple;
    double measured = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto p = oracle::random_parallelogram_design(rng);
        auto dp = derive(p);
        auto mf = momentum_form(dp);
        const GQ middle = mf.b1 + mf.b2 + mf.c + mf.v1 + mf.v2 + mf.w;
        const Rational witness = dp.J[0] + p.l2 * p.l2 * p.m[2] + dp.J[1];
        if (!multiple) {
            measured = oracle::mean_momentum(oracle::Linkage::from(p), [](double t) { return std::tuple{t, t, 0.0}; }) /
                       witness.get_d();
            multiple = rat(std::lround(measured));
            o.require(std::abs(measured - multiple->get_d()) < 1e-6 && *multiple > 0, "oracle multiple not a positive integer");
        }
        o.require(middle == GQ(*multiple * witness), "mode-B middle coefficient is not the fixed multiple");
        o.require(!exact_balance(p, "II-B"), "mode B reported balanced");
    }
    if (o.ok) {
        std::ostringstream s;
        s << "100 generic unbalanced, w identity exact; mode-B multiple " << *multiple << " (oracle " << measured << ")";
        o.detail = s.str();
    }
    return o;
}

Outcome mode_factorization() {
    Outcome o;
    using P = LaurentQ;
    const P z1 = P::z1(), z2 = P::z2(), one(GQ(1));
    const std::pair<KinematicCase, std::vector<P>> expected[] = {
        {KinematicCase::CaseII, {z1 - z2}},
        {KinematicCase::CaseIII, {z1 - one}},
        {KinematicCase::CaseIV, {z2 + one}},
        {KinematicCase::CaseV, {z1 - z2, z1 - one, z2 + one}}};
    oracle::Random rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        for (const auto& [kc, want] : expected) {
            const std::string tag = to_string(kc);
            auto p = oracle::random_case_design(rng, kc);
            auto dp = derive(p);
            auto G = geometric_constraint(dp);
            std::vector<P> linear;
            for (const auto& m : mode_factors(kc, dp)) {
                auto qr = toric_divide(G, m.factor);
                o.require(qr.remainder.is_zero(), tag + ": nonzero remainder for " + m.label);
                o.require(minkowski_sum(newton_polygon(m.factor), newton_polygon(qr.quotient)) == newton_polygon(G),
                          tag + ": Minkowski additivity fails for " + m.label);
                if (m.linear) linear.push_back(m.factor);
            }
            o.require(linear.size() == want.size(), tag + ": wrong number of linear factors");
            for (const auto& w : want) {
                bool found = false;
                for (const auto& f : linear) found = found || oracle::same_up_to_unit(f, w);
                o.require(found, tag + ": missing linear factor");
            }
        }
    }
    if (o.ok) o.detail = "cases II-V, 10 designs each: factor sets exact, zero remainders, NP additive";
    return o;
}

Outcome oracle_cross_check() {
    Outcome o;
    oracle::Random rng(108);
    std::vector<std::pair<DesignParams<Rational>, std::string>> mechanisms;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        mechanisms.emplace_back(synthesize_case_IIA(rat(1), rat(2) + rng.positive_rational(3, 4), {}, seed), "A");
        mechanisms.emplace_back(synthesize_case_IVA(rat(1), rat(2) + rng.positive_rational(3, 4), {}, seed), "A");
    }
    for (int i = 0; i < 5; ++i) mechanisms.emplace_back(oracle::random_parallelogram_design(rng), i % 2 ? "A" : "B");
    while (mechanisms.size() < 20) {
        auto p = oracle::random_generic_design(rng);
        if (!singular_lengths(p)) mechanisms.emplace_back(p, mechanisms.size() % 2 ? "A" : "B");
    }

    double worst_h = 0, worst_ratio = 0;
    const double h = 1e-6;
    for (const auto& [p, branch] : mechanisms) {
        auto m = make_model(p, branch);
        auto arc = workspace_arc(m);
        auto samples = trajectory(m, arc.start, arc.end, 360);
        for (const auto& s : samples) {
            double dev = std::abs(s.H_form - s.H_direct) / std::max(1.0, std::abs(s.H_direct));
            worst_h = std::max(worst_h, dev);
            o.require(dev <= 1e-9, "H_form and H_direct disagree");
            const double ratio = s.theta2_dot / s.theta1_dot;
            auto cp = solve_closure(m, s.config.theta1 + h, s.config);
            auto cm = solve_closure(m, s.config.theta1 - h, s.config);
            double err = std::abs(ratio - (cp.theta2 - cm.theta2) / (2 * h)) / (1 + std::abs(ratio));
            worst_ratio = std::max(worst_ratio, err);
            o.require(err <= 1e-6, "velocity ratio differs from the finite-difference slope");
        }
    }
    std::ostringstream s;
    s << mechanisms.size() << " mechanisms x 360 samples; max H deviation " << worst_h << ", max slope error "
      << worst_ratio;
    o.detail = o.ok ? s.str() : o.detail + " (" + s.str() + ")";
    return o;
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "division example reproduction", 1.0, division_example},
        {2, "Newton polygon of a product is the Minkowski sum", 5.0, ostrowski},
        {3, "division soundness and completeness", 10.0, division_soundness},
        {4, "reference design end to end", 1.0, table_end_to_end},
        {5, "synthesis feasibility bound", 5.0, feasibility_bound},
        {6, "impossibility witnesses", 10.0, witnesses},
        {7, "mode factorization", 2.0, mode_factorization},
        {8, "momentum and velocity oracle cross-check", 5.0, oracle_cross_check},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.budget_seconds) o = {false, "over the time budget; " + o.detail};
        failures += !o.ok;
        std::printf("%s %d %s (%.3f s, budget %.0f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget_seconds, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
