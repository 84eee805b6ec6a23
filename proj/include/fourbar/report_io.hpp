#pragma once

// Human-readable and JSON renderings of classification, balance reports and
// trajectory summaries.

#include "fourbar/balance.hpp"
#include "fourbar/trajectory.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

namespace fourbar {

namespace detail {

inline std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// Compact infix form, e.g. "z1 - z2" or "1/4*z1 - 1/4*z2 + z1*z2 - 1".
template<RealField R>
std::string pretty(const LaurentPoly<R>& p) {
    using T = real_traits<R>;
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        auto var = [&](const char* name, std::int64_t k) {
            if (k == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (k != 1) mono += "^" + std::to_string(k);
        };
        var("z1", e.e1);
        var("z2", e.e2);
        bool negative = false;
        std::string coef;
        if (T::is_zero(c.im)) {
            negative = T::sign(c.re) < 0;
            R mag = negative ? R(-c.re) : c.re;
            if (!(mag == T::from_int(1)) || mono.empty()) coef = T::to_string(mag);
        } else {
            std::ostringstream cs;
            cs << '(' << c << ')';
            coef = cs.str();
        }
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        os << coef << (!coef.empty() && !mono.empty() ? "*" : "") << mono;
    }
    return os.str();
}

/// "CaseII; modes: A (cofactor), B (z1 - z2)" style summary.
template<RealField R>
std::string classification_line(KinematicCase kc, const std::vector<ModeComponent<R>>& modes) {
    std::string out = to_string(kc);
    if (kc == KinematicCase::Irreducible) return out;
    out += "; modes:";
    bool first = true;
    for (const auto& m : modes) {
        out += first ? " " : ", ";
        first = false;
        out += detail::branch_suffix(m.label) + " (" + (m.linear ? pretty(m.factor) : std::string("cofactor")) + ")";
    }
    return out;
}

template<RealField R>
void write_classification(std::ostream& os, KinematicCase kc, const std::vector<ModeComponent<R>>& modes) {
    os << classification_line(kc, modes) << "\n";
    for (const auto& m : modes)
        os << "mode " << m.label << ": " << pretty(m.factor) << " = 0   [" << m.constraint << "]\n";
}

template<RealField R>
const char* kind_name(typename ResidualEntry<R>::Kind k) {
    using K = typename ResidualEntry<R>::Kind;
    return k == K::Equality ? "equality" : k == K::Slack ? "slack" : "witness";
}

template<RealField R>
void write_report(std::ostream& os, const BalanceReport<R>& r) {
    os << "case: " << to_string(r.kinematic_case) << "\n";
    os << "direction: (" << r.h.alpha << ", " << r.h.beta << ")\n";
    for (const auto& m : r.modes) {
        os << "mode " << m.component.label << ": " << pretty(m.component.factor) << " = 0   ["
           << m.component.constraint << "]\n";
        os << "  static: " << (m.static_ok ? "balanced" : "not balanced") << "  (C' = " << m.com_constant << ")\n";
        os << "  static remainder: " << pretty(m.static_remainder) << "\n";
        os << "  dynamic: " << (m.dynamic_ok ? "balanced" : "not balanced") << "\n";
        os << "  dynamic remainder: " << pretty(m.dynamic_remainder) << "\n";
    }
    for (const auto& c : r.closed_form) {
        os << "conditions " << c.mode << ": " << (c.feasible ? "satisfied" : "violated") << "\n";
        if (!c.note.empty()) os << "  note: " << c.note << "\n";
        for (const auto& e : c.entries)
            os << "  " << kind_name<R>(e.kind) << " " << e.name << " = " << e.value << (e.satisfied ? "  ok" : "  FAIL")
               << "\n";
    }
    std::string balanced;
    for (const auto& m : r.modes)
        if (m.dynamic_ok) balanced += (balanced.empty() ? "" : ", ") + m.component.label;
    os << "verdict: " << (balanced.empty() ? "not dynamically balanced" : "dynamically balanced in " + balanced)
       << "\n";
}

template<RealField R>
nlohmann::ordered_json report_to_json(const BalanceReport<R>& r) {
    auto str = [](const auto& x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    nlohmann::ordered_json j;
    j["case"] = to_string(r.kinematic_case);
    j["direction"] = {r.h.alpha, r.h.beta};
    j["dynamically_balanced"] = r.dynamically_balanced();
    j["statically_balanced"] = r.statically_balanced();
    auto& modes = j["modes"] = nlohmann::ordered_json::array();
    for (const auto& m : r.modes) {
        nlohmann::ordered_json e;
        e["label"] = m.component.label;
        e["factor"] = pretty(m.component.factor);
        e["constraint"] = m.component.constraint;
        e["static"] = m.static_ok;
        e["dynamic"] = m.dynamic_ok;
        e["com_constant"] = str(m.com_constant);
        e["static_remainder"] = pretty(m.static_remainder);
        e["dynamic_remainder"] = pretty(m.dynamic_remainder);
        modes.push_back(std::move(e));
    }
    auto& cf = j["conditions"] = nlohmann::ordered_json::array();
    for (const auto& c : r.closed_form) {
        nlohmann::ordered_json e;
        e["mode"] = c.mode;
        e["satisfied"] = c.feasible;
        if (!c.note.empty()) e["note"] = c.note;
        auto& entries = e["entries"] = nlohmann::ordered_json::array();
        for (const auto& x : c.entries)
            entries.push_back({{"kind", kind_name<R>(x.kind)}, {"name", x.name}, {"value", str(x.value)}, {"ok", x.satisfied}});
        cf.push_back(std::move(e));
    }
    return j;
}

inline void write_summary(std::ostream& os, const VerificationSummary& s) {
    os << "branch: " << s.branch << "\n"
       << "samples: " << s.samples << "\n"
       << "theta1: " << detail::fmt_double(s.theta1_start) << " .. " << detail::fmt_double(s.theta1_end) << "\n"
       << "max_com_drift: " << detail::fmt_double(s.max_com_drift) << "\n"
       << "max_abs_H_form: " << detail::fmt_double(s.max_abs_H_form) << "\n"
       << "max_abs_H_direct: " << detail::fmt_double(s.max_abs_H_direct) << "\n"
       << "max_rel_deviation: " << detail::fmt_double(s.max_rel_deviation) << "\n";
    os << "uncertainty_samples:";
    for (auto k : s.uncertainty_samples) os << " " << k;
    os << (s.uncertainty_samples.empty() ? " none" : "") << "\n";
    os << "verdict: " << (s.balanced() ? "balanced" : "not balanced") << "\n";
}

inline void write_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
    os << "t,theta1,theta2,theta3,com_re,com_im,H_form,H_direct,closure_residual\n";
    using detail::fmt_double;
    for (const auto& s : samples)
        os << fmt_double(s.t) << ',' << fmt_double(s.config.theta1) << ',' << fmt_double(s.config.theta2) << ','
           << fmt_double(s.config.theta3) << ',' << fmt_double(s.com.real()) << ',' << fmt_double(s.com.imag()) << ','
           << fmt_double(s.H_form) << ',' << fmt_double(s.H_direct) << ',' << fmt_double(s.closure_residual) << '\n';
}

}  // namespace fourbar
