#pragma once

// Design-parameter files: a JSON object with keys l1 l2 l3 d m1 m2 m3 r1 r2 r3
// I1 I2 I3 holding rational strings ("p/q" or integers) and p1 p2 p3 holding
// two-element arrays [re, im]. Approximate parsing also accepts JSON numbers.

#include "fourbar/mechanism.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <string>

namespace fourbar {

namespace detail {

template<RealField R>
R json_real(const nlohmann::json& j, const std::string& key) {
    if (j.is_string()) {
        try {
            return real_traits<R>::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError("key '" + key + "': " + e.what());
        }
    }
    if (j.is_number_integer()) return R(j.get<long>());
    if (j.is_number_float()) {
        if constexpr (real_traits<R>::exact)
            throw ParseError("key '" + key + "': floating-point value requires --approx");
        else return j.get<double>();
    }
    throw ParseError("key '" + key + "': expected a rational string or number");
}

}  // namespace detail

template<RealField R>
DesignParams<R> params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("parameter file must hold a JSON object");
    auto field = [&](const std::string& key) -> const nlohmann::json& {
        if (!j.contains(key)) throw ParseError("missing key '" + key + "'");
        return j.at(key);
    };
    DesignParams<R> dp;
    dp.l1 = detail::json_real<R>(field("l1"), "l1");
    dp.l2 = detail::json_real<R>(field("l2"), "l2");
    dp.l3 = detail::json_real<R>(field("l3"), "l3");
    dp.d = detail::json_real<R>(field("d"), "d");
    for (int i = 0; i < 3; ++i) {
        auto n = std::to_string(i + 1);
        dp.m[i] = detail::json_real<R>(field("m" + n), "m" + n);
        dp.r[i] = detail::json_real<R>(field("r" + n), "r" + n);
        dp.I[i] = detail::json_real<R>(field("I" + n), "I" + n);
        const auto& p = field("p" + n);
        if (!p.is_array() || p.size() != 2) throw ParseError("key 'p" + n + "': expected [re, im]");
        dp.p[i] = {detail::json_real<R>(p[0], "p" + n), detail::json_real<R>(p[1], "p" + n)};
    }
    return dp;
}

template<RealField R>
nlohmann::ordered_json params_to_json(const DesignParams<R>& dp) {
    using T = real_traits<R>;
    nlohmann::ordered_json j;
    j["l1"] = T::to_string(dp.l1);
    j["l2"] = T::to_string(dp.l2);
    j["l3"] = T::to_string(dp.l3);
    j["d"] = T::to_string(dp.d);
    for (int i = 0; i < 3; ++i) j["m" + std::to_string(i + 1)] = T::to_string(dp.m[i]);
    for (int i = 0; i < 3; ++i) j["r" + std::to_string(i + 1)] = T::to_string(dp.r[i]);
    for (int i = 0; i < 3; ++i)
        j["p" + std::to_string(i + 1)] = {T::to_string(dp.p[i].re), T::to_string(dp.p[i].im)};
    for (int i = 0; i < 3; ++i) j["I" + std::to_string(i + 1)] = T::to_string(dp.I[i]);
    return j;
}

template<RealField R>
DesignParams<R> read_params(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return params_from_json<R>(j);
}

template<RealField R>
DesignParams<R> load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_params<R>(in);
}

}  // namespace fourbar
