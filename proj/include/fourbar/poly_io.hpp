#pragma once

// Plain-text polynomial format: one term per line, `e1 e2 re im`, with
// rationals written p/q (or integers). `#` starts a comment.

#include "fourbar/laurent.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fourbar {

template<RealField R>
LaurentPoly<R> read_poly(std::istream& in, const std::string& source = "<input>") {
    LaurentPoly<R> p;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string e1, e2, re, im, extra;
        if (!(fields >> e1)) continue;
        auto fail = [&](const std::string& why) {
            throw ParseError(source + ":" + std::to_string(lineno) + ": " + why);
        };
        if (!(fields >> e2 >> re >> im)) fail("expected `e1 e2 re im`");
        if (fields >> extra) fail("trailing field '" + extra + "'");
        Exponent e;
        try {
            std::size_t n1 = 0, n2 = 0;
            e.e1 = std::stoll(e1, &n1);
            e.e2 = std::stoll(e2, &n2);
            if (n1 != e1.size() || n2 != e2.size()) fail("exponents must be integers");
        } catch (const std::logic_error&) {
            fail("exponents must be integers");
        }
        try {
            p.add_term(e, {real_traits<R>::parse(re), real_traits<R>::parse(im)});
        } catch (const ParseError& err) {
            fail(err.what());
        }
    }
    return p;
}

template<RealField R>
LaurentPoly<R> parse_poly(const std::string& text) {
    std::istringstream in(text);
    return read_poly<R>(in);
}

template<RealField R>
void write_poly(std::ostream& out, const LaurentPoly<R>& p) {
    using T = real_traits<R>;
    for (const auto& [e, c] : p)
        out << e.e1 << ' ' << e.e2 << ' ' << T::to_string(c.re) << ' ' << T::to_string(c.im) << '\n';
}

}  // namespace fourbar
