#pragma once

/**
 * @file scalar.hpp
 * @brief Real fields and their complex extension.
 *
 * Two real fields are supported: GMP rationals (exact) and double
 * (approximate). `Gauss<R>` is the complex extension R[i]; for R = mpq_class
 * these are the Gaussian rationals every exact computation runs on.
 */

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fourbar {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template<typename R>
struct real_traits;

template<>
struct real_traits<Rational> {
    static constexpr bool exact = true;

    /// Accepts `p/q`, `p` or a terminating decimal such as `-1.25`.
    static Rational parse(std::string_view text) {
        std::string s(text);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        std::size_t b = 0;
        while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        s = s.substr(b);
        if (s.empty()) throw ParseError("empty rational");
        if (s.find_first_of("eE") != std::string::npos)
            throw ParseError("exponent notation is not an exact rational: '" + s + "'");
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw ParseError("malformed rational: '" + s + "'");
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t scale = s.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed rational: '" + s + "'");
            return parse(digits) / Rational(mpz_class("1" + std::string(scale, '0')));
        }
        if (s.front() == '+') s = s.substr(1);
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0);
            if (!ok) throw ParseError("malformed rational: '" + std::string(text) + "'");
        }
        Rational q;
        if (q.set_str(s, 10) != 0) throw ParseError("malformed rational: '" + std::string(text) + "'");
        if (q.get_den() == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
        q.canonicalize();
        return q;
    }
    static std::string to_string(const Rational& x) { return x.get_str(); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational from_int(long v) { return Rational(v); }
    static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
    static int sign(const Rational& x) { return sgn(x); }
};

template<>
struct real_traits<double> {
    static constexpr bool exact = false;

    static double parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str()) throw ParseError("malformed number: '" + s + "'");
        while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
        if (*end != '\0') throw ParseError("malformed number: '" + s + "'");
        return v;
    }
    static std::string to_string(double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static double to_double(double x) { return x; }
    static double from_int(long v) { return static_cast<double>(v); }
    static bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }
    static double magnitude(double x) { return std::abs(x); }
    static int sign(double x) { return (x > 0) - (x < 0); }
};

template<typename R>
concept RealField = requires { real_traits<R>::exact; };

/// Complex number re + i·im over a real field R.
template<RealField R>
struct Gauss {
    R re{0};
    R im{0};

    Gauss() = default;
    Gauss(R r) : re(std::move(r)), im(0) {}  // NOLINT: implicit lift from the real field
    Gauss(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Gauss(int r) : re(r), im(0) {}  // NOLINT

    friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gauss operator/(const Gauss& a, const Gauss& b) {
        R n = b.re * b.re + b.im * b.im;
        if (real_traits<R>::is_zero(n)) throw std::domain_error("division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Gauss& operator+=(const Gauss& b) { re += b.re; im += b.im; return *this; }
    Gauss& operator-=(const Gauss& b) { re -= b.re; im -= b.im; return *this; }
    Gauss& operator*=(const Gauss& b) { return *this = *this * b; }
    Gauss& operator/=(const Gauss& b) { return *this = *this / b; }

    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }

    [[nodiscard]] bool is_zero(double tol = 0.0) const {
        if constexpr (real_traits<R>::exact) return sgn(re) == 0 && sgn(im) == 0;
        else return std::hypot(re, im) <= tol;
    }
    [[nodiscard]] bool is_real() const { return real_traits<R>::is_zero(im); }
};

using GaussRational = Gauss<Rational>;
using GaussDouble = Gauss<double>;

template<RealField R>
Gauss<R> conj(const Gauss<R>& z) { return {z.re, -z.im}; }

template<RealField R>
R norm2(const Gauss<R>& z) { return z.re * z.re + z.im * z.im; }

template<RealField R>
double magnitude(const Gauss<R>& z) {
    return std::hypot(real_traits<R>::to_double(z.re), real_traits<R>::to_double(z.im));
}

template<RealField R>
std::complex<double> to_complex(const Gauss<R>& z) {
    return {real_traits<R>::to_double(z.re), real_traits<R>::to_double(z.im)};
}

template<RealField R>
std::ostream& operator<<(std::ostream& os, const Gauss<R>& z) {
    using T = real_traits<R>;
    os << T::to_string(z.re);
    if (!T::is_zero(z.im)) os << (T::sign(z.im) < 0 ? "" : "+") << T::to_string(z.im) << "i";
    return os;
}

/// Converts between real fields (exact -> double is lossy, double -> exact is the binary value).
template<RealField To, RealField From>
To convert_real(const From& x) {
    if constexpr (std::same_as<To, From>) return x;
    else if constexpr (std::same_as<To, double>) return real_traits<From>::to_double(x);
    else return Rational(x);
}

template<RealField To, RealField From>
Gauss<To> convert(const Gauss<From>& z) {
    return {convert_real<To>(z.re), convert_real<To>(z.im)};
}

}  // namespace fourbar
