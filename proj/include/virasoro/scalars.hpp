/**
 * @file scalars.hpp
 * @brief Exact scalar arithmetic over the Gaussian rationals Q(i).
 *
 * Every computation in this library runs over Q(i): a pair of rationals
 * (re, im) with re + im*i, each kept in canonical form (denominator > 0,
 * coprime, zero is 0/1). Rationals are backed by boost::multiprecision
 * cpp_rational, which maintains exactly that canonical form on top of
 * arbitrary-precision integers.
 *
 * The text grammar, used verbatim on the CLI and in serialized output:
 *
 *     scalar   := rational "i" | rational ( ("+"|"-") rational "i" )?
 *     rational := ("+"|"-")? digits ("/" digits)?
 *
 * format_scalar() emits the canonical spelling ("0", "5/6", "-1/3i",
 * "-1/2+3/4i") and parse_scalar(format_scalar(x)) == x.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace virasoro {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class DivisionByZeroError : public std::domain_error {
public:
    DivisionByZeroError() : std::domain_error("division by zero in Q(i)") {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// floor of an exact rational (rounds toward minus infinity).
inline BigInt rational_floor(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);  // > 0
    BigInt q = num / den;         // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(long long n) : re(n) {}  // NOLINT: implicit by design
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    /// True when the value lies in Z (used for the a-in-Z case splits).
    bool is_rational_integer() const { return im == 0 && is_integer(re); }

    GaussianRational conj() const { return {re, -im}; }
    /// |z|^2 as an exact rational.
    Rational norm() const { return re * re + im * im; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw DivisionByZeroError();
        Rational n = b.norm();
        GaussianRational num = a * b.conj();
        return {num.re / n, num.im / n};
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }
};

inline GaussianRational inverse(const GaussianRational& x) {
    return GaussianRational(1) / x;
}

/// x^n for n >= 0 (exponents here are tiny: L_0 / central powers).
inline GaussianRational pow_nonneg(const GaussianRational& x, unsigned n) {
    GaussianRational acc(1);
    for (unsigned t = 0; t < n; ++t) acc *= x;
    return acc;
}

// ---- text format ----

namespace detail {

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

struct ScalarCursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    BigInt digits() {
        std::size_t start = pos;
        while (!done() && peek() >= '0' && peek() <= '9') ++pos;
        if (pos == start) throw ParseError("expected digits in scalar '" + std::string(text) + "'");
        return BigInt(std::string(text.substr(start, pos - start)));
    }

    // rational := ("+"|"-")? digits ("/" digits)?
    Rational rational() {
        bool neg = false;
        if (!done() && (peek() == '+' || peek() == '-')) {
            neg = peek() == '-';
            ++pos;
        }
        BigInt num = digits();
        BigInt den = 1;
        if (!done() && peek() == '/') {
            ++pos;
            den = digits();
            if (den == 0) throw ParseError("zero denominator in scalar '" + std::string(text) + "'");
        }
        if (neg) num = -num;
        return Rational(num, den);
    }
};

}  // namespace detail

inline std::string format_rational(const Rational& r) { return detail::rational_to_string(r); }

inline std::string format_scalar(const GaussianRational& x) {
    using detail::rational_to_string;
    if (x.im == 0) return rational_to_string(x.re);
    if (x.re == 0) return rational_to_string(x.im) + "i";
    std::string s = rational_to_string(x.re);
    if (x.im > 0) {
        s += "+" + rational_to_string(x.im) + "i";
    } else {
        s += "-" + rational_to_string(Rational(-x.im)) + "i";
    }
    return s;
}

inline GaussianRational parse_scalar(std::string_view text) {
    detail::ScalarCursor cur{text};
    if (cur.done()) throw ParseError("empty scalar");
    Rational first = cur.rational();
    if (cur.done()) return GaussianRational(first);
    if (cur.peek() == 'i') {
        ++cur.pos;
        if (!cur.done()) throw ParseError("trailing characters in scalar '" + std::string(text) + "'");
        return {Rational(0), first};
    }
    if (cur.peek() != '+' && cur.peek() != '-')
        throw ParseError("malformed scalar '" + std::string(text) + "'");
    bool neg = cur.peek() == '-';
    ++cur.pos;
    Rational second = cur.rational();
    if (cur.done() || cur.peek() != 'i')
        throw ParseError("expected 'i' after imaginary part in '" + std::string(text) + "'");
    ++cur.pos;
    if (!cur.done()) throw ParseError("trailing characters in scalar '" + std::string(text) + "'");
    if (neg) second = -second;
    return {first, second};
}

inline Rational parse_rational(std::string_view text) {
    GaussianRational x = parse_scalar(text);
    if (x.im != 0) throw ParseError("expected a real rational, got '" + std::string(text) + "'");
    return x.re;
}

}  // namespace virasoro
