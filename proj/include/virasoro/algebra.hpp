/**
 * @file algebra.hpp
 * @brief The Witt/Virasoro Lie algebra and its universal enveloping algebra.
 *
 * Generators are L_i (i in Z) and a single central element C, with
 *
 *     [L_i, L_j] = (j - i) L_{i+j} + ((i^3 - i)/12) delta_{i,-j} C,
 *     [L_i, C]   = 0.
 *
 * Enveloping-algebra elements are kept in PBW normal form: negative-index
 * generators on the left (indices ascending left to right), then L_0
 * powers, then central powers, then positive-index generators (ascending).
 * normal_order_product() straightens an arbitrary product into that form
 * by rewriting u v = v u + [u, v]; each rewrite either shortens the word
 * or removes one inversion at fixed length, so the rewriting terminates.
 *
 * Text syntax (CLI wire format): generators are `L<k>` (e.g. `L-2`) and
 * `C`; a monomial is a whitespace-separated generator list; an element is
 * `coeff*monomial` terms joined by `+`, with the coefficient parenthesized
 * when it has both a real and an imaginary part.
 */
#pragma once

#include "virasoro/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace virasoro {

class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Term-count cap for normal ordering, settable via VIRA_MAX_PBW_TERMS.
inline long long pbw_term_limit() {
    static const long long limit = [] {
        if (const char* env = std::getenv("VIRA_MAX_PBW_TERMS")) {
            long long v = std::atoll(env);
            if (v > 0) return v;
        }
        return 1000000LL;
    }();
    return limit;
}

// ---- generators ----

struct Generator {
    long long index = 0;
    bool central = false;

    static Generator L(long long i) { return {i, false}; }
    static Generator C() { return {0, true}; }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.central == b.central && (a.central || a.index == b.index);
    }
    friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
    // L_i by index, the central element last
    friend bool operator<(const Generator& a, const Generator& b) {
        if (a.central != b.central) return !a.central;
        return !a.central && a.index < b.index;
    }
};

inline std::string format_generator(const Generator& g) {
    return g.central ? "C" : "L" + std::to_string(g.index);
}

inline Generator parse_generator(std::string_view tok) {
    if (tok == "C") return Generator::C();
    if (tok.size() >= 2 && tok[0] == 'L') {
        std::string num(tok.substr(1));
        std::size_t used = 0;
        try {
            long long idx = std::stoll(num, &used);
            if (used == num.size()) return Generator::L(idx);
        } catch (const std::exception&) {
        }
    }
    throw ParseError("bad generator token '" + std::string(tok) + "'");
}

// ---- Lie algebra elements ----

struct LieElement {
    std::map<Generator, GaussianRational> terms;

    void add(const Generator& g, const GaussianRational& coeff) {
        if (coeff.is_zero()) return;
        auto it = terms.find(g);
        if (it == terms.end()) {
            terms.emplace(g, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    static LieElement generator(const Generator& g, GaussianRational coeff = GaussianRational(1)) {
        LieElement e;
        e.add(g, coeff);
        return e;
    }

    friend LieElement operator+(const LieElement& a, const LieElement& b) {
        LieElement r = a;
        for (const auto& [g, c] : b.terms) r.add(g, c);
        return r;
    }
    friend LieElement operator*(const GaussianRational& s, const LieElement& a) {
        LieElement r;
        for (const auto& [g, c] : a.terms) r.add(g, s * c);
        return r;
    }
    friend bool operator==(const LieElement& a, const LieElement& b) { return a.terms == b.terms; }
};

/// Central contribution of [L_i, L_{-i}]: (i^3 - i)/12.
inline GaussianRational central_bracket_coeff(long long i) {
    BigInt n = BigInt(i) * i * i - i;
    return GaussianRational(Rational(n, 12));
}

inline LieElement bracket_basis(const Generator& x, const Generator& y) {
    LieElement r;
    if (x.central || y.central) return r;
    const long long i = x.index, j = y.index;
    r.add(Generator::L(i + j), GaussianRational(j - i));
    if (i == -j) r.add(Generator::C(), central_bracket_coeff(i));
    return r;
}

inline LieElement bracket(const LieElement& x, const LieElement& y) {
    LieElement r;
    for (const auto& [gx, cx] : x.terms)
        for (const auto& [gy, cy] : y.terms) {
            LieElement b = bracket_basis(gx, gy);
            for (const auto& [g, c] : b.terms) r.add(g, cx * cy * c);
        }
    return r;
}

// ---- PBW monomials and enveloping-algebra elements ----

struct PBWMonomial {
    std::vector<long long> neg;  // i1 >= i2 >= ... >= 1, meaning L_{-i1}...L_{-ip}
    unsigned l0 = 0;
    unsigned cpow = 0;
    std::vector<long long> pos;  // 1 <= j1 <= j2 <= ..., meaning L_{j1}...L_{jq}

    bool is_identity() const { return neg.empty() && pos.empty() && l0 == 0 && cpow == 0; }

    long long degree() const {
        long long d = 0;
        for (long long j : pos) d += j;
        for (long long i : neg) d -= i;
        return d;
    }

    /// Generator word (indices, L_0 as zeros); central powers are not part
    /// of the word.
    std::vector<long long> word() const {
        std::vector<long long> w;
        w.reserve(neg.size() + l0 + pos.size());
        for (long long i : neg) w.push_back(-i);
        for (unsigned t = 0; t < l0; ++t) w.push_back(0);
        for (long long j : pos) w.push_back(j);
        return w;
    }
};

/// Total order: (degree, negPart lex, l0 power, central power, posPart lex).
struct MonomialLess {
    bool operator()(const PBWMonomial& a, const PBWMonomial& b) const {
        long long da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.neg != b.neg)
            return std::lexicographical_compare(a.neg.begin(), a.neg.end(), b.neg.begin(),
                                                b.neg.end());
        if (a.l0 != b.l0) return a.l0 < b.l0;
        if (a.cpow != b.cpow) return a.cpow < b.cpow;
        return std::lexicographical_compare(a.pos.begin(), a.pos.end(), b.pos.begin(),
                                            b.pos.end());
    }
};

inline bool operator==(const PBWMonomial& a, const PBWMonomial& b) {
    return a.neg == b.neg && a.l0 == b.l0 && a.cpow == b.cpow && a.pos == b.pos;
}

struct UEAElement {
    std::map<PBWMonomial, GaussianRational, MonomialLess> terms;

    void add(const PBWMonomial& m, const GaussianRational& coeff) {
        if (coeff.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    static UEAElement one() {
        UEAElement e;
        e.add(PBWMonomial{}, GaussianRational(1));
        return e;
    }
    static UEAElement monomial(const PBWMonomial& m, GaussianRational coeff = GaussianRational(1)) {
        UEAElement e;
        e.add(m, coeff);
        return e;
    }

    friend UEAElement operator+(const UEAElement& a, const UEAElement& b) {
        UEAElement r = a;
        for (const auto& [m, c] : b.terms) r.add(m, c);
        return r;
    }
    friend UEAElement operator-(const UEAElement& a, const UEAElement& b) {
        UEAElement r = a;
        for (const auto& [m, c] : b.terms) r.add(m, -c);
        return r;
    }
    friend UEAElement operator*(const GaussianRational& s, const UEAElement& a) {
        UEAElement r;
        for (const auto& [m, c] : a.terms) r.add(m, s * c);
        return r;
    }
    friend bool operator==(const UEAElement& a, const UEAElement& b) { return a.terms == b.terms; }
};

inline long long degree_of(const PBWMonomial& m) { return m.degree(); }

namespace detail {

inline PBWMonomial monomial_from_sorted_word(const std::vector<long long>& word, unsigned cpow) {
    PBWMonomial m;
    m.cpow = cpow;
    for (long long idx : word) {
        if (idx < 0)
            m.neg.push_back(-idx);
        else if (idx == 0)
            ++m.l0;
        else
            m.pos.push_back(idx);
    }
    return m;
}

/// PBW straightening of coeff * L_{w[0]} ... L_{w[n-1]} * C^cpow.
inline void straighten_into(UEAElement& out, std::vector<long long> word, unsigned cpow,
                            GaussianRational coeff) {
    struct Item {
        std::vector<long long> word;
        unsigned cpow;
        GaussianRational coeff;
    };
    std::vector<Item> stack;
    stack.push_back({std::move(word), cpow, std::move(coeff)});
    long long processed = 0;
    while (!stack.empty()) {
        if (++processed > pbw_term_limit())
            throw ResourceLimitError("normal ordering exceeded VIRA_MAX_PBW_TERMS");
        Item it = std::move(stack.back());
        stack.pop_back();
        std::size_t p = 0;
        while (p + 1 < it.word.size() && it.word[p] <= it.word[p + 1]) ++p;
        if (p + 1 >= it.word.size()) {
            out.add(monomial_from_sorted_word(it.word, it.cpow), it.coeff);
            continue;
        }
        const long long u = it.word[p], v = it.word[p + 1];
        // u v = v u + (v - u) L_{u+v} + delta_{u,-v} (u^3 - u)/12 C
        Item swapped{it.word, it.cpow, it.coeff};
        std::swap(swapped.word[p], swapped.word[p + 1]);
        Item merged{{}, it.cpow, it.coeff * GaussianRational(v - u)};
        merged.word.reserve(it.word.size() - 1);
        merged.word.insert(merged.word.end(), it.word.begin(), it.word.begin() + p);
        merged.word.push_back(u + v);
        merged.word.insert(merged.word.end(), it.word.begin() + p + 2, it.word.end());
        if (u == -v) {
            Item central{{}, it.cpow + 1, it.coeff * central_bracket_coeff(u)};
            central.word.reserve(it.word.size() - 2);
            central.word.insert(central.word.end(), it.word.begin(), it.word.begin() + p);
            central.word.insert(central.word.end(), it.word.begin() + p + 2, it.word.end());
            if (!central.coeff.is_zero()) stack.push_back(std::move(central));
        }
        stack.push_back(std::move(swapped));
        if (!merged.coeff.is_zero()) stack.push_back(std::move(merged));
    }
}

}  // namespace detail

/// Straighten a product of generators into PBW form.
inline UEAElement straighten_word(const std::vector<Generator>& gens,
                                  GaussianRational coeff = GaussianRational(1)) {
    std::vector<long long> word;
    unsigned cpow = 0;
    for (const Generator& g : gens) {
        if (g.central)
            ++cpow;
        else
            word.push_back(g.index);
    }
    UEAElement out;
    detail::straighten_into(out, std::move(word), cpow, std::move(coeff));
    return out;
}

inline UEAElement uea_generator(const Generator& g) { return straighten_word({g}); }

inline UEAElement lie_to_uea(const LieElement& x) {
    UEAElement r;
    for (const auto& [g, c] : x.terms) r = r + straighten_word({g}, c);
    return r;
}

/// Product in U(Vir), result in PBW normal form.
inline UEAElement normal_order_product(const UEAElement& x, const UEAElement& y) {
    UEAElement out;
    for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms) {
            std::vector<long long> word = mx.word();
            const std::vector<long long> wy = my.word();
            word.insert(word.end(), wy.begin(), wy.end());
            detail::straighten_into(out, std::move(word), mx.cpow + my.cpow, cx * cy);
        }
    return out;
}

/// The anti-involution omega: L_j -> L_{-j}, C -> C, omega(uv) = omega(v)omega(u).
/// On a PBW monomial the reversed, index-negated word is already in normal
/// form, so no re-straightening happens.
inline UEAElement omega(const UEAElement& x) {
    UEAElement r;
    for (const auto& [m, c] : x.terms) {
        PBWMonomial w;
        w.l0 = m.l0;
        w.cpow = m.cpow;
        w.neg.assign(m.pos.rbegin(), m.pos.rend());
        w.pos.assign(m.neg.rbegin(), m.neg.rend());
        r.add(w, c);
    }
    return r;
}

// ---- text format ----

namespace detail {

inline bool needs_parens(const GaussianRational& c) { return c.re != 0 && c.im != 0; }

inline std::string coeff_prefix(const GaussianRational& c) {
    if (c == GaussianRational(1)) return "";
    std::string s = format_scalar(c);
    if (needs_parens(c)) s = "(" + s + ")";
    return s + "*";
}

inline std::vector<std::string> split_top_level_terms(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '+' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

struct ParsedTerm {
    GaussianRational coeff;
    std::vector<Generator> word;  // empty means the identity monomial
};

inline ParsedTerm parse_term(std::string_view raw) {
    std::string term = trim(raw);
    if (term.empty()) throw ParseError("empty term in element");
    ParsedTerm out;
    out.coeff = GaussianRational(1);
    std::string wordPart = term;
    std::size_t star = term.find('*');
    if (star != std::string::npos) {
        std::string coeffPart = trim(term.substr(0, star));
        if (coeffPart.size() >= 2 && coeffPart.front() == '(' && coeffPart.back() == ')')
            coeffPart = coeffPart.substr(1, coeffPart.size() - 2);
        out.coeff = parse_scalar(coeffPart);
        wordPart = trim(term.substr(star + 1));
    }
    if (wordPart == "1") return out;
    std::vector<std::string> toks = split_whitespace(wordPart);
    if (toks.empty()) throw ParseError("missing monomial in term '" + std::string(raw) + "'");
    if (toks.size() == 1 && star == std::string::npos && toks[0][0] != 'L' && toks[0] != "C") {
        // bare scalar term
        out.coeff = parse_scalar(toks[0]);
        return out;
    }
    for (const auto& t : toks) out.word.push_back(parse_generator(t));
    return out;
}

}  // namespace detail

inline std::string format_lie(const LieElement& x) {
    if (x.terms.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : x.terms) {
        if (!s.empty()) s += " + ";
        s += detail::coeff_prefix(c) + format_generator(g);
    }
    return s;
}

inline std::string format_monomial(const PBWMonomial& m) {
    if (m.is_identity()) return "1";
    std::string s;
    auto append = [&s](const std::string& tok) {
        if (!s.empty()) s += " ";
        s += tok;
    };
    for (long long i : m.neg) append("L" + std::to_string(-i));
    for (unsigned t = 0; t < m.l0; ++t) append("L0");
    for (unsigned t = 0; t < m.cpow; ++t) append("C");
    for (long long j : m.pos) append("L" + std::to_string(j));
    return s;
}

inline std::string format_uea(const UEAElement& x) {
    if (x.terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : x.terms) {
        if (!s.empty()) s += " + ";
        if (m.is_identity()) {
            std::string cs = format_scalar(c);
            if (detail::needs_parens(c)) cs = "(" + cs + ")";
            s += cs;
        } else {
            s += detail::coeff_prefix(c) + format_monomial(m);
        }
    }
    return s;
}

inline LieElement parse_lie(std::string_view text) {
    std::string t = detail::trim(text);
    if (t == "0") return {};
    LieElement out;
    for (const auto& part : detail::split_top_level_terms(t)) {
        detail::ParsedTerm term = detail::parse_term(part);
        if (term.word.size() != 1)
            throw ParseError("Lie element terms must be single generators: '" + part + "'");
        out.add(term.word[0], term.coeff);
    }
    return out;
}

/// Parse an element text; generator words are straightened, so the input
/// does not have to be in normal form.
inline UEAElement parse_uea(std::string_view text) {
    std::string t = detail::trim(text);
    if (t == "0") return {};
    UEAElement out;
    for (const auto& part : detail::split_top_level_terms(t)) {
        detail::ParsedTerm term = detail::parse_term(part);
        out = out + straighten_word(term.word, term.coeff);
    }
    return out;
}

/// Parse a plain product of generators ("L1 L-1"); maxLen <= 0 disables the cap.
inline std::vector<Generator> parse_word(std::string_view text, int maxLen = 0) {
    std::vector<Generator> word;
    for (const auto& tok : detail::split_whitespace(text)) word.push_back(parse_generator(tok));
    if (maxLen > 0 && static_cast<int>(word.size()) > maxLen)
        throw ParseError("word longer than the configured cap of " + std::to_string(maxLen) +
                         " generators");
    return word;
}

}  // namespace virasoro
