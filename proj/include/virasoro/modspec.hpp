/**
 * @file modspec.hpp
 * @brief The module-spec mini-language used on the command line.
 *
 *   A:a=<scalar>,b=<scalar>          the series L_i x_k = (a+k+bi) x_{i+k}
 *   Aexc:a=<scalar>                  the exceptional A-variant
 *   Bexc:a=<scalar>                  the exceptional B-variant
 *   verma:lambda=<scalar>,h=<scalar>,depth=<n>      highest-weight
 *   antiverma:lambda=<scalar>,h=<scalar>,depth=<n>  lowest-weight
 *   dual(<spec>)                     graded dual
 *   sum(<spec>;<spec>;...)           direct sum
 *
 * Scalars use the exact-scalar grammar and never contain ',', ';', '(' or
 * ')', so the splitting here is unambiguous.
 */
#pragma once

#include "virasoro/analysis.hpp"

#include <string>
#include <string_view>

namespace virasoro {

struct WindowShape {
    int kMin = -10;
    int kMax = 10;
    int margin = 5;
};

/// How the dims subcommand lists a profile in text mode.
enum class DimsOrder { AscendingWeight, LevelFromTop, LevelFromBottom };

struct ParsedModule {
    ModuleRealization realization;
    DimsOrder dimsOrder = DimsOrder::AscendingWeight;
};

namespace detail {

struct KeyValues {
    std::map<std::string, std::string> kv;

    const std::string& require(const std::string& key, std::string_view spec) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ParseError("module spec '" + std::string(spec) + "' is missing key '" + key +
                             "'");
        return it->second;
    }
};

inline KeyValues parse_key_values(std::string_view body, std::string_view spec,
                                  std::initializer_list<const char*> allowed) {
    KeyValues out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item =
            trim(body.substr(pos, comma == std::string_view::npos ? body.size() - pos
                                                                  : comma - pos));
        if (!item.empty()) {
            std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value in module spec '" + std::string(spec) + "'");
            std::string key = trim(item.substr(0, eq));
            std::string value = trim(item.substr(eq + 1));
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok)
                throw ParseError("unknown key '" + key + "' in module spec '" + std::string(spec) +
                                 "'");
            if (!out.kv.emplace(key, value).second)
                throw ParseError("duplicate key '" + key + "' in module spec '" +
                                 std::string(spec) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline int parse_int(const std::string& text, std::string_view what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("bad integer '" + text + "' for " + std::string(what));
}

}  // namespace detail

inline ParsedModule parse_module_spec(std::string_view text, const WindowShape& shape,
                                      int actionRange = 6) {
    std::string spec = detail::trim(text);
    if (spec.empty()) throw ParseError("empty module spec");

    auto inner = [&](std::string_view wrapped, std::size_t prefixLen) {
        if (wrapped.back() != ')')
            throw ParseError("missing ')' in module spec '" + spec + "'");
        return std::string(wrapped.substr(prefixLen, wrapped.size() - prefixLen - 1));
    };

    if (spec.rfind("dual(", 0) == 0) {
        ParsedModule m = parse_module_spec(inner(spec, 5), shape, actionRange);
        m.realization = dual(m.realization);
        return m;
    }
    if (spec.rfind("sum(", 0) == 0) {
        std::string body = inner(spec, 4);
        std::vector<std::string> parts;
        std::string cur;
        int depth = 0;
        for (char ch : body) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == ';' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        parts.push_back(cur);
        std::vector<ModuleRealization> realizations;
        for (const auto& p : parts)
            realizations.push_back(parse_module_spec(p, shape, actionRange).realization);
        return {direct_sum(realizations), DimsOrder::AscendingWeight};
    }

    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("unrecognized module spec '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);

    auto window = [&](const GaussianRational& offset) {
        WeightWindow w;
        w.offset = offset;
        w.kMin = shape.kMin;
        w.kMax = shape.kMax;
        w.margin = shape.margin;
        return w;
    };

    if (kind == "A") {
        auto kv = detail::parse_key_values(body, spec, {"a", "b"});
        GaussianRational a = parse_scalar(kv.require("a", spec));
        GaussianRational b = parse_scalar(kv.require("b", spec));
        return {build_intermediate(IntermediateKind::Aab, a, b,
                                   window(normalize_offset(a).offset), actionRange),
                DimsOrder::AscendingWeight};
    }
    if (kind == "Aexc" || kind == "Bexc") {
        auto kv = detail::parse_key_values(body, spec, {"a"});
        GaussianRational a = parse_scalar(kv.require("a", spec));
        IntermediateKind ik = kind == "Aexc" ? IntermediateKind::Aexc : IntermediateKind::Bexc;
        return {build_intermediate(ik, a, GaussianRational(0), window(GaussianRational(0)),
                                   actionRange),
                DimsOrder::AscendingWeight};
    }
    if (kind == "verma" || kind == "antiverma") {
        auto kv = detail::parse_key_values(body, spec, {"lambda", "h", "depth"});
        GaussianRational lambda = parse_scalar(kv.require("lambda", spec));
        GaussianRational h = parse_scalar(kv.require("h", spec));
        int depth = detail::parse_int(kv.require("depth", spec), "depth");
        VermaSign sign = kind == "verma" ? VermaSign::Highest : VermaSign::Lowest;
        return {build_verma(lambda, h, depth, sign, window(normalize_offset(lambda).offset),
                            actionRange),
                sign == VermaSign::Highest ? DimsOrder::LevelFromTop : DimsOrder::LevelFromBottom};
    }
    throw ParseError("unrecognized module kind '" + kind + "'");
}

}  // namespace virasoro
