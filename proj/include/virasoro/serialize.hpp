/**
 * @file serialize.hpp
 * @brief JSON serialization of realizations and analysis reports.
 *
 * Output is deterministic: insertion-ordered objects, keys emitted in a
 * fixed order, scalars as canonical text. Identical inputs produce
 * byte-identical JSON.
 */
#pragma once

#include "virasoro/analysis.hpp"

#include <json.hpp>

namespace virasoro {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson matrix_to_json(const Matrix& m) {
    OrderedJson j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    OrderedJson entries = OrderedJson::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) entries.push_back(format_scalar(m.at(r, c)));
    j["entries"] = std::move(entries);
    return j;
}

inline OrderedJson vector_to_json(const VectorInModule& v) {
    OrderedJson j;
    j["weight"] = v.k;
    OrderedJson coords = OrderedJson::array();
    for (const auto& c : v.coords) coords.push_back(format_scalar(c));
    j["coords"] = std::move(coords);
    return j;
}

inline OrderedJson window_to_json(const WeightWindow& w) {
    OrderedJson j;
    j["offset"] = format_scalar(w.offset);
    j["kMin"] = w.kMin;
    j["kMax"] = w.kMax;
    j["margin"] = w.margin;
    return j;
}

inline OrderedJson dims_to_json(const std::map<int, int>& dims) {
    OrderedJson j = OrderedJson::object();
    for (const auto& [k, d] : dims) j[std::to_string(k)] = d;
    return j;
}

inline OrderedJson realization_to_json(const ModuleRealization& m, bool withActions = true) {
    OrderedJson j;
    j["window"] = window_to_json(m.window);
    j["centralScalar"] = format_scalar(m.centralScalar);
    j["actionRange"] = m.actionRange;
    j["dims"] = dims_to_json(m.dims);
    OrderedJson flags = OrderedJson::array();
    for (int k : m.truncationFlags) flags.push_back(k);
    j["truncated"] = std::move(flags);
    if (!m.labels.empty()) {
        OrderedJson labels = OrderedJson::object();
        for (const auto& [k, ls] : m.labels) {
            if (ls.empty()) continue;
            OrderedJson arr = OrderedJson::array();
            for (const auto& l : ls) arr.push_back(l);
            labels[std::to_string(k)] = std::move(arr);
        }
        j["labels"] = std::move(labels);
    }
    if (withActions) {
        OrderedJson actions = OrderedJson::object();
        for (const auto& [key, mat] : m.actions) {
            const auto [i, k] = key;
            actions["L" + std::to_string(i) + "@" + std::to_string(k)] = matrix_to_json(mat);
        }
        j["actions"] = std::move(actions);
    }
    return j;
}

inline OrderedJson family_to_json(const SubspaceFamily& s) {
    OrderedJson j;
    OrderedJson spaces = OrderedJson::object();
    for (const auto& [k, basis] : s.spaces) spaces[std::to_string(k)] = matrix_to_json(basis);
    j["spaces"] = std::move(spaces);
    j["truncated"] = s.truncated;
    return j;
}

inline OrderedJson axiom_report_to_json(const AxiomReport& rep) {
    OrderedJson j;
    OrderedJson violations = OrderedJson::array();
    for (const auto& v : rep.violations) {
        OrderedJson item;
        item["i"] = v.i;
        item["j"] = v.j;
        item["k"] = v.k;
        item["detail"] = v.detail;
        violations.push_back(std::move(item));
    }
    j["violations"] = std::move(violations);
    j["checked"] = rep.checked;
    j["skipped"] = rep.skipped;
    return j;
}

inline OrderedJson primitivity_to_json(const PrimitivityVerdict& p) {
    OrderedJson j;
    j["stronglyPrimitive"] = p.stronglyPrimitive;
    j["primitive"] = p.primitive;
    j["stronglyAntiPrimitive"] = p.stronglyAntiPrimitive;
    j["antiPrimitive"] = p.antiPrimitive;
    j["windowLimited"] = p.windowLimited;
    return j;
}

inline OrderedJson intertwiner_to_json(const std::optional<IntertwinerMap>& t) {
    if (!t) return OrderedJson(nullptr);
    OrderedJson j;
    OrderedJson per = OrderedJson::object();
    for (const auto& [k, mat] : t->perWeight) per[std::to_string(k)] = matrix_to_json(mat);
    j["perWeight"] = std::move(per);
    j["invertible"] = t->invertible;
    return j;
}

inline OrderedJson classification_to_json(const ClassificationReport& rep) {
    OrderedJson j;
    j["verdict"] = verdict_name(rep.verdict);
    if (rep.verdict == VerdictKind::UniformlyBounded) j["bound"] = rep.bound;
    if (rep.verdict == VerdictKind::CategoryO) j["topIndex"] = rep.topIndex;
    if (rep.verdict == VerdictKind::CategoryOMinus) j["bottomIndex"] = rep.bottomIndex;
    j["dimProfile"] = dims_to_json(rep.dimProfile);
    OrderedJson witnesses = OrderedJson::array();
    for (const auto& w : rep.witnesses) witnesses.push_back(vector_to_json(w));
    j["witnesses"] = std::move(witnesses);
    j["windowLimited"] = rep.windowLimited;
    j["profileVerdict"] = verdict_name(rep.profileVerdict);
    if (rep.profileVerdict == VerdictKind::CategoryO) j["profileTop"] = rep.profileTop;
    if (rep.profileVerdict == VerdictKind::CategoryOMinus) j["profileBottom"] = rep.profileBottom;
    if (rep.profileVerdict == VerdictKind::UniformlyBounded) j["profileBound"] = rep.profileBound;
    return j;
}

}  // namespace virasoro
