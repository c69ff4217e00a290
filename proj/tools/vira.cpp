// vira: exact computations with weight-module realizations on a finite
// weight window. Subcommands cover bracket/normal-order arithmetic,
// realization construction, axiom checking, primitivity and simplicity
// diagnostics, intertwiner search, classification, and the composite
// indecomposable example.
//
// Exit status: 0 success, 1 usage or domain error, 2 verification failure
// (check-axioms found violations).
//
// Environment: VIRA_MAX_PBW_TERMS caps the term count of a normal-ordering
// pass (default 1000000) so runaway products fail cleanly instead of
// exhausting memory.

#include <CLI11.hpp>

#include "virasoro/modspec.hpp"
#include "virasoro/serialize.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace virasoro;

namespace {

struct CommonOpts {
    std::string window = "-10..10";
    int margin = 5;
    int genRange = 3;
    std::string format = "text";
    std::string outPath;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool withGenRange = false) {
    cmd->add_option("--window", opts.window, "interior window as <kmin>..<kmax>")
        ->capture_default_str();
    cmd->add_option("--margin", opts.margin, "extra margin around the interior window")
        ->capture_default_str();
    if (withGenRange)
        cmd->add_option("--gen-range", opts.genRange, "check all |i|,|j| <= this bound")
            ->capture_default_str();
    cmd->add_option("--format", opts.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.outPath, "write output to this file instead of stdout");
}

WindowShape shape_of(const CommonOpts& opts) {
    std::size_t dots = opts.window.find("..");
    if (dots == std::string::npos)
        throw ParseError("bad --window '" + opts.window + "', expected <kmin>..<kmax>");
    WindowShape s;
    s.kMin = detail::parse_int(opts.window.substr(0, dots), "--window");
    s.kMax = detail::parse_int(opts.window.substr(dots + 2), "--window");
    s.margin = opts.margin;
    if (s.kMin > s.kMax) throw ParseError("bad --window: kmin exceeds kmax");
    if (s.margin < 0) throw ParseError("bad --margin: must be nonnegative");
    return s;
}

int action_range_for(const CommonOpts& opts) { return std::max(6, 2 * opts.genRange); }

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.outPath);
    if (!f) throw std::runtime_error("cannot open output file '" + opts.outPath + "'");
    f << text;
}

std::string render(const CommonOpts& opts, const std::string& text, const OrderedJson& json) {
    return opts.format == "json" ? json.dump(2) + "\n" : text;
}

Vec parse_coords(const std::string& text) {
    Vec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = detail::trim(
            text.substr(pos, comma == std::string::npos ? text.size() - pos : comma - pos));
        if (!item.empty()) out.push_back(parse_scalar(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ParseError("empty coordinate list");
    return out;
}

std::string coords_text(const Vec& v) {
    std::string s = "[";
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (t) s += ", ";
        s += format_scalar(v[t]);
    }
    return s + "]";
}

std::string dims_text(const ParsedModule& parsed) {
    const ModuleRealization& m = parsed.realization;
    std::vector<int> ks;
    for (int k = m.window.kMin; k <= m.window.kMax; ++k)
        if (m.dim(k) > 0) ks.push_back(k);
    if (parsed.dimsOrder == DimsOrder::LevelFromTop) std::reverse(ks.begin(), ks.end());
    std::string s;
    for (std::size_t t = 0; t < ks.size(); ++t) {
        if (t) s += " ";
        s += std::to_string(m.dim(ks[t]));
    }
    return s + "\n";
}

std::string profile_text(const std::map<int, int>& dims) {
    std::string s;
    for (const auto& [k, d] : dims) {
        if (!s.empty()) s += " ";
        s += std::to_string(k) + ":" + std::to_string(d);
    }
    return s;
}

std::string classification_text(const ClassificationReport& rep) {
    std::ostringstream os;
    os << "verdict: " << verdict_name(rep.verdict);
    if (rep.verdict == VerdictKind::UniformlyBounded) os << " (bound " << rep.bound << ")";
    if (rep.verdict == VerdictKind::CategoryO) os << " (top index " << rep.topIndex << ")";
    if (rep.verdict == VerdictKind::CategoryOMinus)
        os << " (bottom index " << rep.bottomIndex << ")";
    os << "\n";
    for (const auto& w : rep.witnesses)
        os << "witness: weight " << w.k << ", coords " << coords_text(w.coords) << "\n";
    os << "profile: " << verdict_name(rep.profileVerdict);
    if (rep.profileVerdict == VerdictKind::CategoryO) os << " (top index " << rep.profileTop << ")";
    if (rep.profileVerdict == VerdictKind::CategoryOMinus)
        os << " (bottom index " << rep.profileBottom << ")";
    if (rep.profileVerdict == VerdictKind::UniformlyBounded)
        os << " (bound " << rep.profileBound << ")";
    os << "\n";
    os << "windowLimited: " << (rep.windowLimited ? "true" : "false") << "\n";
    os << "dims: " << profile_text(rep.dimProfile) << "\n";
    return os.str();
}

struct CorruptSpec {
    int i = 0, k = 0, row = 0, col = 0;
    GaussianRational delta = GaussianRational(1);
};

CorruptSpec parse_corrupt(const std::string& text) {
    auto kv = detail::parse_key_values(text, text, {"i", "k", "row", "col", "delta"});
    CorruptSpec c;
    c.i = detail::parse_int(kv.require("i", text), "--corrupt i");
    c.k = detail::parse_int(kv.require("k", text), "--corrupt k");
    c.row = detail::parse_int(kv.require("row", text), "--corrupt row");
    c.col = detail::parse_int(kv.require("col", text), "--corrupt col");
    if (auto it = kv.kv.find("delta"); it != kv.kv.end()) c.delta = parse_scalar(it->second);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "vira: exact weight-module computations over Q(i) on a finite weight window.\n"
        "Module specs: A:a=<s>,b=<s> | Aexc:a=<s> | Bexc:a=<s> | "
        "verma:lambda=<s>,h=<s>,depth=<n> | antiverma:... | dual(<spec>) | sum(<spec>;...)\n"
        "Scalars: rationals with optional imaginary part, e.g. 1/2, -3, 2+1/3i.\n"
        "Env: VIRA_MAX_PBW_TERMS caps normal-ordering growth (default 1000000)."};
    app.require_subcommand(1);
    int exitCode = 0;

    // bracket <x> <y>
    std::string brX, brY;
    CommonOpts brOpts;
    auto* cBracket = app.add_subcommand("bracket", "Lie bracket of two algebra elements");
    cBracket->add_option("x", brX, "left element, e.g. \"L2\" or \"2*L1 + C\"")->required();
    cBracket->add_option("y", brY, "right element")->required();
    add_common(cBracket, brOpts);
    cBracket->callback([&] {
        LieElement r = bracket(parse_lie(brX), parse_lie(brY));
        OrderedJson j;
        j["result"] = format_lie(r);
        emit(brOpts, render(brOpts, format_lie(r) + "\n", j));
    });

    // normal-order <word>
    std::string noWord;
    int noMaxWord = 8;
    CommonOpts noOpts;
    auto* cNormal = app.add_subcommand("normal-order", "straighten a product of generators");
    cNormal->add_option("word", noWord, "whitespace-separated generators, e.g. \"L1 L-1\"")
        ->required();
    cNormal->add_option("--max-word", noMaxWord, "cap on the number of generators in the word")
        ->capture_default_str();
    add_common(cNormal, noOpts);
    cNormal->callback([&] {
        UEAElement r = straighten_word(parse_word(noWord, noMaxWord));
        OrderedJson j;
        j["result"] = format_uea(r);
        emit(noOpts, render(noOpts, format_uea(r) + "\n", j));
    });

    // act --module S --gen i --weight k [--coords ...]
    std::string actModule, actCoords;
    int actGen = 0, actWeight = 0;
    CommonOpts actOpts;
    auto* cAct = app.add_subcommand("act", "apply a generator to a weight vector");
    cAct->add_option("--module", actModule, "module spec")->required();
    cAct->add_option("--gen", actGen, "generator index i of L_i")->required();
    cAct->add_option("--weight", actWeight, "weight index of the input vector")->required();
    cAct->add_option("--coords", actCoords, "comma-separated coordinates (default: 1)");
    add_common(cAct, actOpts);
    cAct->callback([&] {
        auto parsed = parse_module_spec(actModule, shape_of(actOpts), action_range_for(actOpts));
        const auto& m = parsed.realization;
        Vec coords;
        if (actCoords.empty()) {
            if (m.dim(actWeight) != 1)
                throw ParseError("--coords is required when the weight space is not a line");
            coords = Vec(1, GaussianRational(1));
        } else {
            coords = parse_coords(actCoords);
        }
        ActResult r = act(m, actGen, VectorInModule{actWeight, coords});
        OrderedJson j = vector_to_json(r.vec);
        j["truncated"] = r.truncated;
        std::ostringstream os;
        os << "k=" << r.vec.k << " coords=" << coords_text(r.vec.coords)
           << " truncated=" << (r.truncated ? "true" : "false") << "\n";
        emit(actOpts, render(actOpts, os.str(), j));
    });

    // dims --module S
    std::string dimsModule;
    CommonOpts dimsOpts;
    auto* cDims = app.add_subcommand("dims", "dimension profile over the interior window");
    cDims->add_option("--module", dimsModule, "module spec")->required();
    add_common(cDims, dimsOpts);
    cDims->callback([&] {
        auto parsed =
            parse_module_spec(dimsModule, shape_of(dimsOpts), action_range_for(dimsOpts));
        OrderedJson j;
        j["dims"] = dims_to_json(dimensions(parsed.realization));
        emit(dimsOpts, render(dimsOpts, dims_text(parsed), j));
    });

    // check-axioms --module S [--corrupt ...]
    std::string axModule, axCorrupt;
    CommonOpts axOpts;
    auto* cAxioms = app.add_subcommand("check-axioms", "verify the commutator identities");
    cAxioms->add_option("--module", axModule, "module spec")->required();
    cAxioms->add_option("--corrupt", axCorrupt,
                        "fault injection: i=<i>,k=<k>,row=<r>,col=<c>[,delta=<scalar>]");
    add_common(cAxioms, axOpts, /*withGenRange=*/true);
    cAxioms->callback([&] {
        auto parsed = parse_module_spec(axModule, shape_of(axOpts), action_range_for(axOpts));
        ModuleRealization m = std::move(parsed.realization);
        if (!axCorrupt.empty()) {
            CorruptSpec c = parse_corrupt(axCorrupt);
            m = m.with_corrupted_entry(c.i, c.k, c.row, c.col, c.delta);
        }
        AxiomReport rep = check_axioms(m, axOpts.genRange);
        std::ostringstream os;
        if (rep.ok()) {
            os << "no violations (checked " << rep.checked << ", skipped " << rep.skipped
               << ")\n";
        } else {
            for (const auto& v : rep.violations) os << v.detail << "\n";
            os << rep.violations.size() << " violation(s) (checked " << rep.checked
               << ", skipped " << rep.skipped << ")\n";
            exitCode = 2;
        }
        emit(axOpts, render(axOpts, os.str(), axiom_report_to_json(rep)));
    });

    // primitive --module S --weight k [--coords ...]
    std::string prModule, prCoords;
    int prWeight = 0;
    CommonOpts prOpts;
    auto* cPrim = app.add_subcommand("primitive", "primitivity verdict for a weight vector");
    cPrim->add_option("--module", prModule, "module spec")->required();
    cPrim->add_option("--weight", prWeight, "weight index of the vector")->required();
    cPrim->add_option("--coords", prCoords, "comma-separated coordinates (default: 1)");
    add_common(cPrim, prOpts);
    cPrim->callback([&] {
        auto parsed = parse_module_spec(prModule, shape_of(prOpts), action_range_for(prOpts));
        const auto& m = parsed.realization;
        Vec coords;
        if (prCoords.empty()) {
            if (m.dim(prWeight) != 1)
                throw ParseError("--coords is required when the weight space is not a line");
            coords = Vec(1, GaussianRational(1));
        } else {
            coords = parse_coords(prCoords);
        }
        PrimitivityVerdict v = primitivity(m, VectorInModule{prWeight, coords});
        std::ostringstream os;
        os << "stronglyPrimitive: " << (v.stronglyPrimitive ? "true" : "false") << "\n"
           << "primitive: " << (v.primitive ? "true" : "false") << "\n"
           << "stronglyAntiPrimitive: " << (v.stronglyAntiPrimitive ? "true" : "false") << "\n"
           << "antiPrimitive: " << (v.antiPrimitive ? "true" : "false") << "\n"
           << "windowLimited: " << (v.windowLimited ? "true" : "false") << "\n";
        emit(prOpts, render(prOpts, os.str(), primitivity_to_json(v)));
    });

    // simple --module S
    std::string smModule;
    CommonOpts smOpts;
    auto* cSimple =
        app.add_subcommand("simple", "window simplicity of a multiplicity-free module");
    cSimple->add_option("--module", smModule, "module spec")->required();
    add_common(cSimple, smOpts);
    cSimple->callback([&] {
        auto parsed = parse_module_spec(smModule, shape_of(smOpts), action_range_for(smOpts));
        bool simple = is_simple_window(parsed.realization);
        OrderedJson j;
        j["simple"] = simple;
        emit(smOpts, render(smOpts, std::string(simple ? "true" : "false") + "\n", j));
    });

    // intertwiner --module S --module T
    std::vector<std::string> itModules;
    CommonOpts itOpts;
    auto* cInter = app.add_subcommand("intertwiner", "solve for a module map between two specs");
    cInter->add_option("--module", itModules, "module specs (exactly two)")
        ->required()
        ->expected(2);
    add_common(cInter, itOpts);
    cInter->callback([&] {
        auto shape = shape_of(itOpts);
        int range = action_range_for(itOpts);
        auto from = parse_module_spec(itModules[0], shape, range);
        auto to = parse_module_spec(itModules[1], shape, range);
        auto t = find_intertwiner(from.realization, to.realization);
        std::ostringstream os;
        if (!t) {
            os << "none\n";
        } else {
            os << "invertible: " << (t->invertible ? "true" : "false") << "\n";
            for (const auto& [k, mat] : t->perWeight) {
                os << "k=" << k << ":";
                for (int r = 0; r < mat.rows(); ++r)
                    for (int c = 0; c < mat.cols(); ++c) os << " " << format_scalar(mat.at(r, c));
                os << "\n";
            }
        }
        emit(itOpts, render(itOpts, os.str(), intertwiner_to_json(t)));
    });

    // classify --module S [--bound-threshold N]
    std::string clModule;
    int clThreshold = 0;
    CommonOpts clOpts;
    auto* cClassify = app.add_subcommand("classify", "window classification verdict");
    cClassify->add_option("--module", clModule, "module spec")->required();
    cClassify->add_option("--bound-threshold", clThreshold,
                          "uniform bound cutoff (default: 4x the largest input dimension)");
    add_common(cClassify, clOpts);
    cClassify->callback([&] {
        auto parsed = parse_module_spec(clModule, shape_of(clOpts), action_range_for(clOpts));
        ClassificationReport rep = classify(parsed.realization, clThreshold);
        emit(clOpts, render(clOpts, classification_text(rep), classification_to_json(rep)));
    });

    // paper-example --a S [--depth N]
    std::string peA;
    int peDepth = 8;
    CommonOpts peOpts;
    peOpts.window = "-6..6";
    auto* cExample = app.add_subcommand(
        "paper-example", "the composite indecomposable module with a trivial top factor");
    cExample->add_option("--a", peA, "series parameter a (must not be an integer)")->required();
    cExample->add_option("--depth", peDepth, "construction depth of the two graded summands")
        ->capture_default_str();
    add_common(cExample, peOpts);
    cExample->callback([&] {
        GaussianRational a = parse_scalar(peA);
        if (a.is_rational_integer())
            throw ParseError("parameter a must not be an integer (the generic series is needed)");
        WindowShape shape = shape_of(peOpts);
        WeightWindow w{GaussianRational(0), shape.kMin, shape.kMax, shape.margin};
        PaperExampleResult result = build_paper_example(a, w, peDepth);
        PrimitivityVerdict pv = primitivity(result.sub, result.v0Sub);
        auto witness = detect_trivial_factor(result.sub);
        ClassificationReport rep = classify(result.sub);

        OrderedJson j;
        j["a"] = format_scalar(a);
        j["window"] = window_to_json(w);
        j["depth"] = peDepth;
        j["sumDims"] = dims_to_json(dimensions(result.sum));
        j["dims"] = dims_to_json(dimensions(result.sub));
        j["v0"] = vector_to_json(result.v0Sub);
        j["primitivity"] = primitivity_to_json(pv);
        j["witness"] = witness ? vector_to_json(*witness) : OrderedJson(nullptr);
        j["classification"] = classification_to_json(rep);

        std::ostringstream os;
        os << "composite module V inside sum(verma:lambda=0,h=0,depth=" << peDepth
           << ";antiverma:lambda=0,h=0,depth=" << peDepth << ";Aexc:a=" << format_scalar(a)
           << ")\n";
        os << "generated by v0 = v'0 + v''0 + x0 at weight 0, window [" << shape.kMin << ","
           << shape.kMax << "] margin " << shape.margin << "\n";
        os << "dims of V: " << profile_text(dimensions(result.sub)) << "\n";
        os << "v0 is " << (pv.primitive ? "primitive" : "not primitive") << ", "
           << (pv.antiPrimitive ? "anti-primitive" : "not anti-primitive") << ", "
           << (pv.stronglyPrimitive ? "strongly primitive" : "not strongly primitive") << ", "
           << (pv.stronglyAntiPrimitive ? "strongly anti-primitive"
                                        : "not strongly anti-primitive")
           << "\n";
        if (witness)
            os << "trivial composition factor witnessed at weight " << witness->k << ", coords "
               << coords_text(witness->coords) << "\n";
        os << classification_text(rep);
        emit(peOpts, render(peOpts, os.str(), j));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exitCode;
}
