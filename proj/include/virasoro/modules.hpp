/**
 * @file modules.hpp
 * @brief Window-truncated realizations of weight modules.
 *
 * A realization carries exact action matrices for every generator index
 * |i| <= actionRange over a finite weight window. Weights live on the
 * lattice offset + Z with 0 <= Re(offset) < 1; the interior window
 * [kMin, kMax] is where correctness claims are made, and the surrounding
 * margin absorbs boundary effects of generator applications.
 *
 * Truncation is never silent. A weight index is flagged when the stored
 * data at that weight does not faithfully represent the abstract module
 * (e.g. below the constructed depth of a highest-weight realization), and
 * act() reports a truncated result whenever an application leaves the
 * extended window or touches a flagged weight.
 *
 * Realizations built here:
 *   - the one-dimensional-per-weight series  L_i x_k = (a+k+bi) x_{i+k},
 *     and its two exceptional variants with a special row at x_0,
 *   - highest / lowest weight realizations generated through PBW normal
 *     ordering, with weight-space bases indexed by partitions in
 *     lexicographically decreasing order,
 *   - direct sums, graded duals, generated subspace families, quotient
 *     and sub-realizations.
 */
#pragma once

#include "virasoro/algebra.hpp"
#include "virasoro/linalg.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace virasoro {

struct WeightWindow {
    GaussianRational offset;  // 0 <= Re(offset) < 1
    int kMin = 0;
    int kMax = 0;
    int margin = 0;

    int ext_min() const { return kMin - margin; }
    int ext_max() const { return kMax + margin; }
    bool in_interior(int k) const { return k >= kMin && k <= kMax; }
    bool in_extended(int k) const { return k >= ext_min() && k <= ext_max(); }

    friend bool operator==(const WeightWindow& a, const WeightWindow& b) {
        return a.offset == b.offset && a.kMin == b.kMin && a.kMax == b.kMax &&
               a.margin == b.margin;
    }
};

struct VectorInModule {
    int k = 0;
    Vec coords;

    bool is_zero() const { return is_zero_vec(coords); }
    friend bool operator==(const VectorInModule& a, const VectorInModule& b) {
        return a.k == b.k && a.coords == b.coords;
    }
};

struct ActResult {
    VectorInModule vec;
    bool truncated = false;
};

struct SubspaceFamily {
    std::map<int, Matrix> spaces;  // weight index -> column basis
    bool truncated = false;

    int dim_at(int k) const {
        auto it = spaces.find(k);
        return it == spaces.end() ? 0 : it->second.cols();
    }
};

/// Split a lattice point a into (offset, shift) with a = offset + shift,
/// shift integral and 0 <= Re(offset) < 1.
struct NormalizedOffset {
    GaussianRational offset;
    long long shift = 0;
};

inline NormalizedOffset normalize_offset(const GaussianRational& a) {
    BigInt fl = rational_floor(a.re);
    long long shift = fl.convert_to<long long>();
    return {GaussianRational(a.re - Rational(fl), a.im), shift};
}

class ModuleRealization {
public:
    WeightWindow window;
    GaussianRational centralScalar;
    int actionRange = 6;
    /// Largest interior weight-space dimension among the inputs this
    /// realization was composed from (bound-threshold hint).
    int inputMaxDim = 1;
    std::map<int, int> dims;                        // absent entries are 0
    std::map<std::pair<int, int>, Matrix> actions;  // (i, k) -> dims(k+i) x dims(k)
    std::set<int> truncationFlags;
    std::map<int, std::vector<std::string>> labels;

    int dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }

    bool flagged(int k) const { return truncationFlags.count(k) > 0; }

    /// Stored action matrix, or the zero matrix of the right shape.
    Matrix action(int i, int k) const {
        auto it = actions.find({i, k});
        if (it != actions.end()) return it->second;
        return Matrix(dim(k + i), dim(k));
    }

    void set_action(int i, int k, Matrix m) {
        if (m.rows() != dim(k + i) || m.cols() != dim(k))
            throw std::invalid_argument("action matrix shape mismatch");
        if (m.empty_shape()) return;
        actions[{i, k}] = std::move(m);
    }

    int max_interior_dim() const {
        int best = 0;
        for (int k = window.kMin; k <= window.kMax; ++k) best = std::max(best, dim(k));
        return best;
    }

    /// Fault-injection helper: returns a copy with one entry of one stored
    /// action matrix shifted by delta.
    ModuleRealization with_corrupted_entry(int i, int k, int row, int col,
                                           const GaussianRational& delta) const {
        if (row < 0 || row >= dim(k + i) || col < 0 || col >= dim(k))
            throw std::invalid_argument("corruption target out of range");
        ModuleRealization m = *this;
        auto it = m.actions.find({i, k});
        if (it == m.actions.end()) {
            Matrix z(dim(k + i), dim(k));
            z.at(row, col) = delta;
            m.actions[{i, k}] = std::move(z);
        } else {
            it->second.at(row, col) += delta;
        }
        return m;
    }
};

// ---- acting on vectors ----

inline void validate_vector(const ModuleRealization& m, const VectorInModule& v) {
    if (!m.window.in_extended(v.k))
        throw std::invalid_argument("vector weight " + std::to_string(v.k) +
                                    " outside the extended window");
    if (static_cast<int>(v.coords.size()) != m.dim(v.k))
        throw std::invalid_argument("vector length does not match the weight-space dimension");
}

inline ActResult act(const ModuleRealization& m, int i, const VectorInModule& v) {
    if (i < -m.actionRange || i > m.actionRange)
        throw std::invalid_argument("generator index " + std::to_string(i) +
                                    " beyond the stored action range");
    validate_vector(m, v);
    const int kOut = v.k + i;
    ActResult res;
    res.vec.k = kOut;
    if (!m.window.in_extended(kOut)) {
        res.truncated = true;
        return res;
    }
    res.truncated = m.flagged(v.k) || m.flagged(kOut);
    res.vec.coords = mat_vec(m.action(i, v.k), v.coords);
    return res;
}

/// Apply a PBW monomial factor by factor (rightmost generator first);
/// the central power contributes centralScalar^cpow.
inline ActResult apply_monomial(const ModuleRealization& m, const PBWMonomial& mono,
                                const VectorInModule& v) {
    ActResult cur{v, false};
    auto step = [&](long long gen) {
        if (cur.vec.coords.empty() && !m.window.in_extended(cur.vec.k)) return;  // already gone
        ActResult nxt = act(m, static_cast<int>(gen), cur.vec);
        nxt.truncated = nxt.truncated || cur.truncated;
        cur = std::move(nxt);
    };
    for (auto it = mono.pos.rbegin(); it != mono.pos.rend(); ++it) step(*it);
    for (unsigned t = 0; t < mono.l0; ++t) step(0);
    for (auto it = mono.neg.rbegin(); it != mono.neg.rend(); ++it) step(-*it);
    if (mono.cpow > 0) {
        GaussianRational s = pow_nonneg(m.centralScalar, mono.cpow);
        for (auto& c : cur.vec.coords) c *= s;
    }
    return cur;
}

struct UEAActionResult {
    std::map<int, Vec> byWeight;
    bool truncated = false;
};

/// Apply an enveloping-algebra element term by term.
inline UEAActionResult apply_uea(const ModuleRealization& m, const UEAElement& u,
                                 const VectorInModule& v) {
    UEAActionResult out;
    for (const auto& [mono, coeff] : u.terms) {
        ActResult r = apply_monomial(m, mono, v);
        out.truncated = out.truncated || r.truncated;
        if (r.vec.coords.empty()) continue;
        Vec& acc = out.byWeight.try_emplace(r.vec.k, Vec(r.vec.coords.size())).first->second;
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += coeff * r.vec.coords[t];
    }
    // drop exact zeros
    for (auto it = out.byWeight.begin(); it != out.byWeight.end();) {
        if (is_zero_vec(it->second))
            it = out.byWeight.erase(it);
        else
            ++it;
    }
    return out;
}

// ---- partitions (Verma weight-space bases) ----

/// All partitions of n, parts descending, listed in lexicographically
/// decreasing order: [n], [n-1,1], ..., [1,...,1].
inline std::vector<std::vector<long long>> partitions_of(int n) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, int rest, long long maxPart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (long long p = std::min<long long>(rest, maxPart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - static_cast<int>(p), p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// ---- builders ----

enum class IntermediateKind { Aab, Aexc, Bexc };

inline GaussianRational intermediate_coefficient(IntermediateKind kind, const GaussianRational& a,
                                                 const GaussianRational& b, int i, int k) {
    const GaussianRational gi(i), gk(k);
    switch (kind) {
        case IntermediateKind::Aab:
            return a + gk + b * gi;
        case IntermediateKind::Aexc:
            return k == 0 ? gi * (gi + a) : gi + gk;
        case IntermediateKind::Bexc:
            return k == -i ? -gi * (gi + a) : gk;
    }
    throw std::logic_error("unreachable");
}

inline WeightWindow window_for_intermediate(IntermediateKind kind, const GaussianRational& a,
                                            int kMin, int kMax, int margin) {
    WeightWindow w;
    w.offset = kind == IntermediateKind::Aab ? normalize_offset(a).offset : GaussianRational(0);
    w.kMin = kMin;
    w.kMax = kMax;
    w.margin = margin;
    return w;
}

/// One-dimensional-per-weight series over the window. For the Aab kind the
/// parameter a is normalized into the window offset (the shift is absorbed
/// into the weight index); the exceptional kinds live on the integer
/// lattice and keep a as a bare coefficient parameter.
inline ModuleRealization build_intermediate(IntermediateKind kind, const GaussianRational& a,
                                            const GaussianRational& b, const WeightWindow& window,
                                            int actionRange = 6) {
    GaussianRational aEff = a;
    if (kind == IntermediateKind::Aab) {
        NormalizedOffset n = normalize_offset(a);
        if (window.offset != n.offset)
            throw std::invalid_argument("window offset inconsistent with the module kind");
        aEff = n.offset;
    } else {
        if (!(window.offset == GaussianRational(0)))
            throw std::invalid_argument("window offset inconsistent with the module kind");
    }
    if (window.kMin > window.kMax || window.margin < 0 || actionRange < 2)
        throw std::invalid_argument("bad window");

    ModuleRealization m;
    m.window = window;
    m.centralScalar = GaussianRational(0);
    m.actionRange = actionRange;
    m.inputMaxDim = 1;
    for (int k = window.ext_min(); k <= window.ext_max(); ++k) {
        m.dims[k] = 1;
        m.labels[k] = {"x" + std::to_string(k)};
    }
    for (int i = -actionRange; i <= actionRange; ++i)
        for (int k = window.ext_min(); k <= window.ext_max(); ++k) {
            if (!window.in_extended(k + i)) continue;
            Matrix entry(1, 1);
            entry.at(0, 0) = intermediate_coefficient(kind, aEff, b, i, k);
            m.set_action(i, k, std::move(entry));
        }
    return m;
}

enum class VermaSign { Highest, Lowest };

namespace detail {

/// Twist by the automorphism L_i -> -L_{-i}, C -> -C; weights negate.
inline ModuleRealization negate_flip(const ModuleRealization& src) {
    NormalizedOffset n = normalize_offset(GaussianRational(0) - src.window.offset);
    const long long t = n.shift;
    auto mirror = [t](int k) { return static_cast<int>(t - k); };

    ModuleRealization m;
    m.window.offset = n.offset;
    m.window.kMin = mirror(src.window.kMax);
    m.window.kMax = mirror(src.window.kMin);
    m.window.margin = src.window.margin;
    m.centralScalar = GaussianRational(0) - src.centralScalar;
    m.actionRange = src.actionRange;
    m.inputMaxDim = src.inputMaxDim;
    for (const auto& [k, d] : src.dims) m.dims[mirror(k)] = d;
    for (int k : src.truncationFlags) m.truncationFlags.insert(mirror(k));
    for (const auto& [k, ls] : src.labels) m.labels[mirror(k)] = ls;
    // A'(L_{-i}) at mirror(k) = -A(L_i) at k; shapes mirror along with dims
    for (const auto& [key, mat] : src.actions) {
        const auto [i, k] = key;
        m.set_action(-i, mirror(k), GaussianRational(-1) * mat);
    }
    return m;
}

}  // namespace detail

/// Highest (or lowest) weight realization: level-n weight space has the
/// partitions of n as basis, actions are computed through PBW normal
/// ordering with L_0 acting by weight and the central element by h.
inline ModuleRealization build_verma(const GaussianRational& lambda, const GaussianRational& h,
                                     int depth, VermaSign sign,
                                     const std::optional<WeightWindow>& window = {},
                                     int actionRange = 6) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (sign == VermaSign::Lowest) {
        std::optional<WeightWindow> mirrored;
        if (window) {
            NormalizedOffset n = normalize_offset(GaussianRational(0) - window->offset);
            WeightWindow w;
            w.offset = n.offset;
            w.kMin = static_cast<int>(n.shift) - window->kMax;
            w.kMax = static_cast<int>(n.shift) - window->kMin;
            w.margin = window->margin;
            mirrored = w;
        }
        ModuleRealization m = detail::negate_flip(build_verma(
            GaussianRational(0) - lambda, GaussianRational(0) - h, depth, VermaSign::Highest,
            mirrored, actionRange));
        if (window && !(m.window == *window))
            throw std::invalid_argument("window offset inconsistent with lambda");
        // relabel with positive-index monomials applied to the lowest vector
        const int kBot = static_cast<int>(normalize_offset(lambda).shift);
        for (auto& [k, ls] : m.labels) {
            const int level = k - kBot;
            if (level < 0) continue;
            auto parts = partitions_of(level);
            if (parts.size() != ls.size()) continue;
            for (std::size_t t = 0; t < parts.size(); ++t) {
                std::string s;
                for (long long p : parts[t]) s += "L" + std::to_string(p) + " ";
                ls[t] = s + "v";
            }
        }
        return m;
    }

    NormalizedOffset n = normalize_offset(lambda);
    const int kTop = static_cast<int>(n.shift);
    WeightWindow w;
    if (window) {
        if (!(window->offset == n.offset))
            throw std::invalid_argument("window offset inconsistent with lambda");
        w = *window;
    } else {
        w.offset = n.offset;
        w.kMin = kTop - depth;
        w.kMax = kTop + depth;
        w.margin = 5;
    }
    if (w.kMin > w.kMax || w.margin < 0 || actionRange < 2)
        throw std::invalid_argument("bad window");

    ModuleRealization m;
    m.window = w;
    m.centralScalar = h;
    m.actionRange = actionRange;

    const int floorK = kTop - depth;  // lowest realized weight index
    std::map<int, std::vector<std::vector<long long>>> basis;  // level -> partitions
    std::map<int, std::map<std::vector<long long>, int>> index;
    for (int k = std::max(w.ext_min(), floorK); k <= std::min(w.ext_max(), kTop); ++k) {
        const int level = kTop - k;
        auto parts = partitions_of(level);
        m.dims[k] = static_cast<int>(parts.size());
        std::vector<std::string> ls;
        for (int t = 0; t < static_cast<int>(parts.size()); ++t) {
            index[level][parts[t]] = t;
            PBWMonomial mono;
            mono.neg = parts[t];
            ls.push_back(mono.is_identity() ? "v" : format_monomial(mono) + " v");
        }
        m.labels[k] = std::move(ls);
        basis[level] = std::move(parts);
    }
    // weights inside the window but below the constructed depth are not
    // faithfully realized
    for (int k = w.ext_min(); k <= std::min(w.ext_max(), floorK - 1); ++k)
        if (k <= kTop) m.truncationFlags.insert(k);

    m.inputMaxDim = m.max_interior_dim();

    for (const auto& [level, parts] : basis) {
        const int k = kTop - level;
        for (int i = -actionRange; i <= actionRange; ++i) {
            const int kOut = k + i;
            const int levelOut = level - i;
            if (m.dim(kOut) == 0) continue;
            Matrix mat(m.dim(kOut), m.dim(k));
            for (int col = 0; col < static_cast<int>(parts.size()); ++col) {
                PBWMonomial mono;
                mono.neg = parts[col];
                UEAElement prod =
                    normal_order_product(uea_generator(Generator::L(i)), UEAElement::monomial(mono));
                for (const auto& [term, coeff] : prod.terms) {
                    if (!term.pos.empty()) continue;  // kills the highest weight vector
                    GaussianRational value = coeff;
                    if (term.l0 > 0) value *= pow_nonneg(lambda, term.l0);
                    if (term.cpow > 0) value *= pow_nonneg(h, term.cpow);
                    if (value.is_zero()) continue;
                    auto rowIt = index.find(levelOut);
                    if (rowIt == index.end()) throw std::logic_error("verma grading mismatch");
                    mat.at(rowIt->second.at(term.neg), col) += value;
                }
            }
            m.set_action(i, k, std::move(mat));
        }
    }
    return m;
}

/// Blockwise direct sum; parts must share the window, the central scalar
/// and the action range.
inline ModuleRealization direct_sum(const std::vector<ModuleRealization>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct sum of no parts");
    const ModuleRealization& first = parts.front();
    for (const auto& p : parts) {
        if (!(p.window == first.window))
            throw std::invalid_argument("direct sum parts must share one window and offset");
        if (!(p.centralScalar == first.centralScalar))
            throw std::invalid_argument("direct sum parts must share the central scalar");
        if (p.actionRange != first.actionRange)
            throw std::invalid_argument("direct sum parts must share the action range");
    }

    ModuleRealization m;
    m.window = first.window;
    m.centralScalar = first.centralScalar;
    m.actionRange = first.actionRange;
    for (const auto& p : parts)
        for (int k : p.truncationFlags) m.truncationFlags.insert(k);

    for (int k = m.window.ext_min(); k <= m.window.ext_max(); ++k) {
        int total = 0;
        std::vector<std::string> ls;
        for (std::size_t t = 0; t < parts.size(); ++t) {
            int d = parts[t].dim(k);
            total += d;
            auto it = parts[t].labels.find(k);
            for (int c = 0; c < d; ++c) {
                std::string base = (it != parts[t].labels.end() && c < static_cast<int>(it->second.size()))
                                       ? it->second[c]
                                       : "e" + std::to_string(c);
                ls.push_back(std::to_string(t) + ":" + base);
            }
        }
        if (total > 0) {
            m.dims[k] = total;
            m.labels[k] = std::move(ls);
        }
    }

    int hint = 0;
    for (const auto& p : parts) hint = std::max(hint, p.inputMaxDim);
    m.inputMaxDim = hint;

    for (int i = -m.actionRange; i <= m.actionRange; ++i)
        for (int k = m.window.ext_min(); k <= m.window.ext_max(); ++k) {
            if (m.dim(k) == 0 || m.dim(k + i) == 0 || !m.window.in_extended(k + i)) continue;
            Matrix mat(m.dim(k + i), m.dim(k));
            int rowOff = 0, colOff = 0;
            for (const auto& p : parts) {
                Matrix block = p.action(i, k);
                for (int r = 0; r < block.rows(); ++r)
                    for (int c = 0; c < block.cols(); ++c) mat.at(rowOff + r, colOff + c) = block.at(r, c);
                rowOff += p.dim(k + i);
                colOff += p.dim(k);
            }
            m.set_action(i, k, std::move(mat));
        }
    return m;
}

/// Graded dual: same dimension profile, L_i acts by the transpose of
/// L_{-i} one weight up; the central scalar is preserved.
inline ModuleRealization dual(const ModuleRealization& src) {
    ModuleRealization m;
    m.window = src.window;
    m.centralScalar = src.centralScalar;
    m.actionRange = src.actionRange;
    m.inputMaxDim = src.inputMaxDim;
    m.dims = src.dims;
    m.truncationFlags = src.truncationFlags;
    for (const auto& [k, ls] : src.labels) {
        std::vector<std::string> dualLs;
        for (const auto& l : ls) dualLs.push_back(l + "*");
        m.labels[k] = std::move(dualLs);
    }
    for (int i = -m.actionRange; i <= m.actionRange; ++i)
        for (int k = m.window.ext_min(); k <= m.window.ext_max(); ++k) {
            if (m.dim(k) == 0 || !m.window.in_extended(k + i) || m.dim(k + i) == 0) continue;
            m.set_action(i, k, src.action(-i, k + i).transpose());
        }
    return m;
}

/// Smallest subspace family containing the seeds and closed under
/// L_{-2}, L_{-1}, L_0, L_1, L_2 within the extended window.
inline SubspaceFamily submodule_generated(const ModuleRealization& m,
                                          const std::vector<VectorInModule>& seeds) {
    std::map<int, RowSpan> spans;
    std::deque<VectorInModule> work;
    bool truncated = false;

    auto insert = [&](const VectorInModule& v) {
        if (v.coords.empty() || v.is_zero()) return;
        auto it = spans.try_emplace(v.k, RowSpan(m.dim(v.k))).first;
        if (it->second.add(v.coords)) work.push_back(v);
    };

    for (const auto& s : seeds) {
        validate_vector(m, s);
        insert(s);
    }

    static constexpr int kGenerators[] = {-2, -1, 0, 1, 2};
    while (!work.empty()) {
        VectorInModule v = std::move(work.front());
        work.pop_front();
        for (int g : kGenerators) {
            ActResult r = act(m, g, v);
            truncated = truncated || r.truncated;
            insert(r.vec);
        }
    }

    SubspaceFamily fam;
    fam.truncated = truncated;
    for (const auto& [k, span] : spans)
        if (span.rank() > 0) fam.spaces.emplace(k, span.column_basis());
    return fam;
}

namespace detail {

inline std::map<int, RowSpan> family_spans(const ModuleRealization& m, const SubspaceFamily& s) {
    std::map<int, RowSpan> spans;
    for (const auto& [k, basis] : s.spaces) {
        RowSpan span(m.dim(k));
        for (int c = 0; c < basis.cols(); ++c)
            if (!span.add(basis.column(c)))
                throw std::invalid_argument("subspace family columns are dependent at weight " +
                                            std::to_string(k));
        spans.emplace(k, std::move(span));
    }
    return spans;
}

}  // namespace detail

/// Quotient by an action-invariant family: per-weight complement bases
/// (the non-pivot coordinates of the family's reduced basis) with induced
/// actions. Invariance is checked on the interior window.
inline ModuleRealization quotient(const ModuleRealization& m, const SubspaceFamily& s) {
    for (const auto& [k, basis] : s.spaces) {
        if (basis.rows() != m.dim(k))
            throw std::invalid_argument("subspace family shape mismatch at weight " +
                                        std::to_string(k));
    }
    std::map<int, RowSpan> spans = detail::family_spans(m, s);
    std::set<int> unchecked;

    static constexpr int kGenerators[] = {-2, -1, 0, 1, 2};
    for (const auto& [k, span] : spans) {
        if (!m.window.in_interior(k)) continue;
        for (int g : kGenerators) {
            const int kOut = k + g;
            if (!m.window.in_extended(kOut) || m.flagged(k) || m.flagged(kOut)) {
                unchecked.insert(k);
                continue;
            }
            Matrix image = m.action(g, k) * span.column_basis();
            for (int c = 0; c < image.cols(); ++c) {
                Vec col = image.column(c);
                if (is_zero_vec(col)) continue;
                auto it = spans.find(kOut);
                if (it == spans.end() || !it->second.contains(col))
                    throw std::invalid_argument(
                        "subspace family is not action-invariant at weight " + std::to_string(k));
            }
        }
    }

    ModuleRealization q;
    q.window = m.window;
    q.centralScalar = m.centralScalar;
    q.actionRange = m.actionRange;
    q.inputMaxDim = m.inputMaxDim;
    q.truncationFlags = m.truncationFlags;
    for (int k : unchecked) q.truncationFlags.insert(k);

    // complement coordinates per weight
    std::map<int, std::vector<int>> freeCoords;
    for (const auto& [k, d] : m.dims) {
        if (d == 0) continue;
        std::vector<bool> isPivot(d, false);
        auto it = spans.find(k);
        if (it != spans.end())
            for (int p : it->second.pivots()) isPivot[p] = true;
        std::vector<int> free;
        for (int c = 0; c < d; ++c)
            if (!isPivot[c]) free.push_back(c);
        if (!free.empty()) {
            q.dims[k] = static_cast<int>(free.size());
            auto lbl = m.labels.find(k);
            std::vector<std::string> ls;
            for (int c : free)
                ls.push_back(lbl != m.labels.end() && c < static_cast<int>(lbl->second.size())
                                 ? lbl->second[c]
                                 : "q" + std::to_string(c));
            q.labels[k] = std::move(ls);
        }
        freeCoords[k] = std::move(free);
    }

    auto project = [&](int k, Vec v) -> Vec {
        auto it = spans.find(k);
        if (it != spans.end()) v = it->second.reduce(std::move(v));
        const auto& free = freeCoords.at(k);
        Vec out(free.size());
        for (std::size_t t = 0; t < free.size(); ++t) out[t] = v[free[t]];
        return out;
    };

    for (const auto& [key, mat] : m.actions) {
        const auto [i, k] = key;
        if (q.dim(k) == 0 || q.dim(k + i) == 0) continue;
        Matrix out(q.dim(k + i), q.dim(k));
        const auto& free = freeCoords.at(k);
        for (std::size_t col = 0; col < free.size(); ++col) {
            Vec image = mat.column(free[col]);
            Vec proj = project(k + i, std::move(image));
            for (int r = 0; r < out.rows(); ++r) out.at(r, static_cast<int>(col)) = proj[r];
        }
        q.set_action(i, k, std::move(out));
    }
    return q;
}

/// Restriction to an invariant family: the family's columns become the
/// basis, actions are re-expressed in it. Weights where an image fails to
/// land in the family (possible near the window boundary) are flagged.
inline ModuleRealization sub_realization(const ModuleRealization& m, const SubspaceFamily& s) {
    ModuleRealization r;
    r.window = m.window;
    r.centralScalar = m.centralScalar;
    r.actionRange = m.actionRange;
    r.inputMaxDim = m.inputMaxDim;
    for (const auto& [k, basis] : s.spaces) {
        if (basis.rows() != m.dim(k))
            throw std::invalid_argument("subspace family shape mismatch at weight " +
                                        std::to_string(k));
        if (basis.cols() > 0) r.dims[k] = basis.cols();
        if (m.flagged(k)) r.truncationFlags.insert(k);
    }
    for (const auto& [k, basis] : s.spaces) {
        for (int i = -m.actionRange; i <= m.actionRange; ++i) {
            if (!m.window.in_extended(k + i)) continue;
            Matrix image = m.action(i, k) * basis;
            const int dOut = r.dim(k + i);
            if (dOut == 0) {
                if (!image.is_zero()) r.truncationFlags.insert(k);
                continue;
            }
            auto expressed = solve_columns(s.spaces.at(k + i), image);
            if (!expressed) {
                r.truncationFlags.insert(k);
                r.truncationFlags.insert(k + i);
                continue;
            }
            r.set_action(i, k, std::move(*expressed));
        }
    }
    return r;
}

/// Dimension profile over the interior window (zeros included).
inline std::map<int, int> dimensions(const ModuleRealization& m) {
    std::map<int, int> out;
    for (int k = m.window.kMin; k <= m.window.kMax; ++k) out[k] = m.dim(k);
    return out;
}

}  // namespace virasoro
