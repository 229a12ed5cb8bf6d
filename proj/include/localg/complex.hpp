#pragma once

#include "localg/algebra.hpp"

#include <map>
#include <memory>
#include <vector>

namespace localg {

/// Bounded chain complex of F_p spaces, homologically graded: d_n lowers the
/// degree, C_n -> C_{n-1}.  Optionally carries a left (and right) action of an
/// Algebra degreewise.  `complete` marks complexes that are the whole object
/// (homology is then trusted in every degree and zero outside the range);
/// truncations of unbounded constructions instead carry `trusted_to`.
///
/// Sign conventions used throughout this library:
///   - chain maps commute with differentials strictly (d f = f d, no Koszul
///     sign), including maps of nonzero shift;
///   - shifting a complex does not change its differential;
///   - the cone of a shift-0 map f : S -> T has differential [[d_T, f],[0, -d_S]].
class AComplex {
public:
    AlgebraPtr algebra;  // may be the ground field
    int min_deg = 0, max_deg = -1;
    std::vector<std::size_t> dims;                      // index: deg - min_deg
    std::vector<FpMatrix> diffs;                        // d_n for n in [min_deg+1, max_deg]
    std::vector<std::vector<FpMatrix>> left_action;     // optional; per degree, per basis elt
    std::vector<std::vector<FpMatrix>> right_action;    // optional
    bool complete = true;
    int trusted_to = 0;

    std::uint32_t p() const { return algebra->p(); }
    bool in_range(int n) const { return n >= min_deg && n <= max_deg; }
    std::size_t dim_at(int n) const { return in_range(n) ? dims[std::size_t(n - min_deg)] : 0; }

    /// d_n: C_n -> C_{n-1}; a zero map outside the stored range.
    FpMatrix diff_at(int n) const {
        if (n >= min_deg + 1 && n <= max_deg) return diffs[std::size_t(n - min_deg - 1)];
        return FpMatrix(p(), dim_at(n - 1), dim_at(n));
    }

    bool homology_trusted(int n) const { return complete || n <= trusted_to; }

    const std::vector<FpMatrix>& actions_at(int n) const {
        if (!in_range(n) || left_action.empty()) throw InputError("complex has no action at this degree");
        return left_action[std::size_t(n - min_deg)];
    }

    void validate(bool check_actions = true) const {
        if (max_deg < min_deg) return;
        if (dims.size() != std::size_t(max_deg - min_deg + 1))
            throw InputError("complex: dims size mismatch");
        if (diffs.size() != (dims.size() ? dims.size() - 1 : 0))
            throw InputError("complex: differential count mismatch");
        for (int n = min_deg + 1; n <= max_deg; ++n) {
            const FpMatrix& d = diffs[std::size_t(n - min_deg - 1)];
            if (d.rows() != dim_at(n - 1) || d.cols() != dim_at(n))
                throw InputError("complex: differential shape mismatch at degree " + std::to_string(n));
            if (n > min_deg + 1) {
                if (!(diff_at(n - 1) * d).is_zero())
                    throw InputError("complex: d*d != 0 at degree " + std::to_string(n));
            }
        }
        if (check_actions && !left_action.empty()) {
            for (int n = min_deg; n <= max_deg; ++n) {
                const auto& acts = left_action[std::size_t(n - min_deg)];
                if (acts.size() != algebra->dim())
                    throw InputError("complex: one action matrix per algebra basis element required");
                if (n > min_deg) {
                    const auto& prev = left_action[std::size_t(n - min_deg - 1)];
                    const FpMatrix d = diff_at(n);
                    for (std::size_t i = 0; i < acts.size(); ++i)
                        if (d * acts[i] != prev[i] * d)
                            throw InputError("complex: differential is not a module map at degree " +
                                             std::to_string(n));
                }
            }
        }
    }
};

struct HomologyResult {
    std::size_t dim = 0;
    FpMatrix basis;       // cycle representatives, canonical
    bool trusted = true;
};

/// H_n = ker d_n / im d_{n+1} with a canonical representative basis: scan the
/// canonical cycle basis and keep columns independent modulo boundaries.
inline HomologyResult homology(const AComplex& c, int n) {
    HomologyResult out;
    out.trusted = c.homology_trusted(n);
    if (!c.in_range(n)) {
        out.basis = FpMatrix(c.p(), 0, 0);
        return out;
    }
    FpMatrix cycles = (n == c.min_deg) ? FpMatrix::identity(c.p(), c.dim_at(n))
                                       : nullspace(c.diff_at(n));
    FpMatrix boundaries = (n < c.max_deg) ? column_space(c.diff_at(n + 1))
                                          : FpMatrix(c.p(), c.dim_at(n), 0);
    out.basis = complement_in(cycles, boundaries);
    out.dim = out.basis.cols();
    return out;
}

inline std::vector<std::size_t> homology_dims(const AComplex& c, int up_to) {
    std::vector<std::size_t> dims;
    for (int n = 0; n <= up_to; ++n) dims.push_back(homology(c, n).dim);
    return dims;
}

/// Degreewise map of complexes; components[n] : source_n -> target_{n+shift}.
/// Commutes with the differentials strictly.
struct ChainMap {
    std::shared_ptr<const AComplex> source, target;
    int shift = 0;
    std::map<int, FpMatrix> components;

    FpMatrix component_at(int n) const {
        auto it = components.find(n);
        if (it != components.end()) return it->second;
        return FpMatrix(source->p(), target->dim_at(n + shift), source->dim_at(n));
    }

    /// Strict commutation d f = f d, checked on every degree where both
    /// composites are fully inside the stored ranges (truncated top degrees
    /// of either complex are skipped, not treated as zero).
    void validate() const {
        const int hi = std::min(source->max_deg, target->max_deg - shift);
        for (int n = source->min_deg; n <= hi; ++n) {
            FpMatrix lhs = target->diff_at(n + shift) * component_at(n);
            FpMatrix rhs = component_at(n - 1) * source->diff_at(n);
            if (lhs != rhs)
                throw InputError("chain map does not commute with differentials at degree " +
                                 std::to_string(n));
        }
    }
};

/// Composition g then f; shifts add, components multiply degreewise.
inline ChainMap compose(const ChainMap& f, const ChainMap& g) {
    const bool compatible = g.target == f.source ||
                            (g.target->p() == f.source->p() && g.target->min_deg == f.source->min_deg &&
                             g.target->dims == f.source->dims);
    if (!compatible) throw InputError("compose: chain maps do not match");
    ChainMap h{g.source, f.target, f.shift + g.shift, {}};
    for (const auto& [n, comp] : g.components) {
        FpMatrix fc = f.component_at(n + g.shift);
        if (fc.rows() == 0 || fc.cols() != comp.rows()) continue;
        h.components.emplace(n, fc * comp);
    }
    return h;
}

inline ChainMap identity_chain_map(const std::shared_ptr<const AComplex>& c) {
    ChainMap f{c, c, 0, {}};
    for (int n = c->min_deg; n <= c->max_deg; ++n)
        f.components.emplace(n, FpMatrix::identity(c->p(), c->dim_at(n)));
    return f;
}

/// Mapping cone of a shift-0 map: cone_n = target_n + source_{n-1}, with
/// differential [[d_T, f],[0, -d_S]].
inline AComplex cone(const ChainMap& f) {
    if (f.shift != 0) throw InputError("cone: chain map must have shift 0");
    if (f.source->algebra->p() != f.target->algebra->p()) throw InputError("cone: modulus mismatch");
    const AComplex& S = *f.source;
    const AComplex& T = *f.target;
    AComplex c;
    c.algebra = T.algebra;
    c.min_deg = std::min(T.min_deg, S.min_deg + 1);
    c.max_deg = std::max(T.max_deg, S.max_deg + 1);
    c.complete = S.complete && T.complete;
    c.trusted_to = std::min(S.complete ? c.max_deg : S.trusted_to + 1,
                            T.complete ? c.max_deg : T.trusted_to);
    const std::uint32_t p = T.p();
    for (int n = c.min_deg; n <= c.max_deg; ++n) c.dims.push_back(T.dim_at(n) + S.dim_at(n - 1));
    for (int n = c.min_deg + 1; n <= c.max_deg; ++n) {
        FpMatrix d(p, T.dim_at(n - 1) + S.dim_at(n - 2), T.dim_at(n) + S.dim_at(n - 1));
        const FpMatrix dT = T.diff_at(n);
        for (std::size_t r = 0; r < dT.rows(); ++r)
            for (std::size_t cc = 0; cc < dT.cols(); ++cc) d.at(r, cc) = dT.at(r, cc);
        const FpMatrix fc = f.component_at(n - 1);
        for (std::size_t r = 0; r < fc.rows(); ++r)
            for (std::size_t cc = 0; cc < fc.cols(); ++cc) d.at(r, T.dim_at(n) + cc) = fc.at(r, cc);
        const FpMatrix dS = S.diff_at(n - 1).negated();
        for (std::size_t r = 0; r < dS.rows(); ++r)
            for (std::size_t cc = 0; cc < dS.cols(); ++cc)
                d.at(T.dim_at(n - 1) + r, T.dim_at(n) + cc) = dS.at(r, cc);
        c.diffs.push_back(std::move(d));
    }
    return c;
}

struct QuasiIsoVerdict {
    enum Kind { Yes, No, UntrustedAbove } kind = Yes;
    int degree = 0;  // first failing degree (No) or trusted bound (UntrustedAbove)

    bool yes() const { return kind == Yes; }
};

/// f is a quasi-isomorphism up to the bound iff the cone is acyclic there.
/// Returns the first failing degree, or the trusted bound when the complexes
/// cannot certify homology that far.
inline QuasiIsoVerdict is_quasi_iso(const ChainMap& f, int up_to) {
    AComplex c = cone(f);
    const int lo = std::min(c.min_deg, 0);
    for (int n = lo; n <= up_to; ++n) {
        if (!c.homology_trusted(n)) return {QuasiIsoVerdict::UntrustedAbove, n - 1};
        if (homology(c, n).dim != 0) return {QuasiIsoVerdict::No, n};
    }
    return {QuasiIsoVerdict::Yes, up_to};
}

/// Discard degrees above n; homology at n itself is no longer trusted.
inline AComplex truncate(const AComplex& c, int n) {
    if (n >= c.max_deg) return c;
    AComplex t;
    t.algebra = c.algebra;
    t.min_deg = c.min_deg;
    t.max_deg = n;
    if (t.max_deg < t.min_deg) {
        t.complete = false;
        t.trusted_to = n - 1;
        return t;
    }
    t.dims.assign(c.dims.begin(), c.dims.begin() + (n - c.min_deg + 1));
    t.diffs.assign(c.diffs.begin(), c.diffs.begin() + (n - c.min_deg));
    if (!c.left_action.empty())
        t.left_action.assign(c.left_action.begin(), c.left_action.begin() + (n - c.min_deg + 1));
    if (!c.right_action.empty())
        t.right_action.assign(c.right_action.begin(), c.right_action.begin() + (n - c.min_deg + 1));
    t.complete = false;
    t.trusted_to = std::min(c.complete ? n - 1 : c.trusted_to, n - 1);
    return t;
}

/// Shift degrees up by k (no sign change on the differential).
inline AComplex shift_complex(AComplex c, int k) {
    c.min_deg += k;
    c.max_deg += k;
    c.trusted_to += k;
    return c;
}

/// A single space placed in one degree.
inline AComplex one_term_complex(const AlgebraPtr& a, std::size_t dim, int degree,
                                 std::vector<FpMatrix> actions = {}) {
    AComplex c;
    c.algebra = a;
    c.min_deg = c.max_deg = degree;
    c.dims = {dim};
    if (!actions.empty()) c.left_action = {std::move(actions)};
    c.complete = true;
    c.trusted_to = degree;
    return c;
}

} // namespace localg
