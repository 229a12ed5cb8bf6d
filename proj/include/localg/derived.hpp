#pragma once

#include "localg/resolution.hpp"

#include <memory>
#include <random>

namespace localg {

/// Independent computation routes for derived tensors.
enum class TensorRoute { Bar, MinLeft, MinRight };

/// Tools over A and over A^op, shared by the routes that resolve the left or
/// the right argument.
struct TorEngine {
    AlgebraPtr A;
    AlgebraPtr op;
    AlgebraTools tools;     // over A
    AlgebraTools op_tools;  // over A^op
};

inline TorEngine make_tor_engine(const AlgebraPtr& A) {
    TorEngine e;
    e.A = A;
    e.op = A->opposite();
    e.tools = make_tools(A);
    e.op_tools = make_tools(e.op);
    return e;
}

/// Two-sided bar complex N (x) Abar^n (x) M computing Tor_*(N, M); feasible
/// only while the caps allow, which bounds the usable degree sharply.
inline AComplex bar_tor_complex(const AlgebraPtr& A, const AModule& N, const AModule& M,
                                std::size_t up_to, const BarOptions& opt = {}) {
    if (N.side != Side::Right || M.side != Side::Left || N.algebra != A || M.algebra != A)
        throw InputError("bar_tor_complex: right and left modules over A required");
    const std::uint32_t p = A->p();
    const auto split = detail::unit_split(*A);
    const std::size_t dBar = split.bar_coords.size(), dN = N.dim, dM = M.dim;
    std::vector<std::size_t> term_dims;
    for (std::size_t n = 0; n <= up_to + 1; ++n) {
        std::size_t t = dN * dM;
        for (std::size_t k = 0; k < n; ++k) t *= dBar;
        if (t > opt.term_dim_cap)
            throw ResourceError("bar complex term at degree " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(opt.term_dim_cap));
        if (n > 0 && term_dims[n - 1] * t > opt.matrix_entry_cap)
            throw ResourceError("bar complex differential at degree " + std::to_string(n) +
                                " exceeds the matrix entry cap of " + std::to_string(opt.matrix_entry_cap));
        term_dims.push_back(t);
    }
    std::vector<Vec> bar_elems;
    for (std::size_t k : split.bar_coords) bar_elems.push_back(A->basis_element(k));

    AComplex c;
    c.algebra = field_algebra(p);
    c.min_deg = 0;
    c.max_deg = static_cast<int>(up_to + 1);
    c.dims = term_dims;
    c.complete = false;
    c.trusted_to = static_cast<int>(up_to);
    for (std::size_t n = 1; n <= up_to + 1; ++n) {
        const std::size_t src = term_dims[n], tgt = term_dims[n - 1];
        FpMatrix d(p, tgt, src);
        if (src == 0) {
            c.diffs.push_back(std::move(d));
            continue;
        }
        std::vector<std::size_t> letters(n, 0);
        for (std::size_t a = 0; a < dN; ++a) {
            std::fill(letters.begin(), letters.end(), 0);
            for (;;) {
                for (std::size_t m = 0; m < dM; ++m) {
                    std::size_t col = a;
                    for (std::size_t k = 0; k < n; ++k) col = col * dBar + letters[k];
                    col = col * dM + m;
                    // face 0: first letter acts on N from the right
                    {
                        const FpMatrix& act = N.actions[split.bar_coords[letters[0]]];
                        for (std::size_t i = 0; i < dN; ++i) {
                            const std::uint32_t v = act.at(i, a);
                            if (!v) continue;
                            std::size_t row = i;
                            for (std::size_t k = 1; k < n; ++k) row = row * dBar + letters[k];
                            row = row * dM + m;
                            d.at(row, col) = static_cast<std::uint8_t>((d.at(row, col) + v) % p);
                        }
                    }
                    // middle faces
                    for (std::size_t k = 0; k + 1 < n; ++k) {
                        Vec w = detail::bar_project(
                            *A, split, A->mul(bar_elems[letters[k]], bar_elems[letters[k + 1]]));
                        const std::uint32_t sign = (k + 1) % 2 ? p - 1 : 1;
                        for (std::size_t t = 0; t < dBar; ++t) {
                            if (!w[t]) continue;
                            std::size_t row = a;
                            for (std::size_t k2 = 0; k2 < n; ++k2) {
                                if (k2 == k) row = row * dBar + t;
                                else if (k2 == k + 1) continue;
                                else row = row * dBar + letters[k2];
                            }
                            row = row * dM + m;
                            const std::uint32_t add = fp::mul(sign, w[t], p);
                            d.at(row, col) = static_cast<std::uint8_t>((d.at(row, col) + add) % p);
                        }
                    }
                    // last face: last letter acts on M
                    {
                        const FpMatrix& act = M.actions[split.bar_coords[letters[n - 1]]];
                        const std::uint32_t sign = n % 2 ? p - 1 : 1;
                        for (std::size_t i = 0; i < dM; ++i) {
                            const std::uint32_t v = act.at(i, m);
                            if (!v) continue;
                            std::size_t row = a;
                            for (std::size_t k = 0; k + 1 < n; ++k) row = row * dBar + letters[k];
                            row = row * dM + i;
                            const std::uint32_t add = fp::mul(sign, v, p);
                            d.at(row, col) = static_cast<std::uint8_t>((d.at(row, col) + add) % p);
                        }
                    }
                }
                std::size_t k = n;
                while (k > 0 && letters[k - 1] == dBar - 1) letters[--k] = 0;
                if (k == 0) break;
                ++letters[k - 1];
            }
            if (dBar == 0) break;
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate(false);
    return c;
}

/// Complex computing N (x)^L_A M with homology trusted through up_to.
/// MinLeft resolves M, MinRight resolves N over the opposite algebra, Bar
/// builds the two-sided bar complex.  All three agree degreewise.
inline AComplex derived_tensor(const TorEngine& eng, const AModule& N, const AModule& M,
                               std::size_t up_to, TensorRoute route = TensorRoute::MinLeft,
                               const BarOptions& bar_opt = {}) {
    switch (route) {
    case TensorRoute::Bar:
        return bar_tor_complex(eng.A, N, M, up_to, bar_opt);
    case TensorRoute::MinLeft: {
        MinResolution res = minimal_resolution(eng.tools, M, up_to + 1);
        return tensor_with_resolution(N, res);
    }
    case TensorRoute::MinRight: {
        AModule n_op = op_view(N, eng.op);
        AModule m_op = op_view(M, eng.op);
        MinResolution res = minimal_resolution(eng.op_tools, n_op, up_to + 1);
        return tensor_with_resolution(m_op, res);
    }
    }
    throw InputError("unknown tensor route");
}

inline std::size_t tor_dim(const TorEngine& eng, const AModule& N, const AModule& M, int n,
                           TensorRoute route = TensorRoute::MinLeft) {
    if (n < 0) return 0;
    AComplex c = derived_tensor(eng, N, M, std::size_t(n), route);
    auto h = homology(c, n);
    if (!h.trusted) throw CheckError("tor_dim: homology not trusted at the requested degree");
    return h.dim;
}

/// dim(N (x)_A M), computed underived from the relation subspace; independent
/// oracle for Tor_0.
inline std::size_t underived_tensor_dim(const AlgebraPtr& A, const AModule& N, const AModule& M) {
    const std::uint32_t p = A->p();
    const std::size_t dN = N.dim, dM = M.dim;
    FpMatrix rel(p, dN * dM, A->dim() * dN * dM);
    std::size_t col = 0;
    for (std::size_t a = 0; a < A->dim(); ++a)
        for (std::size_t i = 0; i < dN; ++i)
            for (std::size_t j = 0; j < dM; ++j, ++col) {
                // (n_i . a) (x) m_j - n_i (x) (a . m_j)
                for (std::size_t r = 0; r < dN; ++r) {
                    const std::uint32_t v = N.actions[a].at(r, i);
                    if (v) rel.at(r * dM + j, col) = static_cast<std::uint8_t>((rel.at(r * dM + j, col) + v) % p);
                }
                for (std::size_t r = 0; r < dM; ++r) {
                    const std::uint32_t v = M.actions[a].at(r, j);
                    if (v)
                        rel.at(i * dM + r, col) =
                            static_cast<std::uint8_t>((rel.at(i * dM + r, col) + p - v % p) % p);
                }
            }
    return dN * dM - rank(rel);
}

/// B as an A-module (left or right) through an algebra map.
inline AModule restricted_regular(const AlgebraMap& f, Side side) {
    return restrict_along(f, side == Side::Left ? regular_left(f.target) : regular_right(f.target));
}

/// The multiplication map  (B (x)^L_A B)_0 -> B  as a chain map into B placed
/// in degree 0, together with its source complex.
struct MultiplicationData {
    std::shared_ptr<AComplex> source;
    std::shared_ptr<AComplex> target;  // B in degree 0
    ChainMap mult;
};

inline MultiplicationData multiplication_map(const TorEngine& eng, const AlgebraMap& f,
                                             std::size_t up_to, TensorRoute route) {
    const AlgebraPtr B = f.target;
    const std::uint32_t p = B->p();
    MultiplicationData out;
    out.target = std::make_shared<AComplex>(one_term_complex(field_algebra(p), B->dim(), 0));
    AModule NB = restricted_regular(f, Side::Right);
    AModule MB = restricted_regular(f, Side::Left);
    FpMatrix mu(p, B->dim(), 0);
    if (route == TensorRoute::Bar) {
        AComplex c = bar_tor_complex(eng.A, NB, MB, up_to);
        // degree 0 is B (x) B; multiply in B
        mu = FpMatrix(p, B->dim(), B->dim() * B->dim());
        for (std::size_t i = 0; i < B->dim(); ++i)
            for (std::size_t j = 0; j < B->dim(); ++j) {
                Vec prod = B->mul(B->basis_element(i), B->basis_element(j));
                for (std::size_t r = 0; r < B->dim(); ++r)
                    mu.at(r, i * B->dim() + j) = static_cast<std::uint8_t>(prod[r]);
            }
        out.source = std::make_shared<AComplex>(std::move(c));
    } else {
        const bool left = route == TensorRoute::MinLeft;
        const AlgebraTools& tools = left ? eng.tools : eng.op_tools;
        AModule resolved = left ? MB : op_view(NB, eng.op);
        AModule other = left ? NB : op_view(MB, eng.op);
        MinResolution res = minimal_resolution(tools, resolved, up_to + 1);
        AComplex c = tensor_with_resolution(other, res);
        // degree 0: sum of other*f_t; the map sends w in N f_t to w *_B phi_t
        // where phi_t is the generator image of the cover (an element of B).
        mu = FpMatrix(p, B->dim(), c.dim_at(0));
        std::size_t off = 0;
        const auto& term = res.complex.summands(0);
        for (std::size_t g = 0; g < term.size(); ++g) {
            FpMatrix nf = column_space(other.act(res.complex.idems[term[g]]));
            const Vec phi = res.gen_images[g];
            // w (x) gen |-> w * phi in B (for MinRight: phi * w, i.e. B^op product)
            FpMatrix mulmat = left ? B->right_mult(phi) : B->left_mult(phi);
            FpMatrix cols = mulmat * nf;
            for (std::size_t cc = 0; cc < cols.cols(); ++cc)
                for (std::size_t r = 0; r < B->dim(); ++r) mu.at(r, off + cc) = cols.at(r, cc);
            off += nf.cols();
        }
        out.source = std::make_shared<AComplex>(std::move(c));
    }
    out.mult = ChainMap{out.source, out.target, 0, {}};
    out.mult.components.emplace(0, std::move(mu));
    out.mult.validate();
    return out;
}

/// Complex computing the derived module of relative differentials: the fibre
/// of the multiplication map, realized as the cone shifted down one degree.
/// H_n of the result is H_{n+1} of the cone; acyclicity through up_to decides
/// the homological-epimorphism property.
inline AComplex relative_differentials(const TorEngine& eng, const AlgebraMap& f, std::size_t up_to,
                                       TensorRoute route = TensorRoute::MinLeft) {
    f.validate();
    MultiplicationData md = multiplication_map(eng, f, up_to + 1, route);
    return shift_complex(cone(md.mult), -1);
}

struct EpiVerdict {
    bool yes = false;
    int checked_up_to = 0;
    int first_failure = -1;  // degree of the first nonvanishing obstruction
};

/// Homological epimorphism test: the multiplication map B (x)^L_A B -> B must
/// be a quasi-isomorphism; equivalently the derived relative differentials
/// must be acyclic.  Both criteria are computed, through resolutions of
/// opposite sides, and must agree; disagreement is an internal bug trap.
inline EpiVerdict is_homological_epi(const TorEngine& eng, const AlgebraMap& f, std::size_t up_to) {
    f.validate();
    if (f.source != eng.A) throw InputError("is_homological_epi: engine is over a different algebra");
    MultiplicationData left = multiplication_map(eng, f, up_to + 1, TensorRoute::MinLeft);
    AComplex cone_left = cone(left.mult);
    AComplex omega_right = relative_differentials(eng, f, up_to, TensorRoute::MinRight);
    EpiVerdict v;
    v.yes = true;
    v.checked_up_to = static_cast<int>(up_to);
    for (int n = 0; n <= static_cast<int>(up_to); ++n) {
        const std::size_t via_mult = homology(cone_left, n + 1).dim;
        const std::size_t via_omega = homology(omega_right, n).dim;
        if (via_mult != via_omega)
            throw CheckError("homological-epimorphism criteria disagree at degree " + std::to_string(n) +
                             ": " + std::to_string(via_mult) + " vs " + std::to_string(via_omega));
        if (via_mult != 0 && v.yes) {
            v.yes = false;
            v.first_failure = n;
        }
    }
    return v;
}

struct NakayamaReport {
    bool hypothesis = false;   // H({F_p} (x)^L C) = 0 through the range
    bool conclusion = false;   // H(C) = 0 through the range
    int witness = -1;          // degree violating the implication, if any
    bool implication_holds() const { return !hypothesis || conclusion; }
};

/// Derived Nakayama check for a local algebra: if the residue field kills a
/// perfect complex, the complex was already acyclic.  A violation would
/// falsify the underlying lemma and is reported with a witness degree.
inline NakayamaReport nakayama_check(const AlgebraPtr& A, const ProjComplex& C, int up_to) {
    if (!A->augmented()) throw InputError("nakayama_check: local algebra needs its augmentation");
    FpMatrix rad = jacobson_radical(A);
    if (rad.cols() != A->dim() - 1)
        throw InputError("nakayama_check: algebra is not local with residue field F_p");
    for (std::size_t c = 0; c < rad.cols(); ++c)
        if (A->augment(rad.column_vector(c)) != 0)
            throw InputError("nakayama_check: radical is not the augmentation ideal");
    for (const auto& f : C.idems)
        if (!A->equal(f, A->unit()))
            throw InputError("nakayama_check: complex must have free terms");
    // residue-field reduction: augmentation applied to every element entry
    AComplex small;
    small.algebra = field_algebra(A->p());
    small.min_deg = C.min_deg;
    small.max_deg = C.max_deg();
    for (int n = C.min_deg; n <= C.max_deg(); ++n) small.dims.push_back(C.summands(n).size());
    for (int n = C.min_deg + 1; n <= C.max_deg(); ++n) {
        const auto& d = C.diff_elements(n);
        FpMatrix m(A->p(), small.dims[std::size_t(n - 1 - C.min_deg)], small.dims[std::size_t(n - C.min_deg)]);
        for (std::size_t t = 0; t < d.size(); ++t)
            for (std::size_t s = 0; s < d[t].size(); ++s)
                m.at(t, s) = static_cast<std::uint8_t>(A->augment(d[t][s]));
        small.diffs.push_back(std::move(m));
    }
    small.complete = true;
    small.validate(false);
    AComplex big = C.to_acomplex(false, true, C.max_deg());
    NakayamaReport rep;
    rep.hypothesis = true;
    rep.conclusion = true;
    for (int n = C.min_deg; n <= up_to; ++n) {
        if (homology(small, n).dim != 0) rep.hypothesis = false;
        if (homology(big, n).dim != 0) {
            if (rep.conclusion) rep.witness = n;
            rep.conclusion = false;
        }
    }
    if (rep.hypothesis && !rep.conclusion) return rep;  // caller decides; lemma falsified
    if (!rep.hypothesis) rep.witness = -1;
    return rep;
}

/// Seeded random perfect complex with free terms of the given ranks and
/// honest d*d = 0, built by sampling each differential from the solution
/// space of the previous one.
inline ProjComplex random_perfect_complex(const AlgebraPtr& A, const std::vector<std::size_t>& ranks,
                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t p = A->p();
    ProjComplex C;
    C.A = A;
    const std::size_t one = C.register_idem(A->unit());
    for (std::size_t r : ranks) C.terms.push_back(std::vector<std::size_t>(r, one));
    for (std::size_t k = 1; k < ranks.size(); ++k) {
        const std::size_t rt = ranks[k - 1], rs = ranks[k];
        std::vector<std::vector<Vec>> d(rt, std::vector<Vec>(rs, A->zero_element()));
        if (k == 1) {
            for (std::size_t t = 0; t < rt; ++t)
                for (std::size_t s = 0; s < rs; ++s)
                    for (std::size_t i = 0; i < A->dim(); ++i)
                        d[t][s][i] = static_cast<std::uint32_t>(rng() % p);
        } else {
            // solve prev . d = 0 entrywise: sum_m d[m][s] * prev[t][m] = 0
            const auto& prev = C.diffs[k - 2];
            const std::size_t rm = ranks[k - 1], rprev = ranks[k - 2];
            const std::size_t unknowns = rm * A->dim();
            FpMatrix sys(p, rprev * A->dim(), unknowns);
            for (std::size_t t = 0; t < rprev; ++t)
                for (std::size_t m = 0; m < rm; ++m) {
                    const FpMatrix R = A->right_mult(prev[t][m]);
                    for (std::size_t r = 0; r < A->dim(); ++r)
                        for (std::size_t cidx = 0; cidx < A->dim(); ++cidx)
                            sys.at(t * A->dim() + r, m * A->dim() + cidx) = static_cast<std::uint8_t>(
                                (sys.at(t * A->dim() + r, m * A->dim() + cidx) + R.at(r, cidx)) % p);
                }
            FpMatrix ker = nullspace(sys);
            for (std::size_t s = 0; s < rs; ++s) {
                if (ker.cols() == 0) break;
                Vec combo(unknowns, 0);
                for (std::size_t c = 0; c < ker.cols(); ++c) {
                    const std::uint32_t coef = static_cast<std::uint32_t>(rng() % p);
                    if (!coef) continue;
                    for (std::size_t r = 0; r < unknowns; ++r)
                        combo[r] = (combo[r] + std::uint64_t(coef) * ker.at(r, c)) % p;
                }
                for (std::size_t m = 0; m < rm; ++m)
                    for (std::size_t i = 0; i < A->dim(); ++i) d[m][s][i] = combo[m * A->dim() + i];
            }
        }
        C.diffs.push_back(std::move(d));
    }
    C.verify_d2();
    return C;
}

} // namespace localg
