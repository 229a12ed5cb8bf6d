#pragma once

#include "localg/proj_complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace localg {

enum class ResolutionKind { Bar, MinimalProjective, Squeezed };

/// A resolution-shaped complex in non-negative degrees.  For Bar and
/// MinimalProjective kinds it resolves a module (H_0 = the module, exact
/// above); the Squeezed kind is the two-projective complex built from an
/// idempotent, whose homology is the homology of the localized algebra.
struct Resolution {
    ResolutionKind kind;
    AComplex complex;              // scalar realization, degrees 0..length
    std::size_t length = 0;
    std::size_t trusted_length = 0;
    std::size_t module_dim = 0;    // dim of the resolved module (Bar/MinimalProjective)
    FpMatrix augmentation_map;     // T_0 -> module (Bar) or the minimal cover
    std::optional<ProjComplex> proj;  // MinimalProjective and Squeezed carry the block form
    Vec alpha, beta;               // Squeezed: the chosen connecting elements
};

struct BarOptions {
    std::size_t term_dim_cap = 20000;          // largest allowed term dimension
    std::size_t matrix_entry_cap = 1u << 24;   // largest allowed differential size
    bool with_action = false;                  // attach the left A-action (small cases)
};

namespace detail {

/// Canonical complement of the unit line: the coordinates away from the first
/// nonzero coordinate of the unit vector.
struct UnitSplit {
    std::size_t unit_coord = 0;
    std::uint32_t unit_inv = 1;            // 1 / u[unit_coord]
    std::vector<std::size_t> bar_coords;   // basis of A-bar, as coordinate indices
};

inline UnitSplit unit_split(const Algebra& A) {
    UnitSplit s;
    const Vec& u = A.unit();
    std::size_t j = 0;
    while (j < u.size() && u[j] == 0) ++j;
    if (j == u.size()) throw CheckError("algebra unit is zero");
    s.unit_coord = j;
    s.unit_inv = fp::inv(u[j], A.p());
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (i != j) s.bar_coords.push_back(i);
    return s;
}

/// Coordinates of x in the A-bar basis (the unit component is dropped).
inline Vec bar_project(const Algebra& A, const UnitSplit& s, const Vec& x) {
    const std::uint32_t p = A.p();
    const std::uint32_t lam = fp::mul(x[s.unit_coord], s.unit_inv, p);
    Vec out(s.bar_coords.size());
    for (std::size_t k = 0; k < s.bar_coords.size(); ++k) {
        const std::size_t i = s.bar_coords[k];
        out[k] = fp::sub(x[i], fp::mul(lam, A.unit()[i], p), p);
    }
    return out;
}

} // namespace detail

/// Normalized bar resolution of a left module M: term n is A (x) Abar^n (x) M
/// with the alternating-sum face differential; Abar is the canonical
/// complement of the unit line.  Terms are free left modules on Abar^n (x) M.
/// Throws ResourceError when a term or differential exceeds the caps.
inline Resolution bar_resolution(const AlgebraPtr& A, const AModule& M, std::size_t length,
                                 const BarOptions& opt = {}) {
    if (M.side != Side::Left || M.algebra != A)
        throw InputError("bar_resolution: left module over A required");
    const std::uint32_t p = A->p();
    const auto split = detail::unit_split(*A);
    const std::size_t dA = A->dim(), dBar = split.bar_coords.size(), dM = M.dim;

    std::vector<std::size_t> term_dims;
    for (std::size_t n = 0; n <= length; ++n) {
        std::size_t t = dA * dM;
        for (std::size_t k = 0; k < n; ++k) {
            t *= dBar;
            if (t > opt.term_dim_cap)
                throw ResourceError("bar term dimension at degree " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(opt.term_dim_cap));
        }
        if (t > opt.term_dim_cap)
            throw ResourceError("bar term dimension at degree " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(opt.term_dim_cap));
        if (n > 0 && term_dims[n - 1] * t > opt.matrix_entry_cap)
            throw ResourceError("bar differential at degree " + std::to_string(n) +
                                " exceeds the matrix entry cap of " + std::to_string(opt.matrix_entry_cap));
        term_dims.push_back(t);
    }

    // letter products, projected to Abar, and letter action on M
    std::vector<Vec> bar_elems;  // Abar basis as elements of A
    for (std::size_t k : split.bar_coords) bar_elems.push_back(A->basis_element(k));

    Resolution res;
    res.kind = ResolutionKind::Bar;
    res.length = length;
    res.trusted_length = length;
    res.module_dim = dM;
    AComplex& c = res.complex;
    c.algebra = A;
    c.min_deg = 0;
    c.max_deg = static_cast<int>(length);
    c.dims = term_dims;
    c.complete = false;
    c.trusted_to = static_cast<int>(length) - 1;

    // index helpers: tensor index = ((a * dBar^n ... ) letters ...) * dM + m,
    // letters most-significant after a
    for (std::size_t n = 1; n <= length; ++n) {
        const std::size_t src = term_dims[n], tgt = term_dims[n - 1];
        FpMatrix d(p, tgt, src);
        if (src == 0) {
            c.diffs.push_back(std::move(d));
            continue;
        }
        std::vector<std::size_t> letters(n, 0);
        // strides in the source index
        for (std::size_t a = 0; a < dA; ++a) {
            std::fill(letters.begin(), letters.end(), 0);
            for (;;) {
                for (std::size_t m = 0; m < dM; ++m) {
                    std::size_t col = a;
                    for (std::size_t k = 0; k < n; ++k) col = col * dBar + letters[k];
                    col = col * dM + m;
                    // face 0: multiply a into the first letter
                    {
                        Vec w = A->mul(A->basis_element(a), bar_elems[letters[0]]);
                        for (std::size_t i = 0; i < dA; ++i) {
                            if (!w[i]) continue;
                            std::size_t row = i;
                            for (std::size_t k = 1; k < n; ++k) row = row * dBar + letters[k];
                            row = row * dM + m;
                            d.at(row, col) = static_cast<std::uint8_t>((d.at(row, col) + w[i]) % p);
                        }
                    }
                    // middle faces: join letters k and k+1, project to Abar
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
                    // last face: act with the last letter on M
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
                // advance letters odometer
                std::size_t k = n;
                while (k > 0 && letters[k - 1] == dBar - 1) letters[--k] = 0;
                if (k == 0) break;
                ++letters[k - 1];
            }
        }
        c.diffs.push_back(std::move(d));
    }
    // augmentation T_0 = A (x) M -> M
    res.augmentation_map = FpMatrix(p, dM, term_dims[0]);
    for (std::size_t a = 0; a < dA; ++a) {
        const FpMatrix act = M.actions[a];
        for (std::size_t m = 0; m < dM; ++m)
            for (std::size_t i = 0; i < dM; ++i)
                res.augmentation_map.at(i, a * dM + m) = act.at(i, m);
    }
    if (opt.with_action) {
        for (std::size_t n = 0; n <= length; ++n) {
            const std::size_t rest = term_dims[n] / dA;
            std::vector<FpMatrix> acts;
            for (std::size_t i = 0; i < dA; ++i)
                acts.push_back(A->left_mult(A->basis_element(i)).kron(FpMatrix::identity(p, rest)));
            c.left_action.push_back(std::move(acts));
        }
    }
    c.validate(opt.with_action);
    return res;
}

/// Minimal projective resolution wrapped as a Resolution.
inline Resolution minimal_projective_resolution(const AlgebraTools& tools, const AModule& M,
                                                std::size_t length) {
    MinResolution mr = minimal_resolution(tools, M, length);
    Resolution res;
    res.kind = ResolutionKind::MinimalProjective;
    res.length = length;
    res.trusted_length = length;
    res.module_dim = M.dim;
    res.augmentation_map = mr.cover;
    res.complex = mr.complex.to_acomplex(false, false, static_cast<int>(length) - 1);
    res.proj = std::move(mr.complex);
    return res;
}

/// Exactness report for Bar / MinimalProjective resolutions: the augmentation
/// identifies H_0 with the module and homology vanishes strictly below the
/// trusted length.
inline void verify_resolution(const Resolution& res) {
    if (res.kind == ResolutionKind::Squeezed)
        throw InputError("verify_resolution applies to module resolutions");
    const AComplex& c = res.complex;
    if (!(res.augmentation_map * c.diff_at(1)).is_zero())
        throw CheckError("resolution: augmentation does not kill the first boundary");
    if (rank(res.augmentation_map) != res.module_dim)
        throw CheckError("resolution: augmentation is not surjective");
    if (homology(c, 0).dim != res.module_dim)
        throw CheckError("resolution: H_0 does not match the module");
    for (int n = 1; n < static_cast<int>(res.trusted_length); ++n)
        if (homology(c, n).dim != 0)
            throw CheckError("resolution: homology does not vanish at degree " + std::to_string(n));
}

/// The squeezed resolution attached to an idempotent e:
///   P_0 = Ae,  P_i = A(1-e) for i > 0,  d_1 = beta,  d_i = alpha . beta (i > 1),
/// where alpha : Ae -> A(1-e) and beta : A(1-e) -> Ae are nonzero module maps,
/// i.e. right multiplications by elements of eA(1-e) and (1-e)Ae.  Candidates
/// are tried in canonical basis order (alpha-major) and the first pair with
/// d*d = 0 is kept; anything else is a construction error, never a guess.
inline Resolution squeezed_resolution(const AlgebraPtr& A, const Idempotent& e, std::size_t length) {
    if (!e.verified) throw InputError("squeezed_resolution: idempotent is not verified");
    Resolution res;
    res.kind = ResolutionKind::Squeezed;
    res.length = length;
    res.trusted_length = length;
    ProjComplex P;
    P.A = A;
    const Vec f = A->one_minus(e.element);
    const std::size_t ei = P.register_idem(e.element);
    if (A->is_zero(f)) {
        // e = 1: the complex degenerates to Ae = A in degree 0
        P.terms.assign(1, {ei});
        for (std::size_t n = 1; n <= length; ++n) {
            P.terms.push_back({});
            P.diffs.push_back({});
        }
        res.complex = P.to_acomplex(false, false, static_cast<int>(length) - 1);
        res.proj = std::move(P);
        return res;
    }
    const std::size_t fi = P.register_idem(f);
    const FpMatrix alpha_space = column_space(A->left_mult(e.element) * A->right_mult(f));
    const FpMatrix beta_space = column_space(A->left_mult(f) * A->right_mult(e.element));
    if (alpha_space.cols() == 0 || beta_space.cols() == 0)
        throw ConstructionError("no squeezed resolution with this recipe: a connecting Hom space is zero");
    bool found = false;
    for (std::size_t ai = 0; ai < alpha_space.cols() && !found; ++ai)
        for (std::size_t bi = 0; bi < beta_space.cols() && !found; ++bi) {
            Vec a = alpha_space.column_vector(ai);
            Vec b = beta_space.column_vector(bi);
            if (A->is_zero(A->mul(A->mul(b, a), b))) {
                res.alpha = std::move(a);
                res.beta = std::move(b);
                found = true;
            }
        }
    if (!found)
        throw ConstructionError(
            "no squeezed resolution with this recipe: every candidate pair has d*d != 0");
    P.terms.push_back({ei});
    for (std::size_t n = 1; n <= length; ++n) P.terms.push_back({fi});
    const Vec ba = A->mul(res.beta, res.alpha);
    for (std::size_t n = 1; n <= length; ++n) {
        std::vector<std::vector<Vec>> d(1);
        d[0].push_back(n == 1 ? res.beta : ba);
        P.diffs.push_back(std::move(d));
    }
    P.verify_d2();
    res.complex = P.to_acomplex(false, false, static_cast<int>(length) - 1);
    res.proj = std::move(P);
    return res;
}

/// The degree-raising chain map z(n) on a squeezed resolution: identity on
/// every A(1-e) term, and alpha out of the bottom term; z(m) z(n) = z(m+n)
/// holds on the nose.  Defined for n >= 2.
inline ChainMap z_map(const Resolution& squeezed, int n) {
    if (squeezed.kind != ResolutionKind::Squeezed) throw InputError("z_map needs a squeezed resolution");
    if (n < 2) throw InputError("z_map: defined for shifts n >= 2 only");
    const ProjComplex& P = *squeezed.proj;
    auto view = std::make_shared<AComplex>(squeezed.complex);
    ChainMap z{view, view, n, {}};
    if (P.summands(0).empty()) return z;  // degenerate e = 1 case
    const std::size_t e_idx = P.terms[0][0];
    if (P.terms.size() > std::size_t(n) && !P.summands(n).empty()) {
        const std::size_t f_idx = P.terms[1][0];
        z.components.emplace(0, P.realize_block(e_idx, f_idx, squeezed.alpha));
        const std::size_t df = P.idem_basis[f_idx].cols();
        for (int i = 1; i + n <= P.max_deg(); ++i)
            z.components.emplace(i, FpMatrix::identity(P.A->p(), df));
    }
    z.validate();
    return z;
}

} // namespace localg
