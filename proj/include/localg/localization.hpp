#pragma once

#include "localg/derived.hpp"
#include "localg/resolution.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace localg {

/// Homology of the endomorphism complex of a complex of projectives, in the
/// strict convention: degree-n elements are families f_i : P_i -> P_{i+n}
/// with d f = f d on the nose, boundaries are d h + h d, and the product is
/// plain composition.  (The Koszul-signed convention gives the same
/// dimensions and an isomorphic ring; the strict one makes the z-map calculus
/// hold without signs.)  Components are elements of the spaces f_s A f_t.
class EndoHomology {
public:
    /// window_top: classes are distinguished by their components in degrees
    /// <= window_top only.  A brutal truncation leaves the top components of
    /// a family under-constrained, which fabricates classes supported near
    /// the top; genuine classes are already detected by their bottom
    /// component (composition with the unit map A -> P identifies them with
    /// homology classes of P), so a low window both kills the artifacts and
    /// keeps the real classes apart.
    explicit EndoHomology(const ProjComplex& P, int window_top = 1 << 20)
        : P_(P), L_(P.max_deg()), window_top_(window_top) {
        for (std::size_t s = 0; s < P_.idems.size(); ++s) {
            pair_basis_.emplace_back();
            for (std::size_t t = 0; t < P_.idems.size(); ++t)
                pair_basis_.back().push_back(column_space(P_.A->left_mult(P_.idems[s]) *
                                                          P_.A->right_mult(P_.idems[t])));
        }
    }

    struct Piece {
        int i;                    // source degree
        std::size_t s_pos, t_pos; // positions within terms[i], terms[i+n]
        std::size_t s, t;         // idem indices
        std::size_t offset, dim;
    };

    struct Layout {
        std::vector<Piece> pieces;
        std::size_t total = 0;
    };

    Layout layout(int n) const {
        Layout lay;
        for (int i = P_.min_deg; i + n <= L_; ++i) {
            const auto& src = P_.summands(i);
            const auto& tgt = P_.summands(i + n);
            for (std::size_t sp = 0; sp < src.size(); ++sp)
                for (std::size_t tp = 0; tp < tgt.size(); ++tp) {
                    Piece pc{i, sp, tp, src[sp], tgt[tp], lay.total,
                             pair_basis_[src[sp]][tgt[tp]].cols()};
                    lay.total += pc.dim;
                    lay.pieces.push_back(pc);
                }
        }
        return lay;
    }

    struct Space {
        Layout lay;
        FpMatrix cycles;             // basis columns in full hom coordinates
        FpMatrix boundaries;         // basis columns
        FpMatrix reps;               // full-coordinate homology representatives
        FpMatrix window;             // projection onto the window coordinates
        FpMatrix window_reps;        // window images of the representatives
        FpMatrix window_boundaries;  // window image of the boundary space
    };

    /// Z_n, B_n and canonical homology representatives at degree n.
    Space space(int n) const {
        Space sp;
        sp.lay = layout(n);
        const std::uint32_t p = P_.A->p();
        // cycles: d f - f d = 0, one row block per (i in [min, L-n], s, u); at the
        // bottom edge the f d side is zero but the d f condition is real, at the
        // top edge (i = L-n+1) no condition is imposed: the truncated complex
        // cannot see the component that would balance it
        Layout out_lay = constraint_layout(n);
        FpMatrix sys(p, out_lay.total, sp.lay.total);
        for (const Piece& pc : sp.lay.pieces) {
            // dic: P_{i+n} -> P_{i+n-1}: contributes  x . D[u][t]
            if (pc.i + n >= P_.min_deg + 1) {
                const auto& d = P_.diff_elements(pc.i + n);
                const auto& tgt = P_.summands(pc.i + n - 1);
                for (std::size_t up = 0; up < tgt.size(); ++up) {
                    const Vec& c = d[up][pc.t_pos];
                    if (P_.A->is_zero(c)) continue;
                    add_block(sys, find_offset(out_lay, pc.i, pc.s_pos, up), pc.offset,
                              right_product_map(pc.s, pc.t, c, tgt[up]), 1);
                }
            }
            // f d: P_{i+1} -> P_i -> P_{i+n}: contributes  D[s][s'] . x  at row (i+1, s', t)
            if (pc.i + 1 + n <= L_) {
                const auto& d = P_.diff_elements(pc.i + 1);
                const auto& src_above = P_.summands(pc.i + 1);
                for (std::size_t s2 = 0; s2 < src_above.size(); ++s2) {
                    const Vec& c = d[pc.s_pos][s2];
                    if (P_.A->is_zero(c)) continue;
                    add_block(sys, find_offset(out_lay, pc.i + 1, s2, pc.t_pos), pc.offset,
                              left_product_map(src_above[s2], pc.s, c, pc.t), P_.A->p() - 1);
                }
            }
        }
        sp.cycles = nullspace(sys);
        // boundaries: image of h -> d h + h d from degree n+1
        Layout hlay = layout(n + 1);
        FpMatrix bmap(p, sp.lay.total, hlay.total);
        for (const Piece& pc : hlay.pieces) {
            // d h: P_i -> P_{i+n+1} -> P_{i+n}
            {
                const auto& d = P_.diff_elements(pc.i + n + 1);
                const auto& tgt = P_.summands(pc.i + n);
                for (std::size_t up = 0; up < tgt.size(); ++up) {
                    const Vec& c = d[up][pc.t_pos];
                    if (P_.A->is_zero(c)) continue;
                    add_block(bmap, find_offset(sp.lay, pc.i, pc.s_pos, up), pc.offset,
                              right_product_map(pc.s, pc.t, c, tgt[up]), 1);
                }
            }
            // h d: P_{i+1} -> P_i -> P_{i+n+1} lands at source degree i+1
            if (pc.i + 1 <= L_ && pc.i + 1 + n <= L_) {
                const auto& d = P_.diff_elements(pc.i + 1);
                const auto& src_above = P_.summands(pc.i + 1);
                for (std::size_t s2 = 0; s2 < src_above.size(); ++s2) {
                    const Vec& c = d[pc.s_pos][s2];
                    if (P_.A->is_zero(c)) continue;
                    add_block(bmap, find_offset(sp.lay, pc.i + 1, s2, pc.t_pos), pc.offset,
                              left_product_map(src_above[s2], pc.s, c, pc.t), 1);
                }
            }
        }
        sp.boundaries = column_space(bmap);
        if (!in_span(sp.cycles, sp.boundaries))
            throw CheckError("endomorphism boundaries are not cycles");
        // window projection: keep the coordinates of pieces in low degrees
        std::size_t wdim = 0;
        for (const Piece& pc : sp.lay.pieces)
            if (pc.i <= window_top_) wdim += pc.dim;
        sp.window = FpMatrix(p, wdim, sp.lay.total);
        std::size_t row = 0;
        for (const Piece& pc : sp.lay.pieces) {
            if (pc.i > window_top_) continue;
            for (std::size_t r = 0; r < pc.dim; ++r) sp.window.at(row++, pc.offset + r) = 1;
        }
        sp.window_boundaries = column_space(sp.window * sp.boundaries);
        // representatives: full cycles whose window images are independent
        // modulo the window boundaries
        FpMatrix seen = sp.window_boundaries;
        std::vector<std::size_t> chosen;
        for (std::size_t c = 0; c < sp.cycles.cols(); ++c) {
            FpMatrix img = sp.window * sp.cycles.column_at(c);
            FpMatrix bigger = seen.hcat(img);
            if (rank(bigger) > seen.cols()) {
                chosen.push_back(c);
                seen = column_space(bigger);
            }
        }
        sp.reps = FpMatrix(p, sp.lay.total, chosen.size());
        for (std::size_t j = 0; j < chosen.size(); ++j)
            for (std::size_t r = 0; r < sp.lay.total; ++r)
                sp.reps.at(r, j) = sp.cycles.at(r, chosen[j]);
        sp.window_reps = sp.window * sp.reps;
        return sp;
    }

    /// Composition of hom-space coordinate vectors: apply g (degree n) then f
    /// (degree m); the result has degree m + n.
    FpMatrix compose(int m, const FpMatrix& fco, int n, const FpMatrix& gco) const {
        const std::uint32_t p = P_.A->p();
        Layout fl = layout(m), gl = layout(n), ol = layout(m + n);
        FpMatrix out(p, ol.total, 1);
        for (const Piece& gp : gl.pieces) {
            Vec g_elt = piece_element(gl, gco, gp);
            if (P_.A->is_zero(g_elt)) continue;
            for (const Piece& fp : fl.pieces) {
                if (fp.i != gp.i + n || fp.s_pos != gp.t_pos) continue;
                Vec f_elt = piece_element(fl, fco, fp);
                if (P_.A->is_zero(f_elt)) continue;
                Vec prod = P_.A->mul(g_elt, f_elt);
                // locate output piece (gp.i, gp.s_pos, fp.t_pos)
                const std::size_t off = find_offset(ol, gp.i, gp.s_pos, fp.t_pos);
                const FpMatrix& basis = pair_basis_[gp.s][fp.t];
                auto sol = solve(basis, FpMatrix::column(p, prod));
                if (!sol.solvable) throw CheckError("endomorphism product leaves its component space");
                for (std::size_t r = 0; r < basis.cols(); ++r)
                    out.at(off + r, 0) = static_cast<std::uint8_t>((out.at(off + r, 0) + sol.x.at(r, 0)) % p);
            }
        }
        return out;
    }

    /// Coefficients of a cycle with respect to the homology representatives,
    /// read off inside the window.
    Vec project(const Space& sp, const FpMatrix& coords) const {
        FpMatrix img = sp.window * coords;
        if (sp.reps.cols() == 0) {
            if (!in_span(sp.window_boundaries, img) && !img.is_zero())
                throw CheckError("projection: nonzero class in zero homology");
            return {};
        }
        FpMatrix basis = sp.window_reps.hcat(sp.window_boundaries);
        auto sol = solve(basis, img);
        if (!sol.solvable) throw CheckError("projection: element is not a cycle mod boundaries");
        Vec out(sp.reps.cols());
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = sol.x.at(r, 0);
        return out;
    }

    /// Identity endomorphism in degree-0 coordinates.
    FpMatrix identity_coords() const {
        Layout lay = layout(0);
        FpMatrix out(P_.A->p(), lay.total, 1);
        for (const Piece& pc : lay.pieces) {
            if (pc.s_pos != pc.t_pos || pc.s != pc.t) continue;
            auto sol = solve(pair_basis_[pc.s][pc.t], FpMatrix::column(P_.A->p(), P_.idems[pc.s]));
            if (!sol.solvable) throw CheckError("idempotent missing from its endomorphism space");
            for (std::size_t r = 0; r < sol.x.rows(); ++r)
                out.at(pc.offset + r, 0) = sol.x.at(r, 0);
        }
        return out;
    }

    const ProjComplex& complex() const { return P_; }
    int top_degree() const { return L_; }
    const FpMatrix& pair_space(std::size_t s, std::size_t t) const { return pair_basis_[s][t]; }

private:
    Layout constraint_layout(int n) const {
        // one row block per (i, s in terms[i], u in terms[i+n-1]), i in [min, L-n]
        Layout lay;
        for (int i = P_.min_deg; i + n <= L_; ++i) {
            if (i + n - 1 > L_ || i + n - 1 < P_.min_deg) continue;
            const auto& src = P_.summands(i);
            const auto& tgt = P_.summands(i + n - 1);
            for (std::size_t sp = 0; sp < src.size(); ++sp)
                for (std::size_t tp = 0; tp < tgt.size(); ++tp) {
                    Piece pc{i, sp, tp, src[sp], tgt[tp], lay.total,
                             pair_basis_[src[sp]][tgt[tp]].cols()};
                    lay.total += pc.dim;
                    lay.pieces.push_back(pc);
                }
        }
        return lay;
    }

    std::size_t find_offset(const Layout& lay, int i, std::size_t s_pos, std::size_t t_pos) const {
        for (const Piece& pc : lay.pieces)
            if (pc.i == i && pc.s_pos == s_pos && pc.t_pos == t_pos) return pc.offset;
        throw CheckError("endomorphism layout lookup failed");
    }

    Vec piece_element(const Layout& lay, const FpMatrix& coords, const Piece& pc) const {
        const std::uint32_t p = P_.A->p();
        Vec out = P_.A->zero_element();
        const FpMatrix& basis = pair_basis_[pc.s][pc.t];
        for (std::size_t c = 0; c < pc.dim; ++c) {
            const std::uint32_t cf = coords.at(pc.offset + c, 0);
            if (!cf) continue;
            for (std::size_t r = 0; r < out.size(); ++r)
                out[r] = (out[r] + std::uint64_t(cf) * basis.at(r, c)) % p;
        }
        return out;
    }

    /// Matrix of x -> x*c from f_s A f_t to f_s A f_u.
    FpMatrix right_product_map(std::size_t s, std::size_t t, const Vec& c, std::size_t u) const {
        auto sol = solve_many(pair_basis_[s][u], P_.A->right_mult(c) * pair_basis_[s][t]);
        if (!sol.solvable) throw CheckError("component product leaves its space");
        return sol.x;
    }

    /// Matrix of x -> c*x from f_t A f_u to f_s A f_u (c in f_s A f_t).
    FpMatrix left_product_map(std::size_t s, std::size_t t, const Vec& c, std::size_t u) const {
        auto sol = solve_many(pair_basis_[s][u], P_.A->left_mult(c) * pair_basis_[t][u]);
        if (!sol.solvable) throw CheckError("component product leaves its space");
        return sol.x;
    }

    void add_block(FpMatrix& sys, std::size_t row0, std::size_t col0, const FpMatrix& block,
                   std::uint32_t scale) const {
        const std::uint32_t p = P_.A->p();
        for (std::size_t r = 0; r < block.rows(); ++r)
            for (std::size_t c = 0; c < block.cols(); ++c) {
                const std::uint32_t add = std::uint32_t(block.at(r, c)) * scale % p;
                sys.at(row0 + r, col0 + c) =
                    static_cast<std::uint8_t>((sys.at(row0 + r, col0 + c) + add) % p);
            }
    }

    ProjComplex P_;
    int L_;
    int window_top_;
    std::vector<std::vector<FpMatrix>> pair_basis_;  // [idem s][idem t]
};

/// Homology ring presented by per-degree dimensions, a chosen basis and
/// multiplication structure constants.
struct GradedRing {
    std::uint32_t p = 3;
    std::vector<std::size_t> dims;  // degrees 0..trusted_to
    int trusted_to = 0;
    std::vector<std::string> labels;   // one per (degree, index), flattened
    // products[d1][i][d2][j]: coefficient vector in degree d1+d2
    std::map<std::tuple<int, std::size_t, int, std::size_t>, Vec> products;
    Vec unit_coords;  // in degree 0

    std::size_t dim_at(int d) const {
        return (d >= 0 && d <= trusted_to) ? dims[std::size_t(d)] : 0;
    }

    const Vec& product(int d1, std::size_t i, int d2, std::size_t j) const {
        auto it = products.find({d1, i, d2, j});
        if (it == products.end()) throw InputError("graded ring product outside the trusted range");
        return it->second;
    }

    void validate() const {
        if (dims.empty() || dims[0] == 0) throw CheckError("graded ring without a degree-0 component");
        // unital
        for (int d = 0; d <= trusted_to; ++d)
            for (std::size_t i = 0; i < dim_at(d); ++i) {
                Vec lhs = mul_element(0, unit_coords, d, basis_coords(d, i));
                if (lhs != basis_coords(d, i)) throw CheckError("graded ring unit fails on the left");
                Vec rhs = mul_element(d, basis_coords(d, i), 0, unit_coords);
                if (rhs != basis_coords(d, i)) throw CheckError("graded ring unit fails on the right");
            }
        // associativity on basis triples within range
        for (int d1 = 0; d1 <= trusted_to; ++d1)
            for (int d2 = 0; d1 + d2 <= trusted_to; ++d2)
                for (int d3 = 0; d1 + d2 + d3 <= trusted_to; ++d3)
                    for (std::size_t i = 0; i < dim_at(d1); ++i)
                        for (std::size_t j = 0; j < dim_at(d2); ++j)
                            for (std::size_t k = 0; k < dim_at(d3); ++k) {
                                Vec ij = mul_element(d1, basis_coords(d1, i), d2, basis_coords(d2, j));
                                Vec jk = mul_element(d2, basis_coords(d2, j), d3, basis_coords(d3, k));
                                Vec lhs = mul_element(d1 + d2, ij, d3, basis_coords(d3, k));
                                Vec rhs = mul_element(d1, basis_coords(d1, i), d2 + d3, jk);
                                if (lhs != rhs)
                                    throw CheckError("graded ring is not associative at degrees " +
                                                     std::to_string(d1) + "," + std::to_string(d2) + "," +
                                                     std::to_string(d3));
                            }
    }

    Vec basis_coords(int d, std::size_t i) const {
        Vec v(dim_at(d), 0);
        v[i] = 1;
        return v;
    }

    /// Product of coefficient vectors in degrees d1 and d2.
    Vec mul_element(int d1, const Vec& x, int d2, const Vec& y) const {
        Vec out(dim_at(d1 + d2), 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (!y[j]) continue;
                const Vec& pr = product(d1, i, d2, j);
                const std::uint64_t cf = std::uint64_t(x[i]) * y[j] % p;
                for (std::size_t k = 0; k < out.size(); ++k)
                    out[k] = (out[k] + cf * pr[k]) % p;
            }
        }
        return out;
    }
};

/// Build the graded ring of an endomorphism-homology computation up to the
/// given degree.
inline GradedRing graded_ring_from_endo(const EndoHomology& endo, int up_to) {
    GradedRing ring;
    ring.p = endo.complex().A->p();
    ring.trusted_to = up_to;
    std::vector<EndoHomology::Space> spaces;
    for (int n = 0; n <= up_to; ++n) {
        spaces.push_back(endo.space(n));
        ring.dims.push_back(spaces.back().reps.cols());
        for (std::size_t i = 0; i < spaces.back().reps.cols(); ++i)
            ring.labels.push_back("h" + std::to_string(n) + "_" + std::to_string(i));
    }
    ring.unit_coords = endo.project(spaces[0], endo.identity_coords());
    for (int d1 = 0; d1 <= up_to; ++d1)
        for (int d2 = 0; d1 + d2 <= up_to; ++d2)
            for (std::size_t i = 0; i < ring.dims[std::size_t(d1)]; ++i)
                for (std::size_t j = 0; j < ring.dims[std::size_t(d2)]; ++j) {
                    FpMatrix prod = endo.compose(d1, spaces[std::size_t(d1)].reps.column_at(i), d2,
                                                 spaces[std::size_t(d2)].reps.column_at(j));
                    // note: compose applies its second argument first
                    ring.products[{d1, i, d2, j}] =
                        endo.project(spaces[std::size_t(d1 + d2)], prod);
                }
    ring.validate();
    return ring;
}

/// The projective model of the localized algebra as the cone of the
/// cellularization map: degree 0 is A, degree n >= 1 is the (n-1)-st term of
/// A(1-e) (x)_c P(minimal resolution of (1-e)A over the corner c).
inline ProjComplex localization_cone_model(const AlgebraPtr& A, const Idempotent& e,
                                           std::size_t length) {
    ProjComplex Q;
    Q.A = A;
    const std::size_t one = Q.register_idem(A->unit());
    Q.terms.push_back({one});
    const Vec f = A->one_minus(e.element);
    if (A->is_zero(f)) {
        for (std::size_t n = 1; n <= length; ++n) {
            Q.terms.push_back({});
            Q.diffs.push_back({});
        }
        return Q;
    }
    CornerAlgebra corner = corner_algebra(A, f);
    AlgebraTools ctools = make_tools(corner.algebra);
    const FpMatrix fA = column_space(A->left_mult(f));
    AModule M = subspace_module(A, fA, corner.algebra, corner.basis, Side::Left);
    MinResolution res = minimal_resolution(ctools, M, length - 1);
    // embed the corner pims into A
    std::vector<std::size_t> embedded;
    for (const auto& fc : res.complex.idems) {
        Vec in_A = A->zero_element();
        for (std::size_t j = 0; j < corner.algebra->dim(); ++j)
            for (std::size_t r = 0; r < A->dim(); ++r)
                in_A[r] = (in_A[r] + std::uint64_t(fc[j]) * corner.basis.at(r, j)) % A->p();
        embedded.push_back(Q.register_idem(in_A));
    }
    // degree 1 -> 0: x |-> x * phi_t with phi_t the cover image inside (1-e)A
    {
        const auto& term0 = res.complex.summands(0);
        std::vector<std::vector<Vec>> d(1);
        for (std::size_t g = 0; g < term0.size(); ++g) {
            Vec phi = A->zero_element();
            const Vec& img = res.gen_images[g];  // coordinates in M = (1-e)A
            for (std::size_t j = 0; j < img.size(); ++j)
                for (std::size_t r = 0; r < A->dim(); ++r)
                    phi[r] = (phi[r] + std::uint64_t(img[j]) * fA.at(r, j)) % A->p();
            d[0].push_back(std::move(phi));
        }
        Q.terms.push_back({});
        for (std::size_t g = 0; g < term0.size(); ++g)
            Q.terms.back().push_back(embedded[res.complex.terms[0][g]]);
        Q.diffs.push_back(std::move(d));
    }
    // higher degrees: the resolution differentials, embedded into A and
    // negated (cone convention)
    for (int n = 1; n <= res.complex.max_deg(); ++n) {
        const auto& dn = res.complex.diff_elements(n);
        std::vector<std::vector<Vec>> d(dn.size());
        for (std::size_t t = 0; t < dn.size(); ++t)
            for (std::size_t s = 0; s < dn[t].size(); ++s) {
                Vec in_A = A->zero_element();
                for (std::size_t j = 0; j < corner.algebra->dim(); ++j) {
                    const std::uint32_t cf = dn[t][s][j];
                    if (!cf) continue;
                    for (std::size_t r = 0; r < A->dim(); ++r)
                        in_A[r] = (in_A[r] + std::uint64_t(cf) * corner.basis.at(r, j)) % A->p();
                }
                for (auto& v : in_A) v = (A->p() - v) % A->p();
                d[t].push_back(std::move(in_A));
            }
        Q.terms.push_back({});
        for (std::size_t idx : res.complex.terms[std::size_t(n)])
            Q.terms.back().push_back(embedded[idx]);
        Q.diffs.push_back(std::move(d));
    }
    Q.verify_d2();
    return Q;
}

/// The cellularization complex A(1-e) (x)^L_c (1-e)A over the corner algebra
/// c = (1-e)A(1-e), carrying the left A-action; zero when e = 1.
inline AComplex cellularization(const AlgebraPtr& A, const Idempotent& e, std::size_t up_to) {
    if (!e.verified) throw InputError("cellularization: idempotent is not verified");
    const Vec f = A->one_minus(e.element);
    if (A->is_zero(f)) {
        AComplex z;
        z.algebra = A;
        z.min_deg = 0;
        z.max_deg = static_cast<int>(up_to);
        z.dims.assign(up_to + 1, 0);
        z.diffs.assign(up_to, FpMatrix(A->p(), 0, 0));
        z.complete = true;
        return z;
    }
    CornerAlgebra corner = corner_algebra(A, f);
    AlgebraTools ctools = make_tools(corner.algebra);
    const FpMatrix fA = column_space(A->left_mult(f));
    const FpMatrix Af = column_space(A->right_mult(f));
    AModule left_mod = subspace_module(A, fA, corner.algebra, corner.basis, Side::Left);
    AModule right_mod = subspace_module(A, Af, corner.algebra, corner.basis, Side::Right);
    MinResolution res = minimal_resolution(ctools, left_mod, up_to + 1);
    // outer left A-action on A(1-e)
    std::vector<FpMatrix> outer;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        auto sol = solve_many(Af, A->left_mult(A->basis_element(i)) * Af);
        if (!sol.solvable) throw CheckError("A(1-e) is not stable under the left action");
        outer.push_back(sol.x);
    }
    return tensor_with_resolution(right_mod, res, A, outer);
}

/// Result of the localization-homology computation: a graded ring, the model
/// that produced it, and any findings raised while cross-checking the
/// squeezed recipe against the cone model.
struct LocalizationResult {
    GradedRing ring;
    std::vector<std::size_t> dims;
    std::string model;  // "squeezed" or "cone"
    std::vector<std::string> findings;
};

/// Homology ring of the derived localization L_e A through degree up_to, with
/// products computed by composing canonical chain-map representatives.  The
/// squeezed two-projective recipe is attempted first and validated degreewise
/// against the cone model; on any mismatch the cone model (always a faithful
/// projective model of L_e A) supplies the answer and the mismatch is
/// reported as a finding.
inline LocalizationResult localization_homology(const AlgebraPtr& A, const Idempotent& e, int up_to,
                                                int margin = 6) {
    if (margin < 4) throw InputError("localization_homology: margin must be at least 4");
    LocalizationResult out;
    ProjComplex cone_model = localization_cone_model(A, e, std::size_t(up_to + margin));
    AComplex cone_scalar = cone_model.to_acomplex(false, false, up_to + margin - 2);
    std::vector<std::size_t> cone_dims;
    for (int n = 0; n <= up_to; ++n) cone_dims.push_back(homology(cone_scalar, n).dim);

    bool use_squeezed = true;
    Resolution squeezed;
    try {
        squeezed = squeezed_resolution(A, e, std::size_t(up_to + margin));
    } catch (const ConstructionError& err) {
        use_squeezed = false;
        out.findings.push_back(std::string("squeezed recipe unavailable: ") + err.what());
    }
    if (use_squeezed) {
        std::vector<std::size_t> sq_dims;
        for (int n = 0; n <= up_to; ++n) sq_dims.push_back(homology(squeezed.complex, n).dim);
        if (sq_dims != cone_dims) {
            use_squeezed = false;
            std::ostringstream msg;
            msg << "squeezed-recipe homology disagrees with the localization model";
            for (int n = 0; n <= up_to; ++n)
                if (sq_dims[std::size_t(n)] != cone_dims[std::size_t(n)]) {
                    msg << " (first at degree " << n << ": " << sq_dims[std::size_t(n)] << " vs "
                        << cone_dims[std::size_t(n)] << ")";
                    break;
                }
            msg << "; the recipe is only certified for the symmetric-group example";
            out.findings.push_back(msg.str());
        }
    }
    const ProjComplex& model = use_squeezed ? *squeezed.proj : cone_model;
    out.model = use_squeezed ? "squeezed" : "cone";
    EndoHomology endo(model, margin - 2);
    out.ring = graded_ring_from_endo(endo, up_to);
    out.dims = out.ring.dims;
    // gate: endomorphism classes of the model biject with its homology classes
    if (out.dims != cone_dims)
        throw CheckError("endomorphism homology differs from the module homology of L_e A");
    return out;
}

/// Named presentation of a graded ring: generators with degrees, relations as
/// pairs of words (sequences of generator indices).
struct Presentation {
    struct Generator {
        std::string name;
        int degree;
    };
    std::vector<Generator> generators;
    struct Relation {
        std::string label;
        std::vector<std::size_t> lhs, rhs;  // generator index sequences
    };
    std::vector<Relation> relations;
};

struct PresentationReport {
    bool generators_available = false;
    std::vector<std::pair<std::string, bool>> relations;
    bool generators_span = false;
    std::vector<std::uint32_t> scaling;  // chosen scalar per generator
    std::string detail;

    bool pass() const {
        if (!generators_available || !generators_span) return false;
        for (const auto& r : relations)
            if (!r.second) return false;
        return true;
    }
};

/// Check the relations of a presentation as structure-constant identities and
/// verify that monomials in the generators span every degree up to the
/// trusted bound.  Each generator is the canonical basis class of its degree
/// up to a nonzero scalar; the relations must hold simultaneously for some
/// choice of scalars, which is reported.  Failures are reported, never thrown.
inline PresentationReport verify_presentation(const GradedRing& ring, const Presentation& pres) {
    PresentationReport rep;
    rep.generators_available = true;
    for (const auto& g : pres.generators)
        if (g.degree < 0 || g.degree > ring.trusted_to || ring.dim_at(g.degree) == 0) {
            rep.generators_available = false;
            rep.detail = "generator " + g.name + " has empty degree " + std::to_string(g.degree);
            return rep;
        }
    auto eval_word = [&](const std::vector<std::size_t>& word,
                         const std::vector<std::uint32_t>& scale) -> std::pair<int, Vec> {
        int deg = 0;
        Vec acc = ring.unit_coords;
        for (std::size_t gi : word) {
            const auto& g = pres.generators.at(gi);
            Vec gen = ring.basis_coords(g.degree, 0);
            for (auto& v : gen) v = v * scale[gi] % ring.p;
            if (deg + g.degree > ring.trusted_to) return {-1, {}};
            acc = ring.mul_element(deg, acc, g.degree, gen);
            deg += g.degree;
        }
        return {deg, acc};
    };
    auto relations_for = [&](const std::vector<std::uint32_t>& scale) {
        std::vector<std::pair<std::string, bool>> out;
        for (const auto& rel : pres.relations) {
            auto lhs = eval_word(rel.lhs, scale);
            auto rhs = eval_word(rel.rhs, scale);
            bool ok = lhs.first >= 0 && rhs.first >= 0 && lhs.first == rhs.first &&
                      lhs.second == rhs.second;
            out.emplace_back(rel.label, ok);
        }
        return out;
    };
    std::vector<std::uint32_t> scale(pres.generators.size(), 1);
    rep.relations = relations_for(scale);
    rep.scaling = scale;
    auto all_ok = [](const std::vector<std::pair<std::string, bool>>& rels) {
        for (const auto& r : rels)
            if (!r.second) return false;
        return true;
    };
    if (!all_ok(rep.relations) && !pres.generators.empty()) {
        // scan the scalar torus in canonical order
        for (;;) {
            std::size_t pos = 0;
            while (pos < scale.size() && scale[pos] == ring.p - 1) scale[pos++] = 1;
            if (pos == scale.size()) break;
            ++scale[pos];
            auto rels = relations_for(scale);
            if (all_ok(rels)) {
                rep.relations = std::move(rels);
                rep.scaling = scale;
                break;
            }
        }
    }
    // spanning: close the unit under multiplication by the generators
    std::vector<FpMatrix> span;  // per degree, basis columns of the generated subspace
    for (int d = 0; d <= ring.trusted_to; ++d)
        span.push_back(FpMatrix(ring.p, ring.dim_at(d), 0));
    {
        FpMatrix unit_col(ring.p, ring.dim_at(0), 1);
        for (std::size_t i = 0; i < ring.unit_coords.size(); ++i)
            unit_col.at(i, 0) = static_cast<std::uint8_t>(ring.unit_coords[i]);
        span[0] = column_space(unit_col);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (int d = 0; d <= ring.trusted_to; ++d) {
            if (span[std::size_t(d)].cols() == 0) continue;
            for (const auto& g : pres.generators) {
                const int nd = d + g.degree;
                if (nd > ring.trusted_to) continue;
                for (std::size_t c = 0; c < span[std::size_t(d)].cols(); ++c) {
                    Vec x(ring.dim_at(d));
                    for (std::size_t r = 0; r < x.size(); ++r) x[r] = span[std::size_t(d)].at(r, c);
                    Vec prod = ring.mul_element(d, x, g.degree, ring.basis_coords(g.degree, 0));
                    FpMatrix col(ring.p, ring.dim_at(nd), 1);
                    for (std::size_t r = 0; r < prod.size(); ++r)
                        col.at(r, 0) = static_cast<std::uint8_t>(prod[r]);
                    FpMatrix bigger = span_sum(span[std::size_t(nd)], col);
                    if (bigger.cols() > span[std::size_t(nd)].cols()) {
                        span[std::size_t(nd)] = std::move(bigger);
                        grew = true;
                    }
                }
            }
        }
    }
    rep.generators_span = true;
    for (int d = 0; d <= ring.trusted_to; ++d)
        if (span[std::size_t(d)].cols() != ring.dim_at(d)) {
            rep.generators_span = false;
            rep.detail = "generators do not span degree " + std::to_string(d);
            break;
        }
    return rep;
}

struct CofibreReport {
    bool pass = true;
    std::vector<std::size_t> localization_dims;   // H_n(L_e A)
    std::vector<std::size_t> cellular_dims;       // H_n of the cellularization
    std::vector<std::string> failures;
};

/// Long-exact-sequence bookkeeping for  cellularization -> A -> L_e A:
/// with A concentrated in degree 0, H_n(L_e A) = H_{n-1}(cellularization) for
/// n >= 2, and the degree <= 1 part is the four-term exact sequence
/// 0 -> H_1(L_e A) -> H_0(cell) -> A -> H_0(L_e A) -> 0.
inline CofibreReport cofibre_check(const AlgebraPtr& A, const Idempotent& e, int up_to) {
    CofibreReport rep;
    auto loc = localization_homology(A, e, up_to);
    rep.localization_dims = loc.dims;
    AComplex cell = cellularization(A, e, std::size_t(up_to));
    for (int n = 0; n <= up_to; ++n) rep.cellular_dims.push_back(homology(cell, n).dim);
    for (int n = 2; n <= up_to; ++n) {
        if (!homology(cell, n - 1).trusted) {
            rep.pass = false;
            rep.failures.push_back("cellularization homology untrusted at degree " + std::to_string(n - 1));
            continue;
        }
        if (rep.localization_dims[std::size_t(n)] != rep.cellular_dims[std::size_t(n - 1)]) {
            rep.pass = false;
            rep.failures.push_back("H_" + std::to_string(n) + "(L_eA) = " +
                                   std::to_string(rep.localization_dims[std::size_t(n)]) +
                                   " but H_" + std::to_string(n - 1) + "(cell) = " +
                                   std::to_string(rep.cellular_dims[std::size_t(n - 1)]));
        }
    }
    const long alt = long(rep.localization_dims[1]) - long(rep.cellular_dims[0]) + long(A->dim()) -
                     long(rep.localization_dims[0]);
    if (alt != 0) {
        rep.pass = false;
        rep.failures.push_back("low-degree exactness fails: alternating sum " + std::to_string(alt));
    }
    return rep;
}

struct BensonReport {
    bool pass = true;
    std::size_t middle_dim = 0;        // dim of the underived corner tensor
    std::size_t quotient_dim = 0;      // dim F_p[H / P(H)]
    std::size_t h1 = 0;                // dim H_1(L_e A)
    std::size_t p_perfect_order = 0;   // |P(H)|
    std::vector<std::string> failures;
};

/// Nodewise exactness of the five-term sequence
///   0 -> H_1(L_eA) -> A(1-e) (x)_c (1-e)A -> A -> F_p[H/P(H)] -> 0
/// for a group algebra A = F_p[H]: the middle tensor is underived, P(H) is
/// the maximal p-perfect subgroup, and the two middle maps are explicit.
inline BensonReport benson_sequence_check(const AlgebraPtr& A, const GroupTable& table,
                                          const Idempotent& e) {
    if (A->dim() != table.order()) throw InputError("benson check: algebra does not match the table");
    BensonReport rep;
    const std::uint32_t p = A->p();
    auto perfect = table.max_p_perfect_subgroup(p);
    rep.p_perfect_order = perfect.size();
    auto quotient_table = table.quotient(perfect, table.name() + "/P");
    auto Q = group_algebra(quotient_table, p);
    rep.quotient_dim = Q->dim();
    auto cosets = table.coset_map(perfect);
    FpMatrix qmap(p, Q->dim(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i) qmap.at(cosets[i], i) = 1;
    // the multiplication map out of the underived corner tensor, from the cone model
    ProjComplex cone = localization_cone_model(A, e, 3);
    FpMatrix mu = cone.realize_diff(1);              // C_0 -> A
    FpMatrix boundary = cone.max_deg() >= 2 ? cone.realize_diff(2)
                                            : FpMatrix(p, mu.cols(), 0);
    FpMatrix h0basis = complement_in(FpMatrix::identity(p, mu.cols()), column_space(boundary));
    rep.middle_dim = h0basis.cols();
    FpMatrix mu_bar = mu * h0basis;                  // T -> A
    // node Q: surjectivity of A -> F_p[H/P]
    if (rank(qmap) != Q->dim()) {
        rep.pass = false;
        rep.failures.push_back("A -> F_p[H/P(H)] is not surjective");
    }
    // node A: im(mu) = ker(A -> Q)
    if (!same_subspace(column_space(mu), nullspace(qmap))) {
        rep.pass = false;
        rep.failures.push_back("image of the corner tensor differs from ker(A -> F_p[H/P(H)])");
    }
    // node T: ker(mu_bar) realizes H_1(L_e A)
    auto loc = localization_homology(A, e, 1);
    rep.h1 = loc.dims.size() > 1 ? loc.dims[1] : 0;
    const std::size_t ker_mu = mu_bar.cols() - rank(mu_bar);
    if (ker_mu != rep.h1) {
        rep.pass = false;
        rep.failures.push_back("ker(T -> A) has dimension " + std::to_string(ker_mu) +
                               " but H_1(L_eA) = " + std::to_string(rep.h1));
    }
    // alternating-sum identity across the four nonzero terms
    const long alt = long(rep.h1) - long(rep.middle_dim) + long(A->dim()) - long(rep.quotient_dim);
    if (alt != 0) {
        rep.pass = false;
        rep.failures.push_back("five-term alternating sum is " + std::to_string(alt));
    }
    return rep;
}

struct HilbertReport {
    std::vector<std::size_t> engine;        // localization homology dims
    std::vector<std::size_t> bounded;       // #{(i,j): i(2q-2)+j(2q-1)=n, j <= 1}
    std::vector<std::size_t> polynomial;    // same with j unrestricted
    bool match_bounded = false;
    bool match_polynomial = false;
    std::vector<std::string> findings;
};

/// Compare the localization homology of F_p[C_p x| C_q] against the predicted
/// graded dimensions on generators of degrees 2q-2 and 2q-1.  Two readings are
/// reported: the square-zero reading (the odd generator squares to zero,
/// exponent j <= 1) and the polynomial reading (j unrestricted).  Mismatches
/// are findings, never errors.
inline HilbertReport hilbert_series_check(const AlgebraPtr& A, const GroupTable& table,
                                          const Idempotent& e, std::uint32_t q, int up_to) {
    const std::uint32_t p = A->p();
    if (!fp::is_prime(q)) throw InputError("hilbert check: q must be prime");
    if ((p - 1) % q != 0) throw InputError("hilbert check: q must divide p - 1");
    if (A->dim() != std::size_t(p) * q || table.order() != A->dim())
        throw InputError("hilbert check: the group must have order p*q");
    HilbertReport rep;
    auto loc = localization_homology(A, e, up_to);
    rep.engine = loc.dims;
    for (const auto& f : loc.findings) rep.findings.push_back(f);
    const int dx = 2 * int(q) - 2, dy = 2 * int(q) - 1;
    for (int n = 0; n <= up_to; ++n) {
        std::size_t bounded = 0, poly = 0;
        for (int j = 0; j * dy <= n; ++j) {
            if ((n - j * dy) % dx == 0) {
                ++poly;
                if (j <= 1) ++bounded;
            }
        }
        rep.bounded.push_back(bounded);
        rep.polynomial.push_back(poly);
    }
    rep.match_bounded = rep.engine == rep.bounded;
    rep.match_polynomial = rep.engine == rep.polynomial;
    for (int n = 0; n <= up_to; ++n) {
        if (rep.engine[std::size_t(n)] != rep.bounded[std::size_t(n)])
            rep.findings.push_back("degree " + std::to_string(n) + ": engine " +
                                   std::to_string(rep.engine[std::size_t(n)]) +
                                   " vs square-zero reading " +
                                   std::to_string(rep.bounded[std::size_t(n)]));
        if (rep.engine[std::size_t(n)] != rep.polynomial[std::size_t(n)])
            rep.findings.push_back("degree " + std::to_string(n) + ": engine " +
                                   std::to_string(rep.engine[std::size_t(n)]) +
                                   " vs polynomial reading " +
                                   std::to_string(rep.polynomial[std::size_t(n)]));
    }
    return rep;
}

} // namespace localg
