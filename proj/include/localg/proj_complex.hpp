#pragma once

#include "localg/complex.hpp"
#include "localg/structure.hpp"

#include <map>
#include <utility>
#include <vector>

namespace localg {

/// Radical, blocks, simples and primitive idempotents of one algebra,
/// computed once and shared.
struct AlgebraTools {
    AlgebraPtr A;
    StructureData st;
    std::vector<SimpleModule> simples;
    PimDecomposition pims;
};

inline AlgebraTools make_tools(const AlgebraPtr& A) {
    AlgebraTools t;
    t.A = A;
    t.st = compute_structure(A);
    t.simples = simple_modules(A, t.st);
    t.pims = pim_decomposition(A, t.st);
    return t;
}

/// Bounded complex of projective left modules: each term is a direct sum of
/// modules A*f for idempotents f in a registered list, and each differential
/// is an element matrix, the block Af_s -> Af_t being right multiplication by
/// an element of f_s A f_t.  Composition of blocks is multiplication in A in
/// application order.
class ProjComplex {
public:
    AlgebraPtr A;
    int min_deg = 0;
    std::vector<Vec> idems;
    std::vector<FpMatrix> idem_basis;                      // basis of A*f, per idem
    std::vector<std::vector<std::size_t>> terms;           // per degree: summand idem indices
    std::vector<std::vector<std::vector<Vec>>> diffs;      // diffs[k]: degree min+k+1 -> min+k,
                                                           // [target block][source block] element

    int max_deg() const { return min_deg + static_cast<int>(terms.size()) - 1; }
    bool in_range(int n) const { return n >= min_deg && n <= max_deg(); }

    const std::vector<std::size_t>& summands(int n) const {
        static const std::vector<std::size_t> none;
        return in_range(n) ? terms[std::size_t(n - min_deg)] : none;
    }

    std::size_t term_dim(int n) const {
        std::size_t d = 0;
        for (std::size_t s : summands(n)) d += idem_basis[s].cols();
        return d;
    }

    std::size_t register_idem(const Vec& f) {
        for (std::size_t i = 0; i < idems.size(); ++i)
            if (A->equal(idems[i], f)) return i;
        if (!A->is_idempotent(f)) throw InputError("ProjComplex: summand element is not idempotent");
        idems.push_back(f);
        idem_basis.push_back(column_space(A->right_mult(f)));
        return idems.size() - 1;
    }

    /// Element matrix of d_n (degree n -> n-1).
    const std::vector<std::vector<Vec>>& diff_elements(int n) const {
        if (n < min_deg + 1 || n > max_deg()) throw InputError("ProjComplex: no differential at this degree");
        return diffs[std::size_t(n - min_deg - 1)];
    }

    /// Scalar matrix of the block map Af_s -> Af_t, x -> x*c.
    FpMatrix realize_block(std::size_t s, std::size_t t, const Vec& c) const {
        const FpMatrix& bs = idem_basis[s];
        const FpMatrix& bt = idem_basis[t];
        auto sol = solve_many(bt, A->right_mult(c) * bs);
        if (!sol.solvable) throw CheckError("ProjComplex: block image leaves the target summand");
        return sol.x;
    }

    FpMatrix realize_diff(int n) const {
        const auto& src = summands(n);
        const auto& tgt = summands(n - 1);
        const auto& d = diff_elements(n);
        FpMatrix out(A->p(), term_dim(n - 1), term_dim(n));
        std::size_t coff = 0;
        for (std::size_t s = 0; s < src.size(); ++s) {
            std::size_t roff = 0;
            for (std::size_t t = 0; t < tgt.size(); ++t) {
                if (!A->is_zero(d[t][s])) {
                    FpMatrix blk = realize_block(src[s], tgt[t], d[t][s]);
                    for (std::size_t r = 0; r < blk.rows(); ++r)
                        for (std::size_t c = 0; c < blk.cols(); ++c)
                            out.at(roff + r, coff + c) = blk.at(r, c);
                }
                roff += idem_basis[tgt[t]].cols();
            }
            coff += idem_basis[src[s]].cols();
        }
        return out;
    }

    void verify_d2() const {
        for (int n = min_deg + 2; n <= max_deg(); ++n) {
            const auto& d2 = diff_elements(n);
            const auto& d1 = diff_elements(n - 1);
            const auto& mid = summands(n - 1);
            for (std::size_t s = 0; s < summands(n).size(); ++s)
                for (std::size_t u = 0; u < summands(n - 2).size(); ++u) {
                    Vec acc = A->zero_element();
                    for (std::size_t t = 0; t < mid.size(); ++t)
                        acc = A->add(acc, A->mul(d2[t][s], d1[u][t]));
                    if (!A->is_zero(acc))
                        throw CheckError("ProjComplex: d*d != 0 at degree " + std::to_string(n));
                }
        }
    }

    /// Scalar realization, optionally carrying the left A-action.
    AComplex to_acomplex(bool with_action, bool complete_flag, int trusted) const {
        AComplex c;
        c.algebra = A;
        c.min_deg = min_deg;
        c.max_deg = max_deg();
        for (int n = min_deg; n <= max_deg(); ++n) c.dims.push_back(term_dim(n));
        for (int n = min_deg + 1; n <= max_deg(); ++n) c.diffs.push_back(realize_diff(n));
        if (with_action) {
            for (int n = min_deg; n <= max_deg(); ++n) {
                std::vector<FpMatrix> acts;
                for (std::size_t i = 0; i < A->dim(); ++i) {
                    FpMatrix act(A->p(), term_dim(n), term_dim(n));
                    const FpMatrix L = A->left_mult(A->basis_element(i));
                    std::size_t off = 0;
                    for (std::size_t s : summands(n)) {
                        auto sol = solve_many(idem_basis[s], L * idem_basis[s]);
                        if (!sol.solvable) throw CheckError("summand not invariant under left action");
                        for (std::size_t r = 0; r < sol.x.rows(); ++r)
                            for (std::size_t cc = 0; cc < sol.x.cols(); ++cc)
                                act.at(off + r, off + cc) = sol.x.at(r, cc);
                        off += idem_basis[s].cols();
                    }
                    acts.push_back(std::move(act));
                }
                c.left_action.push_back(std::move(acts));
            }
        }
        c.complete = complete_flag;
        c.trusted_to = complete_flag ? c.max_deg : trusted;
        return c;
    }
};

/// Minimal projective resolution of a left module: every term is a direct sum
/// of projective covers, every differential has entries in the radical.
struct MinResolution {
    ProjComplex complex;                  // degrees 0..length
    FpMatrix cover;                       // P_0 -> M, scalar matrix (M.dim x dim P_0)
    std::vector<Vec> gen_images;          // image of each P_0 generator in the module
    std::vector<std::size_t> generator_counts;  // per degree
};

namespace detail {

struct CoverResult {
    std::vector<std::size_t> pim_of_gen;
    std::vector<FpMatrix> gen_vectors;  // columns in module coordinates
    FpMatrix matrix;                    // M.dim x sum(dim A f)
};

/// Minimal projective cover via greedy generators: repeatedly pick the first
/// basis vector of some f_t * M not yet covered; each chosen generator spans a
/// summand A f_t mapping by x -> x*v.
inline CoverResult minimal_cover(const AlgebraTools& tools, const AModule& M,
                                 const std::vector<FpMatrix>& pim_action,
                                 const std::vector<FpMatrix>& pim_basis) {
    const std::uint32_t p = M.algebra->p();
    CoverResult out;
    FpMatrix covered = ideal_times_module(M, tools.st.radical);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t t = 0; t < tools.pims.idempotents.size() && !progress; ++t) {
            FpMatrix ftM = column_space(pim_action[t]);
            for (std::size_t c = 0; c < ftM.cols(); ++c) {
                FpMatrix v = ftM.column_at(c);
                if (in_span(covered, v)) continue;
                out.pim_of_gen.push_back(t);
                out.gen_vectors.push_back(v);
                covered = span_sum(covered, spin(M, v));
                progress = true;
                break;
            }
        }
    }
    if (covered.cols() != M.dim) throw CheckError("minimal cover did not reach the module");
    std::size_t total = 0;
    for (std::size_t g = 0; g < out.pim_of_gen.size(); ++g)
        total += pim_basis[out.pim_of_gen[g]].cols();
    out.matrix = FpMatrix(p, M.dim, total);
    std::size_t off = 0;
    for (std::size_t g = 0; g < out.pim_of_gen.size(); ++g) {
        const FpMatrix& basis = pim_basis[out.pim_of_gen[g]];
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            FpMatrix img = M.act(basis.column_vector(c)) * out.gen_vectors[g];
            for (std::size_t r = 0; r < M.dim; ++r) out.matrix.at(r, off + c) = img.at(r, 0);
        }
        off += basis.cols();
    }
    return out;
}

} // namespace detail

/// Minimal projective resolution P_length -> ... -> P_0 -> M of a left module.
inline MinResolution minimal_resolution(const AlgebraTools& tools, const AModule& M, std::size_t length) {
    if (M.side != Side::Left || M.algebra != tools.A)
        throw InputError("minimal_resolution: left module over the given algebra required");
    const std::uint32_t p = tools.A->p();
    MinResolution res;
    res.complex.A = tools.A;
    std::vector<std::size_t> idem_index;
    for (const auto& f : tools.pims.idempotents) idem_index.push_back(res.complex.register_idem(f));
    std::vector<FpMatrix> pim_basis;
    for (std::size_t t : idem_index) pim_basis.push_back(res.complex.idem_basis[t]);

    AModule cur = M;
    FpMatrix embed;  // kernel basis inside the previous term (its coordinates)
    for (std::size_t n = 0; n <= length; ++n) {
        std::vector<FpMatrix> pim_action;
        for (const auto& f : tools.pims.idempotents) pim_action.push_back(cur.act(f));
        auto cov = detail::minimal_cover(tools, cur, pim_action, pim_basis);
        std::vector<std::size_t> term;
        for (std::size_t t : cov.pim_of_gen) term.push_back(idem_index[t]);
        res.complex.terms.push_back(term);
        res.generator_counts.push_back(cov.pim_of_gen.size());

        // build the module structure of this term (block diagonal regular pieces)
        AModule P{tools.A, Side::Left, 0, {}};
        P.dim = 0;
        for (std::size_t t : term) P.dim += res.complex.idem_basis[t].cols();
        for (std::size_t i = 0; i < tools.A->dim(); ++i) {
            FpMatrix act(p, P.dim, P.dim);
            const FpMatrix L = tools.A->left_mult(tools.A->basis_element(i));
            std::size_t off = 0;
            for (std::size_t t : term) {
                auto sol = solve_many(res.complex.idem_basis[t], L * res.complex.idem_basis[t]);
                if (!sol.solvable) throw CheckError("projective summand not invariant");
                for (std::size_t r = 0; r < sol.x.rows(); ++r)
                    for (std::size_t c = 0; c < sol.x.cols(); ++c) act.at(off + r, off + c) = sol.x.at(r, c);
                off += res.complex.idem_basis[t].cols();
            }
            P.actions.push_back(std::move(act));
        }

        if (n == 0) {
            res.cover = cov.matrix;
            for (const auto& v : cov.gen_vectors) res.gen_images.push_back(v.column_vector(0));
        } else {
            // element differential: image of each generator in the previous term
            const auto& prev_term = res.complex.terms[n - 1];
            std::vector<std::vector<Vec>> d(prev_term.size());
            for (auto& row : d) row.assign(term.size(), tools.A->zero_element());
            std::size_t goff = 0;
            std::vector<std::size_t> prev_off(prev_term.size());
            {
                std::size_t o = 0;
                for (std::size_t t2 = 0; t2 < prev_term.size(); ++t2) {
                    prev_off[t2] = o;
                    o += res.complex.idem_basis[prev_term[t2]].cols();
                }
            }
            for (std::size_t g = 0; g < term.size(); ++g) {
                // generator = the idempotent f sitting inside its own summand
                const std::size_t t = term[g];
                auto gen_coords = solve(res.complex.idem_basis[t],
                                        FpMatrix::column(p, res.complex.idems[t]));
                if (!gen_coords.solvable) throw CheckError("idempotent missing from its summand");
                // cover matrix columns for this generator block
                FpMatrix img_cur(p, cur.dim, 1);
                {
                    std::size_t w = res.complex.idem_basis[t].cols();
                    FpMatrix block = cov.matrix.submatrix(0, goff, cur.dim, w);
                    img_cur = block * gen_coords.x;
                    goff += w;
                }
                // embed into previous P coordinates and split into summand elements
                FpMatrix img_prev = embed * img_cur;
                for (std::size_t t2 = 0; t2 < prev_term.size(); ++t2) {
                    const FpMatrix& bb = res.complex.idem_basis[prev_term[t2]];
                    Vec elem = tools.A->zero_element();
                    for (std::size_t c = 0; c < bb.cols(); ++c) {
                        const std::uint32_t coef = img_prev.at(prev_off[t2] + c, 0);
                        if (coef)
                            for (std::size_t r = 0; r < tools.A->dim(); ++r)
                                elem[r] = (elem[r] + std::uint64_t(coef) * bb.at(r, c)) % p;
                    }
                    d[t2][g] = std::move(elem);
                }
            }
            res.complex.diffs.push_back(std::move(d));
        }

        if (n == length) break;
        // canonical kernel basis: submodule() coordinates must agree with the
        // embedding used for the generator images
        FpMatrix kernel = column_space(nullspace(cov.matrix));
        // minimality certificate: kernel lies in J * P
        FpMatrix JP = ideal_times_module(P, tools.st.radical);
        if (!in_span(JP, kernel))
            throw CheckError("cover is not minimal: syzygy escapes the radical");
        embed = kernel;
        cur = submodule(P, kernel);
    }
    res.complex.verify_d2();
    return res;
}

/// N tensor_A P for a right module N and a minimal resolution P of a left
/// module: the term over a summand A*f collapses to N*f, and an element
/// differential c acts by right multiplication.  Optionally carries a
/// commuting outer left action (N as a bimodule).
inline AComplex tensor_with_resolution(const AModule& N, const MinResolution& R,
                                       const AlgebraPtr& outer = nullptr,
                                       const std::vector<FpMatrix>& outer_actions = {}) {
    if (N.side != Side::Right || N.algebra != R.complex.A)
        throw InputError("tensor_with_resolution: right module over the resolution algebra required");
    const std::uint32_t p = N.algebra->p();
    const ProjComplex& P = R.complex;
    // N*f per registered idempotent
    std::vector<FpMatrix> nf;
    for (const auto& f : P.idems) nf.push_back(column_space(N.act(f)));
    AComplex c;
    c.algebra = outer ? outer : field_algebra(p);
    c.min_deg = 0;
    c.max_deg = P.max_deg();
    for (int n = 0; n <= P.max_deg(); ++n) {
        std::size_t d = 0;
        for (std::size_t s : P.summands(n)) d += nf[s].cols();
        c.dims.push_back(d);
    }
    for (int n = 1; n <= P.max_deg(); ++n) {
        const auto& src = P.summands(n);
        const auto& tgt = P.summands(n - 1);
        const auto& d = P.diff_elements(n);
        FpMatrix m(p, c.dims[std::size_t(n - 1)], c.dims[std::size_t(n)]);
        std::size_t coff = 0;
        for (std::size_t s = 0; s < src.size(); ++s) {
            std::size_t roff = 0;
            for (std::size_t t = 0; t < tgt.size(); ++t) {
                if (!N.algebra->is_zero(d[t][s])) {
                    auto sol = solve_many(nf[tgt[t]], N.act(d[t][s]) * nf[src[s]]);
                    if (!sol.solvable) throw CheckError("tensor block leaves the target space");
                    for (std::size_t r = 0; r < sol.x.rows(); ++r)
                        for (std::size_t cc = 0; cc < sol.x.cols(); ++cc)
                            m.at(roff + r, coff + cc) = sol.x.at(r, cc);
                }
                roff += nf[tgt[t]].cols();
            }
            coff += nf[src[s]].cols();
        }
        c.diffs.push_back(std::move(m));
    }
    if (outer) {
        for (int n = 0; n <= P.max_deg(); ++n) {
            std::vector<FpMatrix> acts;
            for (std::size_t i = 0; i < outer->dim(); ++i) {
                FpMatrix act(p, c.dims[std::size_t(n)], c.dims[std::size_t(n)]);
                std::size_t off = 0;
                for (std::size_t s : P.summands(n)) {
                    auto sol = solve_many(nf[s], outer_actions[i] * nf[s]);
                    if (!sol.solvable) throw CheckError("outer action does not preserve N*f");
                    for (std::size_t r = 0; r < sol.x.rows(); ++r)
                        for (std::size_t cc = 0; cc < sol.x.cols(); ++cc)
                            act.at(off + r, off + cc) = sol.x.at(r, cc);
                    off += nf[s].cols();
                }
                acts.push_back(std::move(act));
            }
            c.left_action.push_back(std::move(acts));
        }
    }
    c.complete = false;
    c.trusted_to = P.max_deg() - 1;
    return c;
}

} // namespace localg
