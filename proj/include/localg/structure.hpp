#pragma once

#include "localg/module.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace localg {

namespace detail {

using IntMat = std::vector<std::int64_t>; // n x n row-major

inline IntMat lift(const FpMatrix& m) {
    IntMat out(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m.at(r, c);
    return out;
}

inline IntMat mul_mod(const IntMat& a, const IntMat& b, std::size_t n, std::int64_t mod) {
    IntMat out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t f = a[i * n + k];
            if (!f) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += f * b[k * n + j];
        }
    for (auto& v : out) v %= mod;
    return out;
}

inline IntMat pow_mod(IntMat base, std::uint64_t e, std::size_t n, std::int64_t mod) {
    IntMat acc(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = 1;
    while (e) {
        if (e & 1) acc = mul_mod(acc, base, n, mod);
        base = mul_mod(base, base, n, mod);
        e >>= 1;
    }
    return acc;
}

inline std::int64_t trace_mod(const IntMat& m, std::size_t n, std::int64_t mod) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += m[i * n + i];
    return ((t % mod) + mod) % mod;
}

} // namespace detail

/// Jacobson radical by layered p-power trace forms on the left regular
/// representation.  With p^l <= dim < p^{l+1} and I_{-1} = A, the layer
///
///   I_i = { x in I_{i-1} : Tr(lift(xy)^{p^i}) = 0 mod p^{i+1} for all y in I_{i-1} }
///
/// stabilises to the radical at I_l; lifts are the canonical integer lifts of
/// the regular representation, reduced mod p before powering.  Works over the
/// prime field in every characteristic, including p dividing matrix block
/// sizes of A/J, where the plain trace form fails.
inline FpMatrix jacobson_radical(const AlgebraPtr& A) {
    const std::uint32_t p = A->p();
    const std::size_t n = A->dim();
    std::size_t l = 0;
    {
        // l = floor(log_p n); for p > n only the plain trace form runs
        std::uint64_t q = p;
        while (q <= n) { ++l; q *= p; }
    }
    FpMatrix basis = FpMatrix::identity(p, n);
    for (std::size_t layer = 0; layer <= l; ++layer) {
        const std::size_t m = basis.cols();
        if (m == 0) break;
        std::vector<FpMatrix> reps;
        reps.reserve(m);
        for (std::size_t k = 0; k < m; ++k) reps.push_back(A->left_mult(basis.column_vector(k)));
        FpMatrix form(p, m, m);
        if (layer == 0) {
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k) {
                    std::uint64_t t = 0;
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b)
                            t += std::uint64_t(reps[k].at(a, b)) * reps[j].at(b, a);
                    form.at(j, k) = static_cast<std::uint8_t>(t % p);
                }
        } else {
            std::int64_t mod = 1;
            std::uint64_t e = 1;
            for (std::size_t i = 0; i <= layer; ++i) mod *= p;
            for (std::size_t i = 0; i < layer; ++i) e *= p;
            const std::int64_t pi = static_cast<std::int64_t>(e);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k) {
                    const detail::IntMat prod = detail::lift(reps[k] * reps[j]);
                    const detail::IntMat pw = detail::pow_mod(prod, e, n, mod);
                    const std::int64_t t = detail::trace_mod(pw, n, mod);
                    if (t % pi != 0)
                        throw CheckError("radical trace form not divisible by p^i; layered form misapplied");
                    form.at(j, k) = static_cast<std::uint8_t>((t / pi) % p);
                }
        }
        FpMatrix ker = nullspace(form);
        if (ker.cols() == m) continue; // layer did not cut; proceed to next
        basis = column_space(basis * ker);
    }
    // Certify: a two-sided nilpotent ideal.
    for (std::size_t i = 0; i < n; ++i) {
        const FpMatrix L = A->left_mult(A->basis_element(i));
        const FpMatrix R = A->right_mult(A->basis_element(i));
        if (!in_span(basis, L * basis) || !in_span(basis, R * basis))
            throw CheckError("computed radical is not an ideal");
    }
    FpMatrix powr = basis;
    for (std::size_t k = 0; k < n && powr.cols(); ++k) powr = subspace_product(*A, powr, basis);
    if (powr.cols() != 0) throw CheckError("computed radical is not nilpotent");
    return basis;
}

/// Brute-force radical for small algebras: peel composition factors of the
/// regular module by exhaustive minimal-spin search, then intersect their
/// annihilators.  Independent of the layered method; test oracle only.
inline FpMatrix radical_bruteforce(const AlgebraPtr& A, std::uint64_t enumeration_cap = 400000) {
    const std::uint32_t p = A->p();
    const std::size_t n = A->dim();
    std::vector<AModule> factors;
    AModule cur = regular_left(A);
    while (cur.dim > 0) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < cur.dim; ++i) {
            count *= p;
            if (count > enumeration_cap)
                throw ResourceError("radical_bruteforce: p^dim exceeds enumeration cap");
        }
        FpMatrix best;
        Vec v(cur.dim, 0);
        for (;;) {
            // odometer over all vectors
            std::size_t pos = 0;
            while (pos < cur.dim && v[pos] == p - 1) v[pos++] = 0;
            if (pos == cur.dim) break;
            ++v[pos];
            FpMatrix seed = FpMatrix::column(p, v);
            FpMatrix w = spin(cur, seed);
            if (best.cols() == 0 || w.cols() < best.cols()) best = w;
            if (best.cols() == 1) break;
        }
        factors.push_back(submodule(cur, best));
        cur = quotient_module(cur, best).module;
    }
    // x annihilates every factor  <=>  stacked action maps vanish
    std::size_t rows = 0;
    for (const auto& f : factors) rows += f.dim * f.dim;
    FpMatrix sys(p, rows, n);
    std::size_t off = 0;
    for (const auto& f : factors) {
        for (std::size_t i = 0; i < n; ++i) {
            const FpMatrix& act = f.actions[i];
            for (std::size_t r = 0; r < f.dim; ++r)
                for (std::size_t c = 0; c < f.dim; ++c)
                    sys.at(off + r * f.dim + c, i) = act.at(r, c);
        }
        off += f.dim * f.dim;
    }
    return column_space(nullspace(sys));
}

/// One Wedderburn block of the semisimple quotient S = A/J.
struct BlockData {
    Vec idempotent;      // central primitive idempotent of S
    FpMatrix basis;      // block subspace basis in S-coordinates
    bool commutative = false;
};

struct StructureData {
    FpMatrix radical;          // basis in A-coordinates
    QuotientAlgebra semisimple; // S = A/J with projection/section
    std::vector<BlockData> blocks;
};

namespace detail {

/// Primitive idempotents of a split commutative semisimple algebra E (given
/// by a basis inside S), by common-eigenspace refinement of multiplication
/// operators; E must satisfy x^p = x elementwise.
inline std::vector<Vec> split_etale_idempotents(const Algebra& S, const FpMatrix& E) {
    const std::uint32_t p = S.p();
    std::vector<FpMatrix> spaces{E}; // bases in S-coords, refined in place
    for (std::size_t u = 0; u < E.cols(); ++u) {
        const Vec mult = E.column_vector(u);
        std::vector<FpMatrix> next;
        for (const auto& W : spaces) {
            if (W.cols() <= 1) { next.push_back(W); continue; }
            // multiplication by `mult` preserves W (joint eigenspaces so far)
            auto sol = solve_many(W, S.left_mult(mult) * W);
            if (!sol.solvable) throw CheckError("eigenspace refinement left the subspace");
            const FpMatrix M = sol.x;
            for (std::uint32_t a = 0; a < p; ++a) {
                FpMatrix shifted = M - FpMatrix::identity(p, W.cols()).scaled(a);
                FpMatrix ker = nullspace(shifted);
                if (ker.cols()) next.push_back(column_space(W * ker));
            }
        }
        spaces = std::move(next);
    }
    std::vector<Vec> out;
    for (const auto& W : spaces) {
        if (W.cols() != 1)
            throw CheckError("etale refinement did not reach one-dimensional blocks");
        Vec f = W.column_vector(0);
        Vec f2 = S.mul(f, f);
        std::uint32_t ratio = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i]) { ratio = fp::mul(f2[i], fp::inv(f[i], p), p); break; }
        if (ratio == 0 || !S.equal(f2, S.scale(ratio, f)))
            throw CheckError("etale block element is not scalar-idempotent");
        out.push_back(S.scale(fp::inv(ratio, p), f));
    }
    return out;
}

} // namespace detail

/// Radical, semisimple quotient and its Wedderburn block decomposition.
inline StructureData compute_structure(const AlgebraPtr& A) {
    StructureData out;
    out.radical = jacobson_radical(A);
    out.semisimple = quotient_by_ideal(A, out.radical);
    const AlgebraPtr S = out.semisimple.algebra;
    const std::uint32_t p = S->p();
    const std::size_t m = S->dim();
    // center: stack (L_i - R_i)
    FpMatrix sys(p, m * m, m);
    for (std::size_t i = 0; i < m; ++i) {
        FpMatrix d = S->left_mult(S->basis_element(i)) - S->right_mult(S->basis_element(i));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                sys.at(i * m + r, c) = static_cast<std::uint8_t>((sys.at(i * m + r, c) + d.at(r, c)) % p);
    }
    const FpMatrix center = column_space(nullspace(sys));
    // Frobenius-fixed subalgebra of the center: x -> x^p is F_p-linear there
    FpMatrix frob(p, center.cols(), center.cols());
    for (std::size_t k = 0; k < center.cols(); ++k) {
        Vec zp = S->power(center.column_vector(k), p);
        auto sol = solve(center, FpMatrix::column(p, zp));
        if (!sol.solvable) throw CheckError("Frobenius left the center");
        for (std::size_t r = 0; r < center.cols(); ++r) frob.at(r, k) = sol.x.at(r, 0);
    }
    FpMatrix fixed = nullspace(frob - FpMatrix::identity(p, center.cols()));
    const FpMatrix E = column_space(center * fixed);
    std::vector<Vec> idems = detail::split_etale_idempotents(*S, E);
    // sanity: orthogonal decomposition of 1
    Vec total = S->zero_element();
    for (const auto& e : idems) total = S->add(total, e);
    if (!S->equal(total, S->unit())) throw CheckError("central idempotents do not sum to 1");
    for (std::size_t a = 0; a < idems.size(); ++a)
        for (std::size_t b = 0; b < idems.size(); ++b) {
            Vec prod = S->mul(idems[a], idems[b]);
            if (a == b ? !S->equal(prod, idems[a]) : !S->is_zero(prod))
                throw CheckError("central idempotents are not orthogonal");
        }
    for (const auto& e : idems) {
        BlockData b;
        b.idempotent = e;
        b.basis = column_space(S->left_mult(e));
        b.commutative = true;
        for (std::size_t x = 0; x < b.basis.cols() && b.commutative; ++x)
            for (std::size_t y = x + 1; y < b.basis.cols() && b.commutative; ++y)
                b.commutative = S->equal(S->mul(b.basis.column_vector(x), b.basis.column_vector(y)),
                                         S->mul(b.basis.column_vector(y), b.basis.column_vector(x)));
        out.blocks.push_back(std::move(b));
    }
    return out;
}

struct SimpleModule {
    std::size_t dim = 0;
    std::vector<FpMatrix> actions; // of the A-basis
    bool is_trivial = false;       // one-dimensional with the augmentation action
};

namespace detail {

/// Exhaustively find a simple submodule of a (nonzero) module.
inline FpMatrix find_simple_submodule(const AModule& m, std::uint64_t cap = 2000000) {
    const std::uint32_t p = m.algebra->p();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < m.dim; ++i) {
        count *= p;
        if (count > cap) throw ResourceError("find_simple_submodule: enumeration cap exceeded");
    }
    FpMatrix best;
    Vec v(m.dim, 0);
    for (;;) {
        std::size_t pos = 0;
        while (pos < m.dim && v[pos] == p - 1) v[pos++] = 0;
        if (pos == m.dim) break;
        ++v[pos];
        FpMatrix w = spin(m, FpMatrix::column(p, v));
        if (best.cols() == 0 || w.cols() < best.cols()) best = w;
        if (best.cols() == 1) break;
    }
    return best;
}

} // namespace detail

/// Complete list of pairwise non-isomorphic simple left modules, one per
/// Wedderburn block of A/J, with the action of the A-basis.
inline std::vector<SimpleModule> simple_modules(const AlgebraPtr& A, const StructureData& st) {
    const AlgebraPtr S = st.semisimple.algebra;
    const std::uint32_t p = A->p();
    std::vector<SimpleModule> out;
    for (const auto& block : st.blocks) {
        FpMatrix simple_basis; // in S-coordinates
        if (block.commutative) {
            // a commutative Wedderburn block is a field: it is its own simple
            simple_basis = block.basis;
        } else {
            AModule blk{S, Side::Left, block.basis.cols(), {}};
            for (std::size_t i = 0; i < S->dim(); ++i) {
                auto sol = solve_many(block.basis, S->left_mult(S->basis_element(i)) * block.basis);
                if (!sol.solvable) throw CheckError("block is not a left ideal");
                blk.actions.push_back(sol.x);
            }
            FpMatrix inner = detail::find_simple_submodule(blk);
            simple_basis = column_space(block.basis * inner);
        }
        SimpleModule sm;
        sm.dim = simple_basis.cols();
        for (std::size_t i = 0; i < A->dim(); ++i) {
            Vec img(st.semisimple.projection.rows());
            for (std::size_t r = 0; r < img.size(); ++r) img[r] = st.semisimple.projection.at(r, i);
            auto sol = solve_many(simple_basis, S->left_mult(img) * simple_basis);
            if (!sol.solvable) throw CheckError("simple candidate is not invariant");
            sm.actions.push_back(sol.x);
        }
        if (sm.dim == 1 && A->augmented()) {
            sm.is_trivial = true;
            for (std::size_t i = 0; i < A->dim(); ++i)
                sm.is_trivial &= (sm.actions[i].at(0, 0) == A->augment(A->basis_element(i)));
        }
        out.push_back(std::move(sm));
    }
    return out;
}

inline std::vector<SimpleModule> simple_modules(const AlgebraPtr& A) {
    return simple_modules(A, compute_structure(A));
}

struct Idempotent {
    Vec element;
    bool verified = false;
};

namespace detail {

/// Newton lifting e <- 3e^2 - 2e^3; squares the radical-adic valuation of the
/// defect e^2 - e in every characteristic.
inline Vec lift_idempotent(const Algebra& A, Vec x, std::size_t max_steps) {
    for (std::size_t s = 0; s < max_steps; ++s) {
        if (A.is_idempotent(x)) return x;
        Vec x2 = A.mul(x, x);
        Vec x3 = A.mul(x2, x);
        x = A.sub(A.scale(3 % A.p(), x2), A.scale(2 % A.p(), x3));
    }
    if (!A.is_idempotent(x))
        throw ConstructionError("idempotent lifting did not stabilise");
    return x;
}

} // namespace detail

/// Certify that e is a primitive idempotent with augmentation 1 acting as the
/// identity on the trivial simple module and as zero on every other simple.
/// Throws InputError naming the first failed certificate.
inline Idempotent certify_trivial_idempotent(const AlgebraPtr& A, const Vec& e,
                                             const StructureData& st,
                                             const std::vector<SimpleModule>& simples) {
    if (!A->augmented()) throw InputError("trivial idempotent needs an augmented algebra");
    if (!A->is_idempotent(e)) throw InputError("candidate is not idempotent");
    if (A->augment(e) != 1) throw InputError("candidate has augmentation != 1");
    bool saw_trivial = false;
    for (const auto& s : simples) {
        FpMatrix action(A->p(), s.dim, s.dim);
        for (std::size_t i = 0; i < A->dim(); ++i)
            if (e[i]) action = action + s.actions[i].scaled(e[i]);
        if (s.is_trivial) {
            saw_trivial = true;
            if (action != FpMatrix::identity(A->p(), s.dim))
                throw InputError("candidate does not act as identity on the trivial module");
        } else if (!action.is_zero()) {
            throw InputError("candidate does not annihilate a non-trivial simple module");
        }
    }
    if (!saw_trivial) throw CheckError("augmented algebra without a trivial simple");
    // primitivity: eAe is local
    CornerAlgebra corner = corner_algebra(A, e);
    FpMatrix rad = jacobson_radical(corner.algebra);
    if (corner.algebra->dim() - rad.cols() != 1)
        throw InputError("candidate is not primitive (corner algebra is not local)");
    (void)st;
    return Idempotent{e, true};
}

/// The primitive idempotent acting as the identity on the trivial module and
/// as zero on other simples, lifted from the trivial Wedderburn block.
inline Idempotent trivial_idempotent(const AlgebraPtr& A, const StructureData& st,
                                     const std::vector<SimpleModule>& simples) {
    if (!A->augmented()) throw InputError("trivial_idempotent: algebra has no augmentation");
    const AlgebraPtr S = st.semisimple.algebra;
    std::optional<std::size_t> which;
    for (std::size_t b = 0; b < st.blocks.size(); ++b) {
        if (S->augment(st.blocks[b].idempotent) == 1) {
            if (which) throw CheckError("two blocks claim the augmentation");
            which = b;
        }
    }
    if (!which) throw CheckError("no block carries the augmentation");
    if (st.blocks[*which].basis.cols() != 1)
        throw CheckError("trivial block is not one-dimensional");
    // lift the block idempotent along the radical
    Vec x(A->dim(), 0);
    const Vec& cs = st.blocks[*which].idempotent;
    for (std::size_t j = 0; j < S->dim(); ++j)
        for (std::size_t r = 0; r < A->dim(); ++r)
            x[r] = (x[r] + std::uint64_t(cs[j]) * st.semisimple.section.at(r, j)) % A->p();
    std::size_t steps = 2;
    for (std::size_t d = 1; d < A->dim(); d <<= 1) ++steps;
    x = detail::lift_idempotent(*A, std::move(x), steps + A->dim());
    return certify_trivial_idempotent(A, x, st, simples);
}

inline Idempotent trivial_idempotent(const AlgebraPtr& A) {
    auto st = compute_structure(A);
    auto simples = simple_modules(A, st);
    return trivial_idempotent(A, st, simples);
}

/// The corner decomposition attached to an idempotent: corner algebras eAe
/// and (1-e)A(1-e) (the latter absent when e = 1) plus the four corner
/// subspaces with canonical bases.
struct CornerData {
    Vec e, f;                               // f = 1 - e
    CornerAlgebra eAe;
    std::optional<CornerAlgebra> fAf;
    FpMatrix Ae, Af, eA, fA;                // A-coordinate bases
    FpMatrix eAf, fAe;                      // hom spaces Hom(Ae,Af) = eAf etc.
};

inline CornerData corner_data(const AlgebraPtr& A, const Idempotent& e) {
    if (!e.verified) throw InputError("corner_data: idempotent is not verified");
    CornerData out;
    out.e = e.element;
    out.f = A->one_minus(e.element);
    const FpMatrix Re = A->right_mult(out.e), Rf = A->right_mult(out.f);
    const FpMatrix Le = A->left_mult(out.e), Lf = A->left_mult(out.f);
    out.Ae = column_space(Re);
    out.Af = column_space(Rf);
    out.eA = column_space(Le);
    out.fA = column_space(Lf);
    out.eAf = column_space(Le * Rf);
    out.fAe = column_space(Lf * Re);
    out.eAe = corner_algebra(A, out.e);
    if (!A->is_zero(out.f)) out.fAf = corner_algebra(A, out.f);
    if (out.Ae.cols() + out.Af.cols() != A->dim())
        throw CheckError("corner split Ae + A(1-e) does not fill A");
    const std::size_t four = out.eAe.algebra->dim() + out.eAf.cols() + out.fAe.cols() +
                             (out.fAf ? out.fAf->algebra->dim() : 0);
    if (four != A->dim()) throw CheckError("four-corner dimension identity failed");
    return out;
}

/// Left or right module structure on an A-invariant subspace of A, over an
/// algebra embedded in A (a corner, or A itself).
inline AModule subspace_module(const AlgebraPtr& ambient, const FpMatrix& subspace,
                               const AlgebraPtr& over, const FpMatrix& over_embedding, Side side) {
    AModule m{over, side, subspace.cols(), {}};
    for (std::size_t i = 0; i < over->dim(); ++i) {
        Vec elem = over_embedding.cols() ? over_embedding.column_vector(i) : over->basis_element(i);
        FpMatrix act = side == Side::Left ? ambient->left_mult(elem) : ambient->right_mult(elem);
        auto sol = solve_many(subspace, act * subspace);
        if (!sol.solvable) throw InputError("subspace_module: subspace not invariant");
        m.actions.push_back(sol.x);
    }
    return m;
}

/// Decomposition 1 = f_1 + ... + f_m into primitive orthogonal idempotents,
/// with the Wedderburn block (= simple type) of each summand.
struct PimDecomposition {
    std::vector<Vec> idempotents;
    std::vector<std::size_t> block_of;
};

inline PimDecomposition pim_decomposition(const AlgebraPtr& A, const StructureData& st) {
    const AlgebraPtr S = st.semisimple.algebra;
    const std::uint32_t p = S->p();
    // 1. decompose each block of S into simple left ideals
    std::vector<FpMatrix> summands; // bases in S-coords
    std::vector<std::size_t> block_of;
    for (std::size_t b = 0; b < st.blocks.size(); ++b) {
        FpMatrix remaining = st.blocks[b].basis;
        while (remaining.cols() > 0) {
            const std::size_t md = remaining.cols();
            AModule mod{S, Side::Left, md, {}};
            for (std::size_t i = 0; i < S->dim(); ++i) {
                auto sol = solve_many(remaining, S->left_mult(S->basis_element(i)) * remaining);
                if (!sol.solvable) throw CheckError("pim: block remainder is not invariant");
                mod.actions.push_back(sol.x);
            }
            // a commutative block is a field: the whole block is its simple
            FpMatrix inner = st.blocks[b].commutative ? FpMatrix::identity(p, md)
                                                      : detail::find_simple_submodule(mod);
            summands.push_back(column_space(remaining * inner));
            block_of.push_back(b);
            if (inner.cols() == md) {
                remaining = FpMatrix(p, S->dim(), 0);
                continue;
            }
            // complement of span(inner): solve for an S-linear projection
            // pi = inner * theta with theta*act_i = B_i*theta and theta*inner = id,
            // where act_i*inner = inner*B_i.
            const std::size_t wd = inner.cols();
            std::vector<FpMatrix> B;
            for (std::size_t i = 0; i < S->dim(); ++i) {
                auto sol = solve_many(inner, mod.actions[i] * inner);
                if (!sol.solvable) throw CheckError("pim: simple summand not invariant");
                B.push_back(sol.x);
            }
            const std::size_t unknowns = wd * md;
            FpMatrix sys(p, S->dim() * wd * md + wd * wd, unknowns);
            FpMatrix rhs(p, sys.rows(), 1);
            std::size_t row = 0;
            for (std::size_t i = 0; i < S->dim(); ++i) {
                const FpMatrix& act = mod.actions[i];
                for (std::size_t r = 0; r < wd; ++r)
                    for (std::size_t c = 0; c < md; ++c, ++row) {
                        for (std::size_t k = 0; k < md; ++k)
                            sys.at(row, r * md + k) = static_cast<std::uint8_t>(
                                (sys.at(row, r * md + k) + act.at(k, c)) % p);
                        for (std::size_t k = 0; k < wd; ++k)
                            sys.at(row, k * md + c) = static_cast<std::uint8_t>(
                                (sys.at(row, k * md + c) + p - B[i].at(r, k) % p) % p);
                    }
            }
            for (std::size_t r = 0; r < wd; ++r)
                for (std::size_t c = 0; c < wd; ++c, ++row) {
                    for (std::size_t k = 0; k < md; ++k)
                        sys.at(row, r * md + k) = inner.at(k, c);
                    rhs.at(row, 0) = (r == c) ? 1 : 0;
                }
            auto sol = solve(sys, rhs);
            if (!sol.solvable) throw CheckError("pim: no module projection (not semisimple?)");
            FpMatrix theta(p, wd, md);
            for (std::size_t r = 0; r < wd; ++r)
                for (std::size_t k = 0; k < md; ++k) theta.at(r, k) = sol.x.at(r * md + k, 0);
            FpMatrix complement = nullspace(inner * theta);
            if (complement.cols() != md - wd) throw CheckError("pim: complement has wrong dimension");
            remaining = column_space(remaining * complement);
        }
    }
    // 2. 1 = sum of components in the simple-summand decomposition
    FpMatrix all = summands[0];
    for (std::size_t j = 1; j < summands.size(); ++j) all = all.hcat(summands[j]);
    auto one = solve(all, FpMatrix::column(p, S->unit()));
    if (!one.solvable || all.cols() != S->dim())
        throw CheckError("pim: simple summands do not decompose S");
    std::vector<Vec> s_idems;
    std::size_t off = 0;
    for (const auto& w : summands) {
        Vec comp = S->zero_element();
        for (std::size_t c = 0; c < w.cols(); ++c) {
            const std::uint32_t coef = one.x.at(off + c, 0);
            if (coef)
                for (std::size_t r = 0; r < S->dim(); ++r)
                    comp[r] = (comp[r] + std::uint64_t(coef) * w.at(r, c)) % p;
        }
        s_idems.push_back(std::move(comp));
        off += w.cols();
    }
    for (std::size_t a = 0; a < s_idems.size(); ++a)
        for (std::size_t b2 = 0; b2 < s_idems.size(); ++b2) {
            Vec prod = S->mul(s_idems[a], s_idems[b2]);
            if (a == b2 ? !S->equal(prod, s_idems[a]) : !S->is_zero(prod))
                throw CheckError("pim: decomposition of 1 is not orthogonal-idempotent");
        }
    // 3. lift sequentially, staying inside the corner of what is left
    PimDecomposition out;
    out.block_of = block_of;
    Vec rem = A->unit();
    std::size_t steps = 2;
    for (std::size_t d = 1; d < A->dim(); d <<= 1) ++steps;
    for (std::size_t j = 0; j + 1 < s_idems.size(); ++j) {
        Vec x(A->dim(), 0);
        for (std::size_t r = 0; r < A->dim(); ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < S->dim(); ++c)
                acc += std::uint64_t(st.semisimple.section.at(r, c)) * s_idems[j][c];
            x[r] = static_cast<std::uint32_t>(acc % p);
        }
        x = A->mul(A->mul(rem, x), rem);
        x = detail::lift_idempotent(*A, std::move(x), steps + A->dim());
        out.idempotents.push_back(x);
        rem = A->sub(rem, x);
    }
    if (!A->is_idempotent(rem)) throw CheckError("pim: final residual idempotent failed");
    out.idempotents.push_back(rem);
    // certify
    Vec total = A->zero_element();
    for (const auto& f : out.idempotents) total = A->add(total, f);
    if (!A->equal(total, A->unit())) throw CheckError("pim: lifted idempotents do not sum to 1");
    for (std::size_t a = 0; a < out.idempotents.size(); ++a)
        for (std::size_t b2 = 0; b2 < out.idempotents.size(); ++b2) {
            if (a == b2) continue;
            if (!A->is_zero(A->mul(out.idempotents[a], out.idempotents[b2])))
                throw CheckError("pim: lifted idempotents are not orthogonal");
        }
    return out;
}

inline PimDecomposition pim_decomposition(const AlgebraPtr& A) {
    return pim_decomposition(A, compute_structure(A));
}

} // namespace localg
