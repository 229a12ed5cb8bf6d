#pragma once

#include "localg/algebra.hpp"

#include <vector>

namespace localg {

enum class Side { Left, Right };

/// Finite-dimensional module over an Algebra, given by one action matrix per
/// algebra basis element.  For a left module, action(a)*action(b) = action(ab);
/// for a right module the composition is reversed.
struct AModule {
    AlgebraPtr algebra;
    Side side = Side::Left;
    std::size_t dim = 0;
    std::vector<FpMatrix> actions;  // per algebra basis element

    FpMatrix act(const Vec& a) const {
        FpMatrix m(algebra->p(), dim, dim);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] % algebra->p() == 0) continue;
            m = m + actions[i].scaled(a[i]);
        }
        return m;
    }

    void validate() const {
        const std::size_t n = algebra->dim();
        if (actions.size() != n) throw InputError("module: one action matrix per basis element required");
        for (const auto& m : actions)
            if (m.rows() != dim || m.cols() != dim || m.p() != algebra->p())
                throw InputError("module: action matrix shape mismatch");
        if (act(algebra->unit()) != FpMatrix::identity(algebra->p(), dim))
            throw InputError("module: unit does not act as identity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec eij(n);
                for (std::size_t k = 0; k < n; ++k) eij[k] = algebra->c(i, j, k);
                const FpMatrix lhs = act(eij);
                const FpMatrix rhs = side == Side::Left ? actions[i] * actions[j]
                                                        : actions[j] * actions[i];
                if (lhs != rhs)
                    throw InputError("module: action not multiplicative (witness basis pair " +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }
};

/// A as a left module over itself.
inline AModule regular_left(const AlgebraPtr& a) {
    AModule m{a, Side::Left, a->dim(), {}};
    for (std::size_t i = 0; i < a->dim(); ++i) m.actions.push_back(a->left_mult(a->basis_element(i)));
    return m;
}

/// A as a right module over itself (action of x is right multiplication).
inline AModule regular_right(const AlgebraPtr& a) {
    AModule m{a, Side::Right, a->dim(), {}};
    for (std::size_t i = 0; i < a->dim(); ++i) m.actions.push_back(a->right_mult(a->basis_element(i)));
    return m;
}

/// F_p with action through the augmentation.
inline AModule trivial_module(const AlgebraPtr& a, Side side = Side::Left) {
    AModule m{a, side, 1, {}};
    for (std::size_t i = 0; i < a->dim(); ++i) {
        FpMatrix x(a->p(), 1, 1);
        x.at(0, 0) = static_cast<std::uint8_t>(a->augment(a->basis_element(i)));
        m.actions.push_back(std::move(x));
    }
    return m;
}

/// Module on a subspace (columns of basis) invariant under the given actions.
inline AModule submodule(const AModule& m, const FpMatrix& basis_in) {
    FpMatrix basis = column_space(basis_in);
    AModule s{m.algebra, m.side, basis.cols(), {}};
    for (const auto& act : m.actions) {
        auto sol = solve_many(basis, act * basis);
        if (!sol.solvable) throw InputError("submodule: subspace is not invariant");
        s.actions.push_back(sol.x);
    }
    return s;
}

/// Quotient of a module by an invariant subspace, with the canonical
/// complement coordinates.
struct ModuleQuotient {
    AModule module;
    FpMatrix projection;  // dim(quotient) x dim(M)
    FpMatrix section;     // dim(M) x dim(quotient)
};

inline ModuleQuotient quotient_module(const AModule& m, const FpMatrix& sub_in) {
    const std::uint32_t p = m.algebra->p();
    FpMatrix sub = column_space(sub_in);
    std::vector<bool> leading(m.dim, false);
    for (std::size_t c = 0; c < sub.cols(); ++c)
        for (std::size_t r = 0; r < m.dim; ++r)
            if (sub.at(r, c)) { leading[r] = true; break; }
    std::vector<std::size_t> comp;
    for (std::size_t r = 0; r < m.dim; ++r)
        if (!leading[r]) comp.push_back(r);
    const std::size_t q = comp.size();
    FpMatrix section(p, m.dim, q);
    for (std::size_t j = 0; j < q; ++j) section.at(comp[j], j) = 1;
    FpMatrix big = sub.hcat(section);
    FpMatrix proj(p, q, m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        FpMatrix e(p, m.dim, 1);
        e.at(r, 0) = 1;
        auto sol = solve(big, e);
        if (!sol.solvable) throw InputError("quotient_module: subspace is not a subspace?");
        for (std::size_t j = 0; j < q; ++j) proj.at(j, r) = sol.x.at(sub.cols() + j, 0);
    }
    ModuleQuotient out;
    out.module = AModule{m.algebra, m.side, q, {}};
    for (const auto& act : m.actions) out.module.actions.push_back(proj * act * section);
    out.projection = std::move(proj);
    out.section = std::move(section);
    return out;
}

/// Smallest invariant subspace containing the given columns.
inline FpMatrix spin(const AModule& m, const FpMatrix& seed) {
    FpMatrix cur = column_space(seed);
    for (;;) {
        FpMatrix next = cur;
        for (const auto& act : m.actions) next = span_sum(next, act * cur);
        if (next.cols() == cur.cols()) return cur;
        cur = std::move(next);
    }
}

/// J*M for an ideal with the given basis (columns in A-coordinates).
inline FpMatrix ideal_times_module(const AModule& m, const FpMatrix& ideal_basis) {
    FpMatrix cols(m.algebra->p(), m.dim, 0);
    for (std::size_t c = 0; c < ideal_basis.cols(); ++c) {
        FpMatrix a = m.act(ideal_basis.column_vector(c));
        cols = cols.cols() ? cols.hcat(a) : a;
    }
    return column_space(cols);
}

/// Space of module homomorphisms M -> N (same side), as a list of matrices.
inline std::vector<FpMatrix> hom_space(const AModule& m, const AModule& n) {
    if (m.algebra != n.algebra || m.side != n.side) throw InputError("hom_space: incompatible modules");
    const std::uint32_t p = m.algebra->p();
    const std::size_t rows = n.dim * m.dim;
    // H*act_M(e_i) - act_N(e_i)*H = 0, H is n.dim x m.dim, column-major unknowns
    FpMatrix sys(p, rows * m.algebra->dim(), n.dim * m.dim);
    for (std::size_t i = 0; i < m.algebra->dim(); ++i) {
        const FpMatrix& am = m.actions[i];
        const FpMatrix& an = n.actions[i];
        // entry (r,c) of H*am: sum_k H(r,k) am(k,c); of an*H: sum_k an(r,k) H(k,c)
        for (std::size_t r = 0; r < n.dim; ++r)
            for (std::size_t c2 = 0; c2 < m.dim; ++c2) {
                const std::size_t row = i * rows + r * m.dim + c2;
                for (std::size_t k = 0; k < m.dim; ++k)
                    sys.at(row, r * m.dim + k) =
                        static_cast<std::uint8_t>((sys.at(row, r * m.dim + k) + am.at(k, c2)) % p);
                for (std::size_t k = 0; k < n.dim; ++k)
                    sys.at(row, k * m.dim + c2) =
                        static_cast<std::uint8_t>((sys.at(row, k * m.dim + c2) + p - an.at(r, k) % p) % p);
            }
    }
    FpMatrix ker = nullspace(sys);
    std::vector<FpMatrix> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        FpMatrix h(p, n.dim, m.dim);
        for (std::size_t r = 0; r < n.dim; ++r)
            for (std::size_t c2 = 0; c2 < m.dim; ++c2) h.at(r, c2) = ker.at(r * m.dim + c2, c);
        out.push_back(std::move(h));
    }
    return out;
}

/// Pull a module back along an algebra map (restriction of scalars).
inline AModule restrict_along(const AlgebraMap& f, const AModule& m) {
    if (m.algebra != f.target) throw InputError("restrict_along: module is not over the map target");
    AModule r{f.source, m.side, m.dim, {}};
    for (std::size_t i = 0; i < f.source->dim(); ++i)
        r.actions.push_back(m.act(f.apply(f.source->basis_element(i))));
    return r;
}

/// View a right module as a left module over the opposite algebra (or back).
inline AModule op_view(const AModule& m, const AlgebraPtr& opposite) {
    return AModule{opposite, m.side == Side::Right ? Side::Left : Side::Right, m.dim, m.actions};
}

/// Direct sum.
inline AModule direct_sum(const AModule& a, const AModule& b) {
    if (a.algebra != b.algebra || a.side != b.side) throw InputError("direct_sum: incompatible modules");
    AModule s{a.algebra, a.side, a.dim + b.dim, {}};
    const std::uint32_t p = a.algebra->p();
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
        FpMatrix m(p, s.dim, s.dim);
        for (std::size_t r = 0; r < a.dim; ++r)
            for (std::size_t c = 0; c < a.dim; ++c) m.at(r, c) = a.actions[i].at(r, c);
        for (std::size_t r = 0; r < b.dim; ++r)
            for (std::size_t c = 0; c < b.dim; ++c) m.at(a.dim + r, a.dim + c) = b.actions[i].at(r, c);
        s.actions.push_back(std::move(m));
    }
    return s;
}

} // namespace localg
