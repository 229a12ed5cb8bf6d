#pragma once

#include "localg/free_product.hpp"

#include <random>
#include <string>
#include <vector>

namespace localg {

/// Deterministic instance pools for the empirical epimorphism and filtration
/// checks.  All algebras have dimension at most 6.

struct EpiInstance {
    std::string name;
    AlgebraMap map;
};

namespace battery_detail {

inline AlgebraMap field_unit(const AlgebraPtr& B) {
    auto F = field_algebra(B->p());
    FpMatrix m(B->p(), B->dim(), 1);
    for (std::size_t i = 0; i < B->dim(); ++i) m.at(i, 0) = static_cast<std::uint8_t>(B->unit()[i]);
    return AlgebraMap{F, B, m};
}

inline AlgebraMap subgroup_map(const GroupTable& h, const GroupTable& g,
                               const std::vector<std::size_t>& embed, std::uint32_t p) {
    auto A = group_algebra(h, p);
    auto B = group_algebra(g, p);
    FpMatrix m(p, B->dim(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i) m.at(embed[i], i) = 1;
    return AlgebraMap{A, B, m};
}

/// A random invertible element of A (deterministic from the rng state).
inline Vec random_unit(const AlgebraPtr& A, std::mt19937_64& rng) {
    for (int tries = 0; tries < 200; ++tries) {
        Vec u(A->dim());
        for (auto& v : u) v = static_cast<std::uint32_t>(rng() % A->p());
        if (A->inverse(u)) return u;
    }
    return A->unit();
}

/// Inner automorphism x -> u x u^{-1}.
inline AlgebraMap conjugation(const AlgebraPtr& A, const Vec& u) {
    Vec uinv = *A->inverse(u);
    FpMatrix m(A->p(), A->dim(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i) {
        Vec img = A->mul(A->mul(u, A->basis_element(i)), uinv);
        for (std::size_t r = 0; r < A->dim(); ++r) m.at(r, i) = static_cast<std::uint8_t>(img[r]);
    }
    return AlgebraMap{A, A, m};
}

inline AlgebraMap compose_maps(const AlgebraMap& g, const AlgebraMap& f) {
    // g after f
    return AlgebraMap{f.source, g.target, g.matrix * f.matrix};
}

} // namespace battery_detail

/// Admissible unit maps with algebra dimensions <= 6 over p in {2, 3, 5}:
/// isomorphisms and split central projections (the homotopy-epimorphic kinds
/// that exist in degree 0) and injections with free complements (never
/// epimorphisms unless bijective).  Deterministic for a fixed seed.
inline std::vector<EpiInstance> epi_battery(std::uint64_t seed = 20250) {
    using namespace battery_detail;
    std::mt19937_64 rng(seed);
    std::vector<EpiInstance> out;
    auto add = [&](std::string name, AlgebraMap f) {
        f.validate();
        out.push_back({std::move(name), std::move(f)});
    };
    const std::vector<GroupTable> pool = {
        groups::cyclic(2), groups::cyclic(3),  groups::cyclic(4),
        groups::cyclic(5), groups::cyclic(6),  groups::symmetric3(),
        groups::direct_product(groups::cyclic(2), groups::cyclic(2)),
    };
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        const std::string ps = "p" + std::to_string(p);
        for (const auto& g : pool) {
            auto A = group_algebra(g, p);
            add("identity " + g.name() + " " + ps, AlgebraMap::identity(A));
            for (int twist = 0; twist < 2; ++twist)
                add("inner automorphism " + g.name() + " " + ps + " #" + std::to_string(twist),
                    conjugation(A, random_unit(A, rng)));
            if (A->dim() > 1) add("field unit into " + g.name() + " " + ps, field_unit(A));
        }
        // tensor-extension units: A -> A (x) F_p[t]/(t^2) and quadratic group extension
        for (const auto& g : {groups::cyclic(2), groups::cyclic(3)}) {
            auto A = group_algebra(g, p);
            auto B = tensor_product(*A, *truncated_polynomial_algebra(p, 2));
            FpMatrix m(p, B->dim(), A->dim());
            for (std::size_t i = 0; i < A->dim(); ++i) m.at(i * 2, i) = 1;
            add("nilpotent extension of " + g.name() + " " + ps, AlgebraMap{A, B, m});
        }
        // split central projections A x C -> A (and -> C)
        const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 0}, {0, 1}, {1, 1}, {0, 2}};
        for (auto [i, j] : pairs) {
            auto A = group_algebra(pool[i], p);
            auto C = group_algebra(pool[j], p);
            auto AC = Algebra::direct_product(*A, *C);
            FpMatrix onto_a(p, A->dim(), AC->dim());
            for (std::size_t k = 0; k < A->dim(); ++k) onto_a.at(k, k) = 1;
            add("projection " + pool[i].name() + "x" + pool[j].name() + " -> left " + ps,
                AlgebraMap{AC, A, onto_a});
            FpMatrix onto_c(p, C->dim(), AC->dim());
            for (std::size_t k = 0; k < C->dim(); ++k) onto_c.at(k, A->dim() + k) = 1;
            add("projection " + pool[i].name() + "x" + pool[j].name() + " -> right " + ps,
                AlgebraMap{AC, C, onto_c});
            // twisted variant: compose with an inner automorphism of the target
            add("twisted projection " + pool[i].name() + "x" + pool[j].name() + " " + ps,
                compose_maps(conjugation(A, random_unit(A, rng)), AlgebraMap{AC, A, onto_a}));
        }
        // proper subgroup inclusions (free complements by coset letters)
        add("C2 < C4 " + ps, subgroup_map(groups::cyclic(2), groups::cyclic(4), {0, 2}, p));
        add("C2 < C6 " + ps, subgroup_map(groups::cyclic(2), groups::cyclic(6), {0, 3}, p));
        add("C3 < C6 " + ps, subgroup_map(groups::cyclic(3), groups::cyclic(6), {0, 2, 4}, p));
        add("C2 < V4 " + ps, subgroup_map(groups::cyclic(2), pool[6], {0, 2}, p));
        add("C2 < S3 " + ps, subgroup_map(groups::cyclic(2), groups::symmetric3(), {0, 1}, p));
        add("C3 < S3 " + ps, subgroup_map(groups::cyclic(3), groups::symmetric3(), {0, 4, 5}, p));
    }
    return out;
}

struct FreeProductInstance {
    std::string name;
    AlgebraPtr base;
    AlgebraMap left, right;
};

/// Admissible free-product triples (A, B, C) with all dimensions <= 6:
/// field bases with assorted factors, group-algebra bases under subgroup
/// inclusions, and nilpotent tensor extensions.
inline std::vector<FreeProductInstance> filtration_battery() {
    using namespace battery_detail;
    std::vector<FreeProductInstance> out;
    auto add = [&](std::string name, const AlgebraPtr& base, AlgebraMap l, AlgebraMap r) {
        l.validate();
        r.validate();
        out.push_back({std::move(name), base, std::move(l), std::move(r)});
    };
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const std::string ps = " p" + std::to_string(p);
        auto F = field_algebra(p);
        std::vector<AlgebraPtr> factors = {
            group_algebra(groups::cyclic(2), p), group_algebra(groups::cyclic(3), p),
            group_algebra(groups::cyclic(4), p), truncated_polynomial_algebra(p, 2),
            truncated_polynomial_algebra(p, 3)};
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i; j < factors.size(); ++j) {
                FpMatrix mi(p, factors[i]->dim(), 1), mj(p, factors[j]->dim(), 1);
                for (std::size_t r = 0; r < factors[i]->dim(); ++r)
                    mi.at(r, 0) = static_cast<std::uint8_t>(factors[i]->unit()[r]);
                for (std::size_t r = 0; r < factors[j]->dim(); ++r)
                    mj.at(r, 0) = static_cast<std::uint8_t>(factors[j]->unit()[r]);
                add("field base " + std::to_string(i) + "," + std::to_string(j) + ps, F,
                    AlgebraMap{F, factors[i], mi}, AlgebraMap{F, factors[j], mj});
            }
        // group-algebra bases
        auto c2c4 = subgroup_map(groups::cyclic(2), groups::cyclic(4), {0, 2}, p);
        auto c2v4 = subgroup_map(groups::cyclic(2),
                                 groups::direct_product(groups::cyclic(2), groups::cyclic(2)),
                                 {0, 2}, p);
        add("C2 base: C4 * V4" + ps, c2c4.source, c2c4,
            AlgebraMap{c2c4.source, c2v4.target, c2v4.matrix});
        auto c3s3 = subgroup_map(groups::cyclic(3), groups::symmetric3(), {0, 4, 5}, p);
        auto c3c6 = subgroup_map(groups::cyclic(3), groups::cyclic(6), {0, 2, 4}, p);
        add("C3 base: S3 * C6" + ps, c3s3.source, c3s3,
            AlgebraMap{c3s3.source, c3c6.target, c3c6.matrix});
        // nilpotent extension base
        auto A = group_algebra(groups::cyclic(2), p);
        auto B = tensor_product(*A, *truncated_polynomial_algebra(p, 2));
        FpMatrix m(p, B->dim(), A->dim());
        for (std::size_t i = 0; i < A->dim(); ++i) m.at(i * 2, i) = 1;
        AlgebraMap ext{A, B, m};
        add("C2 base: nilpotent * C4" + ps, A, ext,
            AlgebraMap{A, c2c4.target, c2c4.matrix});
    }
    return out;
}

} // namespace localg
