#include "localg/complex.hpp"
#include "localg/group_table.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

using namespace localg;

namespace {

AComplex two_term(std::uint32_t p, const FpMatrix& d) {
    AComplex c;
    c.algebra = field_algebra(p);
    c.min_deg = 0;
    c.max_deg = 1;
    c.dims = {d.rows(), d.cols()};
    c.diffs = {d};
    c.complete = true;
    return c;
}

} // namespace

TEST_CASE("homology of a contractible two-term complex") {
    AComplex c = two_term(3, FpMatrix::identity(3, 1));
    c.validate();
    CHECK(homology(c, 0).dim == 0);
    CHECK(homology(c, 1).dim == 0);
    CHECK(homology(c, 5).dim == 0);
    CHECK(homology(c, 5).trusted);
}

TEST_CASE("zero differentials give homology = chain spaces") {
    AComplex c;
    c.algebra = field_algebra(5);
    c.min_deg = 0;
    c.max_deg = 2;
    c.dims = {2, 3, 1};
    c.diffs = {FpMatrix(5, 2, 3), FpMatrix(5, 3, 1)};
    c.complete = true;
    c.validate();
    CHECK(homology(c, 0).dim == 2);
    CHECK(homology(c, 1).dim == 3);
    CHECK(homology(c, 2).dim == 1);
}

TEST_CASE("validation rejects d*d != 0 and non-module differentials") {
    AComplex c;
    c.algebra = field_algebra(3);
    c.min_deg = 0;
    c.max_deg = 2;
    c.dims = {1, 1, 1};
    c.diffs = {FpMatrix::identity(3, 1), FpMatrix::identity(3, 1)};
    CHECK_THROWS_WITH(c.validate(), Catch::Matchers::ContainsSubstring("d*d"));

    // module-map violation: C_2 acting with sign in degree 0 and trivially in degree 1
    auto A = group_algebra(groups::cyclic(2), 3);
    AComplex m;
    m.algebra = A;
    m.min_deg = 0;
    m.max_deg = 1;
    m.dims = {1, 1};
    m.diffs = {FpMatrix::identity(3, 1)};
    FpMatrix one = FpMatrix::identity(3, 1), minus = one.scaled(2);
    m.left_action = {{one, minus}, {one, one}};
    CHECK_THROWS_WITH(m.validate(), Catch::Matchers::ContainsSubstring("module map"));
    m.left_action = {{one, minus}, {one, minus}};
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("cone of the identity is acyclic; cone of zero splits") {
    auto c = std::make_shared<AComplex>(two_term(3, FpMatrix(3, {{1}, {2}})));
    SECTION("identity") {
        ChainMap id = identity_chain_map(c);
        id.validate();
        AComplex cn = cone(id);
        cn.validate(false);
        for (int n = 0; n <= 3; ++n) CHECK(homology(cn, n).dim == 0);
        CHECK(is_quasi_iso(id, 10).yes());
    }
    SECTION("zero map") {
        ChainMap z{c, c, 0, {}};
        z.validate();
        AComplex cn = cone(z);
        for (int n = 0; n <= 3; ++n) {
            std::size_t expect = homology(*c, n).dim + homology(*c, n - 1).dim;
            CHECK(homology(cn, n).dim == expect);
        }
        auto v = is_quasi_iso(z, 10);
        CHECK(v.kind == QuasiIsoVerdict::No);
        CHECK(v.degree == 0);
    }
}

TEST_CASE("cone long-exact-sequence rank inequality", "[property]") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        const std::uint32_t p = iter % 2 ? 3 : 5;
        auto rand_complex = [&]() {
            for (;;) {
                std::size_t d0 = 1 + rng() % 3, d1 = 1 + rng() % 3, d2 = 1 + rng() % 3;
                FpMatrix a(p, d0, d1);
                for (std::size_t r = 0; r < d0; ++r)
                    for (std::size_t c = 0; c < d1; ++c) a.at(r, c) = static_cast<std::uint8_t>(rng() % p);
                FpMatrix ker = nullspace(a);
                if (ker.cols() == 0) continue;
                FpMatrix coef(p, ker.cols(), d2);
                for (std::size_t r = 0; r < coef.rows(); ++r)
                    for (std::size_t c = 0; c < d2; ++c) coef.at(r, c) = static_cast<std::uint8_t>(rng() % p);
                AComplex cx;
                cx.algebra = field_algebra(p);
                cx.min_deg = 0;
                cx.max_deg = 2;
                cx.dims = {d0, d1, d2};
                cx.diffs = {a, ker * coef};
                cx.complete = true;
                cx.validate();
                return cx;
            }
        };
        auto S = std::make_shared<AComplex>(rand_complex());
        auto T = std::make_shared<AComplex>(rand_complex());
        // a chain map supported in degree 0: needs f0 * d_S(1) = 0
        ChainMap f{S, T, 0, {}};
        FpMatrix lker = nullspace(S->diff_at(1).transpose());  // rows annihilating im(d_S)
        FpMatrix f0(p, T->dim_at(0), S->dim_at(0));
        if (lker.cols())
            for (std::size_t r = 0; r < f0.rows(); ++r) {
                const std::size_t pick = rng() % lker.cols();
                for (std::size_t c = 0; c < f0.cols(); ++c) f0.at(r, c) = lker.at(c, pick);
            }
        f.components.emplace(0, f0);
        f.validate();
        AComplex cn = cone(f);
        for (int n = 0; n <= 3; ++n) {
            std::size_t bound = homology(*T, n).dim + homology(*S, n - 1).dim;
            CHECK(homology(cn, n).dim <= bound);
        }
    }
}

TEST_CASE("euler characteristic equals alternating homology sum", "[property]") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        const std::uint32_t p = 3;
        std::size_t d0 = 1 + rng() % 4, d1 = 1 + rng() % 4;
        FpMatrix a(p, d0, d1);
        for (std::size_t r = 0; r < d0; ++r)
            for (std::size_t c = 0; c < d1; ++c) a.at(r, c) = static_cast<std::uint8_t>(rng() % p);
        AComplex c = two_term(p, a);
        long chi = long(d0) - long(d1);
        long hchi = long(homology(c, 0).dim) - long(homology(c, 1).dim);
        CHECK(chi == hchi);
    }
}

TEST_CASE("truncate bookkeeping") {
    AComplex c;
    c.algebra = field_algebra(3);
    c.min_deg = 0;
    c.max_deg = 3;
    c.dims = {1, 1, 1, 1};
    c.diffs = {FpMatrix(3, 1, 1), FpMatrix(3, 1, 1), FpMatrix(3, 1, 1)};
    c.complete = true;
    AComplex t = truncate(c, 2);
    CHECK(t.max_deg == 2);
    CHECK_FALSE(t.complete);
    CHECK(t.trusted_to == 1);
    CHECK(homology(t, 2).trusted == false);
    CHECK(homology(t, 1).trusted);
    AComplex same = truncate(c, 5);
    CHECK(same.complete);
    CHECK(same.max_deg == 3);
}

TEST_CASE("untrusted verdict from a truncated cone") {
    auto c = std::make_shared<AComplex>(two_term(3, FpMatrix(3, 1, 1)));
    c->complete = false;
    c->trusted_to = 0;
    ChainMap id = identity_chain_map(c);
    auto v = is_quasi_iso(id, 5);
    CHECK(v.kind == QuasiIsoVerdict::UntrustedAbove);
}
