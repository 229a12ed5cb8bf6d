#include "localg/resolution.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace localg;

TEST_CASE("bar resolution over the ground field sits in degree 0") {
    auto F = field_algebra(3);
    auto res = bar_resolution(F, trivial_module(F), 4);
    CHECK(res.complex.dim_at(0) == 1);
    for (int n = 1; n <= 4; ++n) CHECK(res.complex.dim_at(n) == 0);
    verify_resolution(res);
}

TEST_CASE("bar resolution of the trivial F_3[C_3]-module") {
    auto A = group_algebra(groups::cyclic(3), 3);
    auto res = bar_resolution(A, trivial_module(A), 5, {20000, 1u << 24, true});
    for (int n = 0; n <= 5; ++n) CHECK(res.complex.dim_at(n) == 3u << n);  // 3 * 2^n
    verify_resolution(res);
}

TEST_CASE("bar resolution of the trivial F_3[S_3]-module") {
    auto A = group_algebra(groups::symmetric3(), 3);
    auto res = bar_resolution(A, trivial_module(A), 3);
    std::size_t expect = 6;
    for (int n = 0; n <= 3; ++n, expect *= 5) CHECK(res.complex.dim_at(n) == expect);
    verify_resolution(res);
}

TEST_CASE("bar resolution respects its caps") {
    auto A = group_algebra(groups::symmetric3(), 3);
    CHECK_THROWS_MATCHES(bar_resolution(A, trivial_module(A), 9), ResourceError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("cap")));
    BarOptions tight;
    tight.term_dim_cap = 100;
    CHECK_THROWS_AS(bar_resolution(A, trivial_module(A), 3, tight), ResourceError);
}

TEST_CASE("bar and minimal resolutions agree on homology of k-tensor", "[oracle]") {
    // dim Tor_n = dim H_n(k (x)_A P): with minimal resolutions this is just the
    // generator count; the bar route computes it from the big complex.
    auto A = group_algebra(groups::cyclic(3), 3);
    auto tools = make_tools(A);
    auto bar = bar_resolution(A, trivial_module(A), 5);
    auto minp = minimal_projective_resolution(tools, trivial_module(A), 5);
    verify_resolution(minp);
    // tensor k (x)_A - over the bar: apply the augmentation to the left factor
    // (handled in the derived-functor tests); here compare term-by-term homology
    // of the two resolutions directly: both resolve k
    CHECK(homology(bar.complex, 0).dim == 1);
    CHECK(homology(minp.complex, 0).dim == 1);
    for (int n = 1; n <= 4; ++n) {
        CHECK(homology(bar.complex, n).dim == 0);
        CHECK(homology(minp.complex, n).dim == 0);
    }
}

TEST_CASE("squeezed resolution for F_3[S_3]") {
    auto A = group_algebra(groups::symmetric3(), 3);
    auto e = trivial_idempotent(A);
    auto res = squeezed_resolution(A, e, 10);
    SECTION("terms are the two 3-dimensional projectives") {
        for (int n = 0; n <= 10; ++n) CHECK(res.complex.dim_at(n) == 3);
    }
    SECTION("connecting maps are unique up to scalar") {
        auto cd = corner_data(A, e);
        CHECK(cd.eAf.cols() == 1);
        CHECK(cd.fAe.cols() == 1);
    }
    SECTION("homology has dimensions 1,0,1,1,1,...") {
        CHECK(homology(res.complex, 0).dim == 1);
        CHECK(homology(res.complex, 1).dim == 0);
        for (int n = 2; n <= 9; ++n) CHECK(homology(res.complex, n).dim == 1);
    }
}

TEST_CASE("squeezed resolution degenerates at e = 1") {
    auto A = group_algebra(groups::cyclic(9), 3);
    auto e = trivial_idempotent(A);
    REQUIRE(A->equal(e.element, A->unit()));
    auto res = squeezed_resolution(A, e, 6);
    CHECK(res.complex.dim_at(0) == 9);
    for (int n = 1; n <= 6; ++n) CHECK(res.complex.dim_at(n) == 0);
}

TEST_CASE("squeezed resolution for F_7[C_7xC_3] exists with d*d = 0", "[slow]") {
    auto A = group_algebra(groups::semidirect_cpq(7, 3), 7);
    auto e = trivial_idempotent(A);
    auto res = squeezed_resolution(A, e, 8);
    CHECK(res.complex.dim_at(0) == 7);
    for (int n = 1; n <= 8; ++n) CHECK(res.complex.dim_at(n) == 14);
    res.complex.validate(false);  // includes d*d = 0
}

TEST_CASE("z maps") {
    auto A = group_algebra(groups::symmetric3(), 3);
    auto e = trivial_idempotent(A);
    auto res = squeezed_resolution(A, e, 12);

    SECTION("rejects n < 2") {
        CHECK_THROWS_AS(z_map(res, 1), InputError);
        CHECK_THROWS_AS(z_map(res, 0), InputError);
    }
    SECTION("components above degree 0 are identities; degree 0 is alpha") {
        auto z3 = z_map(res, 3);
        for (int i = 1; i + 3 <= 12; ++i)
            CHECK(z3.component_at(i) == FpMatrix::identity(3, 3));
        CHECK_FALSE(z3.component_at(0).is_zero());
        z3.validate();  // strict commutation with the differentials
    }
    SECTION("z(m) z(n) = z(m+n) as matrices") {
        for (int m = 2; m <= 8; ++m)
            for (int n = 2; m + n <= 10; ++n) {
                auto zm = z_map(res, m), zn = z_map(res, n), zmn = z_map(res, m + n);
                auto comp = compose(zm, zn);
                for (int i = 0; i + m + n <= 12; ++i)
                    CHECK(comp.component_at(i) == zmn.component_at(i));
            }
    }
}
