#include "localg/fp_matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace localg;

TEST_CASE("row_reduce on identity and zero") {
    auto rr = row_reduce(FpMatrix::identity(3, 2));
    CHECK(rr.rank == 2);
    CHECK(rr.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(rr.rref == FpMatrix::identity(3, 2));

    auto zz = row_reduce(FpMatrix::zero(5, 3, 4));
    CHECK(zz.rank == 0);
    CHECK(zz.pivot_columns.empty());
}

TEST_CASE("rank-1 matrix over F5") {
    FpMatrix m(5, {{1, 2}, {2, 4}});
    auto rr = row_reduce(m);
    CHECK(rr.rank == 1);
    CHECK(rr.pivot_columns == std::vector<std::size_t>{0});
    // hand reduction: divide first row, clear second
    CHECK(rr.rref == FpMatrix(5, {{1, 2}, {0, 0}}));

    FpMatrix ker = nullspace(m);
    REQUIRE(ker.cols() == 1);
    CHECK((m * ker).is_zero());
    // canonical kernel vector: free column 1 set to 1
    CHECK(ker == FpMatrix(5, {{3}, {1}}));
    // exhaustive check over F_5^2: kernel is exactly the span
    std::size_t in_kernel = 0;
    for (unsigned a = 0; a < 5; ++a)
        for (unsigned b = 0; b < 5; ++b) {
            FpMatrix v(5, {{a}, {b}});
            if ((m * v).is_zero()) ++in_kernel;
        }
    CHECK(in_kernel == 5);
}

TEST_CASE("nullspace dimensions") {
    CHECK(nullspace(FpMatrix::identity(3, 4)).cols() == 0);
    CHECK(nullspace(FpMatrix::zero(3, 4, 4)).cols() == 4);
}

TEST_CASE("solve") {
    FpMatrix id = FpMatrix::identity(7, 3);
    FpMatrix b(7, {{2}, {0}, {5}});
    auto s = solve(id, b);
    REQUIRE(s.solvable);
    CHECK(s.x == b);

    auto bad = solve(FpMatrix::zero(7, 2, 2), FpMatrix(7, {{1}, {0}}));
    CHECK_FALSE(bad.solvable);
}

TEST_CASE("construct-then-solve round trip and rank-nullity", "[property]") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        const std::uint32_t p = (iter % 3 == 0) ? 2 : (iter % 3 == 1) ? 3 : 5;
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 7;
        FpMatrix m(p, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = static_cast<std::uint8_t>(rng() % p);

        // rank + nullity = cols
        auto rr = row_reduce(m);
        FpMatrix ker = nullspace(m);
        CHECK(rr.rank + ker.cols() == cols);
        CHECK((m * ker).is_zero());

        // row_reduce is idempotent
        CHECK(row_reduce(rr.rref).rref == rr.rref);

        // solve a consistent system exactly
        FpMatrix x0(p, cols, 1);
        for (std::size_t c = 0; c < cols; ++c) x0.at(c, 0) = static_cast<std::uint8_t>(rng() % p);
        auto s = solve(m, m * x0);
        REQUIRE(s.solvable);
        CHECK(m * s.x == m * x0);
    }
}

TEST_CASE("column space and span helpers") {
    FpMatrix m(3, {{1, 2, 0}, {0, 0, 1}, {1, 2, 1}});
    FpMatrix cs = column_space(m);
    CHECK(cs.cols() == 2);
    CHECK(in_span(cs, m));
    CHECK(same_subspace(m, cs));

    FpMatrix a(3, {{1}, {0}, {0}});
    FpMatrix b(3, {{0}, {1}, {0}});
    CHECK(span_sum(a, b).cols() == 2);
    CHECK_FALSE(in_span(a, b));
}

TEST_CASE("complement_in picks representatives modulo boundaries") {
    // cycles = all of F_3^2, boundaries = first axis
    FpMatrix cycles = FpMatrix::identity(3, 2);
    FpMatrix bound(3, {{1}, {0}});
    FpMatrix reps = complement_in(cycles, bound);
    REQUIRE(reps.cols() == 1);
    CHECK(reps.at(1, 0) == 1);
}

TEST_CASE("kron") {
    FpMatrix a(3, {{1, 2}});
    FpMatrix b(3, {{0}, {1}});
    FpMatrix k = a.kron(b);
    CHECK(k.rows() == 2);
    CHECK(k.cols() == 2);
    CHECK(k.at(1, 0) == 1);
    CHECK(k.at(1, 1) == 2);
}
