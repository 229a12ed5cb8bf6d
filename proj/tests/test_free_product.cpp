#include "localg/free_product.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace localg;

namespace {

AlgebraMap unit_from_field(const AlgebraPtr& F, const AlgebraPtr& B) {
    FpMatrix m(B->p(), B->dim(), 1);
    for (std::size_t i = 0; i < B->dim(); ++i) m.at(i, 0) = static_cast<std::uint8_t>(B->unit()[i]);
    AlgebraMap f{F, B, m};
    f.validate();
    return f;
}

AlgebraMap subgroup_inclusion(const GroupTable& h, const GroupTable& g,
                              const std::vector<std::size_t>& embed, std::uint32_t p) {
    auto A = group_algebra(h, p);
    auto B = group_algebra(g, p);
    FpMatrix m(p, B->dim(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i) m.at(embed[i], i) = 1;
    AlgebraMap f{A, B, m};
    f.validate();
    return f;
}

} // namespace

TEST_CASE("infinite dihedral truncation: F_3[C_2] *_F3 F_3[C_2]") {
    auto B = group_algebra(groups::cyclic(2), 3);
    auto F = field_algebra(3);
    auto fp = free_product(F, unit_from_field(F, B), unit_from_field(F, B), 4);
    // one letter per factor: quotients 2, 2, 2, cumulative 2, 4, 6, 8
    CHECK(fp.B.rank() == 1);
    CHECK(fp.C.rank() == 1);
    auto rep = filtration_quotients(fp);
    CHECK(rep.formula_dims == std::vector<std::size_t>{2, 4, 6, 8});
    CHECK(rep.direct_dims == rep.formula_dims);
    CHECK(rep.match);
    SECTION("group-like words: (st)^2 has word length 4") {
        Vec s = fp.embed_B(B->basis_element(1));
        Vec t = fp.embed_C(B->basis_element(1));
        Vec st = fp.mul(s, t);
        CHECK(fp.word_length(st) == 2);
        Vec stst = fp.mul(st, st);
        CHECK(fp.word_length(stst) == 4);
        CHECK_FALSE(fp.last_mul_truncated);
        // s * s = 1 collapses back to the head
        CHECK(fp.word_length(fp.mul(s, s)) == 1);
        CHECK(fp.mul(s, s) == fp.unit_element());
    }
}

TEST_CASE("quotient dimensions follow the word-shape formula: F_3[C_3] factors") {
    auto B = group_algebra(groups::cyclic(3), 3);
    auto F = field_algebra(3);
    auto fp = free_product(F, unit_from_field(F, B), unit_from_field(F, B), 5);
    // F_{2n+1}/F_{2n} = 3 * 4^n
    CHECK(fp.quotient_dim_formula(1) == 3);
    CHECK(fp.quotient_dim_formula(2) == 6);
    CHECK(fp.quotient_dim_formula(3) == 12);
    CHECK(fp.quotient_dim_formula(5) == 48);
    auto rep = filtration_quotients(fp);
    CHECK(rep.match);
}

TEST_CASE("unit factor: A *_A C is C") {
    // A = F_3[C_2] embedded in C = F_3[C_2 x C_2]
    auto c2 = groups::cyclic(2);
    auto v4 = groups::direct_product(c2, c2);
    auto ic = subgroup_inclusion(c2, v4, {0, 2}, 3);
    auto A = ic.source;
    auto fp = free_product(A, AlgebraMap::identity(A), ic, 4);
    CHECK(fp.B.rank() == 0);
    CHECK(fp.C.rank() == 1);
    CHECK(fp.quotient_dim_formula(1) == 2);
    CHECK(fp.quotient_dim_formula(2) == 2);  // Cbar survives
    CHECK(fp.quotient_dim_formula(3) == 0);  // words with a Bbar letter vanish
    CHECK(fp.quotient_dim_formula(4) == 0);
    CHECK(fp.total_dim == 4);
    // the embedded copy of C multiplies exactly like C
    auto C = ic.target;
    for (std::size_t i = 0; i < C->dim(); ++i)
        for (std::size_t j = 0; j < C->dim(); ++j) {
            Vec lhs = fp.mul(fp.embed_C(C->basis_element(i)), fp.embed_C(C->basis_element(j)));
            Vec rhs = fp.embed_C(C->mul(C->basis_element(i), C->basis_element(j)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("embedded factors are subalgebras and the unit is neutral") {
    auto B = group_algebra(groups::cyclic(2), 3);
    auto C = group_algebra(groups::cyclic(3), 3);
    auto F = field_algebra(3);
    auto fp = free_product(F, unit_from_field(F, B), unit_from_field(F, C), 4);
    for (std::size_t i = 0; i < B->dim(); ++i)
        for (std::size_t j = 0; j < B->dim(); ++j)
            CHECK(fp.mul(fp.embed_B(B->basis_element(i)), fp.embed_B(B->basis_element(j))) ==
                  fp.embed_B(B->mul(B->basis_element(i), B->basis_element(j))));
    for (std::size_t i = 0; i < C->dim(); ++i)
        for (std::size_t j = 0; j < C->dim(); ++j)
            CHECK(fp.mul(fp.embed_C(C->basis_element(i)), fp.embed_C(C->basis_element(j))) ==
                  fp.embed_C(C->mul(C->basis_element(i), C->basis_element(j))));
    Vec w = fp.mul(fp.embed_B(B->basis_element(1)), fp.embed_C(C->basis_element(2)));
    CHECK(fp.mul(fp.unit_element(), w) == w);
    CHECK(fp.mul(w, fp.unit_element()) == w);
}

TEST_CASE("multiplicativity of the filtration and associativity on sampled words", "[property]") {
    auto B = group_algebra(groups::cyclic(2), 5);
    auto C = group_algebra(groups::cyclic(3), 5);
    auto F = field_algebra(5);
    auto fp = free_product(F, unit_from_field(F, B), unit_from_field(F, C), 6);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 1; n + k <= 6; ++k)
            for (const Vec& x : fp.shape_basis(n))
                for (const Vec& y : fp.shape_basis(k)) {
                    Vec prod = fp.mul(x, y);
                    CHECK_FALSE(fp.last_mul_truncated);
                    CHECK(fp.word_length(prod) <= n + k);
                }
    for (const Vec& x : fp.shape_basis(2))
        for (const Vec& y : fp.shape_basis(1))
            for (const Vec& z : fp.shape_basis(3)) {
                Vec lhs = fp.mul(fp.mul(x, y), z);
                Vec rhs = fp.mul(x, fp.mul(y, z));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("filtration quotient 2 matches the underived relative differentials") {
    // dim F_2/F_1 = dim B (x)_A Bbar = dim ker(mult: B (x)_A B -> B) for free Bbar
    auto f = subgroup_inclusion(groups::cyclic(2), groups::symmetric3(), {0, 1}, 3);
    std::string why;
    auto factor = make_free_factor(f, why);
    REQUIRE(factor.has_value());
    auto fp = TruncatedFreeProduct(f.source, *factor, *factor, 3);
    AModule right = restricted_regular(f, Side::Right);
    AModule left = restricted_regular(f, Side::Left);
    const std::size_t tensor = underived_tensor_dim(f.source, right, left);
    CHECK(fp.quotient_dim_formula(2) == tensor - f.target->dim());
}

TEST_CASE("homotopy epimorphism verdicts") {
    SECTION("identity: yes") {
        auto A = group_algebra(groups::symmetric3(), 3);
        auto v = is_homotopy_epi(AlgebraMap::identity(A), 6);
        CHECK(v.yes());
    }
    SECTION("field into F_3[C_2]: no, with the first quotient as witness") {
        auto B = group_algebra(groups::cyclic(2), 3);
        auto v = is_homotopy_epi(unit_from_field(field_algebra(3), B), 6);
        CHECK(v.kind == HomotopyEpiVerdict::No);
        CHECK(v.first_nonzero_quotient == 2);
    }
    SECTION("split projection A x A -> A: yes") {
        auto C2 = group_algebra(groups::cyclic(2), 3);
        auto AA = Algebra::direct_product(*C2, *C2);
        FpMatrix m(3, 2, 4);
        m.at(0, 0) = 1;
        m.at(1, 1) = 1;
        AlgebraMap proj{AA, C2, m};
        auto v = is_homotopy_epi(proj, 6);
        CHECK(v.yes());
    }
    SECTION("non-free complement: inadmissible, never a guess") {
        // A = F_3[s]/(s^2) inside B = F_3[t]/(t^3) via s -> t^2: dim Bbar = 1 is
        // not a multiple of dim A
        std::vector<std::uint8_t> ca(8, 0);
        ca[(0 * 2 + 0) * 2 + 0] = 1;
        ca[(0 * 2 + 1) * 2 + 1] = 1;
        ca[(1 * 2 + 0) * 2 + 1] = 1;
        auto A = Algebra::make(3, 2, ca, {1, 0});
        std::vector<std::uint8_t> cb(27, 0);
        auto put = [&](int i, int j, int k) { cb[(i * 3 + j) * 3 + k] = 1; };
        put(0, 0, 0); put(0, 1, 1); put(1, 0, 1); put(0, 2, 2); put(2, 0, 2);
        put(1, 1, 2);  // t * t = t^2
        auto Bq = Algebra::make(3, 3, cb, {1, 0, 0});
        FpMatrix m(3, 3, 2);
        m.at(0, 0) = 1;
        m.at(2, 1) = 1;  // s -> t^2
        AlgebraMap f{A, Bq, m};
        auto v = is_homotopy_epi(f, 6);
        CHECK(v.kind == HomotopyEpiVerdict::Inadmissible);
        CHECK_FALSE(v.reason.empty());
    }
    SECTION("agreement with the homological verdict on a subgroup inclusion") {
        auto f = subgroup_inclusion(groups::cyclic(3), groups::symmetric3(), {0, 4, 5}, 3);
        auto homotopy = is_homotopy_epi(f, 6);
        REQUIRE(homotopy.definite());
        auto eng = make_tor_engine(f.source);
        auto homological = is_homological_epi(eng, f, 6);
        CHECK(homotopy.yes() == homological.yes);
        CHECK_FALSE(homotopy.yes());
    }
}
