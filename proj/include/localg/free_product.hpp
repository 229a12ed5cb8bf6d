#pragma once

#include "localg/derived.hpp"

#include <optional>
#include <string>
#include <vector>

namespace localg {

/// A factor of a free product: an algebra B with an injective unit map from
/// the base A and a chosen free A-basis of the complement of A in B.  The
/// expansion matrix writes any b in B uniquely as iota(a_0) + sum iota(a_t) u_t.
struct FreeFactor {
    AlgebraMap unit;           // iota : A -> B, injective
    std::vector<Vec> letters;  // u_1..u_r in B: free left-A-basis of B-bar
    FpMatrix expand_solver;    // inverse of the [iota(e_i) | iota(e_i) u_t] column matrix

    const AlgebraPtr& B() const { return unit.target; }
    std::size_t rank() const { return letters.size(); }

    /// Coefficients (a_0, a_1, .., a_r), each a vector over A, of an element.
    std::vector<Vec> expand(const Vec& b) const {
        const std::size_t dA = unit.source->dim();
        FpMatrix coords = expand_solver * FpMatrix::column(unit.target->p(), b);
        std::vector<Vec> out(letters.size() + 1, Vec(dA, 0));
        for (std::size_t t = 0; t <= letters.size(); ++t)
            for (std::size_t i = 0; i < dA; ++i) out[t][i] = coords.at(t * dA + i, 0);
        return out;
    }
};

/// Certify B as an admissible factor: the unit map must be injective and the
/// complement of A spanned freely by letters found greedily among the given
/// candidate columns (default: the basis of B).  Failure reports the reason
/// through `why`; only the left-module variant of the filtration is built.
inline std::optional<FreeFactor> make_free_factor(const AlgebraMap& unit, std::string& why,
                                                  const FpMatrix& candidates_in = FpMatrix()) {
    unit.validate();
    const AlgebraPtr A = unit.source, B = unit.target;
    const std::uint32_t p = B->p();
    if (!unit.injective()) {
        why = "unit map A -> B is not injective";
        return std::nullopt;
    }
    FpMatrix candidates = candidates_in;
    if (candidates.cols() == 0) candidates = FpMatrix::identity(p, B->dim());
    FreeFactor f;
    f.unit = unit;
    FpMatrix cols = unit.matrix;  // iota(e_i)
    for (std::size_t c = 0; c < candidates.cols(); ++c) {
        if (cols.cols() == B->dim()) break;
        Vec u = candidates.column_vector(c);
        FpMatrix block = B->right_mult(u) * unit.matrix;  // iota(e_i) * u
        FpMatrix bigger = cols.hcat(block);
        if (rank(bigger) == cols.cols() + A->dim()) {
            f.letters.push_back(u);
            cols = std::move(bigger);
        }
    }
    if (cols.cols() != B->dim()) {
        why = "complement of A in B admits no free A-basis among the candidate columns";
        return std::nullopt;
    }
    auto inv = solve_many(cols, FpMatrix::identity(p, B->dim()));
    if (!inv.solvable) {
        why = "free-basis expansion matrix is singular";
        return std::nullopt;
    }
    f.expand_solver = inv.x;
    return f;
}

/// Truncated free product B *_A C in word normal form: the direct sum over
/// shapes j of B followed by j alternating letters (C-letter first), one
/// shape per word length j+1 up to max_word.  Multiplication is the honest
/// filtered one: unit components arising at a junction cascade leftwards, and
/// terms beyond the word bound are dropped (the product is partial there;
/// `last_mul_truncated` records when that happened).
class TruncatedFreeProduct {
public:
    AlgebraPtr A;
    FreeFactor B, C;
    std::size_t max_word = 0;
    std::vector<std::size_t> shape_dims, shape_offsets;
    std::size_t total_dim = 0;
    bool last_mul_truncated = false;

    TruncatedFreeProduct(AlgebraPtr a, FreeFactor b, FreeFactor c, std::size_t maxw,
                         std::size_t dim_cap = 200000)
        : A(std::move(a)), B(std::move(b)), C(std::move(c)), max_word(maxw) {
        if (max_word == 0) throw InputError("free product needs max_word >= 1");
        for (std::size_t j = 0; j + 1 <= max_word; ++j) {
            std::size_t d = B.B()->dim();
            for (std::size_t k = 1; k <= j; ++k) d *= letter_rank(k);
            shape_offsets.push_back(total_dim);
            shape_dims.push_back(d);
            total_dim += d;
            if (total_dim > dim_cap)
                throw ResourceError("truncated free product exceeds the dimension cap of " +
                                    std::to_string(dim_cap));
        }
    }

    std::uint32_t p() const { return A->p(); }

    /// Slot k (1-based) holds a C-letter when k is odd, a B-letter when even.
    std::size_t letter_rank(std::size_t slot) const { return slot % 2 ? C.rank() : B.rank(); }
    bool slot_is_c(std::size_t slot) const { return slot % 2 == 1; }

    std::size_t word_index(std::size_t shape, std::size_t head,
                           const std::vector<std::size_t>& letters) const {
        std::size_t idx = head;
        for (std::size_t k = 1; k <= shape; ++k) idx = idx * letter_rank(k) + letters[k - 1];
        return shape_offsets[shape] + idx;
    }

    Vec zero() const { return Vec(total_dim, 0); }

    Vec embed_B(const Vec& b) const {
        Vec out = zero();
        for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] % p();
        return out;
    }

    Vec embed_C(const Vec& c) {
        Vec head = zero();
        auto coef = C.expand(c);
        Vec h = B.unit.apply(coef[0]);
        for (std::size_t i = 0; i < h.size(); ++i) head[i] = h[i];
        for (std::size_t s = 0; s < C.rank(); ++s) {
            Vec part = right_act_A(embed_B(B.B()->unit()), coef[s + 1]);
            accumulate(head, mul_by_letter(part, true, s), 1);
        }
        return head;
    }

    Vec unit_element() const { return embed_B(B.B()->unit()); }

    Vec add(const Vec& x, const Vec& y) const {
        Vec r(total_dim);
        for (std::size_t i = 0; i < total_dim; ++i) r[i] = (x[i] + y[i]) % p();
        return r;
    }

    bool is_zero(const Vec& x) const {
        for (auto v : x)
            if (v % p()) return false;
        return true;
    }

    /// Right multiplication by an element of one factor:
    ///   x * b = x * iota(a_0) + sum_t (x * a_t) * u_t.
    Vec mul_factor(const Vec& x, const Vec& b, bool factor_is_c) {
        const FreeFactor& F = factor_is_c ? C : B;
        auto coef = F.expand(b);
        Vec out = right_act_A(x, coef[0]);
        for (std::size_t t = 0; t < F.rank(); ++t) {
            if (A->is_zero(coef[t + 1])) continue;
            accumulate(out, mul_by_letter(right_act_A(x, coef[t + 1]), factor_is_c, t), 1);
        }
        return out;
    }

    /// Full product; y is decomposed along its normal-form words.
    Vec mul(const Vec& x, const Vec& y) {
        last_mul_truncated = false;
        Vec out = zero();
        for_each_word(y, [&](std::size_t shape, std::size_t head, const std::vector<std::size_t>& letters,
                             std::uint32_t cf) {
            Vec tmp = mul_factor(x, B.B()->basis_element(head), false);
            for (std::size_t k = 1; k <= shape; ++k)
                tmp = mul_by_letter(tmp, slot_is_c(k), letters[k - 1]);
            accumulate(out, tmp, cf);
        });
        return out;
    }

    /// dim F_1, .., F_max: close the embedded copy of B under right
    /// multiplication by factor basis elements, one word length at a time.
    std::vector<std::size_t> filtration_dims() {
        std::vector<std::size_t> dims;
        FpMatrix basis(p(), total_dim, B.B()->dim());
        for (std::size_t i = 0; i < B.B()->dim(); ++i) basis.at(i, i) = 1;
        dims.push_back(basis.cols());
        for (std::size_t k = 2; k <= max_word; ++k) {
            FpMatrix prods = basis;
            for (std::size_t c = 0; c < basis.cols(); ++c) {
                Vec v = basis.column_vector(c);
                for (std::size_t i = 0; i < B.B()->dim(); ++i)
                    prods = prods.hcat(FpMatrix::column(p(), mul_factor(v, B.B()->basis_element(i), false)));
                for (std::size_t i = 0; i < C.B()->dim(); ++i)
                    prods = prods.hcat(FpMatrix::column(p(), mul_factor(v, C.B()->basis_element(i), true)));
            }
            basis = column_space(prods);
            dims.push_back(basis.cols());
        }
        return dims;
    }

    /// dim F_k / F_{k-1} from the word-shape formula.
    std::size_t quotient_dim_formula(std::size_t k) const {
        if (k == 0) return 0;
        if (k > max_word) throw InputError("quotient beyond the word bound");
        return shape_dims[k - 1];
    }

    /// Word length of an element (the filtration level it certifies).
    std::size_t word_length(const Vec& x) const {
        for (std::size_t j = shape_dims.size(); j-- > 0;)
            for (std::size_t i = 0; i < shape_dims[j]; ++i)
                if (x[shape_offsets[j] + i] % p()) return j + 1;
        return 0;
    }

    /// Canonical basis words spanning the shape of word length exactly k.
    std::vector<Vec> shape_basis(std::size_t k) const {
        std::vector<Vec> out;
        if (k == 0 || k > max_word) return out;
        const std::size_t j = k - 1;
        for (std::size_t i = 0; i < shape_dims[j]; ++i) {
            Vec v = zero();
            v[shape_offsets[j] + i] = 1;
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    template <typename F>
    void for_each_word(const Vec& x, F&& visit) const {
        for (std::size_t shape = 0; shape + 1 <= max_word; ++shape) {
            if (shape_dims[shape] == 0) continue;
            std::vector<std::size_t> letters(shape, 0);
            for (;;) {
                for (std::size_t head = 0; head < B.B()->dim(); ++head) {
                    const std::uint32_t cf = x[word_index(shape, head, letters)];
                    if (cf % p()) visit(shape, head, letters, cf % p());
                }
                std::size_t k = shape;
                while (k > 0 && letters[k - 1] == letter_rank(k) - 1) letters[--k] = 0;
                if (k == 0) break;
                ++letters[k - 1];
            }
        }
    }

    void accumulate(Vec& out, const Vec& term, std::uint32_t cf) const {
        if (cf == 0) return;
        for (std::size_t i = 0; i < total_dim; ++i)
            out[i] = (out[i] + std::uint64_t(cf) * term[i]) % p();
    }

    /// x * iota(a): the unit of the base acts through the last slot of every
    /// word, cascading to shorter words via the splitting of that factor.
    Vec right_act_A(const Vec& x, const Vec& a) {
        Vec out = zero();
        if (A->is_zero(a)) return out;
        for_each_word(x, [&](std::size_t shape, std::size_t head, const std::vector<std::size_t>& letters,
                             std::uint32_t cf) {
            if (shape == 0) {
                Vec prod = B.B()->mul(B.B()->basis_element(head), B.unit.apply(a));
                for (std::size_t i = 0; i < prod.size(); ++i)
                    out[i] = (out[i] + std::uint64_t(cf) * prod[i]) % p();
                return;
            }
            const bool is_c = slot_is_c(shape);
            const FreeFactor& F = is_c ? C : B;
            Vec prod = F.B()->mul(F.letters[letters[shape - 1]], F.unit.apply(a));
            auto coef = F.expand(prod);
            Vec shorter = zero();
            shorter[word_index(shape - 1, head, {letters.begin(), letters.end() - 1})] = cf;
            accumulate(out, right_act_A(shorter, coef[0]), 1);
            for (std::size_t t = 0; t < F.rank(); ++t) {
                if (A->is_zero(coef[t + 1])) continue;
                accumulate(out, mul_by_letter(right_act_A(shorter, coef[t + 1]), is_c, t), 1);
            }
        });
        return out;
    }

    /// x * u for a single letter u of one factor: merge with a same-factor
    /// tail (products cascade), append otherwise; appends beyond the word
    /// bound are dropped and recorded.
    Vec mul_by_letter(const Vec& x, bool letter_is_c, std::size_t s) {
        Vec out = zero();
        const FreeFactor& F = letter_is_c ? C : B;
        for_each_word(x, [&](std::size_t shape, std::size_t head, const std::vector<std::size_t>& letters,
                             std::uint32_t cf) {
            const bool merge = shape == 0 ? !letter_is_c : (slot_is_c(shape) == letter_is_c);
            if (shape == 0 && merge) {
                Vec prod = B.B()->mul(B.B()->basis_element(head), B.letters[s]);
                for (std::size_t i = 0; i < prod.size(); ++i)
                    out[i] = (out[i] + std::uint64_t(cf) * prod[i]) % p();
                return;
            }
            if (merge) {
                Vec prod = F.B()->mul(F.letters[letters[shape - 1]], F.letters[s]);
                auto coef = F.expand(prod);
                Vec shorter = zero();
                shorter[word_index(shape - 1, head, {letters.begin(), letters.end() - 1})] = cf;
                accumulate(out, right_act_A(shorter, coef[0]), 1);
                for (std::size_t t = 0; t < F.rank(); ++t) {
                    if (A->is_zero(coef[t + 1])) continue;
                    accumulate(out, mul_by_letter(right_act_A(shorter, coef[t + 1]), letter_is_c, t), 1);
                }
                return;
            }
            if (shape + 2 > max_word) {
                last_mul_truncated = true;
                return;
            }
            std::vector<std::size_t> longer(letters);
            longer.push_back(s);
            const std::size_t idx = word_index(shape + 1, head, longer);
            out[idx] = (out[idx] + cf) % p();
        });
        return out;
    }
};

/// Build B *_A C after certifying both factors; throws with the failing
/// certificate otherwise.
inline TruncatedFreeProduct free_product(const AlgebraPtr& A, const AlgebraMap& unitB,
                                         const AlgebraMap& unitC, std::size_t max_word,
                                         std::size_t dim_cap = 200000) {
    if (unitB.source != A || unitC.source != A)
        throw InputError("free_product: both factors must share the base algebra");
    std::string why;
    auto fb = make_free_factor(unitB, why);
    if (!fb) throw InputError("inadmissible: derived free product not certified (left factor: " + why + ")");
    auto fc = make_free_factor(unitC, why);
    if (!fc) throw InputError("inadmissible: derived free product not certified (right factor: " + why + ")");
    return TruncatedFreeProduct(A, std::move(*fb), std::move(*fc), max_word, dim_cap);
}

struct FiltrationReport {
    std::vector<std::size_t> direct_dims;   // dim F_1, F_2, ..., F_max (closure)
    std::vector<std::size_t> formula_dims;  // cumulative sums of the shape formula
    bool match = false;
};

/// dim F_k both ways: directly by multiplicative closure, and from the
/// word-shape formula for the filtration quotients.
inline FiltrationReport filtration_quotients(TruncatedFreeProduct& fp) {
    FiltrationReport rep;
    rep.direct_dims = fp.filtration_dims();
    std::size_t acc = 0;
    for (std::size_t k = 1; k <= fp.max_word; ++k) {
        acc += fp.quotient_dim_formula(k);
        rep.formula_dims.push_back(acc);
    }
    rep.match = rep.direct_dims == rep.formula_dims;
    return rep;
}

struct HomotopyEpiVerdict {
    enum Kind { YesUpTo, No, Inadmissible } kind = Inadmissible;
    std::size_t bound = 0;
    std::size_t first_nonzero_quotient = 0;  // word length witnessing No
    std::string reason;

    bool yes() const { return kind == YesUpTo; }
    bool definite() const { return kind != Inadmissible; }
};

/// Homotopy epimorphism test through the word filtration of B *_A B.  A map
/// is admissible when it is injective with a freely spanned complement (the
/// underived word product then computes the derived free product), or a split
/// surjection along a central idempotent (B is then projective over A and the
/// product degenerates to B).  The verdict is yes iff every filtration
/// quotient above word length 1 vanishes, equivalently B (x)_A Bbar = 0.
inline HomotopyEpiVerdict is_homotopy_epi(const AlgebraMap& f, std::size_t max_word,
                                          std::size_t dim_cap = 200000) {
    f.validate();
    HomotopyEpiVerdict v;
    v.bound = max_word;
    const AlgebraPtr A = f.source, B = f.target;
    if (f.injective()) {
        std::string why;
        auto factor = make_free_factor(f, why);
        if (!factor) {
            v.kind = HomotopyEpiVerdict::Inadmissible;
            v.reason = why;
            return v;
        }
        const std::size_t tensor_dim = B->dim() * factor->rank();  // dim B (x)_A Bbar
        try {
            TruncatedFreeProduct fp(A, *factor, *factor, max_word, dim_cap);
            auto filt = filtration_quotients(fp);
            if (!filt.match)
                throw CheckError("free product filtration disagrees with the shape formula");
            for (std::size_t k = 2; k <= max_word; ++k)
                if (fp.quotient_dim_formula(k) != 0) {
                    v.kind = HomotopyEpiVerdict::No;
                    v.first_nonzero_quotient = k;
                    if (tensor_dim == 0) throw CheckError("nonzero quotient but B (x) Bbar = 0");
                    return v;
                }
        } catch (const ResourceError&) {
            // explicit product too large; the rank formula still decides
            if (factor->rank() != 0) {
                v.kind = HomotopyEpiVerdict::No;
                v.first_nonzero_quotient = 2;
                return v;
            }
        }
        if (tensor_dim != 0) throw CheckError("vanishing quotients but B (x) Bbar != 0");
        v.kind = HomotopyEpiVerdict::YesUpTo;
        return v;
    }
    if (f.surjective()) {
        FpMatrix K = nullspace(f.matrix);
        if (K.cols() == 0) {
            v.kind = HomotopyEpiVerdict::YesUpTo;
            return v;
        }
        // the kernel must be A(1-eps) for a central idempotent: look for a
        // two-sided identity element of the kernel ideal
        const std::uint32_t p = A->p();
        FpMatrix sys(p, 2 * K.cols() * A->dim(), K.cols());
        FpMatrix rhs(p, sys.rows(), 1);
        for (std::size_t kcol = 0; kcol < K.cols(); ++kcol) {
            Vec kv = K.column_vector(kcol);
            FpMatrix R = A->right_mult(kv), L = A->left_mult(kv);
            for (std::size_t r = 0; r < A->dim(); ++r) {
                for (std::size_t c = 0; c < K.cols(); ++c) {
                    Vec cv = K.column_vector(c);
                    std::uint64_t rv = 0, lv = 0;
                    for (std::size_t i = 0; i < A->dim(); ++i) {
                        rv += std::uint64_t(R.at(r, i)) * cv[i];
                        lv += std::uint64_t(L.at(r, i)) * cv[i];
                    }
                    sys.at(kcol * A->dim() + r, c) = static_cast<std::uint8_t>(rv % p);
                    sys.at((K.cols() + kcol) * A->dim() + r, c) = static_cast<std::uint8_t>(lv % p);
                }
                rhs.at(kcol * A->dim() + r, 0) = static_cast<std::uint8_t>(kv[r]);
                rhs.at((K.cols() + kcol) * A->dim() + r, 0) = static_cast<std::uint8_t>(kv[r]);
            }
        }
        auto sol = solve(sys, rhs);
        if (sol.solvable) {
            Vec z(A->dim(), 0);
            for (std::size_t c = 0; c < K.cols(); ++c) {
                const std::uint32_t coef = sol.x.at(c, 0);
                if (!coef) continue;
                Vec cv = K.column_vector(c);
                for (std::size_t i = 0; i < A->dim(); ++i)
                    z[i] = (z[i] + std::uint64_t(coef) * cv[i]) % p;
            }
            bool central = A->is_idempotent(z);
            for (std::size_t i = 0; i < A->dim() && central; ++i) {
                Vec b = A->basis_element(i);
                central = A->equal(A->mul(z, b), A->mul(b, z));
            }
            if (central) {
                v.kind = HomotopyEpiVerdict::YesUpTo;
                return v;
            }
        }
        v.kind = HomotopyEpiVerdict::Inadmissible;
        v.reason = "surjection whose kernel is not generated by a central idempotent";
        return v;
    }
    v.kind = HomotopyEpiVerdict::Inadmissible;
    v.reason = "unit map is neither injective nor a split surjection";
    return v;
}

} // namespace localg
