#pragma once

#include "localg/fp_matrix.hpp"
#include "localg/group_table.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace localg {

/// Element coordinates with respect to the distinguished basis of an algebra.
using Vec = std::vector<std::uint32_t>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional associative unital algebra over F_p, given by structure
/// constants c[i][j][k] (coefficient of basis k in e_i e_j).  Immutable after
/// construction; construction verifies associativity on all basis triples and
/// that the unit is two-sided.  An optional augmentation (a unital algebra map
/// to F_p) and basis labels (group elements) may be attached.
class Algebra {
public:
    static AlgebraPtr make(std::uint32_t p, std::size_t dim, std::vector<std::uint8_t> constants,
                           Vec unit, std::optional<Vec> augmentation = std::nullopt,
                           std::vector<std::string> labels = {}, bool skip_associativity_check = false) {
        auto a = AlgebraPtr(new Algebra(p, dim, std::move(constants), std::move(unit),
                                        std::move(augmentation), std::move(labels),
                                        skip_associativity_check));
        return a;
    }

    std::uint32_t p() const { return p_; }
    std::size_t dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    bool augmented() const { return augmentation_.has_value(); }
    const Vec& augmentation() const {
        if (!augmentation_) throw InputError("algebra has no augmentation");
        return *augmentation_;
    }
    const std::vector<std::string>& labels() const { return labels_; }

    std::uint8_t c(std::size_t i, std::size_t j, std::size_t k) const {
        return constants_[(i * dim_ + j) * dim_ + k];
    }

    Vec zero_element() const { return Vec(dim_, 0); }

    Vec basis_element(std::size_t i) const {
        Vec v(dim_, 0);
        v[i] = 1;
        return v;
    }

    Vec add(const Vec& x, const Vec& y) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) r[i] = (x[i] + y[i]) % p_;
        return r;
    }

    Vec sub(const Vec& x, const Vec& y) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) r[i] = (x[i] + p_ - y[i] % p_) % p_;
        return r;
    }

    Vec scale(std::uint32_t c, const Vec& x) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) r[i] = c % p_ * x[i] % p_;
        return r;
    }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec r(dim_, 0);
        std::vector<std::uint64_t> acc(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                const std::uint64_t f = std::uint64_t(x[i]) * y[j];
                const std::uint8_t* row = &constants_[(i * dim_ + j) * dim_];
                for (std::size_t k = 0; k < dim_; ++k) acc[k] += f % p_ * row[k];
            }
        }
        for (std::size_t k = 0; k < dim_; ++k) r[k] = static_cast<std::uint32_t>(acc[k] % p_);
        return r;
    }

    Vec power(Vec x, std::uint64_t e) const {
        Vec acc = unit_;
        while (e) {
            if (e & 1) acc = mul(acc, x);
            x = mul(x, x);
            e >>= 1;
        }
        return acc;
    }

    bool is_zero(const Vec& x) const {
        for (auto v : x)
            if (v % p_) return false;
        return true;
    }

    bool equal(const Vec& x, const Vec& y) const { return is_zero(sub(x, y)); }

    /// Matrix of y -> x*y.
    FpMatrix left_mult(const Vec& x) const {
        FpMatrix m(p_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            std::vector<std::uint64_t> acc(dim_, 0);
            for (std::size_t i = 0; i < dim_; ++i) {
                if (x[i] == 0) continue;
                const std::uint8_t* row = &constants_[(i * dim_ + j) * dim_];
                for (std::size_t k = 0; k < dim_; ++k) acc[k] += std::uint64_t(x[i]) * row[k];
            }
            for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = static_cast<std::uint8_t>(acc[k] % p_);
        }
        return m;
    }

    /// Matrix of x -> x*y.
    FpMatrix right_mult(const Vec& y) const {
        FpMatrix m(p_, dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            std::vector<std::uint64_t> acc(dim_, 0);
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                const std::uint8_t* row = &constants_[(i * dim_ + j) * dim_];
                for (std::size_t k = 0; k < dim_; ++k) acc[k] += std::uint64_t(y[j]) * row[k];
            }
            for (std::size_t k = 0; k < dim_; ++k) m.at(k, i) = static_cast<std::uint8_t>(acc[k] % p_);
        }
        return m;
    }

    std::uint32_t augment(const Vec& x) const {
        const Vec& eps = augmentation();
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < dim_; ++i) s += std::uint64_t(eps[i]) * x[i];
        return static_cast<std::uint32_t>(s % p_);
    }

    bool is_idempotent(const Vec& x) const { return equal(mul(x, x), x); }

    /// Multiplicative inverse if it exists.
    std::optional<Vec> inverse(const Vec& x) const {
        auto sol = solve(left_mult(x), FpMatrix::column(p_, unit_));
        if (!sol.solvable) return std::nullopt;
        Vec r = sol.x.column_vector(0);
        if (!equal(mul(r, x), unit_)) return std::nullopt; // left inverse only
        return r;
    }

    Vec one_minus(const Vec& e) const { return sub(unit_, e); }

    /// Opposite algebra: c_op[i][j][k] = c[j][i][k].  Right modules over this
    /// algebra are left modules over the opposite.
    AlgebraPtr opposite() const {
        std::vector<std::uint8_t> oc(constants_.size());
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    oc[(i * dim_ + j) * dim_ + k] = c(j, i, k);
        return make(p_, dim_, std::move(oc), unit_, augmentation_, labels_, true);
    }

    /// Direct product of algebras (componentwise structure).
    static AlgebraPtr direct_product(const Algebra& a, const Algebra& b) {
        if (a.p() != b.p()) throw InputError("direct_product: modulus mismatch");
        const std::size_t d = a.dim() + b.dim();
        std::vector<std::uint8_t> cc(d * d * d, 0);
        auto put = [&](std::size_t i, std::size_t j, std::size_t k, std::uint8_t v) {
            cc[(i * d + j) * d + k] = v;
        };
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                for (std::size_t k = 0; k < a.dim(); ++k) put(i, j, k, a.c(i, j, k));
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j)
                for (std::size_t k = 0; k < b.dim(); ++k)
                    put(a.dim() + i, a.dim() + j, a.dim() + k, b.c(i, j, k));
        Vec unit(d, 0);
        for (std::size_t i = 0; i < a.dim(); ++i) unit[i] = a.unit()[i];
        for (std::size_t i = 0; i < b.dim(); ++i) unit[a.dim() + i] = b.unit()[i];
        // augmentation does not survive a product (it would not be unital on both
        // factors); callers add one explicitly when a factor projection is used.
        return make(a.p(), d, std::move(cc), std::move(unit), std::nullopt, {}, true);
    }

private:
    Algebra(std::uint32_t p, std::size_t dim, std::vector<std::uint8_t> constants, Vec unit,
            std::optional<Vec> augmentation, std::vector<std::string> labels, bool skip_assoc)
        : p_(p), dim_(dim), constants_(std::move(constants)), unit_(std::move(unit)),
          augmentation_(std::move(augmentation)), labels_(std::move(labels)) {
        fp::check_prime(p_);
        if (dim_ == 0) throw InputError("algebra must have positive dimension");
        if (constants_.size() != dim_ * dim_ * dim_)
            throw InputError("structure constant count must be dim^3");
        for (auto& v : constants_) v = static_cast<std::uint8_t>(v % p_);
        if (unit_.size() != dim_) throw InputError("unit vector has wrong length");
        for (auto& v : unit_) v %= p_;
        validate_unit();
        if (!skip_assoc) validate_associativity();
        if (augmentation_) {
            for (auto& v : *augmentation_) v %= p_;
            validate_augmentation();
        }
        if (!labels_.empty() && labels_.size() != dim_)
            throw InputError("label count must equal dim");
    }

    void validate_unit() const {
        const FpMatrix id = FpMatrix::identity(p_, dim_);
        if (left_mult(unit_) != id || right_mult(unit_) != id)
            throw InputError("unit is not a two-sided identity");
    }

    void validate_associativity() const {
        // (e_i e_j) e_k = e_i (e_j e_k) on all basis triples.
        for (std::size_t i = 0; i < dim_; ++i) {
            const FpMatrix Li = left_mult(basis_element(i));
            for (std::size_t j = 0; j < dim_; ++j) {
                Vec eij(dim_);
                for (std::size_t k = 0; k < dim_; ++k) eij[k] = c(i, j, k);
                if (Li * left_mult(basis_element(j)) != left_mult(eij))
                    throw InputError("structure constants are not associative (witness basis pair " +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    void validate_augmentation() const {
        const Vec& eps = *augmentation_;
        if (eps.size() != dim_) throw InputError("augmentation vector has wrong length");
        std::uint64_t u = 0;
        for (std::size_t i = 0; i < dim_; ++i) u += std::uint64_t(eps[i]) * unit_[i];
        if (u % p_ != 1) throw InputError("augmentation is not unital");
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                std::uint64_t lhs = std::uint64_t(eps[i]) * eps[j] % p_;
                std::uint64_t rhs = 0;
                for (std::size_t k = 0; k < dim_; ++k) rhs += std::uint64_t(c(i, j, k)) * eps[k];
                if (lhs != rhs % p_)
                    throw InputError("augmentation is not multiplicative (witness basis pair " +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }

    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::uint8_t> constants_;
    Vec unit_;
    std::optional<Vec> augmentation_;
    std::vector<std::string> labels_;
};

/// Tensor product over the ground field, basis e_i (x) f_j in row-major order.
inline AlgebraPtr tensor_product(const Algebra& a, const Algebra& b) {
    if (a.p() != b.p()) throw InputError("tensor_product: modulus mismatch");
    const std::uint32_t p = a.p();
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    std::vector<std::uint8_t> cc(d * d * d, 0);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t i2 = 0; i2 < da; ++i2)
                for (std::size_t j2 = 0; j2 < db; ++j2)
                    for (std::size_t k = 0; k < da; ++k)
                        for (std::size_t l = 0; l < db; ++l) {
                            const std::uint32_t v = std::uint32_t(a.c(i, i2, k)) * b.c(j, j2, l) % p;
                            if (v)
                                cc[((i * db + j) * d + (i2 * db + j2)) * d + (k * db + l)] =
                                    static_cast<std::uint8_t>(v);
                        }
    Vec unit(d, 0);
    for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l) unit[k * db + l] = a.unit()[k] * b.unit()[l] % p;
    std::optional<Vec> aug;
    if (a.augmented() && b.augmented()) {
        Vec v(d);
        for (std::size_t k = 0; k < da; ++k)
            for (std::size_t l = 0; l < db; ++l)
                v[k * db + l] = a.augmentation()[k] * b.augmentation()[l] % p;
        aug = std::move(v);
    }
    return Algebra::make(p, d, std::move(cc), std::move(unit), std::move(aug), {}, true);
}

/// F_p[t]/(t^n), augmented by t -> 0.
inline AlgebraPtr truncated_polynomial_algebra(std::uint32_t p, std::size_t n) {
    if (n == 0) throw InputError("truncated polynomial algebra needs n >= 1");
    std::vector<std::uint8_t> cc(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) cc[(i * n + j) * n + (i + j)] = 1;
    Vec unit(n, 0);
    unit[0] = 1;
    Vec aug(n, 0);
    aug[0] = 1;
    return Algebra::make(p, n, std::move(cc), std::move(unit), std::move(aug), {}, true);
}

/// Group algebra F_p[G] from a validated multiplication table.  Basis order is
/// the table's element order (identity first); the augmentation sends every
/// group element to 1.
inline AlgebraPtr group_algebra(const GroupTable& g, std::uint32_t p) {
    fp::check_prime(p);
    const std::size_t n = g.order();
    std::vector<std::uint8_t> c(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + g.mul(i, j)] = 1;
    Vec unit(n, 0);
    unit[0] = 1;
    Vec aug(n, 1);
    // table associativity was already verified elementwise
    return Algebra::make(p, n, std::move(c), std::move(unit), std::move(aug), g.elements(), true);
}

/// The ground field as a one-dimensional algebra.
inline AlgebraPtr field_algebra(std::uint32_t p) {
    return Algebra::make(p, 1, {1}, {1}, Vec{1}, {"1"}, true);
}

/// Canonical coordinates for a quotient A/I by a two-sided ideal: the
/// complement basis is the set of coordinate vectors away from the leading
/// coordinates of the canonical ideal basis.
struct QuotientAlgebra {
    AlgebraPtr algebra;    // the quotient
    FpMatrix projection;   // dim(quotient) x dim(A)
    FpMatrix section;      // dim(A) x dim(quotient), projection*section = id
};

inline QuotientAlgebra quotient_by_ideal(const AlgebraPtr& A, const FpMatrix& ideal_basis_in,
                                         bool inherit_augmentation = true) {
    const std::uint32_t p = A->p();
    const std::size_t n = A->dim();
    const FpMatrix ideal = column_space(ideal_basis_in);
    // sanity: two-sided ideal
    for (std::size_t i = 0; i < n; ++i) {
        const FpMatrix L = A->left_mult(A->basis_element(i));
        const FpMatrix R = A->right_mult(A->basis_element(i));
        if (!in_span(ideal, L * ideal) || !in_span(ideal, R * ideal))
            throw InputError("quotient_by_ideal: subspace is not a two-sided ideal");
    }
    // leading coordinate of each canonical basis column
    std::vector<bool> leading(n, false);
    for (std::size_t c = 0; c < ideal.cols(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (ideal.at(r, c)) { leading[r] = true; break; }
    std::vector<std::size_t> comp;
    for (std::size_t r = 0; r < n; ++r)
        if (!leading[r]) comp.push_back(r);
    const std::size_t m = comp.size();
    if (m + ideal.cols() != n) throw CheckError("quotient complement has wrong size");
    FpMatrix section(p, n, m);
    for (std::size_t j = 0; j < m; ++j) section.at(comp[j], j) = 1;
    // projection: solve [ideal | section] x = e_r, keep the section block
    FpMatrix big = ideal.hcat(section);
    FpMatrix proj(p, m, n);
    for (std::size_t r = 0; r < n; ++r) {
        auto sol = solve(big, FpMatrix::column(p, A->basis_element(r)));
        if (!sol.solvable) throw CheckError("quotient projection failed");
        for (std::size_t j = 0; j < m; ++j) proj.at(j, r) = sol.x.at(ideal.cols() + j, 0);
    }
    auto project = [&](const Vec& x) {
        Vec r(m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < n; ++i) s += std::uint64_t(proj.at(j, i)) * x[i];
            r[j] = static_cast<std::uint32_t>(s % p);
        }
        return r;
    };
    std::vector<std::uint8_t> cc(m * m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Vec prod = project(A->mul(A->basis_element(comp[a]), A->basis_element(comp[b])));
            for (std::size_t k = 0; k < m; ++k) cc[(a * m + b) * m + k] = static_cast<std::uint8_t>(prod[k]);
        }
    Vec unit = project(A->unit());
    std::optional<Vec> aug;
    if (inherit_augmentation && A->augmented()) {
        bool vanishes = true;
        for (std::size_t c2 = 0; c2 < ideal.cols(); ++c2)
            vanishes &= (A->augment(ideal.column_vector(c2)) == 0);
        if (vanishes) {
            Vec a(m);
            for (std::size_t j = 0; j < m; ++j) a[j] = A->augment(A->basis_element(comp[j]));
            aug = std::move(a);
        }
    }
    QuotientAlgebra q;
    q.algebra = Algebra::make(p, m, std::move(cc), std::move(unit), std::move(aug));
    q.projection = std::move(proj);
    q.section = std::move(section);
    return q;
}

/// Corner algebra fAf for an idempotent f, with its basis embedded in A.
struct CornerAlgebra {
    AlgebraPtr algebra;  // fAf with unit f
    FpMatrix basis;      // dim(A) x dim(fAf), canonical columns in A-coordinates
};

inline CornerAlgebra corner_algebra(const AlgebraPtr& A, const Vec& f) {
    if (!A->is_idempotent(f)) throw InputError("corner_algebra: element is not idempotent");
    const std::uint32_t p = A->p();
    const FpMatrix basis = column_space(A->left_mult(f) * A->right_mult(f));
    const std::size_t m = basis.cols();
    if (m == 0) throw InputError("corner_algebra: corner is zero");
    std::vector<std::uint8_t> cc(m * m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Vec prod = A->mul(basis.column_vector(a), basis.column_vector(b));
            auto sol = solve(basis, FpMatrix::column(p, prod));
            if (!sol.solvable) throw CheckError("corner is not closed under multiplication");
            for (std::size_t k = 0; k < m; ++k) cc[(a * m + b) * m + k] = sol.x.at(k, 0);
        }
    auto unit_sol = solve(basis, FpMatrix::column(p, f));
    if (!unit_sol.solvable) throw CheckError("idempotent not inside its corner");
    Vec unit = unit_sol.x.column_vector(0);
    std::optional<Vec> aug;
    if (A->augmented() && A->augment(f) == 1) {
        Vec a(m);
        for (std::size_t j = 0; j < m; ++j) a[j] = A->augment(basis.column_vector(j));
        aug = std::move(a);
    }
    CornerAlgebra out;
    out.algebra = Algebra::make(p, m, std::move(cc), std::move(unit), std::move(aug));
    out.basis = basis;
    return out;
}

/// Span of all products u*v, u in U, v in V (canonical basis).
inline FpMatrix subspace_product(const Algebra& A, const FpMatrix& U, const FpMatrix& V) {
    if (U.cols() == 0 || V.cols() == 0) return FpMatrix(A.p(), A.dim(), 0);
    FpMatrix prods(A.p(), A.dim(), U.cols() * V.cols());
    for (std::size_t a = 0; a < U.cols(); ++a)
        for (std::size_t b = 0; b < V.cols(); ++b) {
            Vec prod = A.mul(U.column_vector(a), V.column_vector(b));
            for (std::size_t k = 0; k < A.dim(); ++k)
                prods.at(k, a * V.cols() + b) = static_cast<std::uint8_t>(prod[k]);
        }
    return column_space(prods);
}

/// Unital algebra map given on the source basis.
struct AlgebraMap {
    AlgebraPtr source;
    AlgebraPtr target;
    FpMatrix matrix;  // dim(target) x dim(source)

    Vec apply(const Vec& x) const {
        Vec r(target->dim(), 0);
        for (std::size_t i = 0; i < source->dim(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t k = 0; k < target->dim(); ++k)
                r[k] = (r[k] + std::uint64_t(x[i]) * matrix.at(k, i)) % target->p();
        }
        return r;
    }

    void validate() const {
        if (source->p() != target->p()) throw InputError("algebra map: modulus mismatch");
        if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
            throw InputError("algebra map: matrix has wrong shape");
        if (!target->equal(apply(source->unit()), target->unit()))
            throw InputError("algebra map is not unital");
        for (std::size_t i = 0; i < source->dim(); ++i)
            for (std::size_t j = 0; j < source->dim(); ++j) {
                Vec lhs = apply(source->mul(source->basis_element(i), source->basis_element(j)));
                Vec rhs = target->mul(apply(source->basis_element(i)), apply(source->basis_element(j)));
                if (!target->equal(lhs, rhs))
                    throw InputError("algebra map is not multiplicative (witness basis pair " +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }

    bool injective() const { return rank(matrix) == source->dim(); }
    bool surjective() const { return rank(matrix) == target->dim(); }

    static AlgebraMap identity(const AlgebraPtr& a) {
        return AlgebraMap{a, a, FpMatrix::identity(a->p(), a->dim())};
    }
};

} // namespace localg
