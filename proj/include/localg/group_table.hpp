#pragma once

#include "localg/fp.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace localg {

/// Multiplication table of a finite group.  Element 0 is the identity;
/// table[i][j] is the index of g_i * g_j.  Construction validates the group
/// axioms and reports the first failing one by name, with a witness.
class GroupTable {
public:
    GroupTable(std::string name, std::vector<std::string> elements,
               std::vector<std::vector<std::size_t>> table)
        : name_(std::move(name)), elements_(std::move(elements)), table_(std::move(table)) {
        validate();
    }

    const std::string& name() const { return name_; }
    std::size_t order() const { return table_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }
    std::size_t mul(std::size_t i, std::size_t j) const { return table_[i][j]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    std::size_t inverse(std::size_t i) const {
        for (std::size_t j = 0; j < order(); ++j)
            if (table_[i][j] == 0) return j;
        throw CheckError("validated group lost an inverse");
    }

    /// Order of an element.
    std::size_t element_order(std::size_t i) const {
        std::size_t k = 1, x = i;
        while (x != 0) {
            x = table_[x][i];
            ++k;
        }
        return k;
    }

    /// Smallest subgroup containing the given elements, as a sorted index list.
    std::vector<std::size_t> closure(std::vector<std::size_t> gens) const {
        std::vector<bool> in(order(), false);
        in[0] = true;
        std::vector<std::size_t> worklist{0};
        for (std::size_t g : gens)
            if (!in[g]) { in[g] = true; worklist.push_back(g); }
        for (std::size_t head = 0; head < worklist.size(); ++head)
            for (std::size_t j = 0; j < worklist.size(); ++j) {
                for (std::size_t prod : {table_[worklist[head]][worklist[j]], table_[worklist[j]][worklist[head]]})
                    if (!in[prod]) { in[prod] = true; worklist.push_back(prod); }
            }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < order(); ++i)
            if (in[i]) out.push_back(i);
        return out;
    }

    /// Maximal p-perfect subgroup: the stable term of the descending series
    /// H_{k+1} = < commutators and p-th powers of H_k >.
    std::vector<std::size_t> max_p_perfect_subgroup(std::uint32_t p) const {
        std::vector<std::size_t> cur(order());
        for (std::size_t i = 0; i < order(); ++i) cur[i] = i;
        for (;;) {
            std::vector<std::size_t> gens;
            for (std::size_t a : cur)
                for (std::size_t b : cur) {
                    // a b a^-1 b^-1
                    std::size_t c = table_[table_[a][b]][table_[inverse(a)][inverse(b)]];
                    gens.push_back(c);
                }
            for (std::size_t a : cur) {
                std::size_t x = 0;
                for (std::uint32_t k = 0; k < p; ++k) x = table_[x][a];
                gens.push_back(x);
            }
            std::vector<std::size_t> next = closure(gens);
            if (next == cur) return cur;
            cur = std::move(next);
        }
    }

    /// Quotient by a normal subgroup (index set); throws if not normal.
    GroupTable quotient(const std::vector<std::size_t>& subgroup, const std::string& qname) const {
        std::vector<bool> in(order(), false);
        for (std::size_t s : subgroup) in[s] = true;
        for (std::size_t g = 0; g < order(); ++g)
            for (std::size_t s : subgroup)
                if (!in[table_[table_[g][s]][inverse(g)]])
                    throw InputError("quotient: subgroup is not normal");
        // cosets by representative = smallest element
        std::vector<std::size_t> coset_of(order(), order());
        std::vector<std::size_t> reps;
        for (std::size_t g = 0; g < order(); ++g) {
            if (coset_of[g] != order()) continue;
            const std::size_t id = reps.size();
            reps.push_back(g);
            for (std::size_t s : subgroup) coset_of[table_[g][s]] = id;
        }
        const std::size_t q = reps.size();
        std::vector<std::vector<std::size_t>> qt(q, std::vector<std::size_t>(q));
        std::vector<std::string> labels(q);
        for (std::size_t i = 0; i < q; ++i) {
            labels[i] = elements_[reps[i]] + "N";
            for (std::size_t j = 0; j < q; ++j) qt[i][j] = coset_of[table_[reps[i]][reps[j]]];
        }
        return GroupTable(qname, std::move(labels), std::move(qt));
    }

    /// Index of an element-to-coset map for the quotient above.
    std::vector<std::size_t> coset_map(const std::vector<std::size_t>& subgroup) const {
        std::vector<std::size_t> coset_of(order(), order());
        std::size_t next = 0;
        for (std::size_t g = 0; g < order(); ++g) {
            if (coset_of[g] != order()) continue;
            for (std::size_t s : subgroup) coset_of[table_[g][s]] = next;
            ++next;
        }
        return coset_of;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name_;
        j["order"] = order();
        j["elements"] = elements_;
        j["table"] = table_;
        return j;
    }

    static GroupTable from_json(const nlohmann::json& j) {
        if (!j.contains("table")) throw InputError("group json: missing \"table\"");
        std::vector<std::vector<std::size_t>> table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
        std::size_t n = table.size();
        if (j.contains("order") && j.at("order").get<std::size_t>() != n)
            throw InputError("group json: \"order\" disagrees with table size");
        std::vector<std::string> elements;
        if (j.contains("elements")) elements = j.at("elements").get<std::vector<std::string>>();
        else for (std::size_t i = 0; i < n; ++i) elements.push_back("g" + std::to_string(i));
        std::string name = j.value("name", std::string("group"));
        return GroupTable(std::move(name), std::move(elements), std::move(table));
    }

private:
    void validate() const {
        const std::size_t n = table_.size();
        if (n == 0) throw InputError("group table is empty");
        if (elements_.size() != n) throw InputError("group table: element label count != order");
        for (std::size_t i = 0; i < n; ++i) {
            if (table_[i].size() != n) throw InputError("group table: row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < n; ++j)
                if (table_[i][j] >= n)
                    throw InputError("group table: entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (table_[0][j] != j)
                throw InputError("group axiom failed: identity (element 0 is not a left identity at " + std::to_string(j) + ")");
            if (table_[j][0] != j)
                throw InputError("group axiom failed: identity (element 0 is not a right identity at " + std::to_string(j) + ")");
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool has_inverse = false;
            for (std::size_t j = 0; j < n; ++j) has_inverse |= (table_[i][j] == 0);
            if (!has_inverse)
                throw InputError("group axiom failed: inverses (no right inverse for element " + std::to_string(i) + ")");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
                        throw InputError("group axiom failed: associativity at triple (" + std::to_string(i) + "," +
                                         std::to_string(j) + "," + std::to_string(k) + ")");
    }

    std::string name_;
    std::vector<std::string> elements_;
    std::vector<std::vector<std::size_t>> table_;
};

namespace groups {

inline GroupTable cyclic(std::size_t n) {
    if (n == 0) throw InputError("cyclic group order must be positive");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i == 0 ? "e" : "a^" + std::to_string(i);
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return GroupTable("C" + std::to_string(n), std::move(labels), std::move(t));
}

/// Dihedral group of order 2n: r^i s^a with s r s = r^{-1}.
inline GroupTable dihedral(std::size_t n) {
    if (n < 1) throw InputError("dihedral parameter must be positive");
    const std::size_t ord = 2 * n;
    auto idx = [n](std::size_t i, std::size_t a) { return a * n + i; };
    std::vector<std::vector<std::size_t>> t(ord, std::vector<std::size_t>(ord));
    std::vector<std::string> labels(ord);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            labels[idx(i, a)] = (a ? "sr^" : "r^") + std::to_string(i);
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t j = 0; j < n; ++j) {
                    std::size_t k = a ? (i + n - j % n) % n : (i + j) % n;
                    t[idx(i, a)][idx(j, b)] = idx(k, (a + b) % 2);
                }
        }
    labels[0] = "e";
    return GroupTable("D" + std::to_string(n), std::move(labels), std::move(t));
}

/// Symmetric group on three letters with transposition labels; permutations
/// compose right-to-left.
inline GroupTable symmetric3() {
    // permutations of {1,2,3} as arrays
    const std::vector<std::array<int, 3>> perms = {
        {1, 2, 3},  // e
        {2, 1, 3},  // (12)
        {3, 2, 1},  // (13)
        {1, 3, 2},  // (23)
        {2, 3, 1},  // (123): 1->2,2->3,3->1
        {3, 1, 2},  // (132)
    };
    const std::vector<std::string> labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    auto compose = [&](std::size_t i, std::size_t j) {
        // (p_i p_j)(x) = p_i(p_j(x))
        std::array<int, 3> r{};
        for (int x = 0; x < 3; ++x) r[x] = perms[i][perms[j][x] - 1];
        for (std::size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == r) return k;
        throw CheckError("S3 composition fell outside the table");
    };
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) t[i][j] = compose(i, j);
    return GroupTable("S3", labels, std::move(t));
}

/// Semidirect product C_p x| C_q for q | p-1, with the generator of C_q acting
/// as a -> a^r where r is the smallest residue of multiplicative order q mod p.
inline GroupTable semidirect_cpq(std::uint32_t p, std::uint32_t q) {
    fp::check_prime(p);
    fp::check_prime(q);
    if ((p - 1) % q != 0) throw InputError("semidirect product requires q | p-1");
    std::uint32_t r = 0;
    for (std::uint32_t cand = 2; cand < p; ++cand) {
        std::uint32_t x = cand % p;
        std::uint32_t k = 1;
        while (x != 1) { x = static_cast<std::uint32_t>(std::uint64_t(x) * cand % p); ++k; }
        if (k == q) { r = cand; break; }
    }
    if (r == 0) throw InputError("no element of order q mod p");
    const std::size_t ord = std::size_t(p) * q;
    auto idx = [p](std::uint32_t i, std::uint32_t j) { return std::size_t(j) * p + i; };
    // (a^i b^j)(a^i' b^j') = a^{i + i' r^j} b^{j + j'}
    std::vector<std::uint32_t> rpow(q);
    rpow[0] = 1;
    for (std::uint32_t j = 1; j < q; ++j) rpow[j] = static_cast<std::uint32_t>(std::uint64_t(rpow[j - 1]) * r % p);
    std::vector<std::vector<std::size_t>> t(ord, std::vector<std::size_t>(ord));
    std::vector<std::string> labels(ord);
    for (std::uint32_t j = 0; j < q; ++j)
        for (std::uint32_t i = 0; i < p; ++i) {
            labels[idx(i, j)] = "a^" + std::to_string(i) + "b^" + std::to_string(j);
            for (std::uint32_t j2 = 0; j2 < q; ++j2)
                for (std::uint32_t i2 = 0; i2 < p; ++i2)
                    t[idx(i, j)][idx(i2, j2)] =
                        idx(static_cast<std::uint32_t>((i + std::uint64_t(i2) * rpow[j]) % p), (j + j2) % q);
        }
    labels[0] = "e";
    return GroupTable("CpxCq(" + std::to_string(p) + "," + std::to_string(q) + ")", std::move(labels), std::move(t));
}

/// Direct product of two groups.
inline GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
    const std::size_t n = g.order(), m = h.order();
    auto idx = [m](std::size_t i, std::size_t j) { return i * m + j; };
    std::vector<std::vector<std::size_t>> t(n * m, std::vector<std::size_t>(n * m));
    std::vector<std::string> labels(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            labels[idx(i, j)] = "(" + g.elements()[i] + "," + h.elements()[j] + ")";
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t j2 = 0; j2 < m; ++j2)
                    t[idx(i, j)][idx(i2, j2)] = idx(g.mul(i, i2), h.mul(j, j2));
        }
    return GroupTable(g.name() + "x" + h.name(), std::move(labels), std::move(t));
}

} // namespace groups
} // namespace localg
