#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace localg {

/// Errors caused by malformed user input (bad tables, wrong dimensions, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Errors caused by a computation exceeding a configured resource cap.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal-consistency failures: two routes that must agree did not.
/// These indicate a bug, never a user error.
struct CheckError : std::logic_error {
    explicit CheckError(const std::string& msg) : std::logic_error(msg) {}
};

/// A construction that is mathematically unavailable for the given input
/// (e.g. no squeezed resolution with the canonical recipe).
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace fp {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Scalars are residues in [0, p).  All primes used here are < 256 so that
// matrix entries fit in a byte; products are accumulated in 64 bits.
inline void check_prime(std::uint32_t p) {
    if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
    if (p >= 256) throw InputError("prime modulus must be < 256");
}

inline std::uint32_t reduce(std::int64_t x, std::uint32_t p) {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + p - b) % p; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a * b) % p; }
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

/// Multiplicative inverse via Fermat; requires a != 0 mod p.
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    a %= p;
    if (a == 0) throw InputError("division by zero mod " + std::to_string(p));
    return pow(a, p - 2, p);
}

} // namespace fp
} // namespace localg
