// Exact arithmetic over Z_n: residues, factorization, Euler phi, the Kempner
// function, and functions Z_n -> Z_n stored as n-tuples.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace znpoly {

// Least non-negative residue; the ambient modulus travels alongside.
using Residue = std::uint64_t;

// Raised when a computation would exceed a built-in budget guard.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimePower {
    std::uint64_t p = 0;      // prime
    unsigned e = 0;           // exponent, >= 1
    std::uint64_t value = 0;  // p^e
};

struct Factorization {
    std::uint64_t n = 0;
    std::vector<PrimePower> factors;  // primes strictly ascending
};

// Trial division; n must be >= 2.
Factorization factorize(std::uint64_t n);

// Multiplies a factorization back together (inverse of factorize).
std::uint64_t factorization_product(const Factorization& f);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& f);

// Smallest k with p^e | k!, located by binary search on Legendre's formula.
// Always a multiple of p and at most p*e.
std::uint64_t kempner_prime_power(std::uint64_t p, unsigned e);

// mu(n): smallest k with n | k!; mu(1) = 1, mu(p) = p for prime p.
std::uint64_t kempner(std::uint64_t n);
std::uint64_t kempner(const Factorization& f);

// max p_i * e_i, an upper bound on mu(n).
std::uint64_t lambda_bound(const Factorization& f);

// ---- plain modular arithmetic (uncounted) ----

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n);

// Inverse of a unit; throws std::invalid_argument if gcd(a, n) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t n);

// Multiplicity of p in x; x must be nonzero.
unsigned padic_valuation(std::uint64_t x, std::uint64_t p);

// A function Z_n -> Z_n held as the tuple (f(0), ..., f(n-1)).
struct ModVector {
    std::uint64_t modulus = 0;
    std::vector<Residue> values;

    ModVector() = default;
    ModVector(std::uint64_t n, std::vector<Residue> vals);

    std::uint64_t size() const { return values.size(); }
    Residue operator[](std::uint64_t i) const { return values[i]; }
    Residue& operator[](std::uint64_t i) { return values[i]; }

    bool operator==(const ModVector&) const = default;
};

ModVector zero_vector(std::uint64_t n);

// v^{<k>}(i) = v(i - k mod n); k is reduced mod n first.
ModVector cyclic_shift(const ModVector& v, std::uint64_t k);

// Componentwise sum/product; moduli must agree.
ModVector add(const ModVector& a, const ModVector& b);
ModVector pointwise_product(const ModVector& a, const ModVector& b);
ModVector scale(Residue c, const ModVector& v);

// Comma-separated residue list, e.g. "0,1,4,9". Throws std::invalid_argument
// with position information on malformed input; entries are reduced mod n.
ModVector parse_mod_vector(std::uint64_t n, const std::string& text);
std::string to_string(const ModVector& v);

}  // namespace znpoly
