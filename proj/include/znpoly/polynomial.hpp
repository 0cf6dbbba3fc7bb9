// Polynomials over Z_n: evaluation, witness assembly from generator
// coefficients, and degree reduction below mu(n) via the falling factorial.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "znpoly/ring.hpp"

namespace znpoly {

class GeneratorSet;

// c_0 + c_1 X + ... + c_r X^r with trailing zeros trimmed. The zero
// polynomial has an empty coefficient list and degree() == -1.
struct ModPolynomial {
    std::uint64_t modulus = 0;
    std::vector<Residue> coeffs;

    ModPolynomial() = default;
    ModPolynomial(std::uint64_t n, std::vector<Residue> cs);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    bool operator==(const ModPolynomial&) const = default;
};

ModPolynomial add(const ModPolynomial& a, const ModPolynomial& b);
ModPolynomial scale(Residue c, const ModPolynomial& p);
ModPolynomial multiply(const ModPolynomial& a, const ModPolynomial& b);

// Horner evaluation, reduced at every step.
Residue evaluate_at(const ModPolynomial& p, Residue x);
ModVector evaluate_polynomial(const ModPolynomial& p);

// Sum of coeffs[i] * generator_polynomial(id_i) over the set's ordering.
// coeffs.size() must equal gens.size().
ModPolynomial assemble_polynomial(const std::vector<Residue>& coeffs,
                                  const GeneratorSet& gens);

// X(X-1)...(X-mu+1), monic of degree mu(n).
ModPolynomial falling_factorial(std::uint64_t n, std::uint64_t mu);

// Remainder of p modulo the falling factorial. The divisor is monic, so the
// division is exact over Z_n; the remainder has degree < mu(n) and evaluates
// to the same function.
ModPolynomial falling_factorial_reduce(const ModPolynomial& p);

// `c0 + c1*X + c2*X^2` with zero terms omitted; the zero polynomial is "0".
std::string to_string(const ModPolynomial& p);

// ---- several variables ----

// A function Z_n^m -> Z_n as an n^m-tuple; entry (a_1,...,a_m) lives at
// index a_1*n^{m-1} + ... + a_m (first variable most significant).
struct MultiModVector {
    std::uint64_t modulus = 0;
    unsigned arity = 0;
    std::vector<Residue> values;

    bool operator==(const MultiModVector&) const = default;
};

std::uint64_t linear_index(std::uint64_t n, const std::vector<std::uint64_t>& point);

struct MultiTerm {
    std::vector<unsigned> exponents;  // one per variable
    Residue coeff = 0;
};

struct MultiPolynomial {
    std::uint64_t modulus = 0;
    unsigned arity = 0;
    std::vector<MultiTerm> terms;
};

// Evaluation at every point of Z_n^m in the fixed linearization.
MultiModVector evaluate_polynomial(const MultiPolynomial& p);

}  // namespace znpoly
