// Generator vectors for the module of polynomial functions over Z_n.
//
// For each prime power p^e dividing n there are e base vectors
//
//   u_{p,j}(a) = (n/p^e) * a^j   if p | a,   0 otherwise   (j = 0..e-1)
//
// with the convention 0^0 = 1, plus the first p cyclic shifts of each.
// These N = sum(p_i * e_i) vectors generate every polynomial function, which
// is what the decision procedure exploits. Tensor products of same-prime
// generators play the same role in several variables.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "znpoly/polynomial.hpp"
#include "znpoly/ring.hpp"

namespace znpoly {

struct GeneratorId {
    std::uint64_t p = 0;  // prime factor of n
    unsigned j = 0;       // power, j < e
    std::uint64_t k = 0;  // shift, k < p

    bool operator==(const GeneratorId&) const = default;
};

// N = sum p_i * e_i, from the factorization alone.
std::uint64_t generator_count(std::uint64_t n);
std::uint64_t generator_count(const Factorization& f);

// Single generator vector; throws std::invalid_argument on an id that does
// not belong to n.
ModVector generator_vector(std::uint64_t n, std::uint64_t p, unsigned j, std::uint64_t k);

// A polynomial that evaluates to generator_vector(n, p, j, k), namely
// (n/p^e) * (X-k)^j * (1 - (X-k)^phi(n)) expanded and reduced.
ModPolynomial generator_polynomial(std::uint64_t n, std::uint64_t p, unsigned j, std::uint64_t k);

// All N generators in a fixed ordering: primes descending, then power
// ascending, then shift ascending. This ordering fixes the column order of
// every linear system and the meaning of coefficient vectors.
class GeneratorSet {
public:
    static GeneratorSet build(std::uint64_t n);
    static GeneratorSet build(const Factorization& f);

    std::uint64_t modulus() const { return fac_.n; }
    const Factorization& factorization() const { return fac_; }
    std::size_t size() const { return ids_.size(); }          // N
    std::uint64_t sum_exponents() const { return sum_e_; }    // sum e_i

    const GeneratorId& id(std::size_t i) const { return ids_[i]; }
    const std::vector<GeneratorId>& ids() const { return ids_; }

    // Closed-form entry u_i(a).
    Residue value(std::size_t i, std::uint64_t a) const;

    // Materialized column (dense storage below the sparsity threshold,
    // rebuilt from index/value pairs above it).
    ModVector vector_at(std::size_t i) const;

    struct RowEntry {
        std::uint32_t col;
        Residue value;
    };

    // Nonzero entries of row a of the stacked n x N matrix. Each row holds
    // at most sum(e_i) of them, which is the sparsity the tail verification
    // step leans on.
    std::span<const RowEntry> row(std::uint64_t a) const;

private:
    Factorization fac_;
    std::vector<GeneratorId> ids_;
    std::uint64_t sum_e_ = 0;

    // Column storage: dense vectors up to the threshold, (index, value)
    // pairs beyond it.
    bool dense_ = true;
    std::vector<std::vector<Residue>> dense_cols_;
    std::vector<std::vector<std::pair<std::uint64_t, Residue>>> sparse_cols_;

    // Row-major view of the same matrix, built once for verification.
    std::vector<RowEntry> row_pool_;
    std::vector<std::uint64_t> row_start_;
};

GeneratorSet generator_set(std::uint64_t n);

// ---- several variables ----

// Tensor generator for a single prime: powers (j_1..j_m) with sum < e and a
// shift k_i < p per variable. Tensors mixing distinct primes vanish and are
// not represented.
struct MultiGeneratorId {
    std::uint64_t p = 0;
    std::vector<unsigned> powers;
    std::vector<std::uint64_t> shifts;

    bool operator==(const MultiGeneratorId&) const = default;
};

// N_m = sum p_i^m * C(m + e_i - 1, m).
std::uint64_t multivariate_generator_count(std::uint64_t n, unsigned m);
std::uint64_t multivariate_generator_count(const Factorization& f, unsigned m);

// Entry at (a_1,...,a_m) is the product of the shifted univariate generator
// values. Dense n^m-tuple; guarded against oversized n^m.
MultiModVector tensor_generator(std::uint64_t n, unsigned m, const MultiGeneratorId& id);

// Tensor product of two explicit functions (u ox v)(a,b) = u(a) * v(b).
// Mixed-prime generator pairs come out identically zero this way.
MultiModVector tensor_product(const ModVector& u, const ModVector& v);

// The N_m tensor generators ordered by prime (descending, matching the
// univariate set), then power tuple, then shift tuple (lexicographic).
class MultiGeneratorSet {
public:
    static MultiGeneratorSet build(std::uint64_t n, unsigned m);

    std::uint64_t modulus() const { return fac_.n; }
    const Factorization& factorization() const { return fac_; }
    unsigned arity() const { return m_; }
    std::uint64_t point_count() const { return points_; }  // n^m
    std::size_t size() const { return ids_.size(); }       // N_m

    const MultiGeneratorId& id(std::size_t i) const { return ids_[i]; }
    MultiModVector vector_at(std::size_t i) const;

    // Sparse column: (linearized index, value), indices ascending.
    const std::vector<std::pair<std::uint64_t, Residue>>& column(std::size_t i) const {
        return cols_[i];
    }

private:
    Factorization fac_;
    unsigned m_ = 0;
    std::uint64_t points_ = 0;
    std::vector<MultiGeneratorId> ids_;
    std::vector<std::vector<std::pair<std::uint64_t, Residue>>> cols_;
};

MultiGeneratorSet multivariate_generator_set(std::uint64_t n, unsigned m);

}  // namespace znpoly
