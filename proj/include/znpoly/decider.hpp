// Decision procedures for polynomial representability.
//
// The generator method runs three steps: a per-prime congruence precheck, a
// truncated N x N solve against the generator matrix, and verification of the
// candidate combination against the input. The canonical baseline does the
// same with the monomials {1, X, ..., X^{mu-1}}. Both decide the same set of
// functions; they differ in operation counts, which is what the bench
// measures.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "znpoly/counters.hpp"
#include "znpoly/generators.hpp"
#include "znpoly/ring.hpp"

namespace znpoly {

enum class RejectStage { Precheck, LinearSolve, TailVerify };

// Failing congruence f(j) != f(j + ell*p) (mod p).
struct PrecheckWitness {
    std::uint64_t p = 0;
    std::uint64_t j = 0;
    std::uint64_t ell = 0;
};

// Failing multivariate congruence: a point whose value differs mod p from
// the value at its coordinatewise class representative.
struct MultiPrecheckWitness {
    std::uint64_t p = 0;
    std::uint64_t index = 0;      // linearized offending point
    std::uint64_t rep_index = 0;  // linearized representative
};

struct Decision {
    bool polynomial = false;
    RejectStage stage = RejectStage::Precheck;  // meaningful when rejected
    std::optional<PrecheckWitness> witness;
    std::optional<MultiPrecheckWitness> multi_witness;
    // Coefficients over the deciding generator ordering: generator set,
    // monomials, or tensor set, depending on which procedure produced this.
    std::vector<Residue> coeffs;
};

struct DecideOptions {
    // Verify the final combination on every component, not only the tail
    // beyond the truncated rows. Same asymptotic cost, no reliance on the
    // truncation argument. The tail-only mode mirrors the bare algorithm.
    bool full_verify = true;
    bool with_precheck = true;
};

// Step 1 alone: passes iff f(j) = f(j + ell*p) (mod p) for every prime
// p | n, j < p, 1 <= ell < n/p. Returns the first failure.
std::optional<PrecheckWitness> congruence_precheck(const ModVector& f, const Factorization& fac,
                                                   StageCounters* counters = nullptr);

// Generator-based decision. For prime n every function is accepted outright
// with the function itself as coefficient vector; no system is built.
Decision decide_univariate(const ModVector& f, const GeneratorSet& gens,
                           OpCounters* counters = nullptr, const DecideOptions& opts = {});
Decision decide_univariate(const ModVector& f);

// Monomial-basis baseline: truncated mu x mu Vandermonde solve, then Horner
// evaluation over the remaining points.
Decision decide_canonical(const ModVector& f, OpCounters* counters = nullptr,
                          const DecideOptions& opts = {});

using MultiFunction = MultiModVector;

// Several variables: precheck against coordinatewise class representatives,
// truncated N_m-row solve over the tensor generators, full verification.
Decision decide_multivariate(const MultiFunction& F, const MultiGeneratorSet& gens,
                             OpCounters* counters = nullptr, const DecideOptions& opts = {});
Decision decide_multivariate(const MultiFunction& F);

// Every distinct evaluation vector of the polynomials of degree < mu(n),
// built by exhausting all n^mu coefficient tuples. The build is guarded by
// n^mu <= 10^8 and serves as the reference the deciders are tested against.
class PolynomialFunctionTable {
public:
    static PolynomialFunctionTable build(std::uint64_t n);

    std::uint64_t modulus() const { return n_; }
    std::uint64_t size() const;
    bool contains(const ModVector& f) const;

private:
    std::uint64_t n_ = 0;
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Reference verdict for one function. Prime moduli are decided immediately
// (every function over Z_p is polynomial); otherwise the table is built and
// queried, subject to the same n^mu guard.
bool brute_force_oracle(const ModVector& f);

// Number of distinct polynomial functions Z_n -> Z_n, by enumeration.
std::uint64_t count_polynomial_functions(std::uint64_t n);

}  // namespace znpoly
