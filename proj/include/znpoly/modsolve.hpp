// Linear systems A*y = b over Z_n for composite n.
//
// Z_n has zero divisors, so textbook Gaussian elimination does not apply
// directly. The system is split by the Chinese Remainder Theorem into one
// subsystem per prime power p^e | n, and each subsystem is eliminated with
// p-adic valuation pivoting: the pivot is an entry of minimal valuation over
// the whole remaining submatrix (ties: lowest row, then lowest column), the
// pivot row is scaled by the inverse of the pivot's unit part, and other rows
// are cleared with exact integer multiples. Pivot valuations are then
// non-decreasing, every entry remaining in a pivot row has valuation at least
// the pivot's, and back-substitution with free variables at zero finds a
// solution whenever one exists.
//
// Restricting the pivot search to a fixed column order is NOT complete here:
// over Z_4 the system [2 1 | 3] has the solution (0, 3), but a column-first
// pivot on the 2 forces divisibility by 2 and reports no solution. The
// whole-submatrix search is what makes the procedure a decision procedure.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "znpoly/counters.hpp"
#include "znpoly/ring.hpp"

namespace znpoly {

// Column-major sparse matrix over Z_n; stored entries are nonzero.
struct SparseModMatrix {
    std::uint64_t modulus = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Residue>>> columns;

    void push(std::size_t col, std::uint32_t row, Residue value);
    std::size_t nonzeros() const;
};

enum class SolveStatus { Solvable, Unsolvable };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Unsolvable;
    std::vector<Residue> solution;  // length cols when Solvable

    bool solvable() const { return status == SolveStatus::Solvable; }
};

// Leading-rows subsystem; returns (A, b) unchanged when rows == A.rows.
std::pair<SparseModMatrix, std::vector<Residue>> truncate_system(
    const SparseModMatrix& A, const std::vector<Residue>& b, std::size_t rows);

// Solve over Z_{p^e}. A.modulus must equal p^e and entries must be reduced.
SolveOutcome solve_prime_power(const SparseModMatrix& A, const std::vector<Residue>& b,
                               std::uint64_t p, unsigned e, StageCounters* counters = nullptr);

// Solve over Z_n by CRT combination of the prime-power solutions. The
// returned particular solution is verified against the full system before it
// is handed back.
SolveOutcome solve_mod_n(const SparseModMatrix& A, const std::vector<Residue>& b,
                         const Factorization& fac, StageCounters* counters = nullptr);

}  // namespace znpoly
