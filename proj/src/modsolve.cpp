#include "znpoly/modsolve.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

namespace znpoly {

void SparseModMatrix::push(std::size_t col, std::uint32_t row, Residue value) {
    if (col >= cols || row >= rows) throw std::invalid_argument("SparseModMatrix: index out of range");
    value %= modulus;
    if (value == 0) return;
    columns[col].emplace_back(row, value);
}

std::size_t SparseModMatrix::nonzeros() const {
    std::size_t total = 0;
    for (const auto& c : columns) total += c.size();
    return total;
}

std::pair<SparseModMatrix, std::vector<Residue>> truncate_system(const SparseModMatrix& A,
                                                                 const std::vector<Residue>& b,
                                                                 std::size_t rows) {
    if (rows > A.rows) throw std::invalid_argument("truncate_system: more rows than the system has");
    if (A.rows != b.size()) throw std::invalid_argument("truncate_system: rhs length mismatch");
    if (rows == A.rows) return {A, b};
    SparseModMatrix T;
    T.modulus = A.modulus;
    T.rows = rows;
    T.cols = A.cols;
    T.columns.resize(A.cols);
    for (std::size_t c = 0; c < A.cols; ++c) {
        for (const auto& [r, v] : A.columns[c]) {
            if (r < rows) T.columns[c].emplace_back(r, v);
        }
    }
    return {T, std::vector<Residue>(b.begin(), b.begin() + rows)};
}

namespace {

constexpr std::size_t kDenseLimit = 64;  // dense elimination up to this many rows/cols

struct Pivot {
    std::size_t row;
    std::size_t col;
    unsigned val;  // p-adic valuation of the pivot entry
};

std::uint64_t pow_u64(std::uint64_t p, unsigned v) {
    std::uint64_t r = 1;
    while (v--) r *= p;
    return r;
}

// Dense elimination over Z_q, q = p^e. See the header comment for why the
// pivot is searched over the whole remaining submatrix.
SolveOutcome solve_dense(const SparseModMatrix& A, std::vector<Residue> rhs, std::uint64_t p,
                         unsigned e, StageCounters* counters) {
    const std::uint64_t q = A.modulus;
    const std::size_t r = A.rows, c = A.cols;
    Ring ring(q, counters);

    std::vector<std::vector<Residue>> work(r, std::vector<Residue>(c, 0));
    for (std::size_t j = 0; j < c; ++j)
        for (const auto& [i, v] : A.columns[j]) work[i][j] = v;

    std::vector<char> row_active(r, 1), col_used(c, 0);
    std::vector<Pivot> pivots;

    while (true) {
        std::size_t bi = r, bj = c;
        unsigned bv = e;
        for (std::size_t i = 0; i < r; ++i) {
            if (!row_active[i]) continue;
            for (std::size_t j = 0; j < c; ++j) {
                if (col_used[j] || work[i][j] == 0) continue;
                unsigned v = padic_valuation(work[i][j], p);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
            if (bv == 0) break;  // cannot do better than a unit pivot
        }
        if (bi == r) break;

        ring.pivot();
        std::uint64_t pv = pow_u64(p, bv);
        std::uint64_t inv = invmod(work[bi][bj] / pv, q);
        for (std::size_t j = 0; j < c; ++j)
            if (work[bi][j] != 0) work[bi][j] = ring.mul(work[bi][j], inv);
        rhs[bi] = ring.mul(rhs[bi], inv);
        // work[bi][bj] is now exactly p^bv.

        for (std::size_t i = 0; i < r; ++i) {
            if (!row_active[i] || i == bi || work[i][bj] == 0) continue;
            std::uint64_t m = work[i][bj] / pv;  // exact: valuation >= bv
            for (std::size_t j = 0; j < c; ++j)
                if (work[bi][j] != 0) work[i][j] = ring.sub(work[i][j], ring.mul(m, work[bi][j]));
            rhs[i] = ring.sub(rhs[i], ring.mul(m, rhs[bi]));
        }

        row_active[bi] = 0;
        col_used[bj] = 1;
        pivots.push_back(Pivot{bi, bj, bv});
    }

    // Rows never pivoted are entirely zero by now; they are consistency
    // constraints on the rhs.
    for (std::size_t i = 0; i < r; ++i)
        if (row_active[i] && rhs[i] != 0) return {};

    std::vector<Residue> y(c, 0);
    for (std::size_t t = pivots.size(); t-- > 0;) {
        const Pivot& pv = pivots[t];
        Residue s = rhs[pv.row];
        for (std::size_t j = 0; j < c; ++j) {
            if (j == pv.col || work[pv.row][j] == 0 || y[j] == 0) continue;
            s = ring.sub(s, ring.mul(work[pv.row][j], y[j]));
        }
        std::uint64_t den = pow_u64(p, pv.val);
        if (s % den != 0) return {};
        y[pv.col] = s / den;
    }
    return {SolveStatus::Solvable, std::move(y)};
}

using SparseRow = std::vector<std::pair<std::uint32_t, Residue>>;

// Sparse variant of the same procedure; rows are kept sorted by column.
SolveOutcome solve_sparse(const SparseModMatrix& A, std::vector<Residue> rhs, std::uint64_t p,
                          unsigned e, StageCounters* counters) {
    const std::uint64_t q = A.modulus;
    const std::size_t r = A.rows, c = A.cols;
    Ring ring(q, counters);

    std::vector<SparseRow> work(r);
    for (std::size_t j = 0; j < c; ++j)
        for (const auto& [i, v] : A.columns[j]) work[i].emplace_back(static_cast<std::uint32_t>(j), v);
    for (auto& row : work) std::sort(row.begin(), row.end());

    std::vector<char> row_active(r, 1);
    std::vector<Pivot> pivots;

    while (true) {
        std::size_t bi = r;
        std::uint32_t bj = 0;
        unsigned bv = e;
        for (std::size_t i = 0; i < r && bv > 0; ++i) {
            if (!row_active[i]) continue;
            for (const auto& [j, v] : work[i]) {
                unsigned val = padic_valuation(v, p);
                if (val < bv) {
                    bv = val;
                    bi = i;
                    bj = j;
                    if (bv == 0) break;
                }
            }
        }
        if (bi == r) break;

        ring.pivot();
        std::uint64_t pv = pow_u64(p, bv);
        Residue pivot_entry = 0;
        for (const auto& [j, v] : work[bi])
            if (j == bj) pivot_entry = v;
        std::uint64_t inv = invmod(pivot_entry / pv, q);
        for (auto& [j, v] : work[bi]) v = ring.mul(v, inv);
        rhs[bi] = ring.mul(rhs[bi], inv);

        for (std::size_t i = 0; i < r; ++i) {
            if (!row_active[i] || i == bi) continue;
            auto it = std::lower_bound(work[i].begin(), work[i].end(),
                                       std::make_pair(bj, Residue{0}));
            if (it == work[i].end() || it->first != bj) continue;
            std::uint64_t m = it->second / pv;
            SparseRow merged;
            merged.reserve(work[i].size() + work[bi].size());
            auto a = work[i].begin(), b2 = work[bi].begin();
            while (a != work[i].end() || b2 != work[bi].end()) {
                if (b2 == work[bi].end() || (a != work[i].end() && a->first < b2->first)) {
                    merged.push_back(*a++);
                } else if (a == work[i].end() || b2->first < a->first) {
                    Residue nv = ring.sub(0, ring.mul(m, b2->second));
                    if (nv != 0) merged.emplace_back(b2->first, nv);
                    ++b2;
                } else {
                    Residue nv = ring.sub(a->second, ring.mul(m, b2->second));
                    if (nv != 0) merged.emplace_back(a->first, nv);
                    ++a;
                    ++b2;
                }
            }
            work[i] = std::move(merged);
            rhs[i] = ring.sub(rhs[i], ring.mul(m, rhs[bi]));
        }

        row_active[bi] = 0;
        pivots.push_back(Pivot{bi, bj, bv});
        // Mark the pivot column as consumed by erasing it from no row: other
        // rows lost their entry in the elimination above, and the pivot row
        // keeps its p^bv entry for back-substitution.
    }

    for (std::size_t i = 0; i < r; ++i)
        if (row_active[i] && rhs[i] != 0) return {};

    std::vector<Residue> y(c, 0);
    for (std::size_t t = pivots.size(); t-- > 0;) {
        const Pivot& pv = pivots[t];
        Residue s = rhs[pv.row];
        for (const auto& [j, v] : work[pv.row]) {
            if (j == pv.col || y[j] == 0) continue;
            s = ring.sub(s, ring.mul(v, y[j]));
        }
        std::uint64_t den = pow_u64(p, pv.val);
        if (s % den != 0) return {};
        y[pv.col] = s / den;
    }
    return {SolveStatus::Solvable, std::move(y)};
}

}  // namespace

SolveOutcome solve_prime_power(const SparseModMatrix& A, const std::vector<Residue>& b,
                               std::uint64_t p, unsigned e, StageCounters* counters) {
    std::uint64_t q = pow_u64(p, e);
    if (A.modulus != q) throw std::invalid_argument("solve_prime_power: modulus is not p^e");
    if (A.rows != b.size()) throw std::invalid_argument("solve_prime_power: rhs length mismatch");
    if (std::max(A.rows, A.cols) <= kDenseLimit) return solve_dense(A, b, p, e, counters);
    return solve_sparse(A, b, p, e, counters);
}

SolveOutcome solve_mod_n(const SparseModMatrix& A, const std::vector<Residue>& b,
                         const Factorization& fac, StageCounters* counters) {
    if (fac.n != A.modulus) throw std::invalid_argument("solve_mod_n: factorization does not match modulus");
    if (A.rows != b.size()) throw std::invalid_argument("solve_mod_n: rhs length mismatch");

    std::vector<std::vector<Residue>> per_prime;
    per_prime.reserve(fac.factors.size());
    for (const auto& pp : fac.factors) {
        SolveOutcome out;
        if (pp.value == A.modulus) {
            out = solve_prime_power(A, b, pp.p, pp.e, counters);
        } else {
            SparseModMatrix R;
            R.modulus = pp.value;
            R.rows = A.rows;
            R.cols = A.cols;
            R.columns.resize(A.cols);
            for (std::size_t c = 0; c < A.cols; ++c)
                for (const auto& [i, v] : A.columns[c])
                    if (v % pp.value != 0) R.columns[c].emplace_back(i, v % pp.value);
            std::vector<Residue> rb(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[i] % pp.value;
            out = solve_prime_power(R, rb, pp.p, pp.e, counters);
        }
        if (!out.solvable()) return {};
        per_prime.push_back(std::move(out.solution));
    }

    std::vector<Residue> y;
    if (fac.factors.size() == 1) {
        y = std::move(per_prime.front());
    } else {
        // CRT: y = sum of sol_i * (n/q_i) * ((n/q_i)^-1 mod q_i) mod n.
        Ring ring(fac.n, counters);
        std::vector<std::uint64_t> crt_coef(fac.factors.size());
        for (std::size_t i = 0; i < fac.factors.size(); ++i) {
            std::uint64_t m = fac.n / fac.factors[i].value;
            crt_coef[i] = mulmod(m, invmod(m % fac.factors[i].value, fac.factors[i].value), fac.n);
        }
        y.assign(A.cols, 0);
        for (std::size_t j = 0; j < A.cols; ++j)
            for (std::size_t i = 0; i < fac.factors.size(); ++i)
                if (per_prime[i][j] != 0) y[j] = ring.add(y[j], ring.mul(per_prime[i][j], crt_coef[i]));
    }

    // Defensive soundness check, outside the counted work: the combination
    // must satisfy the full system exactly.
    std::vector<Residue> check(A.rows, 0);
    for (std::size_t c = 0; c < A.cols; ++c) {
        if (y[c] == 0) continue;
        for (const auto& [i, v] : A.columns[c])
            check[i] = addmod(check[i], mulmod(v, y[c], A.modulus), A.modulus);
    }
    for (std::size_t i = 0; i < A.rows; ++i)
        if (check[i] != b[i] % A.modulus)
            throw std::logic_error("solve_mod_n: produced an invalid solution");

    return {SolveStatus::Solvable, std::move(y)};
}

}  // namespace znpoly
