#include "znpoly/decider.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <unordered_set>

#include "znpoly/modsolve.hpp"

namespace znpoly {

namespace {

// Adds the elapsed wall time to a stage on scope exit.
class StageTimer {
public:
    explicit StageTimer(StageCounters* c)
        : c_(c), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        if (c_)
            c_->time_ns += static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count());
    }

    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

private:
    StageCounters* c_;
    std::chrono::steady_clock::time_point start_;
};

bool is_prime_modulus(const Factorization& fac) {
    return fac.factors.size() == 1 && fac.factors[0].e == 1;
}

}  // namespace

std::optional<PrecheckWitness> congruence_precheck(const ModVector& f, const Factorization& fac,
                                                   StageCounters* counters) {
    if (f.modulus != fac.n) throw std::invalid_argument("congruence_precheck: modulus mismatch");
    StageTimer timer(counters);
    for (const auto& pp : fac.factors) {
        const std::uint64_t p = pp.p;
        const std::uint64_t classes = fac.n / p;
        for (std::uint64_t j = 0; j < p; ++j) {
            const Residue base = f[j] % p;
            for (std::uint64_t ell = 1; ell < classes; ++ell)
                if (f[j + ell * p] % p != base) return PrecheckWitness{p, j, ell};
        }
    }
    return std::nullopt;
}

Decision decide_univariate(const ModVector& f, const GeneratorSet& gens, OpCounters* counters,
                           const DecideOptions& opts) {
    const std::uint64_t n = gens.modulus();
    if (f.modulus != n) throw std::invalid_argument("decide_univariate: modulus mismatch");
    const Factorization& fac = gens.factorization();

    Decision d;

    // Prime modulus: the generators are the point indicators, so any f is the
    // combination with its own values as coefficients. Nothing to solve.
    if (is_prime_modulus(fac)) {
        d.polynomial = true;
        d.coeffs = f.values;
        return d;
    }

    if (opts.with_precheck) {
        auto w = congruence_precheck(f, fac, counters ? &counters->precheck : nullptr);
        if (w) {
            d.stage = RejectStage::Precheck;
            d.witness = w;
            return d;
        }
    }

    const std::size_t N = gens.size();
    {
        StageCounters* sc = counters ? &counters->solve : nullptr;
        StageTimer timer(sc);
        SparseModMatrix A;
        A.modulus = n;
        A.rows = N;
        A.cols = N;
        A.columns.resize(N);
        for (std::uint64_t a = 0; a < N; ++a)
            for (const auto& en : gens.row(a)) A.push(en.col, static_cast<std::uint32_t>(a), en.value);
        std::vector<Residue> b(f.values.begin(), f.values.begin() + N);
        SolveOutcome out = solve_mod_n(A, b, fac, sc);
        if (!out.solvable()) {
            d.stage = RejectStage::LinearSolve;
            return d;
        }
        d.coeffs = std::move(out.solution);
    }

    {
        StageCounters* vc = counters ? &counters->verify : nullptr;
        StageTimer timer(vc);
        Ring ring(n, vc);
        for (std::uint64_t a = opts.full_verify ? 0 : N; a < n; ++a) {
            Residue acc = 0;
            for (const auto& en : gens.row(a)) {
                if (d.coeffs[en.col] == 0) continue;
                acc = ring.add(acc, ring.mul(en.value, d.coeffs[en.col]));
            }
            if (acc != f[a]) {
                d.stage = RejectStage::TailVerify;
                d.coeffs.clear();
                return d;
            }
        }
    }

    d.polynomial = true;
    return d;
}

Decision decide_univariate(const ModVector& f) {
    GeneratorSet gens = GeneratorSet::build(f.modulus);
    return decide_univariate(f, gens);
}

Decision decide_canonical(const ModVector& f, OpCounters* counters, const DecideOptions& opts) {
    const std::uint64_t n = f.modulus;
    if (n < 2) throw std::invalid_argument("decide_canonical: modulus must be at least 2");
    const Factorization fac = factorize(n);
    const std::uint64_t mu = kempner(fac);

    Decision d;

    if (opts.with_precheck) {
        auto w = congruence_precheck(f, fac, counters ? &counters->precheck : nullptr);
        if (w) {
            d.stage = RejectStage::Precheck;
            d.witness = w;
            return d;
        }
    }

    {
        StageCounters* sc = counters ? &counters->solve : nullptr;
        StageTimer timer(sc);
        Ring ring(n, sc);
        // Truncated Vandermonde on the nodes 0..mu-1; building it costs the
        // counted power ladder, unlike the closed-form generator entries.
        SparseModMatrix A;
        A.modulus = n;
        A.rows = mu;
        A.cols = mu;
        A.columns.resize(mu);
        for (std::uint64_t a = 0; a < mu; ++a) {
            Residue pw = 1 % n;
            for (std::uint64_t c = 0; c < mu; ++c) {
                A.push(c, static_cast<std::uint32_t>(a), pw);
                if (c + 1 < mu) pw = ring.mul(pw, a % n);
            }
        }
        std::vector<Residue> b(f.values.begin(), f.values.begin() + mu);
        SolveOutcome out = solve_mod_n(A, b, fac, sc);
        if (!out.solvable()) {
            d.stage = RejectStage::LinearSolve;
            return d;
        }
        d.coeffs = std::move(out.solution);
    }

    {
        StageCounters* vc = counters ? &counters->verify : nullptr;
        StageTimer timer(vc);
        Ring ring(n, vc);
        for (std::uint64_t a = opts.full_verify ? 0 : mu; a < n; ++a) {
            Residue acc = 0;
            for (std::size_t i = d.coeffs.size(); i-- > 0;)
                acc = ring.add(ring.mul(acc, a % n), d.coeffs[i]);
            if (acc != f[a]) {
                d.stage = RejectStage::TailVerify;
                d.coeffs.clear();
                return d;
            }
        }
    }

    d.polynomial = true;
    return d;
}

Decision decide_multivariate(const MultiFunction& F, const MultiGeneratorSet& gens,
                             OpCounters* counters, const DecideOptions& opts) {
    const std::uint64_t n = gens.modulus();
    if (F.modulus != n) throw std::invalid_argument("decide_multivariate: modulus mismatch");
    if (F.arity != gens.arity()) throw std::invalid_argument("decide_multivariate: arity mismatch");
    if (F.values.size() != gens.point_count())
        throw std::invalid_argument("decide_multivariate: value table has the wrong size");
    const Factorization& fac = gens.factorization();
    const unsigned m = gens.arity();
    const std::uint64_t points = gens.point_count();

    Decision d;

    // Prime modulus: the tensor generators are the point indicators.
    if (is_prime_modulus(fac)) {
        d.polynomial = true;
        d.coeffs = F.values;
        return d;
    }

    if (opts.with_precheck) {
        StageCounters* pc = counters ? &counters->precheck : nullptr;
        StageTimer timer(pc);
        // A representable F is congruent mod p to a function of the
        // coordinatewise residues mod p, so every point must agree mod p with
        // its class representative (each coordinate reduced below p).
        for (const auto& pp : fac.factors) {
            const std::uint64_t p = pp.p;
            std::vector<std::uint64_t> coord(m, 0);
            for (std::uint64_t idx = 0; idx < points; ++idx) {
                std::uint64_t rep = 0;
                for (unsigned i = 0; i < m; ++i) rep = rep * n + coord[i] % p;
                if (F.values[idx] % p != F.values[rep] % p) {
                    d.stage = RejectStage::Precheck;
                    d.multi_witness = MultiPrecheckWitness{p, idx, rep};
                    return d;
                }
                for (unsigned i = m; i-- > 0;) {
                    if (++coord[i] < n) break;
                    coord[i] = 0;
                }
            }
        }
    }

    // Truncation row set: per prime, every residue class mod p crossed with
    // the shift offsets s, sum(s_i) < e, i.e. the points a with
    // sum_i floor(a_i / p) < e. A generator combination vanishing on these
    // points vanishes everywhere, so solving this subsystem and verifying the
    // rest decides membership. A plain index prefix, by contrast, misses the
    // shifts along the most significant coordinate and is not a valid
    // truncation. The set has at most N_m points, with equality for prime
    // power n.
    std::vector<std::uint64_t> row_points;
    for (const auto& pp : fac.factors) {
        const std::uint64_t limit = pp.p * pp.e;  // coordinates stay below p*e <= n
        std::vector<std::uint64_t> a(m, 0);
        while (true) {
            std::uint64_t offsets = 0;
            for (unsigned i = 0; i < m; ++i) offsets += a[i] / pp.p;
            if (offsets < pp.e) {
                std::uint64_t idx = 0;
                for (unsigned i = 0; i < m; ++i) idx = idx * n + a[i];
                row_points.push_back(idx);
            }
            unsigned i = m;
            bool done = true;
            while (i-- > 0) {
                if (++a[i] < limit) {
                    done = false;
                    break;
                }
                a[i] = 0;
            }
            if (done) break;
        }
    }
    std::sort(row_points.begin(), row_points.end());
    row_points.erase(std::unique(row_points.begin(), row_points.end()), row_points.end());

    const std::size_t N = gens.size();
    {
        StageCounters* sc = counters ? &counters->solve : nullptr;
        StageTimer timer(sc);
        SparseModMatrix A;
        A.modulus = n;
        A.rows = row_points.size();
        A.cols = N;
        A.columns.resize(N);
        for (std::size_t c = 0; c < N; ++c)
            for (const auto& [idx, v] : gens.column(c)) {
                auto it = std::lower_bound(row_points.begin(), row_points.end(), idx);
                if (it != row_points.end() && *it == idx)
                    A.push(c, static_cast<std::uint32_t>(it - row_points.begin()), v);
            }
        std::vector<Residue> b(row_points.size());
        for (std::size_t r = 0; r < row_points.size(); ++r) b[r] = F.values[row_points[r]];
        SolveOutcome out = solve_mod_n(A, b, fac, sc);
        if (!out.solvable()) {
            d.stage = RejectStage::LinearSolve;
            return d;
        }
        d.coeffs = std::move(out.solution);
    }

    {
        StageCounters* vc = counters ? &counters->verify : nullptr;
        StageTimer timer(vc);
        Ring ring(n, vc);
        const bool full = opts.full_verify;
        // Column-major accumulation; op counts match a row-sweep since both
        // touch each nonzero entry once. In truncated mode the solved rows
        // are excluded from both the accumulation and the comparison.
        std::vector<Residue> acc(points, 0);
        for (std::size_t c = 0; c < N; ++c) {
            if (d.coeffs[c] == 0) continue;
            for (const auto& [idx, v] : gens.column(c)) {
                if (!full && std::binary_search(row_points.begin(), row_points.end(), idx)) continue;
                acc[idx] = ring.add(acc[idx], ring.mul(v, d.coeffs[c]));
            }
        }
        std::size_t solved = 0;
        for (std::uint64_t idx = 0; idx < points; ++idx) {
            if (!full && solved < row_points.size() && row_points[solved] == idx) {
                ++solved;
                continue;
            }
            if (acc[idx] != F.values[idx]) {
                d.stage = RejectStage::TailVerify;
                d.coeffs.clear();
                return d;
            }
        }
    }

    d.polynomial = true;
    return d;
}

Decision decide_multivariate(const MultiFunction& F) {
    MultiGeneratorSet gens = MultiGeneratorSet::build(F.modulus, F.arity);
    return decide_multivariate(F, gens);
}

struct PolynomialFunctionTable::Impl {
    std::unordered_set<std::string> keys;
};

namespace {

std::string table_key(const std::vector<Residue>& ev) {
    std::string key(ev.size(), '\0');
    for (std::size_t i = 0; i < ev.size(); ++i) key[i] = static_cast<char>(ev[i]);
    return key;
}

}  // namespace

PolynomialFunctionTable PolynomialFunctionTable::build(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("PolynomialFunctionTable: modulus must be at least 2");
    const std::uint64_t mu = kempner(n);
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < mu; ++i) {
        if (total > 100'000'000 / n)
            throw ResourceError("PolynomialFunctionTable: n^mu exceeds the enumeration budget");
        total *= n;
    }
    if (n > 255) throw ResourceError("PolynomialFunctionTable: modulus too large for byte keys");

    auto impl = std::make_shared<Impl>();
    std::vector<Residue> coeff(mu, 0);
    std::vector<Residue> ev(n, 0);
    while (true) {
        impl->keys.insert(table_key(ev));
        std::size_t pos = 0;
        while (pos < mu) {
            if (++coeff[pos] < n) break;
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == mu) break;
        if (pos == 0) {
            // Only the constant term moved; every evaluation shifts by one.
            for (auto& v : ev) v = v + 1 == n ? 0 : v + 1;
        } else {
            for (std::uint64_t a = 0; a < n; ++a) {
                Residue acc = 0;
                for (std::size_t i = mu; i-- > 0;) acc = addmod(mulmod(acc, a, n), coeff[i], n);
                ev[a] = acc;
            }
        }
    }

    PolynomialFunctionTable table;
    table.n_ = n;
    table.impl_ = std::move(impl);
    return table;
}

std::uint64_t PolynomialFunctionTable::size() const { return impl_ ? impl_->keys.size() : 0; }

bool PolynomialFunctionTable::contains(const ModVector& f) const {
    if (!impl_) throw std::logic_error("PolynomialFunctionTable: not built");
    if (f.modulus != n_) throw std::invalid_argument("PolynomialFunctionTable: modulus mismatch");
    return impl_->keys.count(table_key(f.values)) != 0;
}

bool brute_force_oracle(const ModVector& f) {
    if (f.modulus < 2) throw std::invalid_argument("brute_force_oracle: modulus must be at least 2");
    Factorization fac = factorize(f.modulus);
    if (is_prime_modulus(fac)) return true;  // interpolation over a field
    return PolynomialFunctionTable::build(f.modulus).contains(f);
}

std::uint64_t count_polynomial_functions(std::uint64_t n) {
    return PolynomialFunctionTable::build(n).size();
}

}  // namespace znpoly
