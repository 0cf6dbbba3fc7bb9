#include "znpoly/generators.hpp"

#include <algorithm>

namespace znpoly {

namespace {

constexpr std::uint64_t kDenseColumnLimit = 512;  // dense column storage up to this n
constexpr std::uint64_t kPointBudget = 10'000'000;

const PrimePower& find_prime(const Factorization& fac, std::uint64_t p) {
    for (const auto& pp : fac.factors)
        if (pp.p == p) return pp;
    throw std::invalid_argument("generator id: " + std::to_string(p) +
                                " is not a prime factor of " + std::to_string(fac.n));
}

void check_id(const Factorization& fac, std::uint64_t p, unsigned j, std::uint64_t k) {
    const PrimePower& pp = find_prime(fac, p);
    if (j >= pp.e) throw std::invalid_argument("generator id: power exceeds exponent");
    if (k >= p) throw std::invalid_argument("generator id: shift exceeds prime");
}

// u_{p,j}^{<k>}(a) with the 0^0 = 1 convention baked into powmod.
Residue generator_value(std::uint64_t n, std::uint64_t scale, std::uint64_t p, unsigned j,
                        std::uint64_t k, std::uint64_t a) {
    if (a % p != k) return 0;
    return mulmod(scale, powmod(a - k, j, n), n);
}

std::uint64_t checked_point_count(std::uint64_t n, unsigned m) {
    std::uint64_t points = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (points > kPointBudget / n)
            throw ResourceError("multivariate generators: n^m exceeds the point budget");
        points *= n;
    }
    return points;
}

}  // namespace

std::uint64_t generator_count(const Factorization& f) {
    std::uint64_t total = 0;
    for (const auto& pp : f.factors) total += pp.p * pp.e;
    return total;
}

std::uint64_t generator_count(std::uint64_t n) {
    return generator_count(factorize(n));
}

ModVector generator_vector(std::uint64_t n, std::uint64_t p, unsigned j, std::uint64_t k) {
    Factorization fac = factorize(n);
    check_id(fac, p, j, k);
    std::uint64_t scale = n / find_prime(fac, p).value;
    std::vector<Residue> out(n, 0);
    for (std::uint64_t a = k; a < n; a += p) out[a] = generator_value(n, scale, p, j, k, a);
    return ModVector(n, std::move(out));
}

ModPolynomial generator_polynomial(std::uint64_t n, std::uint64_t p, unsigned j, std::uint64_t k) {
    Factorization fac = factorize(n);
    check_id(fac, p, j, k);
    std::uint64_t scale = n / find_prime(fac, p).value;
    std::uint64_t phi = euler_phi(fac);

    // scale * (X-k)^j - scale * (X-k)^{j+phi}, expanded binomially. One
    // Pascal row, grown in place, serves both exponents.
    std::uint64_t d_low = j, d_high = j + phi;
    std::vector<Residue> row{1};  // binomials C(d, i) mod n for the current d
    std::vector<Residue> low_coeffs, high_coeffs;
    std::uint64_t neg_k = (n - k % n) % n;

    auto expand = [&](std::uint64_t d) {
        // coefficient of X^i in (X-k)^d is C(d, i) * (-k)^{d-i}
        std::vector<Residue> out(d + 1);
        Residue kp = 1;  // (-k)^{d-i}, built from the top down
        for (std::uint64_t i = d + 1; i-- > 0;) {
            out[i] = mulmod(row[i], kp, n);
            kp = mulmod(kp, neg_k, n);
        }
        return out;
    };

    for (std::uint64_t d = 0; d <= d_high; ++d) {
        if (d > 0) {
            row.push_back(1);
            for (std::uint64_t i = d - 1; i >= 1; --i) row[i] = addmod(row[i], row[i - 1], n);
        }
        if (d == d_low) low_coeffs = expand(d);
        if (d == d_high) high_coeffs = expand(d);
    }

    std::vector<Residue> coeffs(d_high + 1, 0);
    for (std::size_t i = 0; i < low_coeffs.size(); ++i) coeffs[i] = mulmod(scale, low_coeffs[i], n);
    for (std::size_t i = 0; i < high_coeffs.size(); ++i)
        coeffs[i] = submod(coeffs[i], mulmod(scale, high_coeffs[i], n), n);
    return ModPolynomial(n, std::move(coeffs));
}

GeneratorSet GeneratorSet::build(const Factorization& fac) {
    GeneratorSet gs;
    gs.fac_ = fac;
    std::uint64_t n = fac.n;
    for (const auto& pp : fac.factors) gs.sum_e_ += pp.e;

    // Column convention: primes in descending order, then power ascending,
    // then shift ascending. Truncated systems and coefficient vectors follow it.
    for (auto it = fac.factors.rbegin(); it != fac.factors.rend(); ++it)
        for (unsigned j = 0; j < it->e; ++j)
            for (std::uint64_t k = 0; k < it->p; ++k) gs.ids_.push_back(GeneratorId{it->p, j, k});

    gs.dense_ = n <= kDenseColumnLimit;
    if (gs.dense_)
        gs.dense_cols_.resize(gs.ids_.size());
    else
        gs.sparse_cols_.resize(gs.ids_.size());

    for (std::size_t i = 0; i < gs.ids_.size(); ++i) {
        const GeneratorId& id = gs.ids_[i];
        std::uint64_t scale = n / find_prime(fac, id.p).value;
        if (gs.dense_) {
            auto& col = gs.dense_cols_[i];
            col.assign(n, 0);
            for (std::uint64_t a = id.k; a < n; a += id.p)
                col[a] = generator_value(n, scale, id.p, id.j, id.k, a);
        } else {
            auto& col = gs.sparse_cols_[i];
            for (std::uint64_t a = id.k; a < n; a += id.p) {
                Residue v = generator_value(n, scale, id.p, id.j, id.k, a);
                if (v != 0) col.emplace_back(a, v);
            }
        }
    }

    // Row-major index over the same entries, used by the verification step.
    std::vector<std::uint64_t> counts(n, 0);
    auto each_entry = [&](auto&& fn) {
        for (std::size_t i = 0; i < gs.ids_.size(); ++i) {
            if (gs.dense_) {
                const auto& col = gs.dense_cols_[i];
                for (std::uint64_t a = gs.ids_[i].k; a < n; a += gs.ids_[i].p)
                    if (col[a] != 0) fn(a, static_cast<std::uint32_t>(i), col[a]);
            } else {
                for (const auto& [a, v] : gs.sparse_cols_[i]) fn(a, static_cast<std::uint32_t>(i), v);
            }
        }
    };
    each_entry([&](std::uint64_t a, std::uint32_t, Residue) { ++counts[a]; });
    gs.row_start_.assign(n + 1, 0);
    for (std::uint64_t a = 0; a < n; ++a) gs.row_start_[a + 1] = gs.row_start_[a] + counts[a];
    gs.row_pool_.resize(gs.row_start_[n]);
    std::vector<std::uint64_t> cursor(gs.row_start_.begin(), gs.row_start_.end() - 1);
    each_entry([&](std::uint64_t a, std::uint32_t col, Residue v) {
        gs.row_pool_[cursor[a]++] = RowEntry{col, v};
    });
    return gs;
}

GeneratorSet GeneratorSet::build(std::uint64_t n) {
    return build(factorize(n));
}

GeneratorSet generator_set(std::uint64_t n) {
    return GeneratorSet::build(n);
}

Residue GeneratorSet::value(std::size_t i, std::uint64_t a) const {
    const GeneratorId& id = ids_[i];
    std::uint64_t scale = fac_.n / find_prime(fac_, id.p).value;
    return generator_value(fac_.n, scale, id.p, id.j, id.k, a % fac_.n);
}

ModVector GeneratorSet::vector_at(std::size_t i) const {
    std::uint64_t n = fac_.n;
    if (dense_) return ModVector(n, dense_cols_[i]);
    std::vector<Residue> out(n, 0);
    for (const auto& [a, v] : sparse_cols_[i]) out[a] = v;
    return ModVector(n, std::move(out));
}

std::span<const GeneratorSet::RowEntry> GeneratorSet::row(std::uint64_t a) const {
    return {row_pool_.data() + row_start_[a], row_pool_.data() + row_start_[a + 1]};
}

// ---- several variables ----

namespace {

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
}

void check_multi_id(const Factorization& fac, unsigned m, const MultiGeneratorId& id) {
    const PrimePower& pp = find_prime(fac, id.p);
    if (id.powers.size() != m || id.shifts.size() != m)
        throw std::invalid_argument("tensor generator id: arity mismatch");
    std::uint64_t sum = 0;
    for (unsigned j : id.powers) sum += j;
    if (sum >= pp.e) throw std::invalid_argument("tensor generator id: power sum exceeds exponent");
    for (std::uint64_t k : id.shifts)
        if (k >= id.p) throw std::invalid_argument("tensor generator id: shift exceeds prime");
}

// All power tuples (j_1..j_m) with sum < e, lexicographically ascending.
void power_tuples(unsigned m, unsigned e, std::vector<unsigned>& cur,
                  std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == m) {
        out.push_back(cur);
        return;
    }
    unsigned used = 0;
    for (unsigned j : cur) used += j;
    for (unsigned j = 0; j + used < e; ++j) {
        cur.push_back(j);
        power_tuples(m, e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::uint64_t multivariate_generator_count(const Factorization& f, unsigned m) {
    std::uint64_t total = 0;
    for (const auto& pp : f.factors) {
        std::uint64_t pm = 1;
        for (unsigned i = 0; i < m; ++i) pm *= pp.p;
        total += pm * binomial(m + pp.e - 1, m);
    }
    return total;
}

std::uint64_t multivariate_generator_count(std::uint64_t n, unsigned m) {
    return multivariate_generator_count(factorize(n), m);
}

MultiModVector tensor_generator(std::uint64_t n, unsigned m, const MultiGeneratorId& id) {
    if (m == 0) throw std::invalid_argument("tensor generator: arity must be positive");
    Factorization fac = factorize(n);
    check_multi_id(fac, m, id);
    std::uint64_t points = checked_point_count(n, m);
    std::uint64_t scale = n / find_prime(fac, id.p).value;

    MultiModVector out{n, m, std::vector<Residue>(points, 0)};
    // Walk only the supporting class: a_i = k_i, k_i + p, ...
    std::vector<std::uint64_t> a(id.shifts.begin(), id.shifts.end());
    while (true) {
        Residue v = 1;
        for (unsigned i = 0; i < m; ++i)
            v = mulmod(v, generator_value(n, scale, id.p, id.powers[i], id.shifts[i], a[i]), n);
        out.values[linear_index(n, a)] = v;
        unsigned i = m;
        bool done = true;
        while (i-- > 0) {
            a[i] += id.p;
            if (a[i] < n) {
                done = false;
                break;
            }
            a[i] = id.shifts[i];
        }
        if (done) break;
    }
    return out;
}

MultiModVector tensor_product(const ModVector& u, const ModVector& v) {
    if (u.modulus != v.modulus) throw std::invalid_argument("tensor product: mixed moduli");
    std::uint64_t n = u.modulus;
    MultiModVector out{n, 2, std::vector<Residue>(n * n, 0)};
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) out.values[a * n + b] = mulmod(u[a], v[b], n);
    return out;
}

MultiGeneratorSet MultiGeneratorSet::build(std::uint64_t n, unsigned m) {
    if (m == 0) throw std::invalid_argument("multivariate generators: arity must be positive");
    MultiGeneratorSet gs;
    gs.fac_ = factorize(n);
    gs.m_ = m;
    gs.points_ = checked_point_count(n, m);

    // Same column convention as the univariate set: primes descending,
    // power tuples in generation order, shift tuples as an odometer.
    for (auto it = gs.fac_.factors.rbegin(); it != gs.fac_.factors.rend(); ++it) {
        const auto& pp = *it;
        std::vector<std::vector<unsigned>> tuples;
        std::vector<unsigned> cur;
        power_tuples(m, pp.e, cur, tuples);
        for (const auto& powers : tuples) {
            std::vector<std::uint64_t> shifts(m, 0);
            while (true) {
                gs.ids_.push_back(MultiGeneratorId{pp.p, powers, shifts});
                unsigned i = m;
                bool done = true;
                while (i-- > 0) {
                    if (++shifts[i] < pp.p) {
                        done = false;
                        break;
                    }
                    shifts[i] = 0;
                }
                if (done) break;
            }
        }
    }

    gs.cols_.resize(gs.ids_.size());
    for (std::size_t c = 0; c < gs.ids_.size(); ++c) {
        const MultiGeneratorId& id = gs.ids_[c];
        std::uint64_t scale = n / find_prime(gs.fac_, id.p).value;
        std::vector<std::uint64_t> a(id.shifts.begin(), id.shifts.end());
        while (true) {
            Residue v = 1;
            for (unsigned i = 0; i < m; ++i)
                v = mulmod(v, generator_value(n, scale, id.p, id.powers[i], id.shifts[i], a[i]), n);
            if (v != 0) gs.cols_[c].emplace_back(linear_index(n, a), v);
            unsigned i = m;
            bool done = true;
            while (i-- > 0) {
                a[i] += id.p;
                if (a[i] < n) {
                    done = false;
                    break;
                }
                a[i] = id.shifts[i];
            }
            if (done) break;
        }
        std::sort(gs.cols_[c].begin(), gs.cols_[c].end());
    }
    return gs;
}

MultiModVector MultiGeneratorSet::vector_at(std::size_t i) const {
    MultiModVector out{fac_.n, m_, std::vector<Residue>(points_, 0)};
    for (const auto& [idx, v] : cols_[i]) out.values[idx] = v;
    return out;
}

MultiGeneratorSet multivariate_generator_set(std::uint64_t n, unsigned m) {
    return MultiGeneratorSet::build(n, m);
}

}  // namespace znpoly
