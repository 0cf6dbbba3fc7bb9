// Multivariate decisions against a module-closure oracle.
#include "doctest.h"

#include <random>
#include <unordered_set>
#include <vector>

#include "znpoly/decider.hpp"
#include "znpoly/generators.hpp"
#include "znpoly/polynomial.hpp"
#include "znpoly/ring.hpp"

using namespace znpoly;

namespace {

MultiModVector product_function(std::uint64_t n) {
    MultiModVector F{n, 2, std::vector<Residue>(n * n)};
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) F.values[a * n + b] = a * b % n;
    return F;
}

MultiModVector random_multi(std::uint64_t n, unsigned m, std::mt19937_64& rng) {
    std::uint64_t points = 1;
    for (unsigned i = 0; i < m; ++i) points *= n;
    MultiModVector F{n, m, std::vector<Residue>(points)};
    for (auto& v : F.values) v = rng() % n;
    return F;
}

bool multi_combination_matches(const MultiModVector& F, const MultiGeneratorSet& gens,
                               const std::vector<Residue>& coeffs) {
    if (coeffs.size() != gens.size()) return false;
    std::vector<Residue> acc(F.values.size(), 0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (const auto& [idx, v] : gens.column(i))
            acc[idx] = addmod(acc[idx], mulmod(coeffs[i], v, F.modulus), F.modulus);
    }
    return acc == F.values;
}

std::uint64_t pack(std::uint64_t n, const std::vector<Residue>& vals) {
    std::uint64_t code = 0;
    for (std::size_t i = vals.size(); i-- > 0;) code = code * n + vals[i];
    return code;
}

// every linear combination of the tensor columns, as packed codes; only
// usable while n^(n^m) style counts stay small
std::unordered_set<std::uint64_t> span_closure(const MultiGeneratorSet& gens) {
    const std::uint64_t n = gens.modulus();
    const std::size_t points = gens.point_count();
    std::unordered_set<std::uint64_t> span;
    span.insert(0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Residue> col(points, 0);
        for (const auto& [idx, v] : gens.column(i)) col[idx] = v;
        std::unordered_set<std::uint64_t> next;
        for (std::uint64_t code : span) {
            std::vector<Residue> base(points);
            std::uint64_t rest = code;
            for (std::size_t j = 0; j < points; ++j) {
                base[j] = rest % n;
                rest /= n;
            }
            for (Residue c = 0; c < n; ++c) {
                std::vector<Residue> sum(points);
                for (std::size_t j = 0; j < points; ++j)
                    sum[j] = addmod(base[j], mulmod(c, col[j], n), n);
                next.insert(pack(n, sum));
            }
        }
        span = std::move(next);
    }
    return span;
}

}  // namespace

TEST_SUITE("multivariate") {

TEST_CASE("accepts the product function") {
    for (std::uint64_t n : {4, 6}) {
        MultiModVector F = product_function(n);
        MultiGeneratorSet gens = multivariate_generator_set(n, 2);
        OpCounters counters;
        Decision d = decide_multivariate(F, gens, &counters);
        REQUIRE(d.polynomial);
        CHECK(multi_combination_matches(F, gens, d.coeffs));
        if (n == 4) CHECK(counters.solve.pivots > 0);
    }
}

TEST_CASE("rejects a point mass at the precheck") {
    MultiModVector F{6, 2, std::vector<Residue>(36, 0)};
    F.values[0] = 1;
    Decision d = decide_multivariate(F, multivariate_generator_set(6, 2));
    CHECK_FALSE(d.polynomial);
    CHECK(d.stage == RejectStage::Precheck);
    REQUIRE(d.multi_witness.has_value());
    CHECK(d.multi_witness->p == 2);
    CHECK(d.multi_witness->index == 2);      // point (0,2)
    CHECK(d.multi_witness->rep_index == 0);  // its class representative (0,0)
}

TEST_CASE("accepts a tensor generator over Z_6") {
    ModVector u30 = generator_vector(6, 3, 0, 0);
    MultiModVector F = tensor_product(u30, u30);
    MultiGeneratorSet gens = multivariate_generator_set(6, 2);
    Decision d = decide_multivariate(F, gens);
    REQUIRE(d.polynomial);
    CHECK(multi_combination_matches(F, gens, d.coeffs));
}

TEST_CASE("exhaustive over Z_2: every bivariate function is polynomial") {
    MultiGeneratorSet gens = multivariate_generator_set(2, 2);
    CHECK(span_closure(gens).size() == 16);
    for (std::uint64_t code = 0; code < 16; ++code) {
        MultiModVector F{2, 2, {code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1}};
        Decision d = decide_multivariate(F, gens);
        CHECK(d.polynomial);
        CHECK(multi_combination_matches(F, gens, d.coeffs));
    }
}

TEST_CASE("prime modulus span covers all functions") {
    MultiGeneratorSet gens = multivariate_generator_set(3, 2);
    CHECK(span_closure(gens).size() == 19683);  // 3^9
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        MultiModVector F = random_multi(3, 2, rng);
        Decision d = decide_multivariate(F, gens);
        CHECK(d.polynomial);
        CHECK(multi_combination_matches(F, gens, d.coeffs));
    }
}

TEST_CASE("membership agrees with the closure oracle over Z_4") {
    MultiGeneratorSet gens = multivariate_generator_set(4, 2);
    std::unordered_set<std::uint64_t> span = span_closure(gens);
    CHECK(span.size() == 65536);

    std::mt19937_64 rng(59);
    // sampled span members are accepted with faithful coefficients
    for (int trial = 0; trial < 700; ++trial) {
        std::vector<Residue> acc(16, 0);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Residue c = rng() % 4;
            if (c == 0) continue;
            for (const auto& [idx, v] : gens.column(i))
                acc[idx] = addmod(acc[idx], mulmod(c, v, 4), 4);
        }
        REQUIRE(span.count(pack(4, acc)) == 1);
        MultiModVector F{4, 2, acc};
        Decision d = decide_multivariate(F, gens);
        CHECK(d.polynomial);
        CHECK(multi_combination_matches(F, gens, d.coeffs));
    }
    // random functions: verdict equals oracle membership
    for (int trial = 0; trial < 700; ++trial) {
        MultiModVector F = random_multi(4, 2, rng);
        bool want = span.count(pack(4, F.values)) == 1;
        CHECK(decide_multivariate(F, gens).polynomial == want);
    }
    // the product function is a member and was once a wrongful rejection
    CHECK(span.count(pack(4, product_function(4).values)) == 1);
    CHECK(decide_multivariate(product_function(4), gens).polynomial);
}

TEST_CASE("arity one agrees with the univariate decider") {
    std::mt19937_64 rng(61);
    for (std::uint64_t n : {4, 6, 8, 9, 12}) {
        GeneratorSet uni = generator_set(n);
        MultiGeneratorSet multi = multivariate_generator_set(n, 1);
        for (int trial = 0; trial < 150; ++trial) {
            ModVector f = trial % 2 == 0
                              ? ModVector(n,
                                          [&] {
                                              std::vector<Residue> v(n);
                                              for (auto& x : v) x = rng() % n;
                                              return v;
                                          }())
                              : evaluate_polynomial(
                                    ModPolynomial(n, {rng() % n, rng() % n, rng() % n}));
            MultiModVector F{n, 1, f.values};
            Decision mu = decide_multivariate(F, multi);
            Decision un = decide_univariate(f, uni);
            CHECK(mu.polynomial == un.polynomial);
            if (mu.polynomial) CHECK(multi_combination_matches(F, multi, mu.coeffs));
        }
    }
}

TEST_CASE("option flags keep the verdict") {
    std::mt19937_64 rng(67);
    MultiGeneratorSet gens = multivariate_generator_set(4, 2);
    DecideOptions tail;
    tail.full_verify = false;
    DecideOptions skip;
    skip.with_precheck = false;
    for (int trial = 0; trial < 300; ++trial) {
        MultiModVector F = random_multi(4, 2, rng);
        bool base = decide_multivariate(F, gens).polynomial;
        CHECK(decide_multivariate(F, gens, nullptr, tail).polynomial == base);
        CHECK(decide_multivariate(F, gens, nullptr, skip).polynomial == base);
    }
}

}  // TEST_SUITE
