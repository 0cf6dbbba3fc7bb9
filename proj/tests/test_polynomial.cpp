// Polynomial arithmetic, witness assembly, falling factorial reduction.
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "znpoly/generators.hpp"
#include "znpoly/polynomial.hpp"
#include "znpoly/ring.hpp"

using namespace znpoly;

TEST_SUITE("polynomial") {

TEST_CASE("construction trims and reduces") {
    ModPolynomial p(12, {15, 0, 24});
    CHECK(p.coeffs == std::vector<Residue>{3});
    CHECK(p.degree() == 0);
    ModPolynomial z(12, {0, 0});
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK_THROWS_AS(ModPolynomial(1, {0}), std::invalid_argument);
}

TEST_CASE("known evaluations over Z_12") {
    // 3 + 9X^4 hits (n/4) on even points, 0 on odd; 4 + 8X^4 likewise mod 3.
    ModPolynomial a(12, {3, 0, 0, 0, 9});
    CHECK(evaluate_polynomial(a) == ModVector(12, {3, 0, 3, 0, 3, 0, 3, 0, 3, 0, 3, 0}));
    ModPolynomial b(12, {4, 0, 0, 0, 8});
    CHECK(evaluate_polynomial(b) == ModVector(12, {4, 0, 0, 4, 0, 0, 4, 0, 0, 4, 0, 0}));
}

TEST_CASE("arithmetic matches evaluation") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t n = 2 + rng() % 30;
        auto rand_poly = [&] {
            std::vector<Residue> cs(1 + rng() % 6);
            for (auto& c : cs) c = rng() % n;
            return ModPolynomial(n, std::move(cs));
        };
        ModPolynomial p = rand_poly(), q = rand_poly();
        Residue c = rng() % n;
        std::uint64_t x = rng() % n;
        CHECK(evaluate_at(add(p, q), x) ==
              addmod(evaluate_at(p, x), evaluate_at(q, x), n));
        CHECK(evaluate_at(multiply(p, q), x) ==
              mulmod(evaluate_at(p, x), evaluate_at(q, x), n));
        CHECK(evaluate_at(scale(c, p), x) == mulmod(c, evaluate_at(p, x), n));
    }
}

TEST_CASE("degree bookkeeping under multiply") {
    // leading coefficients may cancel mod n
    ModPolynomial p(4, {1, 2});
    CHECK(multiply(p, p).coeffs == std::vector<Residue>{1});  // (1+2X)^2 = 1 mod 4
    CHECK(multiply(p, ModPolynomial(4, {})).is_zero());
}

TEST_CASE("falling factorial for n=12") {
    // X(X-1)(X-2)(X-3) expanded mod 12
    ModPolynomial ff = falling_factorial(12, 4);
    CHECK(ff.coeffs == std::vector<Residue>{0, 6, 11, 6, 1});
    // vanishes at every residue: degree-4 polynomial inducing the zero function
    for (std::uint64_t a = 0; a < 12; ++a) CHECK(evaluate_at(ff, a) == 0);
}

TEST_CASE("falling factorial reduce on a fixed witness") {
    ModPolynomial p(12, {3, 0, 0, 0, 9});
    ModPolynomial r = falling_factorial_reduce(p);
    CHECK(r.coeffs == std::vector<Residue>{3, 6, 9, 6});
    CHECK(evaluate_polynomial(r) == evaluate_polynomial(p));
}

TEST_CASE("reduction keeps the function, drops the degree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t n = 2 + rng() % 40;
        std::uint64_t mu = kempner(n);
        std::vector<Residue> cs(1 + rng() % (2 * mu + 3));
        for (auto& c : cs) c = rng() % n;
        ModPolynomial p(n, std::move(cs));
        ModPolynomial r = falling_factorial_reduce(p);
        CHECK(r.degree() < static_cast<int>(mu));
        CHECK(evaluate_polynomial(r) == evaluate_polynomial(p));
    }
}

TEST_CASE("assemble over the generator ordering") {
    GeneratorSet gens = generator_set(12);
    // one coefficient per generator; nonzero picks on u_{3,0}^{<1>},
    // u_{3,0}^{<2>}, u_{2,0}^{<1>} reproduce the squares function
    ModPolynomial w = assemble_polynomial({0, 1, 1, 0, 3, 0, 0}, gens);
    CHECK(evaluate_polynomial(w) ==
          ModVector(12, {0, 1, 4, 9, 4, 1, 0, 1, 4, 9, 4, 1}));
    CHECK_THROWS_AS(assemble_polynomial({1, 2, 3}, gens), std::invalid_argument);

    // single-generator assembly matches the generator vector itself
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Residue> cs(gens.size(), 0);
        cs[i] = 1;
        CHECK(evaluate_polynomial(assemble_polynomial(cs, gens)) == gens.vector_at(i));
    }
}

TEST_CASE("to_string formats") {
    CHECK(to_string(ModPolynomial(12, {})) == "0");
    CHECK(to_string(ModPolynomial(12, {5})) == "5");
    CHECK(to_string(ModPolynomial(12, {0, 6, 1, 6})) == "6*X + X^2 + 6*X^3");
    CHECK(to_string(ModPolynomial(12, {7, 0, 0, 1})) == "7 + X^3");
}

TEST_CASE("linear index puts the first variable most significant") {
    CHECK(linear_index(4, {2, 3}) == 11);
    CHECK(linear_index(4, {3, 2}) == 14);
    CHECK(linear_index(5, {1, 0, 2}) == 27);
    CHECK(linear_index(4, {6, 1}) == 9);  // coordinates reduced mod n
}

TEST_CASE("multivariate evaluation lays out the product function") {
    MultiPolynomial p{4, 2, {MultiTerm{{1, 1}, 1}}};  // X1 * X2
    MultiModVector v = evaluate_polynomial(p);
    REQUIRE(v.values.size() == 16);
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b = 0; b < 4; ++b) CHECK(v.values[a * 4 + b] == a * b % 4);

    MultiPolynomial big{100, 5, {}};
    CHECK_THROWS_AS(evaluate_polynomial(big), ResourceError);
}

}  // TEST_SUITE
