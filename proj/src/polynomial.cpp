#include "znpoly/polynomial.hpp"

#include <algorithm>

#include "znpoly/generators.hpp"

namespace znpoly {

namespace {

void trim(std::vector<Residue>& cs) {
    while (!cs.empty() && cs.back() == 0) cs.pop_back();
}

}  // namespace

ModPolynomial::ModPolynomial(std::uint64_t n, std::vector<Residue> cs)
    : modulus(n), coeffs(std::move(cs)) {
    if (modulus < 2) throw std::invalid_argument("ModPolynomial: modulus must be at least 2");
    for (auto& c : coeffs) c %= modulus;
    trim(coeffs);
}

ModPolynomial add(const ModPolynomial& a, const ModPolynomial& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("polynomial add: mixed moduli");
    std::vector<Residue> out(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Residue x = i < a.coeffs.size() ? a.coeffs[i] : 0;
        Residue y = i < b.coeffs.size() ? b.coeffs[i] : 0;
        out[i] = addmod(x, y, a.modulus);
    }
    return ModPolynomial(a.modulus, std::move(out));
}

ModPolynomial scale(Residue c, const ModPolynomial& p) {
    std::vector<Residue> out(p.coeffs.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mulmod(c % p.modulus, p.coeffs[i], p.modulus);
    return ModPolynomial(p.modulus, std::move(out));
}

ModPolynomial multiply(const ModPolynomial& a, const ModPolynomial& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("polynomial multiply: mixed moduli");
    if (a.is_zero() || b.is_zero()) return ModPolynomial(a.modulus, {});
    std::vector<Residue> out(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out[i + j] = addmod(out[i + j], mulmod(a.coeffs[i], b.coeffs[j], a.modulus), a.modulus);
    return ModPolynomial(a.modulus, std::move(out));
}

Residue evaluate_at(const ModPolynomial& p, Residue x) {
    Residue acc = 0;
    x %= p.modulus;
    for (std::size_t i = p.coeffs.size(); i-- > 0;)
        acc = addmod(mulmod(acc, x, p.modulus), p.coeffs[i], p.modulus);
    return acc;
}

ModVector evaluate_polynomial(const ModPolynomial& p) {
    std::vector<Residue> out(p.modulus);
    for (std::uint64_t a = 0; a < p.modulus; ++a) out[a] = evaluate_at(p, a);
    return ModVector(p.modulus, std::move(out));
}

ModPolynomial assemble_polynomial(const std::vector<Residue>& coeffs, const GeneratorSet& gens) {
    if (coeffs.size() != gens.size())
        throw std::invalid_argument("assemble_polynomial: one coefficient per generator required");
    ModPolynomial acc(gens.modulus(), {});
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] % gens.modulus() == 0) continue;
        const GeneratorId& id = gens.id(i);
        acc = add(acc, scale(coeffs[i], generator_polynomial(gens.modulus(), id.p, id.j, id.k)));
    }
    return acc;
}

ModPolynomial falling_factorial(std::uint64_t n, std::uint64_t mu) {
    ModPolynomial acc(n, {1});
    for (std::uint64_t k = 0; k < mu; ++k)
        acc = multiply(acc, ModPolynomial(n, {(n - k % n) % n, 1}));
    return acc;
}

ModPolynomial falling_factorial_reduce(const ModPolynomial& p) {
    std::uint64_t mu = kempner(p.modulus);
    if (p.coeffs.size() <= mu) return p;
    ModPolynomial d = falling_factorial(p.modulus, mu);
    // Long division by a monic divisor: subtract lead * X^shift * d repeatedly.
    std::vector<Residue> rem = p.coeffs;
    for (std::size_t i = rem.size(); i-- >= mu + 1;) {
        Residue lead = rem[i];
        if (lead == 0) continue;
        std::size_t shift = i - mu;
        for (std::size_t j = 0; j < d.coeffs.size(); ++j)
            rem[shift + j] = submod(rem[shift + j], mulmod(lead, d.coeffs[j], p.modulus), p.modulus);
    }
    rem.resize(mu);
    return ModPolynomial(p.modulus, std::move(rem));
}

std::string to_string(const ModPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(p.coeffs[i]);
        } else {
            if (p.coeffs[i] != 1) out += std::to_string(p.coeffs[i]) + "*";
            out += "X";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::uint64_t linear_index(std::uint64_t n, const std::vector<std::uint64_t>& point) {
    std::uint64_t idx = 0;
    for (std::uint64_t a : point) idx = idx * n + a % n;
    return idx;
}

MultiModVector evaluate_polynomial(const MultiPolynomial& p) {
    std::uint64_t n = p.modulus;
    std::uint64_t points = 1;
    for (unsigned i = 0; i < p.arity; ++i) {
        if (points > 10'000'000 / n)
            throw ResourceError("multivariate evaluation: n^m exceeds the point budget");
        points *= n;
    }
    MultiModVector out{n, p.arity, std::vector<Residue>(points, 0)};
    std::vector<std::uint64_t> a(p.arity, 0);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
        Residue total = 0;
        for (const auto& term : p.terms) {
            Residue t = term.coeff % n;
            for (unsigned v = 0; v < p.arity; ++v) t = mulmod(t, powmod(a[v], term.exponents[v], n), n);
            total = addmod(total, t, n);
        }
        out.values[idx] = total;
        for (unsigned v = p.arity; v-- > 0;) {
            if (++a[v] < n) break;
            a[v] = 0;
        }
    }
    return out;
}

}  // namespace znpoly
