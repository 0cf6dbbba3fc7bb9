#include "znpoly/ring.hpp"

#include <algorithm>
#include <cctype>

namespace znpoly {

Factorization factorize(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("factorize: n must be at least 2");
    Factorization f;
    f.n = n;
    std::uint64_t rest = n;
    for (std::uint64_t d = 2; d <= rest / d; ++d) {
        if (rest % d != 0) continue;
        PrimePower pp{d, 0, 1};
        while (rest % d == 0) {
            rest /= d;
            ++pp.e;
            pp.value *= d;
        }
        f.factors.push_back(pp);
    }
    if (rest > 1) f.factors.push_back(PrimePower{rest, 1, rest});
    return f;
}

std::uint64_t factorization_product(const Factorization& f) {
    std::uint64_t n = 1;
    for (const auto& pp : f.factors) n *= pp.value;
    return n;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = f.n;
    for (const auto& pp : f.factors) phi = phi / pp.p * (pp.p - 1);
    return phi;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    if (n == 1) return 1;
    return euler_phi(factorize(n));
}

namespace {

// Legendre's formula: multiplicity of p in k!.
std::uint64_t factorial_valuation(std::uint64_t k, std::uint64_t p) {
    std::uint64_t total = 0;
    while (k) {
        k /= p;
        total += k;
    }
    return total;
}

}  // namespace

std::uint64_t kempner_prime_power(std::uint64_t p, unsigned e) {
    if (p < 2 || e == 0) throw std::invalid_argument("kempner_prime_power: need prime p and e >= 1");
    // The answer lies in [1, p*e] since v_p((p*e)!) >= e. Binary search for
    // the first k whose factorial carries at least e factors of p.
    std::uint64_t lo = 1, hi = p * static_cast<std::uint64_t>(e);
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (factorial_valuation(mid, p) >= e)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::uint64_t kempner(const Factorization& f) {
    std::uint64_t best = 1;
    for (const auto& pp : f.factors) best = std::max(best, kempner_prime_power(pp.p, pp.e));
    return best;
}

std::uint64_t kempner(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("kempner: n must be positive");
    if (n == 1) return 1;
    return kempner(factorize(n));
}

std::uint64_t lambda_bound(const Factorization& f) {
    std::uint64_t best = 1;
    for (const auto& pp : f.factors) best = std::max(best, pp.p * pp.e);
    return best;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    std::uint64_t s = a + b;
    return s >= n ? s - n : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return a >= b ? a - b : a + (n - b);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        e >>= 1;
        if (e) a = mulmod(a, a, n);
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t n) {
    // Extended Euclid on (a, n); the Bezout coefficient of a is the inverse.
    std::int64_t old_r = static_cast<std::int64_t>(a % n), r = static_cast<std::int64_t>(n);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("invmod: argument is not a unit");
    std::int64_t inv = old_s % static_cast<std::int64_t>(n);
    if (inv < 0) inv += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(inv);
}

unsigned padic_valuation(std::uint64_t x, std::uint64_t p) {
    if (x == 0) throw std::invalid_argument("padic_valuation: x must be nonzero");
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

ModVector::ModVector(std::uint64_t n, std::vector<Residue> vals)
    : modulus(n), values(std::move(vals)) {
    if (modulus < 2) throw std::invalid_argument("ModVector: modulus must be at least 2");
    if (values.size() != modulus)
        throw std::invalid_argument("ModVector: need exactly one value per residue");
    for (auto& v : values)
        if (v >= modulus) throw std::invalid_argument("ModVector: entry not reduced");
}

ModVector zero_vector(std::uint64_t n) {
    return ModVector(n, std::vector<Residue>(n, 0));
}

ModVector cyclic_shift(const ModVector& v, std::uint64_t k) {
    std::uint64_t n = v.modulus;
    k %= n;
    std::vector<Residue> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = v.values[(i + n - k) % n];
    return ModVector(n, std::move(out));
}

namespace {

void require_same_modulus(const ModVector& a, const ModVector& b) {
    if (a.modulus != b.modulus)
        throw std::invalid_argument("ModVector: mixed moduli");
}

}  // namespace

ModVector add(const ModVector& a, const ModVector& b) {
    require_same_modulus(a, b);
    std::vector<Residue> out(a.modulus);
    for (std::uint64_t i = 0; i < a.modulus; ++i)
        out[i] = addmod(a.values[i], b.values[i], a.modulus);
    return ModVector(a.modulus, std::move(out));
}

ModVector pointwise_product(const ModVector& a, const ModVector& b) {
    require_same_modulus(a, b);
    std::vector<Residue> out(a.modulus);
    for (std::uint64_t i = 0; i < a.modulus; ++i)
        out[i] = mulmod(a.values[i], b.values[i], a.modulus);
    return ModVector(a.modulus, std::move(out));
}

ModVector scale(Residue c, const ModVector& v) {
    std::vector<Residue> out(v.modulus);
    for (std::uint64_t i = 0; i < v.modulus; ++i) out[i] = mulmod(c % v.modulus, v.values[i], v.modulus);
    return ModVector(v.modulus, std::move(out));
}

ModVector parse_mod_vector(std::uint64_t n, const std::string& text) {
    std::vector<Residue> vals;
    std::size_t pos = 0;
    std::size_t entry = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::size_t b = pos, e = comma;
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        if (b == e)
            throw std::invalid_argument("value list: empty entry at position " +
                                        std::to_string(entry + 1));
        std::uint64_t v = 0;
        for (std::size_t i = b; i < e; ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw std::invalid_argument("value list: entry " + std::to_string(entry + 1) +
                                            " is not a non-negative integer");
            if (v > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10)
                throw std::invalid_argument("value list: entry " + std::to_string(entry + 1) +
                                            " is out of range");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        vals.push_back(v % n);
        ++entry;
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    if (vals.size() != n)
        throw std::invalid_argument("value list: expected " + std::to_string(n) +
                                    " entries, got " + std::to_string(vals.size()));
    return ModVector(n, std::move(vals));
}

std::string to_string(const ModVector& v) {
    std::string out;
    for (std::uint64_t i = 0; i < v.modulus; ++i) {
        if (i) out += ',';
        out += std::to_string(v.values[i]);
    }
    return out;
}

}  // namespace znpoly
