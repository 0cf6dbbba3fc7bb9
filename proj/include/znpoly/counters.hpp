// Operation counters and the instrumented arithmetic context. Counters are
// injected, never global, so parallel runs cannot interleave counts.
#pragma once

#include <cstdint>

namespace znpoly {

struct StageCounters {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;    // additions and subtractions
    std::uint64_t pivots = 0;
    std::uint64_t time_ns = 0;

    StageCounters& operator+=(const StageCounters& o) {
        mults += o.mults;
        adds += o.adds;
        pivots += o.pivots;
        time_ns += o.time_ns;
        return *this;
    }
};

// One decision run: precheck, truncated solve, tail verification.
struct OpCounters {
    StageCounters precheck;
    StageCounters solve;
    StageCounters verify;

    StageCounters total() const {
        StageCounters t;
        t += precheck;
        t += solve;
        t += verify;
        return t;
    }
};

// Modular arithmetic relative to a fixed modulus, reporting into an optional
// counter sink. Operands are assumed reduced.
class Ring {
public:
    explicit Ring(std::uint64_t n, StageCounters* sink = nullptr) : n_(n), sink_(sink) {}

    std::uint64_t n() const { return n_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (sink_) ++sink_->adds;
        std::uint64_t s = a + b;
        return s >= n_ ? s - n_ : s;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        if (sink_) ++sink_->adds;
        return a >= b ? a - b : a + (n_ - b);
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (sink_) ++sink_->mults;
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % n_);
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % n_;
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    void pivot() const {
        if (sink_) ++sink_->pivots;
    }

private:
    std::uint64_t n_;
    StageCounters* sink_;
};

}  // namespace znpoly
