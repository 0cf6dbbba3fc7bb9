// Benchmark harness: run both deciders over sampled inputs with counters and
// report per-stage operation counts. Counts, not wall time, carry the
// comparison; times are reported for context only.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "znpoly/counters.hpp"
#include "znpoly/decider.hpp"
#include "znpoly/ring.hpp"

namespace znpoly {

enum class BenchInputs { Polynomial, Random, Mixed };

struct BenchTrial {
    std::size_t index = 0;
    bool generator_polynomial_verdict = false;
    bool canonical_polynomial_verdict = false;
    OpCounters generator;
    OpCounters canonical;
};

struct BenchStageMeans {
    double solve_mults = 0;
    double verify_mults = 0;
};

struct BenchReport {
    std::uint64_t n = 0;
    Factorization fac;
    std::uint64_t mu = 0;
    std::uint64_t N = 0;
    std::uint64_t sum_e = 0;
    std::vector<BenchTrial> trials;
    BenchStageMeans generator_means;
    BenchStageMeans canonical_means;
    bool verdicts_agree = true;
};

// Runs both deciders on `trials` sampled functions. Polynomial inputs are
// random generator combinations, random inputs are uniform tuples, mixed
// alternates. Throws std::runtime_error if any trial's verdicts disagree,
// since that would mean a decider bug.
BenchReport run_bench(std::uint64_t n, std::size_t trials, std::uint64_t seed,
                      BenchInputs inputs = BenchInputs::Polynomial);

// "2^2*3", "97*101": the factorization as it appears in report rows.
std::string factorization_string(const Factorization& fac);

// CSV rows: n,factorization,mu,N,sum_e,algo,stage,mults,adds,time_ns,verdict.
// Detail rows carry stages precheck/solve/verify per trial and algorithm;
// two summary rows per algorithm carry stage solve-mean / verify-mean.
std::string bench_csv_header();
std::string bench_csv(const BenchReport& report, bool include_detail = true);

}  // namespace znpoly
