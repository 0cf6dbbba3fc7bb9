#include "znpoly/bench.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace znpoly {

namespace {

ModVector sample_polynomial_input(const GeneratorSet& gens, std::mt19937_64& rng) {
    const std::uint64_t n = gens.modulus();
    std::uniform_int_distribution<std::uint64_t> coef(0, n - 1);
    std::vector<Residue> cs(gens.size());
    for (auto& c : cs) c = coef(rng);
    std::vector<Residue> vals(n, 0);
    for (std::uint64_t a = 0; a < n; ++a)
        for (const auto& en : gens.row(a))
            if (cs[en.col] != 0) vals[a] = addmod(vals[a], mulmod(en.value, cs[en.col], n), n);
    return ModVector(n, std::move(vals));
}

ModVector sample_random_input(std::uint64_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> val(0, n - 1);
    std::vector<Residue> vals(n);
    for (auto& v : vals) v = val(rng);
    return ModVector(n, std::move(vals));
}

const char* verdict_label(bool polynomial) {
    return polynomial ? "polynomial" : "not-polynomial";
}

void csv_stage_row(std::ostringstream& out, const std::string& prefix, const char* algo,
                   const char* stage, const StageCounters& c, const char* verdict) {
    out << prefix << ',' << algo << ',' << stage << ',' << c.mults << ',' << c.adds << ','
        << c.time_ns << ',' << verdict << '\n';
}

}  // namespace

std::string factorization_string(const Factorization& fac) {
    std::ostringstream out;
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        if (i) out << '*';
        out << fac.factors[i].p;
        if (fac.factors[i].e > 1) out << '^' << fac.factors[i].e;
    }
    return out.str();
}

BenchReport run_bench(std::uint64_t n, std::size_t trials, std::uint64_t seed, BenchInputs inputs) {
    if (n < 2) throw std::invalid_argument("run_bench: modulus must be at least 2");
    if (trials == 0) throw std::invalid_argument("run_bench: need at least one trial");

    GeneratorSet gens = GeneratorSet::build(n);
    BenchReport rep;
    rep.n = n;
    rep.fac = gens.factorization();
    rep.mu = kempner(rep.fac);
    rep.N = gens.size();
    rep.sum_e = gens.sum_exponents();

    // All inputs are drawn up front from the single seeded stream, so the
    // sampled functions do not depend on how trials are scheduled.
    std::mt19937_64 rng(seed);
    std::vector<ModVector> fns;
    fns.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        bool poly = inputs == BenchInputs::Polynomial || (inputs == BenchInputs::Mixed && t % 2 == 0);
        fns.push_back(poly ? sample_polynomial_input(gens, rng) : sample_random_input(n, rng));
    }

    std::vector<BenchTrial> results(trials);
    const std::size_t workers =
        std::min<std::size_t>(trials, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                while (true) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= trials) break;
                    BenchTrial trial;
                    trial.index = t;
                    Decision dg = decide_univariate(fns[t], gens, &trial.generator);
                    Decision dc = decide_canonical(fns[t], &trial.canonical);
                    trial.generator_polynomial_verdict = dg.polynomial;
                    trial.canonical_polynomial_verdict = dc.polynomial;
                    results[t] = std::move(trial);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    double gs = 0, gv = 0, cs = 0, cv = 0;
    for (const auto& tr : results) {
        if (tr.generator_polynomial_verdict != tr.canonical_polynomial_verdict) {
            rep.verdicts_agree = false;
            throw std::runtime_error("run_bench: deciders disagree on trial " +
                                     std::to_string(tr.index));
        }
        gs += static_cast<double>(tr.generator.solve.mults);
        gv += static_cast<double>(tr.generator.verify.mults);
        cs += static_cast<double>(tr.canonical.solve.mults);
        cv += static_cast<double>(tr.canonical.verify.mults);
    }
    rep.trials = std::move(results);
    rep.generator_means = {gs / static_cast<double>(trials), gv / static_cast<double>(trials)};
    rep.canonical_means = {cs / static_cast<double>(trials), cv / static_cast<double>(trials)};
    return rep;
}

std::string bench_csv_header() { return "n,factorization,mu,N,sum_e,algo,stage,mults,adds,time_ns,verdict\n"; }

std::string bench_csv(const BenchReport& report, bool include_detail) {
    std::ostringstream out;
    std::ostringstream pre;
    pre << report.n << ',' << factorization_string(report.fac) << ',' << report.mu << ','
        << report.N << ',' << report.sum_e;
    const std::string prefix = pre.str();

    if (include_detail) {
        for (const auto& tr : report.trials) {
            const char* gverdict = verdict_label(tr.generator_polynomial_verdict);
            csv_stage_row(out, prefix, "generator", "precheck", tr.generator.precheck, gverdict);
            csv_stage_row(out, prefix, "generator", "solve", tr.generator.solve, gverdict);
            csv_stage_row(out, prefix, "generator", "verify", tr.generator.verify, gverdict);
            const char* cverdict = verdict_label(tr.canonical_polynomial_verdict);
            csv_stage_row(out, prefix, "canonical", "precheck", tr.canonical.precheck, cverdict);
            csv_stage_row(out, prefix, "canonical", "solve", tr.canonical.solve, cverdict);
            csv_stage_row(out, prefix, "canonical", "verify", tr.canonical.verify, cverdict);
        }
    }

    const char* agree = report.verdicts_agree ? "agree" : "disagree";
    auto mean_row = [&](const char* algo, const char* stage, double mean) {
        out << prefix << ',' << algo << ',' << stage << ',' << mean << ",,," << agree << '\n';
    };
    out.setf(std::ios::fixed);
    out.precision(2);
    mean_row("generator", "solve-mean", report.generator_means.solve_mults);
    mean_row("generator", "verify-mean", report.generator_means.verify_mults);
    mean_row("canonical", "solve-mean", report.canonical_means.solve_mults);
    mean_row("canonical", "verify-mean", report.canonical_means.verify_mults);
    return out.str();
}

}  // namespace znpoly
