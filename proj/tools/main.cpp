// Command-line front end: decide / decide-multi / generators / kempner /
// count / oracle / bench. Exit codes: 0 polynomial (or success), 1 not
// polynomial, 2 usage or parse error, 3 resource guard tripped.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "znpoly/bench.hpp"
#include "znpoly/decider.hpp"
#include "znpoly/generators.hpp"
#include "znpoly/modsolve.hpp"
#include "znpoly/polynomial.hpp"
#include "znpoly/ring.hpp"

namespace {

constexpr int kExitPolynomial = 0;
constexpr int kExitNotPolynomial = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

using nlohmann::json;

std::uint64_t parse_residue_token(const std::string& tok, const std::string& where) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": bad residue '" + tok + "'");
    }
}

std::vector<znpoly::Residue> parse_csv_values(const std::string& text, std::uint64_t n) {
    std::vector<znpoly::Residue> vals;
    std::istringstream in(text);
    std::string tok;
    std::size_t idx = 0;
    while (std::getline(in, tok, ',')) {
        ++idx;
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.erase(tok.begin());
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
        vals.push_back(parse_residue_token(tok, "entry " + std::to_string(idx)) % n);
    }
    return vals;
}

// One residue per line; '#' starts a comment; blank lines are skipped. With
// grid=true a line may carry several whitespace- or comma-separated residues,
// which reads naturally for multivariate tables.
std::vector<znpoly::Residue> read_values_file(const std::string& path, std::uint64_t n, bool grid) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::vector<znpoly::Residue> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == ',' || ch == '\t') ch = ' ';
        std::istringstream row(line);
        std::string tok;
        std::size_t tokens = 0;
        while (row >> tok) {
            ++tokens;
            if (!grid && tokens > 1)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected one residue per line");
            vals.push_back(parse_residue_token(tok, "line " + std::to_string(lineno)) % n);
        }
    }
    return vals;
}

struct FunctionInput {
    std::uint64_t n = 0;
    std::string values_text;
    std::string file_path;

    void attach(CLI::App* cmd, bool grid = false) {
        cmd->add_option("--n", n, "modulus")->required();
        auto* v = cmd->add_option("--values", values_text,
                                  "function values f(0),f(1),... as a comma-separated list");
        auto* f = cmd->add_option(grid ? "--table" : "--file", file_path,
                                  grid ? "file with the value table in linearized order"
                                       : "file with one residue per line ('#' comments)");
        v->excludes(f);
        f->excludes(v);
    }

    std::vector<znpoly::Residue> load(std::uint64_t expected, bool grid = false) const {
        std::vector<znpoly::Residue> vals;
        if (!values_text.empty()) {
            vals = parse_csv_values(values_text, n);
        } else if (!file_path.empty()) {
            vals = read_values_file(file_path, n, grid);
        } else {
            throw std::invalid_argument("need --values or a file argument");
        }
        if (vals.size() != expected)
            throw std::invalid_argument("got " + std::to_string(vals.size()) + " values, expected " +
                                        std::to_string(expected));
        return vals;
    }
};

const char* stage_name(znpoly::RejectStage s) {
    switch (s) {
        case znpoly::RejectStage::Precheck: return "precheck";
        case znpoly::RejectStage::LinearSolve: return "linear-solve";
        case znpoly::RejectStage::TailVerify: return "tail-verify";
    }
    return "?";
}

json counters_json(const znpoly::OpCounters& c) {
    auto stage = [](const znpoly::StageCounters& s) {
        return json{{"mults", s.mults}, {"adds", s.adds}, {"pivots", s.pivots}, {"time_ns", s.time_ns}};
    };
    return json{{"precheck", stage(c.precheck)}, {"solve", stage(c.solve)}, {"verify", stage(c.verify)}};
}

int run_decide(const FunctionInput& input, bool no_witness, bool truncated_verify,
               bool skip_precheck, bool as_json) {
    znpoly::ModVector f(input.n, input.load(input.n));
    znpoly::GeneratorSet gens = znpoly::GeneratorSet::build(input.n);
    znpoly::OpCounters counters;
    znpoly::DecideOptions opts;
    opts.full_verify = !truncated_verify;
    opts.with_precheck = !skip_precheck;
    znpoly::Decision d = znpoly::decide_univariate(f, gens, &counters, opts);

    znpoly::ModPolynomial witness;
    if (d.polynomial && !no_witness)
        witness = znpoly::falling_factorial_reduce(znpoly::assemble_polynomial(d.coeffs, gens));

    if (as_json) {
        json out;
        out["n"] = input.n;
        out["verdict"] = d.polynomial ? "polynomial" : "not-polynomial";
        if (!d.polynomial) out["stage"] = stage_name(d.stage);
        if (d.witness)
            out["congruence_failure"] = {{"p", d.witness->p}, {"j", d.witness->j}, {"ell", d.witness->ell}};
        if (d.polynomial) out["coefficients"] = d.coeffs;
        if (d.polynomial && !no_witness) {
            out["witness"] = znpoly::to_string(witness);
            out["witness_degree"] = witness.degree();
        }
        out["counters"] = counters_json(counters);
        std::cout << out.dump(2) << '\n';
    } else if (d.polynomial) {
        std::cout << "polynomial\n";
        if (!no_witness) std::cout << "witness: " << znpoly::to_string(witness) << '\n';
    } else {
        std::cout << "not polynomial\nstage: " << stage_name(d.stage) << '\n';
        if (d.witness)
            std::cout << "congruence failure: p=" << d.witness->p << " j=" << d.witness->j
                      << " ell=" << d.witness->ell << '\n';
    }
    return d.polynomial ? kExitPolynomial : kExitNotPolynomial;
}

int run_decide_multi(const FunctionInput& input, unsigned m, bool no_witness, bool truncated_verify,
                     bool skip_precheck, bool as_json) {
    znpoly::MultiGeneratorSet gens = znpoly::MultiGeneratorSet::build(input.n, m);
    znpoly::MultiFunction F;
    F.modulus = input.n;
    F.arity = m;
    F.values = input.load(gens.point_count(), true);
    znpoly::OpCounters counters;
    znpoly::DecideOptions opts;
    opts.full_verify = !truncated_verify;
    opts.with_precheck = !skip_precheck;
    znpoly::Decision d = znpoly::decide_multivariate(F, gens, &counters, opts);

    if (as_json) {
        json out;
        out["n"] = input.n;
        out["m"] = m;
        out["verdict"] = d.polynomial ? "polynomial" : "not-polynomial";
        if (!d.polynomial) out["stage"] = stage_name(d.stage);
        if (d.multi_witness)
            out["congruence_failure"] = {{"p", d.multi_witness->p},
                                         {"index", d.multi_witness->index},
                                         {"rep_index", d.multi_witness->rep_index}};
        if (d.polynomial && !no_witness) out["coefficients"] = d.coeffs;
        out["counters"] = counters_json(counters);
        std::cout << out.dump(2) << '\n';
    } else if (d.polynomial) {
        std::cout << "polynomial\n";
        if (!no_witness) {
            std::cout << "coefficients:";
            for (auto c : d.coeffs) std::cout << ' ' << c;
            std::cout << '\n';
        }
    } else {
        std::cout << "not polynomial\nstage: " << stage_name(d.stage) << '\n';
        if (d.multi_witness)
            std::cout << "congruence failure: p=" << d.multi_witness->p
                      << " index=" << d.multi_witness->index
                      << " rep=" << d.multi_witness->rep_index << '\n';
    }
    return d.polynomial ? kExitPolynomial : kExitNotPolynomial;
}

int run_generators(std::uint64_t n) {
    znpoly::GeneratorSet gens = znpoly::GeneratorSet::build(n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& id = gens.id(i);
        std::cout << "p=" << id.p << " j=" << id.j << " k=" << id.k << ": "
                  << znpoly::to_string(gens.vector_at(i)) << '\n';
    }
    return 0;
}

int run_oracle(const FunctionInput& input) {
    znpoly::ModVector f(input.n, input.load(input.n));
    bool poly = znpoly::brute_force_oracle(f);
    std::cout << (poly ? "polynomial" : "not polynomial") << '\n';
    return poly ? kExitPolynomial : kExitNotPolynomial;
}

json report_json(const znpoly::BenchReport& rep, bool detail) {
    json out;
    out["n"] = rep.n;
    out["factorization"] = znpoly::factorization_string(rep.fac);
    out["mu"] = rep.mu;
    out["N"] = rep.N;
    out["sum_e"] = rep.sum_e;
    out["verdicts_agree"] = rep.verdicts_agree;
    out["means"] = {{"generator",
                     {{"solve_mults", rep.generator_means.solve_mults},
                      {"verify_mults", rep.generator_means.verify_mults}}},
                    {"canonical",
                     {{"solve_mults", rep.canonical_means.solve_mults},
                      {"verify_mults", rep.canonical_means.verify_mults}}}};
    if (detail) {
        json trials = json::array();
        for (const auto& tr : rep.trials)
            trials.push_back({{"index", tr.index},
                              {"verdict", tr.generator_polynomial_verdict ? "polynomial" : "not-polynomial"},
                              {"generator", counters_json(tr.generator)},
                              {"canonical", counters_json(tr.canonical)}});
        out["trials"] = std::move(trials);
    }
    return out;
}

int run_bench_cmd(const std::vector<std::uint64_t>& ns, std::size_t trials, std::uint64_t seed,
                  const std::string& inputs_name, bool as_json, bool no_detail) {
    znpoly::BenchInputs mode;
    if (inputs_name == "polynomial") {
        mode = znpoly::BenchInputs::Polynomial;
    } else if (inputs_name == "random") {
        mode = znpoly::BenchInputs::Random;
    } else if (inputs_name == "mixed") {
        mode = znpoly::BenchInputs::Mixed;
    } else {
        throw std::invalid_argument("unknown input mode '" + inputs_name + "'");
    }

    if (as_json) {
        json reports = json::array();
        for (auto n : ns) reports.push_back(report_json(znpoly::run_bench(n, trials, seed, mode), !no_detail));
        std::cout << reports.dump(2) << '\n';
    } else {
        std::cout << znpoly::bench_csv_header();
        for (auto n : ns) std::cout << znpoly::bench_csv(znpoly::run_bench(n, trials, seed, mode), !no_detail);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial representability of functions over Z_n"};
    app.require_subcommand(1);
    int exit_code = 0;

    FunctionInput decide_input;
    bool no_witness = false, truncated_verify = false, skip_precheck = false, as_json = false;
    auto* decide = app.add_subcommand("decide", "decide one function Z_n -> Z_n");
    decide_input.attach(decide);
    decide->add_flag("--no-witness", no_witness, "suppress the witness polynomial");
    decide->add_flag("--truncated-verify", truncated_verify,
                     "verify only the rows beyond the truncated system");
    decide->add_flag("--skip-precheck", skip_precheck, "skip the congruence precheck");
    decide->add_flag("--json", as_json, "structured output");
    decide->callback([&] {
        exit_code = run_decide(decide_input, no_witness, truncated_verify, skip_precheck, as_json);
    });

    FunctionInput multi_input;
    unsigned arity = 2;
    bool m_no_witness = false, m_truncated = false, m_skip = false, m_json = false;
    auto* multi = app.add_subcommand("decide-multi", "decide one function Z_n^m -> Z_n");
    multi_input.attach(multi, true);
    multi->add_option("--m", arity, "number of variables")->default_val(2);
    multi->add_flag("--no-witness", m_no_witness, "suppress the coefficient list");
    multi->add_flag("--truncated-verify", m_truncated,
                    "verify only the rows beyond the truncated system");
    multi->add_flag("--skip-precheck", m_skip, "skip the congruence precheck");
    multi->add_flag("--json", m_json, "structured output");
    multi->callback([&] {
        exit_code = run_decide_multi(multi_input, arity, m_no_witness, m_truncated, m_skip, m_json);
    });

    std::uint64_t gens_n = 0;
    auto* gens_cmd = app.add_subcommand("generators", "print the generator vectors for Z_n");
    gens_cmd->add_option("n", gens_n, "modulus")->required();
    gens_cmd->callback([&] { exit_code = run_generators(gens_n); });

    std::uint64_t kempner_n = 0;
    auto* kempner_cmd = app.add_subcommand("kempner", "smallest k with n | k!");
    kempner_cmd->add_option("n", kempner_n, "modulus")->required();
    kempner_cmd->callback([&] { std::cout << znpoly::kempner(kempner_n) << '\n'; });

    std::uint64_t count_n = 0;
    auto* count_cmd = app.add_subcommand("count", "number of polynomial functions Z_n -> Z_n");
    count_cmd->add_option("n", count_n, "modulus")->required();
    count_cmd->callback([&] { std::cout << znpoly::count_polynomial_functions(count_n) << '\n'; });

    FunctionInput oracle_input;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference verdict");
    oracle_input.attach(oracle_cmd);
    oracle_cmd->callback([&] { exit_code = run_oracle(oracle_input); });

    std::vector<std::uint64_t> bench_ns;
    std::size_t bench_trials = 100;
    std::uint64_t bench_seed = 1;
    std::string bench_inputs = "polynomial";
    bool bench_json = false, bench_no_detail = false;
    auto* bench_cmd = app.add_subcommand("bench", "compare generator and canonical deciders");
    bench_cmd->add_option("--n", bench_ns, "moduli to bench")->required();
    bench_cmd->add_option("--trials", bench_trials, "functions per modulus")->default_val(100);
    bench_cmd->add_option("--seed", bench_seed, "RNG seed")->default_val(1);
    bench_cmd->add_option("--inputs", bench_inputs, "polynomial | random | mixed")
        ->default_val("polynomial");
    bench_cmd->add_flag("--json", bench_json, "structured report array instead of CSV");
    bench_cmd->add_flag("--no-detail", bench_no_detail, "summary rows only");
    bench_cmd->callback([&] {
        exit_code = run_bench_cmd(bench_ns, bench_trials, bench_seed, bench_inputs, bench_json,
                                  bench_no_detail);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const znpoly::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return exit_code;
}
