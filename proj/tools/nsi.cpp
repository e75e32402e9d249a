/* Copyright 2026 The nsi Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line driver: check / bound / reduce / verify / corpus / tm / fmt.
//
// Exit codes: 0 success, 1 usage or I/O error (and a failed `tm`
// comparison), 2 parse error, 3 type error, 4 fuel exhausted,
// 5 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsi/corpus.hpp"
#include "nsi/measure.hpp"
#include "nsi/reduction.hpp"
#include "nsi/surface.hpp"
#include "nsi/tm.hpp"
#include "nsi/typing.hpp"
#include "nsi/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nsi;

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kType = 3, kFuel = 4, kVerify = 5 };

// Reported failure with its exit category.
struct Failure {
    int code;
    std::string category;
    std::string message;
    ordered_json detail = ordered_json::object();
};

struct Globals {
    bool json = false;
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("NSI_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw Failure{kUsage, "usage", std::string("NSI_SEED is not a number: ") + s};
        }
    }
    return 1;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kUsage, "io", "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Term load_term(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_term(text);
    } catch (const ParseError& e) {
        Failure f{kParse, "parse", path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                                       e.message()};
        f.detail = {{"line", e.line()}, {"column", e.column()}};
        throw f;
    }
}

std::string context_string(const VariableSet& ctx) {
    std::string out = "{";
    for (const auto& v : ctx) {
        if (out.size() > 1) out += ", ";
        out += v.name + " : " + v.type.to_string();
    }
    return out + "}";
}

ordered_json context_json(const VariableSet& ctx) {
    ordered_json out = ordered_json::array();
    for (const auto& v : ctx) out.push_back({{"name", v.name}, {"type", v.type.to_string()}});
    return out;
}

TypingResult require_typed(const Term& t) {
    auto r = infer(t);
    if (!r) {
        const TypeError& e = r.error();
        Failure f{kType, "type", e.to_string()};
        f.detail = {{"kind", std::string(to_string(e.kind))}, {"location", e.location_string()}, {"variables", e.variables}};
        throw f;
    }
    return r.value();
}

Strategy parse_strategy(const std::string& name, std::uint64_t seed) {
    if (name == "random") return Strategy::random(seed);
    auto s = Strategy::parse(name);
    if (!s) throw Failure{kUsage, "usage", "unknown strategy: " + name};
    if (s->kind == Strategy::Kind::Fixed) throw Failure{kUsage, "usage", "a fixed position is not a complete strategy"};
    return *s;
}

std::vector<Strategy> parse_strategies(const std::string& spec, std::uint64_t seed) {
    if (spec == "all") return standard_strategies(seed);
    std::vector<Strategy> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_strategy(item, seed));
    if (out.empty()) throw Failure{kUsage, "usage", "no strategy given"};
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw Failure{kUsage, "usage", "bad size list: " + spec};
        }
    }
    return out;
}

void bound_fields(const Term& t, Natural n, ordered_json& j) {
    const Measure m = measure(t);
    j["length"] = m.length;
    j["poly_prefix"] = m.poly.prefix();
    j["poly_tail"] = m.poly.tail();
    j["n"] = n;
    j["bound"] = m.at(n);
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& path) {
    const Term t = load_term(path);
    const TypingResult r = require_typed(t);
    if (g.json) {
        print_json({{"type", r.type.to_string()}, {"context", context_json(r.minimal_context)}});
    } else {
        std::cout << "type=" << r.type.to_string() << "\n";
        std::cout << "context=" << context_string(r.minimal_context) << "\n";
    }
    return kOk;
}

int cmd_bound(const Globals& g, const std::string& path, std::optional<Natural> n_opt) {
    const Term t = load_term(path);
    const Natural n = n_opt ? *n_opt : default_argument(t);
    const Measure m = measure(t);
    if (g.json) {
        ordered_json j;
        bound_fields(t, n, j);
        print_json(j);
    } else {
        std::cout << "length=" << m.length << " poly=" << m.poly.to_string() << " bound=" << m.at(n) << "\n";
    }
    return kOk;
}

struct ReduceOptions {
    std::string strategy = "lo";
    std::uint64_t seed = 0;
    std::uint64_t fuel = 10'000'000;
    std::string trace_file;
    bool show_steps = false;
};

int cmd_reduce(const Globals& g, const std::string& path, const ReduceOptions& o) {
    const Term t = load_term(path);
    const Strategy strategy = parse_strategy(o.strategy, o.seed);
    const Natural n = default_argument(t);
    auto typed = infer(t);
    const bool keep = g.json || !o.trace_file.empty();

    PointwiseMeasure mu(n);
    ordered_json records = ordered_json::array();
    auto record = [&](std::uint64_t k, const StepResult& s) {
        const Natural value = mu(s.result);
        if (o.show_steps && !g.json)
            std::cout << "step " << k << ": pos=" << to_string(s.position) << " rule=" << to_string(s.rule)
                      << " measure=" << value << "\n";
        if (keep)
            records.push_back(
                {{"step", k}, {"pos", to_string(s.position)}, {"rule", std::string(to_string(s.rule))}, {"measure", value}});
    };
    Reducer reducer(strategy);
    const RunSummary s = reducer.run(t, o.fuel, record);

    ordered_json j;
    if (typed) j["type"] = typed.value().type.to_string();
    j["strategy"] = strategy.to_string();
    j["n"] = n;
    j["start_measure"] = measure_at(t, n);
    j["steps"] = s.steps;
    j["normal"] = s.normal;
    j["normal_form"] = pretty(s.final_term);
    j["trace"] = records;
    if (!o.trace_file.empty()) {
        std::ofstream out(o.trace_file);
        if (!out) throw Failure{kUsage, "io", "cannot write " + o.trace_file};
        ordered_json dump = {{"start", pretty_program(t)}, {"strategy", strategy.to_string()}, {"n", n},
                             {"start_measure", measure_at(t, n)}, {"steps", records}, {"final", pretty(s.final_term)}};
        out << dump.dump(2) << "\n";
    }
    if (g.json) {
        print_json(j);
    } else {
        std::cout << "normal_form=" << pretty(s.final_term) << "\n";
        std::cout << "steps=" << s.steps << "\n";
    }
    if (!s.normal) {
        std::cerr << "nsi: fuel exhausted after " << s.steps << " steps\n";
        return kFuel;
    }
    return kOk;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& strategies, std::uint64_t seed,
               std::optional<Natural> n_opt) {
    const Term t = load_term(path);
    const TypingResult typed = require_typed(t);
    const Natural n = n_opt ? *n_opt : default_argument(t);
    if (n < default_argument(t))
        throw Failure{kUsage, "usage", "the argument must be at least the number of free variables"};

    ordered_json j;
    j["type"] = typed.type.to_string();
    j["context"] = context_json(typed.minimal_context);
    bound_fields(t, n, j);
    ordered_json runs = ordered_json::array();
    bool all_ok = true;
    std::uint64_t max_steps = 0;
    bool strict = true, within = true;
    for (const Strategy& s : parse_strategies(strategies, seed)) {
        CertifyOptions co;
        co.strategy = s;
        co.n = n;
        const Certificate c = certify(t, co);
        all_ok = all_ok && c.ok();
        strict = strict && c.descent.strict;
        within = within && c.descent.within_bound;
        max_steps = std::max(max_steps, c.descent.steps_taken);
        ordered_json r = {{"strategy", s.to_string()},
                          {"steps", c.descent.steps_taken},
                          {"bound", c.descent.bound},
                          {"strict", c.descent.strict},
                          {"within_bound", c.descent.within_bound},
                          {"subject_reduction", c.subject.ok},
                          {"normal_form", c.classification.to_string()}};
        if (c.descent.first_violation) r["first_violation"] = *c.descent.first_violation;
        runs.push_back(r);
        if (!g.json)
            std::cout << s.to_string() << ": steps=" << c.descent.steps_taken << " bound=" << c.descent.bound
                      << " strict=" << (c.descent.strict ? "true" : "false")
                      << " within_bound=" << (c.descent.within_bound ? "true" : "false")
                      << " subject_reduction=" << (c.subject.ok ? "true" : "false")
                      << " normal_form=" << c.classification.to_string() << "\n";
    }
    j["steps"] = max_steps;
    j["strict"] = strict;
    j["within_bound"] = within;
    j["runs"] = runs;
    if (g.json) print_json(j);
    return all_ok ? kOk : kVerify;
}

struct CorpusCliOptions {
    std::size_t random = 1000;
    int size = 30;
    std::uint64_t seed = 1;
    std::string sizes = "0,1,2,4,8,16";
    std::string strategies = "all";
    unsigned jobs = 1;
};

// Per-entry outcome of the corpus suite.
struct EntryResult {
    std::vector<PropertyReport> runs;
    bool round_trip = true;
    bool diamonds_open = true;
};

EntryResult check_entry(const CorpusEntry& e, const std::vector<Strategy>& strategies) {
    EntryResult r;
    for (const Strategy& s : strategies) r.runs.push_back(check_properties(e.term, s));
    try {
        r.round_trip = parse_term(pretty_program(e.term)) == e.term;
    } catch (const ParseError&) {
        r.round_trip = false;
    }
    TypeChecker checker;
    r.diamonds_open = diamond_subterms_open(e.term, checker);
    return r;
}

int cmd_corpus(const Globals& g, const CorpusCliOptions& o) {
    CorpusOptions co;
    co.sizes = parse_sizes(o.sizes);
    co.seed = o.seed;
    std::vector<CorpusEntry> entries = stdlib_corpus(co);
    GenOptions go;
    go.size = o.size;
    for (auto& e : generated_corpus(o.random, o.seed, go)) entries.push_back(std::move(e));
    const std::vector<Strategy> strategies = parse_strategies(o.strategies, o.seed);

    // Entries are distributed over workers; results are kept by index so
    // that the report does not depend on scheduling.
    std::vector<EntryResult> results(entries.size());
    const unsigned jobs = std::max(1u, o.jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < entries.size(); i += jobs) results[i] = check_entry(entries[i], strategies);
        });
    for (auto& t : workers) t.join();

    struct Summary {
        std::size_t terms = 0, runs = 0, failures = 0;
        std::uint64_t max_steps = 0;
    };
    std::map<std::string, Summary> by_program;
    std::vector<std::string> order;
    ordered_json failures = ordered_json::array();
    std::size_t total_runs = 0, total_failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CorpusEntry& e = entries[i];
        if (!by_program.count(e.program)) order.push_back(e.program);
        Summary& s = by_program[e.program];
        ++s.terms;
        auto fail = [&](const std::string& strategy, const std::string& what) {
            ++s.failures;
            ++total_failures;
            failures.push_back({{"term", e.name}, {"strategy", strategy}, {"failure", what}});
            if (!g.json) std::cout << "FAIL " << e.name << " [" << strategy << "]: " << what << "\n";
        };
        if (!results[i].round_trip) fail("-", "parse/pretty round trip");
        if (!results[i].diamonds_open) fail("-", "closed subterm of type Dia");
        for (const PropertyReport& r : results[i].runs) {
            ++s.runs;
            ++total_runs;
            s.max_steps = std::max(s.max_steps, r.steps);
            if (!r.ok()) {
                std::string what = !r.typed                ? "untyped: " + r.message
                                   : !r.strict             ? "measure did not decrease"
                                   : !r.within_bound       ? "steps exceed the bound"
                                   : !r.subject_reduction  ? "subject reduction: " + r.message
                                   : !r.normal             ? "did not reach a normal form"
                                                           : r.message;
                fail(r.strategy, what);
            }
        }
    }
    if (g.json) {
        ordered_json programs = ordered_json::array();
        for (const auto& p : order) {
            const Summary& s = by_program[p];
            programs.push_back({{"program", p}, {"terms", s.terms}, {"runs", s.runs}, {"failures", s.failures},
                                {"max_steps", s.max_steps}});
        }
        print_json({{"seed", o.seed}, {"runs", total_runs}, {"failures", total_failures}, {"programs", programs},
                    {"failed", failures}});
    } else {
        for (const auto& p : order) {
            const Summary& s = by_program[p];
            std::cout << p << ": terms=" << s.terms << " runs=" << s.runs << " failures=" << s.failures
                      << " max_steps=" << s.max_steps << "\n";
        }
        std::cout << "corpus: runs=" << total_runs << " failures=" << total_failures << "\n";
    }
    return total_failures == 0 ? kOk : kVerify;
}

std::vector<bool> parse_bits(const std::string& s) {
    std::vector<bool> out;
    for (char c : s) {
        if (c != '0' && c != '1') throw Failure{kUsage, "usage", "input must be a string over 0 and 1"};
        out.push_back(c == '1');
    }
    return out;
}

int cmd_tm(const Globals& g, const std::string& machine, const std::string& input_text,
           std::optional<std::size_t> clock_opt, const std::string& strategy_name, std::uint64_t seed) {
    TMSpec spec;
    if (machine == "parity") {
        spec = parity_machine();
    } else if (machine == "increment") {
        spec = increment_machine();
    } else {
        try {
            spec = parse_tm_spec(read_file(machine));
        } catch (const TmParseError& e) {
            throw Failure{kParse, "parse", machine + ":" + std::to_string(e.line()) + ": " + e.what()};
        }
    }
    const std::vector<bool> input = parse_bits(input_text);
    TmSimulator sim(spec, input);
    const std::uint64_t transitions = sim.run(1'000'000);
    if (!sim.halted()) throw Failure{kVerify, "verify", "the machine does not halt within 10^6 transitions"};
    const std::size_t clock = clock_opt ? *clock_opt : transitions;
    const TmRunResult run = tm_run(spec, input, clock, parse_strategy(strategy_name, seed));
    const bool agree = run.halted && run.config == sim.config();
    if (g.json) {
        print_json({{"transitions", transitions},
                    {"clock", clock},
                    {"steps", run.reduction_steps},
                    {"simulator", {{"state", sim.config().state}, {"tape", sim.config().tape()}}},
                    {"term", {{"state", run.config.state}, {"tape", run.config.tape()}, {"halted", run.halted}}},
                    {"agree", agree}});
    } else {
        std::cout << "simulator: state=" << sim.config().state << " tape=" << sim.config().tape()
                  << " transitions=" << transitions << "\n";
        std::cout << "term: state=" << run.config.state << " tape=" << run.config.tape() << " clock=" << clock
                  << " steps=" << run.reduction_steps << " halted=" << (run.halted ? "true" : "false") << "\n";
        std::cout << "agree=" << (agree ? "true" : "false") << "\n";
    }
    return agree ? kOk : kUsage;
}

int cmd_fmt(const std::string& path) {
    std::cout << pretty_program(load_term(path)) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resource-typed iteration calculus: type checking, bounds and reduction"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Structured output");

    std::string file;
    std::optional<Natural> n_arg;
    auto* check = app.add_subcommand("check", "Print the type and minimal context");
    check->add_option("file", file, "Program (.nsi), - for stdin")->required();

    auto* bound = app.add_subcommand("bound", "Print length, polynomial and measure bound");
    bound->add_option("file", file)->required();
    bound->add_option("--n", n_arg, "Polynomial argument (default: number of free variables)");

    ReduceOptions ro;
    auto* reduce = app.add_subcommand("reduce", "Normalize and print the normal form and step count");
    reduce->add_option("file", file)->required();
    reduce->add_option("--strategy", ro.strategy, "lo, ri, random or random:<seed>");
    auto* reduce_seed = reduce->add_option("--seed", ro.seed, "Seed of the random strategy (default NSI_SEED or 1)");
    reduce->add_option("--fuel", ro.fuel, "Maximal number of steps");
    reduce->add_option("--trace", ro.trace_file, "Write the trace as JSON");
    reduce->add_flag("--steps", ro.show_steps, "Print one line per step");

    std::string strategies = "lo";
    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "Certify descent and the step bound");
    verify->add_option("file", file)->required();
    verify->add_option("--strategies", strategies, "all, or a comma-separated list of strategies");
    auto* verify_seed = verify->add_option("--seed", seed, "Base seed of the random strategies");
    verify->add_option("--n", n_arg, "Polynomial argument (default: number of free variables)");

    CorpusCliOptions co;
    auto* corpus = app.add_subcommand("corpus", "Run the property suite over the standard and generated corpus");
    corpus->add_option("--random", co.random, "Number of generated terms");
    corpus->add_option("--size", co.size, "Size budget of generated terms");
    auto* corpus_seed = corpus->add_option("--seed", co.seed, "Seed (default NSI_SEED or 1)");
    corpus->add_option("--sizes", co.sizes, "Input lengths of the standard programs");
    corpus->add_option("--strategies", co.strategies, "all, or a comma-separated list of strategies");
    corpus->add_option("--jobs", co.jobs, "Worker threads");

    std::string machine, input;
    std::optional<std::size_t> clock;
    std::string tm_strategy = "lo";
    auto* tm = app.add_subcommand("tm", "Run a Turing machine as a term and compare with a direct simulator");
    tm->add_option("machine", machine, "parity, increment, or a machine file")->required();
    tm->add_option("--input", input, "Input over 0 and 1");
    tm->add_option("--clock", clock, "Clock length (default: the simulator's transition count)");
    tm->add_option("--strategy", tm_strategy, "Reduction strategy");

    auto* fmt = app.add_subcommand("fmt", "Pretty-print a program");
    fmt->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const std::uint64_t env_seed = default_seed();
        if (*check) return cmd_check(g, file);
        if (*bound) return cmd_bound(g, file, n_arg);
        if (*reduce) {
            if (reduce_seed->count() == 0) ro.seed = env_seed;
            return cmd_reduce(g, file, ro);
        }
        if (*verify) return cmd_verify(g, file, strategies, verify_seed->count() ? seed : env_seed, n_arg);
        if (*corpus) {
            if (corpus_seed->count() == 0) co.seed = env_seed;
            return cmd_corpus(g, co);
        }
        if (*tm) return cmd_tm(g, machine, input, clock, tm_strategy, env_seed);
        if (*fmt) return cmd_fmt(file);
    } catch (const Failure& f) {
        if (g.json) {
            ordered_json err = {{"category", f.category}, {"message", f.message}};
            for (auto it = f.detail.begin(); it != f.detail.end(); ++it) err[it.key()] = it.value();
            print_json({{"error", err}});
        }
        std::cerr << "nsi: " << f.category << " error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "nsi: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
