// mptq: command-line front end for the exact product/quotient toolkit.
//
// Every command prints JSON on stdout. Exit status: 0 success, 2 input
// error, 3 incomplete (budget exhausted or interrupted).

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mptq/certify.hpp"
#include "mptq/fixtures.hpp"
#include "mptq/json_io.hpp"
#include "mptq/sampling.hpp"
#include "mptq/search.hpp"
#include "mptq/setops.hpp"
#include "mptq/transforms.hpp"

using nlohmann::json;
using namespace mptq;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitIncomplete = 3;

std::atomic<bool> g_cancel{false};

extern "C" void on_interrupt(int)
{
    g_cancel.store(true);
}

void emit(const json& j)
{
    std::cout << j.dump() << '\n';
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + what + ": " + e.what());
    }
}

// A set argument is a JSON array literal, @path to a file holding one, or
// the name of a built-in fixture.
FixtureSet resolve_set(const std::string& arg, Mode mode)
{
    json j;
    if (!arg.empty() && arg.front() == '[') {
        j = parse_json_text(arg, "set literal");
    } else if (!arg.empty() && arg.front() == '@') {
        j = parse_json_text(read_file(arg.substr(1)), arg.substr(1));
    } else if (auto f = find_fixture(arg)) {
        return f->set;
    } else {
        throw InputError("'" + arg + "' is neither a JSON set literal, @file, nor a fixture name");
    }
    if (mode == Mode::additive) return additive_from_json(j);
    return multiplicative_from_json(j);
}

MultiplicativeSet multiplicative_arg(const std::string& arg)
{
    auto s = resolve_set(arg, Mode::multiplicative);
    if (auto* m = std::get_if<MultiplicativeSet>(&s)) return *m;
    // additive fixtures are integer sets; reuse their elements
    std::vector<FactoredNonzero> v;
    for (auto x : std::get<AdditiveSet>(s)) v.push_back(FactoredNonzero::from_integer(x));
    return MultiplicativeSet(std::move(v));
}

AdditiveSet additive_arg(const std::string& arg)
{
    auto s = resolve_set(arg, Mode::additive);
    if (auto* a = std::get_if<AdditiveSet>(&s)) return *a;
    std::vector<std::int64_t> v;
    for (const auto& x : std::get<MultiplicativeSet>(s)) {
        auto i = x.to_int64();
        if (!i) throw InputError("element " + x.to_string() + " is not a 64-bit integer");
        v.push_back(*i);
    }
    return AdditiveSet(std::move(v));
}

Prime prime_arg(const std::string& text)
{
    auto v = parse_integer(text);
    if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) throw InputError(text + " is not prime");
    return static_cast<Prime>(v);
}

unsigned default_threads()
{
    if (const char* env = std::getenv("MPTQ_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw InputError(std::string("MPTQ_THREADS is not a number: ") + env);
        }
    }
    return 0;
}

void write_checkpoint(const std::string& path, const SearchState& state)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write checkpoint " + tmp);
        out << checkpoint_to_json(state).dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

// classify ------------------------------------------------------------------

struct ClassifyArgs {
    std::string set;
    std::string mode;
};

int run_classify(const ClassifyArgs& a)
{
    FixtureSet s;
    if (a.mode.empty()) {
        s = resolve_set(a.set, Mode::multiplicative);
    } else if (a.mode == "multiplicative") {
        s = multiplicative_arg(a.set);
    } else {
        s = additive_arg(a.set);
    }
    json out;
    std::visit(
        [&](const auto& set) {
            if (set.empty()) throw InputError("empty set");
            out = to_json(classify(set));
            out["set"] = to_json(set);
        },
        s);
    out["version"] = kSchemaVersion;
    emit(out);
    return 0;
}

// inspect -------------------------------------------------------------------

int run_inspect(const std::string& arg)
{
    const auto a = multiplicative_arg(arg);
    if (a.empty()) throw InputError("empty set");
    json out = to_json(classify(a));
    out["version"] = kSchemaVersion;
    out["set"] = to_json(a);
    out["multiplier_sequence"] = to_json(to_multiplier_sequence(a));
    auto witness = symmetry_witness(a);
    out["symmetric_about"] = witness ? json(witness->to_string()) : json(nullptr);
    auto b = trivial_bounds(a.size());
    out["trivial_bounds"] = {{"max_products", b.max_products}, {"max_quotients", b.max_quotients}};
    auto qi = quotient_identity(a);
    auto pi = product_identity(a);
    out["quotient_identity"] = {{"lhs", qi.lhs()}, {"rhs", qi.rhs()}, {"holds", qi.holds()}};
    out["product_identity"] = {{"lhs", pi.lhs()}, {"rhs", pi.rhs()}, {"holds", pi.holds()}};
    if (auto c = geometric_plus_one_certificate(a)) {
        out["geometric_plus_one"] = {
            {"a", c->a.to_string()}, {"r", c->r.to_string()}, {"n", c->n}, {"b", c->b.to_string()}};
    } else {
        out["geometric_plus_one"] = nullptr;
    }
    emit(out);
    return 0;
}

int run_adjoin(const std::string& set, const std::string& x)
{
    auto out = to_json(adjoin_analysis(multiplicative_arg(set), parse_number(x)));
    out["version"] = kSchemaVersion;
    emit(out);
    return 0;
}

// search --------------------------------------------------------------------

struct SearchArgs {
    std::uint64_t max = 0;
    std::string mode = "mptq";
    unsigned parallel = 12;
    std::uint64_t budget = 0;
    std::string checkpoint;
    bool resume = false;
    std::size_t min_size = 1;
    std::size_t max_size = 0;
    unsigned threads = 0;
    std::uint64_t slice = std::uint64_t{1} << 28;
    std::size_t report_limit = 0;
    bool quiet = false;
};

int run_search_command(const SearchArgs& a)
{
    SearchState state;
    if (a.resume) {
        if (a.checkpoint.empty()) throw InputError("--resume needs --checkpoint");
        state = checkpoint_from_json(parse_json_text(read_file(a.checkpoint), a.checkpoint));
    } else {
        if (a.max < 1) throw InputError("--max must be at least 1");
        SearchOptions opt;
        opt.min_size = a.min_size;
        if (a.max_size) opt.max_size = a.max_size;
        opt.parallel_width = a.parallel;
        if (a.report_limit) {
            opt.report_all = false;
            opt.report_limit = a.report_limit;
        }
        state = plan_interval_search(a.max, parse_search_mode(a.mode), opt);
    }

    const unsigned threads = a.threads ? a.threads : default_threads();

    std::signal(SIGINT, on_interrupt);
    std::signal(SIGTERM, on_interrupt);

    std::uint64_t used = 0;
    bool complete = state.complete();
    while (!complete && !g_cancel.load()) {
        std::uint64_t slice = a.checkpoint.empty() ? 0 : a.slice;
        if (a.budget) {
            const std::uint64_t left = a.budget > used ? a.budget - used : 0;
            if (left == 0) break;
            slice = slice ? std::min(slice, left) : left;
        }
        auto out = run_search(state, RunControl{threads, slice, &g_cancel});
        used += out.examined;
        complete = out.complete;
        if (!a.checkpoint.empty()) write_checkpoint(a.checkpoint, state);
        if (slice == 0) break;
    }
    if (!a.checkpoint.empty()) write_checkpoint(a.checkpoint, state);

    const SearchReport report = summarize(state);
    if (!a.quiet) {
        for (const auto& rs : report.found) emit(to_json(rs));
    }
    json summary = summary_to_json(report);
    if (!a.checkpoint.empty()) summary["checkpoint"] = a.checkpoint;
    summary["interrupted"] = g_cancel.load();
    emit(summary);
    return report.complete ? 0 : kExitIncomplete;
}

// transform -----------------------------------------------------------------

int run_transform(const std::string& op, const std::vector<std::string>& args)
{
    auto need = [&](std::size_t n, const char* usage) {
        if (args.size() != n) throw InputError(std::string("usage: mptq transform ") + usage);
    };
    json out;
    if (op == "log") {
        need(2, "log SET r");
        out["set"] = to_json(log_power(multiplicative_arg(args[0]), parse_number(args[1])));
    } else if (op == "log-free") {
        need(1, "log-free SET");
        json vecs = json::array();
        for (const auto& v : log_free(multiplicative_arg(args[0]))) vecs.push_back(v.to_string());
        out["set"] = vecs;
    } else if (op == "exp") {
        need(2, "exp SET r");
        out["set"] = to_json(exp_power(additive_arg(args[0]), parse_number(args[1])));
    } else if (op == "prime-switch") {
        need(3, "prime-switch SET p q");
        out["set"] = to_json(prime_switch(multiplicative_arg(args[0]), prime_arg(args[1]), prime_arg(args[2])));
    } else if (op == "base-expand") {
        need(3, "base-expand SET k m|auto");
        const auto a = additive_arg(args[0]);
        const auto k = parse_integer(args[1]);
        if (k < 1) throw InputError("k must be at least 1");
        const std::int64_t m = args[2] == "auto" ? safe_base(a) : parse_integer(args[2]);
        out["set"] = to_json(base_expansion(a, static_cast<std::size_t>(k), m));
        out["m"] = m;
    } else if (op == "family") {
        if (args.size() < 2) throw InputError("usage: mptq transform family SET k [k ...]");
        std::vector<std::size_t> ks;
        for (std::size_t i = 1; i < args.size(); ++i) {
            const auto k = parse_integer(args[i]);
            if (k < 1) throw InputError("k must be at least 1");
            ks.push_back(static_cast<std::size_t>(k));
        }
        auto fam = mptq_family(multiplicative_arg(args[0]), ks);
        json sets = json::array();
        for (std::size_t i = 0; i < fam.size(); ++i) {
            json item = to_json(classify(fam[i]));
            item["k"] = ks[i];
            item["set"] = to_json(fam[i]);
            sets.push_back(item);
        }
        out["family"] = sets;
    } else if (op == "geometric") {
        need(2, "geometric n r");
        const auto n = parse_integer(args[0]);
        if (n < 1) throw InputError("n must be at least 1");
        out["set"] = to_json(geometric_set(static_cast<std::size_t>(n), parse_number(args[1])));
    } else {
        throw InputError("unknown transform '" + op + "'");
    }
    out["version"] = kSchemaVersion;
    out["transform"] = op;
    emit(out);
    return 0;
}

// certify -------------------------------------------------------------------

struct CertifyArgs {
    std::string sequence = "fib2";
    std::size_t terms = 12;
    std::uint32_t r = 3;
    std::string input;
    std::uint64_t seed = 1;
    std::size_t max_size = 0;
};

int run_certify(const CertifyArgs& a)
{
    if (a.sequence == "primes") {
        auto rep = prime_subset_audit(a.terms, a.max_size ? a.max_size : a.terms);
        json out = to_json(rep);
        out["verdict"] = rep.mptq_found == 0 && rep.step_failures == 0 ? "certified" : "violated";
        emit(out);
        return 0;
    }
    std::vector<FactoredNonzero> prefix;
    if (a.sequence == "fib2") {
        prefix = fibonacci_power_sequence(a.terms);
    } else if (a.sequence == "signed-powers") {
        prefix = signed_power_sequence(a.terms, a.seed);
    } else if (a.sequence == "file") {
        if (a.input.empty()) throw InputError("--sequence file needs --input");
        const json j = parse_json_text(read_file(a.input), a.input);
        if (!j.is_array()) throw InputError("sequence file must hold a JSON array");
        for (const auto& x : j) {
            if (x.is_string()) prefix.push_back(parse_number(x.get<std::string>()));
            else if (x.is_number_integer()) prefix.push_back(FactoredNonzero::from_integer(x.get<std::int64_t>()));
            else throw InputError("sequence element must be a number literal: " + x.dump());
        }
    } else {
        throw InputError("unknown sequence '" + a.sequence + "'");
    }
    if (prefix.size() < static_cast<std::size_t>(a.r) + 1) throw InputError("need at least r+1 terms");
    emit(to_json(certify_sequence(prefix, a.r)));
    return 0;
}

// explore -------------------------------------------------------------------

int run_explore(std::size_t size, const std::string& ratios, const std::string& head)
{
    const json j = parse_json_text(ratios, "--ratios");
    if (!j.is_array()) throw InputError("--ratios must be a JSON array");
    std::vector<FactoredNonzero> candidates;
    for (const auto& x : j) {
        if (x.is_string()) candidates.push_back(parse_number(x.get<std::string>()));
        else if (x.is_number_integer()) candidates.push_back(FactoredNonzero::from_integer(x.get<std::int64_t>()));
        else throw InputError("ratio must be a number literal: " + x.dump());
    }
    emit(to_json(explore_multiplier_space(size, candidates, parse_number(head))));
    return 0;
}

int run_fixtures()
{
    for (const auto& f : fixtures()) {
        json j = {{"name", f.name}, {"description", f.description}};
        std::visit(
            [&](const auto& s) {
                j["set"] = to_json(s);
                j["mode"] = std::is_same_v<std::decay_t<decltype(s)>, AdditiveSet> ? "additive" : "multiplicative";
            },
            f.set);
        emit(j);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact product/quotient and sum/difference set toolkit"};
    app.require_subcommand(1);
    int status = 0;

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a set (MPTQ / MSTD / balanced ...)");
    classify_cmd->add_option("set", classify_args.set, "JSON array literal, @file or fixture name")->required();
    classify_cmd->add_option("--mode", classify_args.mode, "multiplicative or additive")
        ->check(CLI::IsMember({"multiplicative", "additive"}));

    std::string inspect_set;
    auto* inspect_cmd = app.add_subcommand("inspect", "Multiplier sequence, symmetry and counting identities");
    inspect_cmd->add_option("set", inspect_set, "JSON array literal, @file or fixture name")->required();

    std::string adjoin_set, adjoin_x;
    auto* adjoin_cmd = app.add_subcommand("adjoin", "New products and quotients from adjoining x");
    adjoin_cmd->add_option("set", adjoin_set)->required();
    adjoin_cmd->add_option("x", adjoin_x)->required();

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "Exhaustive search of subsets of {1..N}");
    search_cmd->add_option("--max", search_args.max, "Universe bound N");
    search_cmd->add_option("--mode", search_args.mode)->check(CLI::IsMember({"mptq", "mstd"}));
    search_cmd->add_option("--parallel", search_args.parallel, "Split width w (2^w tasks)")->capture_default_str();
    search_cmd->add_option("--budget", search_args.budget, "Maximum subsets to examine in this run");
    search_cmd->add_option("--checkpoint", search_args.checkpoint, "Checkpoint file");
    search_cmd->add_flag("--resume", search_args.resume, "Continue from --checkpoint");
    search_cmd->add_option("--min-size", search_args.min_size);
    search_cmd->add_option("--max-size", search_args.max_size);
    search_cmd->add_option("--threads", search_args.threads, "Worker threads (default MPTQ_THREADS or all cores)");
    search_cmd->add_option("--slice", search_args.slice, "Subsets between checkpoint writes");
    search_cmd->add_option("--report-limit", search_args.report_limit, "Keep at most this many found sets");
    search_cmd->add_flag("--quiet", search_args.quiet, "Print only the summary");

    std::string transform_op;
    auto* transform_cmd = app.add_subcommand("transform", "log | log-free | exp | prime-switch | base-expand | family | geometric");
    transform_cmd->add_option("op", transform_op)->required();
    // Arguments are taken raw: CLI11 would otherwise read "[...]" as a vector literal.
    transform_cmd->allow_extras();

    CertifyArgs certify_args;
    auto* certify_cmd = app.add_subcommand("certify", "Certify that a sequence has no MPTQ subset");
    certify_cmd->add_option("--sequence", certify_args.sequence)
        ->check(CLI::IsMember({"fib2", "signed-powers", "primes", "file"}));
    certify_cmd->add_option("--terms", certify_args.terms);
    certify_cmd->add_option("--r", certify_args.r);
    certify_cmd->add_option("--input", certify_args.input, "JSON array of number literals");
    certify_cmd->add_option("--seed", certify_args.seed);
    certify_cmd->add_option("--max-size", certify_args.max_size, "Subset size cap for the prime audit");

    std::uint64_t density_n = 36, density_samples = 10000, density_seed = 1;
    unsigned density_threads = 0;
    auto* density_cmd = app.add_subcommand("density", "Monte Carlo proportion of MPTQ and MSTD subsets");
    density_cmd->add_option("--n", density_n);
    density_cmd->add_option("--samples", density_samples);
    density_cmd->add_option("--seed", density_seed);
    density_cmd->add_option("--threads", density_threads);

    unsigned grid_e2 = 6, grid_e3 = 6;
    std::string grid_strategy = "hill_climb";
    std::uint64_t grid_seed = 1, grid_budget = 100000;
    auto* grid_cmd = app.add_subcommand("grid", "Randomized search over {2^a 3^b}");
    grid_cmd->add_option("--e2", grid_e2);
    grid_cmd->add_option("--e3", grid_e3);
    grid_cmd->add_option("--strategy", grid_strategy);
    grid_cmd->add_option("--seed", grid_seed);
    grid_cmd->add_option("--budget", grid_budget);

    std::size_t explore_size = 4;
    std::string explore_ratios = R"(["-1","2","-2","3","-3","3/2"])";
    std::string explore_head = "1";
    auto* explore_cmd = app.add_subcommand("explore", "Enumerate multiplier sequences over candidate ratios");
    explore_cmd->add_option("--size", explore_size);
    explore_cmd->add_option("--ratios", explore_ratios, "JSON array of ratio literals");
    explore_cmd->add_option("--head", explore_head);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "List built-in example sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (classify_cmd->parsed()) status = run_classify(classify_args);
        else if (inspect_cmd->parsed()) status = run_inspect(inspect_set);
        else if (adjoin_cmd->parsed()) status = run_adjoin(adjoin_set, adjoin_x);
        else if (search_cmd->parsed()) status = run_search_command(search_args);
        else if (transform_cmd->parsed()) status = run_transform(transform_op, transform_cmd->remaining());
        else if (certify_cmd->parsed()) status = run_certify(certify_args);
        else if (density_cmd->parsed()) {
            if (density_samples == 0) throw InputError("--samples must be at least 1");
            auto est = density_estimate(density_n, density_samples, density_seed,
                                        density_threads ? density_threads : default_threads());
            emit(to_json(est));
        } else if (grid_cmd->parsed()) {
            auto finds = grid_search(grid_e2, grid_e3, parse_grid_strategy(grid_strategy), grid_seed, grid_budget);
            json out = {{"version", kSchemaVersion}, {"strategy", grid_strategy}, {"seed", grid_seed}};
            json list = json::array();
            for (const auto& f : finds) list.push_back(to_json(f));
            out["found"] = list;
            emit(out);
        } else if (explore_cmd->parsed()) status = run_explore(explore_size, explore_ratios, explore_head);
        else if (fixtures_cmd->parsed()) status = run_fixtures();
    } catch (const InputError& e) {
        std::cerr << "mptq: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::overflow_error& e) {
        std::cerr << "mptq: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "mptq: internal error: " << e.what() << '\n';
        return 1;
    }
    std::cout.flush();
    return status;
}
