#include "mptq/search.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "mptq/pair_table.hpp"

namespace mptq {

namespace {

constexpr unsigned kMaxWidth = 24;
constexpr std::uint64_t kFlushInterval = 4096;

PairTable table_for(const SearchUniverse& u)
{
    return u.mode == SearchMode::mptq ? multiplicative_pair_table(u.multiplicative)
                                      : additive_pair_table(u.additive);
}

std::vector<SearchTask> make_tasks(unsigned width)
{
    std::vector<SearchTask> tasks(std::size_t{1} << width);
    for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].prefix = i;
    return tasks;
}

bool lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Shared, read-mostly context for the workers of one run.
struct RunContext {
    const SearchState& state;
    const PairTable& table;
    const RunControl& control;
    std::atomic<std::uint64_t> examined{0};
    std::atomic<bool> stop{false};

    bool should_stop()
    {
        if (stop.load(std::memory_order_relaxed)) return true;
        if (control.cancel && control.cancel->load(std::memory_order_relaxed)) {
            stop.store(true);
            return true;
        }
        if (control.budget && examined.load(std::memory_order_relaxed) >= control.budget) {
            stop.store(true);
            return true;
        }
        return false;
    }
};

void verify_node(const SearchState& state, const PairCounters& counters)
{
    std::size_t dominant = 0, other = 0;
    if (counters.size() == 0) return;
    if (state.universe.mode == SearchMode::mptq) {
        std::vector<FactoredNonzero> v;
        for (auto i : counters.members()) v.push_back(state.universe.multiplicative[i]);
        auto r = classify(MultiplicativeSet(std::move(v)));
        dominant = *r.product_size;
        other = *r.quotient_size;
    } else {
        std::vector<std::int64_t> v;
        for (auto i : counters.members()) v.push_back(state.universe.additive[i]);
        auto r = classify(AdditiveSet(std::move(v)));
        dominant = *r.sum_size;
        other = *r.difference_size;
    }
    if (dominant != counters.sym_size() || other != counters.anti_size()) {
        throw std::logic_error("incremental counters disagree with materialized derived sets");
    }
}

void run_task(RunContext& ctx, SearchTask& task)
{
    const SearchState& state = ctx.state;
    const auto m = static_cast<std::uint32_t>(ctx.table.size);
    const std::uint32_t w = state.width;
    const auto& opt = state.options;
    const std::size_t excluded = state.excluded.size();
    const bool mptq = state.universe.mode == SearchMode::mptq;

    PairCounters counters(ctx.table);
    for (std::uint32_t i = 0; i < w; ++i) {
        if (task.prefix >> i & 1u) counters.add(i);
    }
    if (counters.size() > opt.max_size) {
        task.status = TaskStatus::done;
        return;
    }

    std::uint64_t local = 0;
    auto visit = [&] {
        ++local;
        const std::size_t s = counters.size();
        if (opt.verify_every && (task.examined + local) % opt.verify_every == 0) verify_node(state, counters);
        if (s < opt.min_size || counters.sym_size() <= counters.anti_size()) return;
        FoundSet f;
        f.dominant_size = counters.sym_size();
        f.other_size = counters.anti_size();
        if (mptq) {
            f.k_special = k_special_level(f.dominant_size, f.other_size, s);
            f.expansions = expansion_count(f.k_special, excluded);
        }
        ++task.found_count;
        task.expanded += f.expansions;
        if (opt.report_all || task.found.size() < opt.report_limit) {
            f.indices.assign(counters.members().begin(), counters.members().end());
            std::sort(f.indices.begin(), f.indices.end());
            task.found.push_back(std::move(f));
        }
    };
    auto flush = [&] {
        task.examined += local;
        ctx.examined.fetch_add(local, std::memory_order_relaxed);
        local = 0;
    };

    std::vector<std::uint32_t>& stack = task.path;
    if (task.status == TaskStatus::pending) {
        stack.clear();
        visit();
    } else {
        for (auto i : stack) counters.add(i);
    }
    task.status = TaskStatus::partial;

    for (;;) {
        // Lexicographic successor over suffix elements w..m-1.
        const std::uint32_t next = stack.empty() ? w : stack.back() + 1;
        if (counters.size() < opt.max_size && next < m) {
            stack.push_back(next);
            counters.add(next);
        } else {
            bool advanced = false;
            while (!stack.empty()) {
                const std::uint32_t last = stack.back();
                stack.pop_back();
                counters.remove_last();
                if (last + 1 < m) {
                    stack.push_back(last + 1);
                    counters.add(last + 1);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                flush();
                task.status = TaskStatus::done;
                return;
            }
        }
        visit();
        if (local >= kFlushInterval) {
            flush();
            if (ctx.should_stop()) return;
        }
    }
}

}  // namespace

std::string_view search_mode_name(SearchMode mode)
{
    return mode == SearchMode::mptq ? "mptq" : "mstd";
}

SearchMode parse_search_mode(std::string_view text)
{
    if (text == "mptq") return SearchMode::mptq;
    if (text == "mstd") return SearchMode::mstd;
    throw InputError("unknown search mode '" + std::string(text) + "'");
}

std::vector<Prime> excluded_primes(std::uint64_t n)
{
    return primes_in(n / 2, n);
}

std::uint64_t expansion_count(std::uint32_t level, std::size_t excluded_count)
{
    std::uint64_t total = 0, binom = 1;
    const std::uint64_t e = excluded_count;
    for (std::uint64_t t = 0; t <= std::min<std::uint64_t>(level, e); ++t) {
        total += binom;
        binom = binom * (e - t) / (t + 1);
    }
    return total;
}

bool SearchState::complete() const
{
    return std::all_of(tasks.begin(), tasks.end(), [](const SearchTask& t) { return t.status == TaskStatus::done; });
}

std::uint64_t SearchState::subsets_examined() const
{
    std::uint64_t total = 0;
    for (const auto& t : tasks) total += t.examined;
    return total;
}

SearchState plan_universe_search(SearchUniverse universe, std::vector<Prime> excluded, const SearchOptions& options)
{
    if (universe.size() == 0) throw InputError("search universe is empty");
    if (universe.size() > 0xffffffffu) throw InputError("search universe too large");
    if (universe.mode == SearchMode::mptq) {
        for (Prime p : excluded) {
            if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
            for (const auto& x : universe.multiplicative) {
                if (x.exponent_of(p) != 0) {
                    throw InputError("excluded prime " + std::to_string(p) + " divides universe element " + x.to_string());
                }
            }
        }
    } else if (!excluded.empty()) {
        throw InputError("prime exclusion applies to mptq mode only");
    }
    SearchState state;
    state.universe = std::move(universe);
    state.excluded = std::move(excluded);
    state.options = options;
    state.width = std::min<unsigned>({options.parallel_width, kMaxWidth, static_cast<unsigned>(state.universe.size())});
    state.tasks = make_tasks(state.width);
    return state;
}

SearchState plan_interval_search(std::uint64_t n, SearchMode mode, const SearchOptions& options)
{
    if (n < 1) throw InputError("search bound must be at least 1");
    SearchUniverse u;
    u.mode = mode;
    std::vector<Prime> excluded;
    if (mode == SearchMode::mptq) {
        excluded = n >= 2 ? excluded_primes(n) : std::vector<Prime>{};
        for (std::uint64_t x = 1; x <= n; ++x) {
            if (!std::binary_search(excluded.begin(), excluded.end(), x)) {
                u.multiplicative.push_back(FactoredNonzero::from_integer(static_cast<std::int64_t>(x)));
            }
        }
    } else {
        for (std::uint64_t x = 1; x <= n; ++x) u.additive.push_back(static_cast<std::int64_t>(x));
    }
    SearchState state = plan_universe_search(std::move(u), std::move(excluded), options);
    state.universe_max = n;
    return state;
}

RunOutcome run_search(SearchState& state, const RunControl& control)
{
    const auto start = std::chrono::steady_clock::now();
    const PairTable table = table_for(state.universe);
    RunContext ctx{state, table, control};

    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < state.tasks.size(); ++i) {
        if (state.tasks[i].status != TaskStatus::done) open.push_back(i);
    }
    std::vector<std::exception_ptr> errors(open.size());
    const int threads = control.threads ? static_cast<int>(control.threads) : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t k = 0; k < open.size(); ++k) {
        if (ctx.should_stop()) continue;
        try {
            run_task(ctx, state.tasks[open[k]]);
        } catch (...) {
            errors[k] = std::current_exception();
            ctx.stop.store(true);
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    state.elapsed_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {state.complete(), ctx.examined.load()};
}

SearchReport summarize(const SearchState& state)
{
    SearchReport r;
    r.mode = state.universe.mode;
    r.universe_max = state.universe_max;
    r.excluded_primes = state.excluded;
    r.reduced_universe_size = state.universe.size();
    r.subsets_examined = state.subsets_examined();
    r.wall_time_seconds = state.elapsed_seconds;
    r.complete = state.complete();

    std::vector<const FoundSet*> found;
    for (const auto& t : state.tasks) {
        r.found_count += t.found_count;
        r.expanded_total += t.expanded;
        for (const auto& f : t.found) found.push_back(&f);
    }
    std::sort(found.begin(), found.end(), [](const FoundSet* a, const FoundSet* b) { return lex_less(a->indices, b->indices); });
    if (!state.options.report_all && found.size() > state.options.report_limit) found.resize(state.options.report_limit);

    for (const FoundSet* f : found) {
        ReportedSet rs;
        rs.expansions = f->expansions;
        if (r.mode == SearchMode::mptq) {
            std::vector<FactoredNonzero> v;
            for (auto i : f->indices) v.push_back(state.universe.multiplicative[i]);
            rs.multiplicative = MultiplicativeSet(std::move(v));
            rs.report = multiplicative_report(f->indices.size(), f->dominant_size, f->other_size);
        } else {
            std::vector<std::int64_t> v;
            for (auto i : f->indices) v.push_back(state.universe.additive[i]);
            rs.additive = AdditiveSet(std::move(v));
            rs.report = additive_report(f->indices.size(), f->dominant_size, f->other_size);
        }
        r.found.push_back(std::move(rs));
    }
    return r;
}

SearchReport exhaustive_search(std::uint64_t n, SearchMode mode, const SearchOptions& options,
                               const RunControl& control)
{
    SearchState state = plan_interval_search(n, mode, options);
    run_search(state, control);
    return summarize(state);
}

std::vector<MultiplicativeSet> expand_with_primes(const MultiplicativeSet& s, std::uint32_t level,
                                                  const std::vector<Prime>& primes)
{
    const auto report = classify(s);
    if (!report.is_mptq()) throw InputError("expand_with_primes: base set is not MPTQ");
    if (report.k_special != level) {
        throw InputError("expand_with_primes: level " + std::to_string(level) + " does not match k_special " +
                         std::to_string(report.k_special));
    }
    for (Prime p : primes) {
        if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
        for (const auto& x : s) {
            if (x.exponent_of(p) != 0) throw InputError("prime " + std::to_string(p) + " divides " + x.to_string());
        }
    }

    std::vector<MultiplicativeSet> out;
    const std::size_t e = primes.size();
    // Enumerate T by size, each size in lexicographic index order.
    for (std::size_t t = 0; t <= std::min<std::size_t>(level + 1, e); ++t) {
        std::vector<std::size_t> pick(t);
        for (std::size_t i = 0; i < t; ++i) pick[i] = i;
        for (;;) {
            MultiplicativeSet candidate = s;
            for (auto i : pick) candidate.insert(FactoredNonzero::from_prime(primes[i]));
            const bool is_mptq = classify(candidate).is_mptq();
            if (t <= level) {
                if (!is_mptq) throw std::logic_error("expansion by " + std::to_string(t) + " primes lost MPTQ");
                out.push_back(std::move(candidate));
            } else if (is_mptq) {
                throw std::logic_error("expansion beyond k_special is still MPTQ");
            }
            // Next combination.
            std::size_t i = t;
            while (i > 0 && pick[i - 1] == e - t + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < t; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace mptq
