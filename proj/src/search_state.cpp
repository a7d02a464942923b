// Checkpoint (de)serialization. Only the DFS path of each unfinished task is
// stored; counters are rebuilt from it on resume.

#include <string>

#include "mptq/search.hpp"

namespace mptq {

namespace {

std::string_view status_name(TaskStatus s)
{
    switch (s) {
    case TaskStatus::pending: return "pending";
    case TaskStatus::partial: return "partial";
    case TaskStatus::done: return "done";
    }
    return "pending";
}

TaskStatus parse_status(const std::string& s)
{
    if (s == "pending") return TaskStatus::pending;
    if (s == "partial") return TaskStatus::partial;
    if (s == "done") return TaskStatus::done;
    throw InputError("checkpoint: unknown task status '" + s + "'");
}

}  // namespace

nlohmann::json checkpoint_to_json(const SearchState& state)
{
    using nlohmann::json;
    json j;
    j["format"] = "mptq-search-checkpoint";
    j["version"] = SearchState::kVersion;
    j["mode"] = search_mode_name(state.universe.mode);
    j["universe_max"] = state.universe_max;
    if (state.universe.mode == SearchMode::mptq) {
        json u = json::array();
        for (const auto& x : state.universe.multiplicative) u.push_back(x.to_string());
        j["universe"] = u;
    } else {
        j["universe"] = state.universe.additive;
    }
    j["excluded_primes"] = state.excluded;
    j["options"] = {
        {"min_size", state.options.min_size},
        {"max_size", state.options.max_size},
        {"parallel_width", state.options.parallel_width},
        {"report_all", state.options.report_all},
        {"report_limit", state.options.report_limit},
    };
    j["width"] = state.width;
    j["elapsed_seconds"] = state.elapsed_seconds;
    json tasks = json::array();
    for (const auto& t : state.tasks) {
        json jt = {
            {"prefix", t.prefix},
            {"status", status_name(t.status)},
            {"examined", t.examined},
            {"found_count", t.found_count},
            {"expanded", t.expanded},
        };
        if (t.status == TaskStatus::partial) jt["path"] = t.path;
        json found = json::array();
        for (const auto& f : t.found) {
            found.push_back({{"indices", f.indices},
                             {"dominant_size", f.dominant_size},
                             {"other_size", f.other_size},
                             {"k_special", f.k_special},
                             {"expansions", f.expansions}});
        }
        jt["found"] = found;
        tasks.push_back(jt);
    }
    j["tasks"] = tasks;
    return j;
}

SearchState checkpoint_from_json(const nlohmann::json& j)
{
    try {
        if (j.value("format", std::string()) != "mptq-search-checkpoint") throw InputError("not a search checkpoint");
        if (j.at("version").get<int>() != SearchState::kVersion) {
            throw InputError("unsupported checkpoint version " + j.at("version").dump());
        }
        SearchState state;
        state.universe.mode = parse_search_mode(j.at("mode").get<std::string>());
        state.universe_max = j.at("universe_max").get<std::uint64_t>();
        if (state.universe.mode == SearchMode::mptq) {
            for (const auto& x : j.at("universe")) state.universe.multiplicative.push_back(parse_number(x.get<std::string>()));
        } else {
            state.universe.additive = j.at("universe").get<std::vector<std::int64_t>>();
        }
        state.excluded = j.at("excluded_primes").get<std::vector<Prime>>();
        const auto& o = j.at("options");
        state.options.min_size = o.at("min_size").get<std::size_t>();
        state.options.max_size = o.at("max_size").get<std::size_t>();
        state.options.parallel_width = o.at("parallel_width").get<unsigned>();
        state.options.report_all = o.at("report_all").get<bool>();
        state.options.report_limit = o.at("report_limit").get<std::size_t>();
        state.width = j.at("width").get<unsigned>();
        state.elapsed_seconds = j.at("elapsed_seconds").get<double>();
        for (const auto& jt : j.at("tasks")) {
            SearchTask t;
            t.prefix = jt.at("prefix").get<std::uint64_t>();
            t.status = parse_status(jt.at("status").get<std::string>());
            t.examined = jt.at("examined").get<std::uint64_t>();
            t.found_count = jt.at("found_count").get<std::uint64_t>();
            t.expanded = jt.at("expanded").get<std::uint64_t>();
            if (t.status == TaskStatus::partial) t.path = jt.at("path").get<std::vector<std::uint32_t>>();
            for (const auto& jf : jt.at("found")) {
                FoundSet f;
                f.indices = jf.at("indices").get<std::vector<std::uint32_t>>();
                f.dominant_size = jf.at("dominant_size").get<std::uint32_t>();
                f.other_size = jf.at("other_size").get<std::uint32_t>();
                f.k_special = jf.at("k_special").get<std::uint32_t>();
                f.expansions = jf.at("expansions").get<std::uint64_t>();
                t.found.push_back(std::move(f));
            }
            state.tasks.push_back(std::move(t));
        }
        if (state.tasks.size() != (std::size_t{1} << state.width)) throw InputError("checkpoint: task count mismatch");
        const auto m = state.universe.size();
        for (const auto& t : state.tasks) {
            for (auto i : t.path) {
                if (i < state.width || i >= m) throw InputError("checkpoint: DFS path index out of range");
            }
        }
        return state;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed checkpoint: ") + e.what());
    }
}

}  // namespace mptq
