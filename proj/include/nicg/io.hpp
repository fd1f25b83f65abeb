#ifndef NICG_IO_HPP
#define NICG_IO_HPP

// JSON persistence for witness files and search checkpoints.
//
// Vectors are written as strings of '0'/'1' with component 1 first, so the
// string "110" is the vector (1,1,0) whatever the internal bit order.

#include <nicg/search.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nicg {

inline constexpr const char *kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct SolutionMeta {
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::string prng_name;
    double elapsed_ms = 0;
};

inline std::string vec_to_string(Dim dim, Mask m)
{
    std::string s(static_cast<std::size_t>(dim.value()), '0');
    for (int i = 0; i < dim.value(); ++i)
        if (bit(m, i))
            s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline Mask vec_from_string(Dim dim, const std::string &s)
{
    if (s.size() != static_cast<std::size_t>(dim.value()))
        throw InvalidInput("vector \"" + s + "\" has length " + std::to_string(s.size()) + ", expected "
                           + std::to_string(dim.value()));
    Mask m = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            m |= Mask{1} << i;
        else if (s[i] != '0')
            throw InvalidInput("vector \"" + s + "\" contains a character other than 0 and 1");
    }
    return m;
}

inline Json solution_to_json(const VecSet &x, const SolutionMeta &meta)
{
    Json j;
    j["dim"] = x.dim().value();
    j["cardinality"] = x.size();
    Json vs = Json::array();
    for (Mask m : x)
        vs.push_back(vec_to_string(x.dim(), m));
    j["vectors"] = std::move(vs);
    j["sum"] = sum_set(x).counts;
    j["meta"] = {{"tool_version", meta.tool_version},
                 {"seed", meta.seed},
                 {"prng_name", meta.prng_name},
                 {"elapsed_ms", meta.elapsed_ms}};
    return j;
}

namespace detail {

template <typename T>
T get_field(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object())
        throw InvalidInput(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidInput(where + ": missing field \"" + key + "\"");
    try {
        return it->template get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(where + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
    }
}

} // namespace detail

/// Parses and validates one solution object.
inline VecSet solution_from_json(const Json &j, const std::string &where = "solution", bool check_sum = true)
{
    const int d = detail::get_field<int>(j, "dim", where);
    if (d < 1 || d > kMaxDim)
        throw InvalidInput(where + ": dim " + std::to_string(d) + " out of range");
    Dim dim(d);
    const auto strs = detail::get_field<std::vector<std::string>>(j, "vectors", where);
    std::vector<Mask> masks;
    for (std::size_t i = 0; i < strs.size(); ++i) {
        try {
            masks.push_back(vec_from_string(dim, strs[i]));
        } catch (const InvalidInput &e) {
            throw InvalidInput(where + ".vectors[" + std::to_string(i) + "]: " + e.what());
        }
    }
    VecSet x = [&] {
        try {
            return VecSet(dim, masks);
        } catch (const InvalidInput &e) {
            throw InvalidInput(where + ".vectors: " + e.what());
        }
    }();
    if (j.contains("cardinality") && detail::get_field<std::size_t>(j, "cardinality", where) != x.size())
        throw InvalidInput(where + ": cardinality does not match the number of vectors");
    if (check_sum && j.contains("sum") && detail::get_field<std::vector<int>>(j, "sum", where) != sum_set(x).counts)
        throw InvalidInput(where + ": sum does not match the vectors");
    return x;
}

/// Accepts a single solution object, an array of them, or an object with a
/// "solutions" array.
inline std::vector<VecSet> solutions_from_json(const Json &j, bool check_sum = true)
{
    std::vector<VecSet> out;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(solution_from_json(j[i], "[" + std::to_string(i) + "]", check_sum));
    } else if (j.is_object() && j.contains("solutions")) {
        const auto &arr = j["solutions"];
        if (!arr.is_array())
            throw InvalidInput("\"solutions\" must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(solution_from_json(arr[i], "solutions[" + std::to_string(i) + "]", check_sum));
    } else if (j.is_object()) {
        out.push_back(solution_from_json(j, "solution", check_sum));
    } else {
        throw InvalidInput("expected a JSON object or array");
    }
    return out;
}

inline Json parse_json_text(const std::string &text, const std::string &origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidInput(origin + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes through a temporary file in the same directory and renames it over
/// the destination, so readers never see a partial file.
inline void write_file_atomic(const std::string &path, const std::string &text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp);
        out << text;
        out.flush();
        if (!out)
            throw std::runtime_error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

inline std::vector<VecSet> load_solution_file(const std::string &path, bool check_sum = true)
{
    return solutions_from_json(parse_json_text(read_text_file(path), path), check_sum);
}

inline SolutionMeta meta_of(const SearchStats &s)
{
    SolutionMeta m;
    m.seed = s.seed;
    m.prng_name = s.prng_name;
    m.elapsed_ms = s.elapsed_ms;
    return m;
}

inline Json stats_to_json(const SearchStats &s)
{
    return Json{{"nodes_visited", s.nodes_visited},   {"nicg_tests", s.nicg_tests},
                {"pruned_weak", s.pruned_weak},       {"pruned_canonical", s.pruned_canonical},
                {"solutions_found", s.solutions_found}, {"restarts", s.restarts},
                {"elapsed_ms", s.elapsed_ms},         {"prng_name", s.prng_name},
                {"seed", s.seed}};
}

inline SearchStats stats_from_json(const Json &j)
{
    SearchStats s;
    const std::string w = "stats";
    s.nodes_visited = detail::get_field<std::uint64_t>(j, "nodes_visited", w);
    s.nicg_tests = detail::get_field<std::uint64_t>(j, "nicg_tests", w);
    s.pruned_weak = detail::get_field<std::uint64_t>(j, "pruned_weak", w);
    s.pruned_canonical = detail::get_field<std::uint64_t>(j, "pruned_canonical", w);
    s.solutions_found = detail::get_field<std::uint64_t>(j, "solutions_found", w);
    s.restarts = detail::get_field<std::uint64_t>(j, "restarts", w);
    s.elapsed_ms = detail::get_field<double>(j, "elapsed_ms", w);
    s.prng_name = detail::get_field<std::string>(j, "prng_name", w);
    s.seed = detail::get_field<std::uint64_t>(j, "seed", w);
    return s;
}

/// Outcome document: summary fields followed by every witness as a solution object.
inline Json outcome_to_json(Dim dim, const SearchOutcome &o)
{
    Json j;
    j["dim"] = dim.value();
    j["n"] = o.best_cardinality;
    j["exact"] = o.exact;
    j["best_count"] = o.best_count;
    Json sols = Json::array();
    const auto meta = meta_of(o.stats);
    for (const auto &w : o.witnesses)
        sols.push_back(solution_to_json(w, meta));
    j["solutions"] = std::move(sols);
    j["stats"] = stats_to_json(o.stats);
    return j;
}

inline void save_solution_file(Dim dim, const SearchOutcome &o, const std::string &path)
{
    write_file_atomic(path, outcome_to_json(dim, o).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Checkpoints

inline Json masks_to_json(Dim dim, const std::vector<Mask> &ms)
{
    Json a = Json::array();
    for (Mask m : ms)
        a.push_back(vec_to_string(dim, m));
    return a;
}

inline std::vector<Mask> masks_from_json(Dim dim, const Json &j, const std::string &where)
{
    if (!j.is_array())
        throw InvalidInput(where + ": expected an array of vector strings");
    std::vector<Mask> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string())
            throw InvalidInput(where + "[" + std::to_string(i) + "]: expected a string");
        try {
            out.push_back(vec_from_string(dim, j[i].get<std::string>()));
        } catch (const InvalidInput &e) {
            throw InvalidInput(where + "[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

/// Settings that must agree between a checkpoint and the run resuming it.
inline Json config_fingerprint(const SearchConfig &cfg)
{
    Json j;
    j["dim"] = cfg.dim.value();
    j["mode"] = to_string(cfg.mode);
    j["prune"] = to_string(cfg.prune);
    j["nicg"] = cfg.nicg_test == NicgTest::gauss ? "gauss" : "removal";
    j["seed"] = cfg.seed;
    if (cfg.restriction)
        j["restriction"] = {{"component", cfg.restriction->component}, {"value", cfg.restriction->value}};
    else
        j["restriction"] = nullptr;
    return j;
}

inline Json checkpoint_to_json(const SearchConfig &cfg, const SearchSnapshot &s)
{
    const Dim dim = cfg.dim;
    Json j;
    j["format"] = "nicg-checkpoint";
    j["version"] = 1;
    j["config"] = config_fingerprint(cfg);
    j["stage"] = s.stage;
    Json sw = Json::array();
    for (const auto &w : s.stage_witnesses)
        sw.push_back(masks_to_json(dim, w));
    j["stage_witnesses"] = std::move(sw);
    j["stage_stats"] = stats_to_json(s.stage_stats);
    j["best"] = s.best;
    j["best_count"] = s.best_count;
    Json ws = Json::array();
    for (const auto &w : s.witnesses)
        ws.push_back(masks_to_json(dim, w));
    j["best_so_far"] = std::move(ws);
    Json fr = Json::array();
    for (const auto &f : s.frontier)
        fr.push_back(Json{{"prefix", masks_to_json(dim, f.prefix)}, {"next", f.next}});
    j["frontier"] = std::move(fr);
    j["nodes_visited"] = s.stats.nodes_visited;
    j["stats"] = stats_to_json(s.stats);
    Json vis = Json::array();
    for (const auto &k : s.visited)
        vis.push_back(masks_to_json(dim, k.masks));
    j["visited"] = std::move(vis);
    j["visited_full"] = s.visited_full;
    return j;
}

/// Parses a checkpoint; its configuration must match `cfg`.
inline SearchSnapshot checkpoint_from_json(const Json &j, const SearchConfig &cfg)
{
    const std::string w = "checkpoint";
    if (detail::get_field<std::string>(j, "format", w) != "nicg-checkpoint")
        throw InvalidInput("not a checkpoint file");
    if (detail::get_field<int>(j, "version", w) != 1)
        throw InvalidInput("unsupported checkpoint version");
    if (j.at("config") != config_fingerprint(cfg))
        throw InvalidInput("checkpoint was written with different settings: " + j.at("config").dump());
    const Dim dim = cfg.dim;
    SearchSnapshot s;
    s.stage = detail::get_field<int>(j, "stage", w);
    for (const auto &x : detail::get_field<Json>(j, "stage_witnesses", w))
        s.stage_witnesses.push_back(masks_from_json(dim, x, "stage_witnesses"));
    s.stage_stats = stats_from_json(detail::get_field<Json>(j, "stage_stats", w));
    s.best = detail::get_field<int>(j, "best", w);
    s.best_count = detail::get_field<std::uint64_t>(j, "best_count", w);
    for (const auto &x : detail::get_field<Json>(j, "best_so_far", w))
        s.witnesses.push_back(masks_from_json(dim, x, "best_so_far"));
    const auto fr = detail::get_field<Json>(j, "frontier", w);
    for (std::size_t i = 0; i < fr.size(); ++i) {
        const std::string where = "frontier[" + std::to_string(i) + "]";
        Frame f;
        f.prefix = masks_from_json(dim, detail::get_field<Json>(fr[i], "prefix", where), where + ".prefix");
        f.next = detail::get_field<std::size_t>(fr[i], "next", where);
        s.frontier.push_back(std::move(f));
    }
    s.stats = stats_from_json(detail::get_field<Json>(j, "stats", w));
    for (const auto &x : detail::get_field<Json>(j, "visited", w))
        s.visited.push_back(CanonicalKey{masks_from_json(dim, x, "visited")});
    s.visited_full = detail::get_field<bool>(j, "visited_full", w);
    return s;
}

inline void save_checkpoint(const std::string &path, const SearchConfig &cfg, const SearchSnapshot &s)
{
    write_file_atomic(path, checkpoint_to_json(cfg, s).dump() + "\n");
}

inline SearchSnapshot load_checkpoint(const std::string &path, const SearchConfig &cfg)
{
    return checkpoint_from_json(parse_json_text(read_text_file(path), path), cfg);
}

} // namespace nicg

#endif
