#ifndef NICG_CLI_HPP
#define NICG_CLI_HPP

// Command-line driver. `run_command` parses argv, runs one subcommand and
// returns the process exit code; machine output goes to `out` (or --out),
// diagnostics to `err`.

#include <nicg/bounds.hpp>
#include <nicg/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

namespace nicg {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitInvalid = 2, kExitBudget = 3 };

namespace detail {

struct CommonOptions {
    int dim = 0;
    std::string prune = "weak";
    std::string nicg = "gauss";
    int threads = 1;
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> max_secs;
    std::string out_path;
};

inline int env_threads()
{
    if (const char *v = std::getenv("NICG_LAB_THREADS")) {
        try {
            const int t = std::stoi(v);
            if (t >= 1)
                return t;
        } catch (const std::exception &) {
        }
    }
    return 1;
}

inline Prune parse_prune(const std::string &s)
{
    if (s == "none")
        return Prune::none;
    if (s == "weak")
        return Prune::weak;
    if (s == "canonical")
        return Prune::canonical;
    if (s == "buckets")
        return Prune::buckets;
    throw InvalidInput("unknown prune mode " + s);
}

inline NicgTest parse_nicg(const std::string &s)
{
    if (s == "gauss")
        return NicgTest::gauss;
    if (s == "removal")
        return NicgTest::removal;
    throw InvalidInput("unknown NICG test " + s);
}

/// "comp=J,bit=B" with J counted from 1.
inline Restriction parse_restriction(const std::string &s, int d)
{
    static const std::regex re(R"(^\s*comp\s*=\s*(\d+)\s*,\s*bit\s*=\s*([01])\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw InvalidInput("restriction must look like comp=J,bit=B, got \"" + s + "\"");
    const int comp = std::stoi(m[1].str());
    if (comp < 1 || comp > d)
        throw InvalidInput("restricted component " + std::to_string(comp) + " is outside 1.." + std::to_string(d));
    return Restriction{comp - 1, std::stoi(m[2].str())};
}

inline SearchConfig base_config(const CommonOptions &o)
{
    SearchConfig cfg;
    cfg.dim = Dim(o.dim);
    cfg.prune = parse_prune(o.prune);
    cfg.nicg_test = parse_nicg(o.nicg);
    cfg.threads = o.threads;
    cfg.budget.max_nodes = o.max_nodes;
    cfg.budget.max_seconds = o.max_secs;
    return cfg;
}

inline void add_common(CLI::App *sub, CommonOptions &o, bool search_opts)
{
    sub->add_option("--dim", o.dim, "dimension d")->required()->check(CLI::Range(1, kMaxDim));
    sub->add_option("--out", o.out_path, "write JSON here instead of standard output");
    if (!search_opts)
        return;
    sub->add_option("--prune", o.prune, "none|weak|canonical|buckets")
        ->check(CLI::IsMember({"none", "weak", "canonical", "buckets"}));
    sub->add_option("--nicg", o.nicg, "gauss|removal")->check(CLI::IsMember({"gauss", "removal"}));
    sub->add_option("--threads", o.threads, "worker threads (default from NICG_LAB_THREADS, else 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-nodes", o.max_nodes, "node budget per search run");
    sub->add_option("--max-secs", o.max_secs, "time budget per search run, in seconds");
}

inline void emit(const Json &j, const std::string &out_path, std::ostream &out)
{
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        out << text;
    else
        write_file_atomic(out_path, text);
}

inline Json witnesses_json(const std::vector<VecSet> &ws, const SearchStats &stats)
{
    Json a = Json::array();
    for (const auto &w : ws)
        a.push_back(solution_to_json(w, meta_of(stats)));
    return a;
}

// ---------------------------------------------------------------------------

struct ExactOptions {
    CommonOptions common;
    std::string strategy = "incremental";
    std::string checkpoint;
    std::uint64_t every = 1000000;
    std::string resume;
};

inline int cmd_exact(const ExactOptions &o, std::ostream &out, std::ostream &err)
{
    SearchConfig cfg = base_config(o.common);
    cfg.mode = o.strategy == "binary" ? Mode::binary_search : Mode::incremental_exact;
    // Checkpoints describe exists-at-size stages.
    SearchConfig fp = cfg;
    fp.mode = Mode::exists_at_size;
    if (!o.resume.empty()) {
        if (cfg.mode != Mode::incremental_exact)
            throw InvalidInput("--resume needs the incremental strategy");
        cfg.resume = load_checkpoint(o.resume, fp);
    }
    if (!o.checkpoint.empty()) {
        if (cfg.mode != Mode::incremental_exact)
            throw InvalidInput("--checkpoint needs the incremental strategy");
        if (o.every == 0)
            throw InvalidInput("--every must be positive");
        cfg.checkpoint_every = o.every;
        const std::string path = o.checkpoint;
        cfg.on_checkpoint = [path, fp](const SearchSnapshot &s) { save_checkpoint(path, fp, s); };
    }

    ExactResult r;
    try {
        r = cfg.mode == Mode::binary_search ? binary_search_n(cfg.dim, cfg) : exact_n(cfg.dim, cfg);
    } catch (const Indeterminate &e) {
        err << "budget exhausted: " << e.what() << "\n";
        if (!o.checkpoint.empty())
            err << "checkpoint written to " << o.checkpoint << "\n";
        return kExitBudget;
    }
    Json j;
    j["dim"] = cfg.dim.value();
    j["n"] = r.n;
    j["exact"] = true;
    j["strategy"] = o.strategy;
    j["prune"] = to_string(cfg.prune);
    j["nicg"] = o.common.nicg;
    j["probes"] = r.probes;
    j["solutions"] = witnesses_json(r.witnesses, r.stats);
    j["stats"] = stats_to_json(r.stats);
    emit(j, o.common.out_path, out);
    return kExitOk;
}

struct ExistsOptions {
    CommonOptions common;
    int size = 0;
    std::string restrict_spec;
};

inline int cmd_exists(const ExistsOptions &o, std::ostream &out, std::ostream &err)
{
    SearchConfig cfg = base_config(o.common);
    if (!o.restrict_spec.empty())
        cfg.restriction = parse_restriction(o.restrict_spec, o.common.dim);
    ExistsResult r;
    try {
        r = exists_nicg(cfg.dim, o.size, cfg);
    } catch (const Indeterminate &e) {
        err << "budget exhausted: " << e.what() << "\n";
        Json j{{"dim", o.common.dim}, {"size", o.size}, {"exists", nullptr}, {"exact", false}};
        emit(j, o.common.out_path, out);
        return kExitBudget;
    }
    Json j;
    j["dim"] = o.common.dim;
    j["size"] = o.size;
    j["exists"] = r.witness.has_value();
    j["exact"] = true;
    if (cfg.restriction)
        j["restriction"] = {{"component", cfg.restriction->component + 1}, {"bit", cfg.restriction->value}};
    if (r.witness)
        j["solutions"] = witnesses_json({*r.witness}, r.outcome.stats);
    j["stats"] = stats_to_json(r.outcome.stats);
    emit(j, o.common.out_path, out);
    return r.witness ? kExitOk : kExitNegative;
}

struct LowerOptions {
    CommonOptions common;
    std::uint64_t seed = 0;
    double budget_secs = 10;
    std::uint64_t restart_nodes = 0;
    std::optional<int> stop_at;
};

inline int cmd_lower(const LowerOptions &o, std::ostream &out, std::ostream &)
{
    SearchConfig cfg = base_config(o.common);
    cfg.restart_nodes = o.restart_nodes;
    cfg.stop_at_size = o.stop_at;
    cfg.witness_limit = 1;
    Budget b;
    b.max_seconds = o.budget_secs;
    b.max_nodes = o.common.max_nodes;
    const auto res = randomized_search(cfg.dim, o.seed, b, cfg);
    Json j;
    j["dim"] = o.common.dim;
    j["lower"] = std::max(res.best_cardinality, 0);
    j["exact"] = false;
    j["solutions"] = witnesses_json(res.witnesses, res.stats);
    j["stats"] = stats_to_json(res.stats);
    emit(j, o.common.out_path, out);
    return kExitOk;
}

struct UpperOptions {
    CommonOptions common;
    std::string method = "inequality";
    std::string variant;
    std::optional<int> prev;
};

inline int cmd_upper(const UpperOptions &o, std::ostream &out, std::ostream &err)
{
    const Dim dim(o.common.dim);
    Json j;
    j["dim"] = dim.value();
    j["method"] = o.method;
    if (o.method == "inequality") {
        if (o.variant.empty()) {
            const auto b = best_analytic_upper(dim.value());
            j["variant"] = to_string(b.variant);
            j["upper"] = b.value;
        } else {
            const auto v = parse_bound_variant(o.variant);
            if (!v)
                throw InvalidInput("unknown bound variant " + o.variant);
            j["variant"] = o.variant;
            j["upper"] = analytic_upper(dim.value(), *v);
        }
    } else {
        if (!o.prev)
            throw InvalidInput("--method decomposition needs --prev N");
        SearchConfig cfg = base_config(o.common);
        DecompositionResult r;
        try {
            r = decomposition_upper(dim, *o.prev, cfg);
        } catch (const Indeterminate &e) {
            err << "budget exhausted: " << e.what() << "\n";
            return kExitBudget;
        }
        j["prev"] = *o.prev;
        j["restricted_max"] = r.restricted_max;
        j["upper"] = r.bound;
        j["exact"] = true;
        j["solutions"] = witnesses_json(r.outcome.witnesses, r.outcome.stats);
        j["stats"] = stats_to_json(r.outcome.stats);
    }
    emit(j, o.common.out_path, out);
    return kExitOk;
}

struct TableOptions {
    int max_dim = 10;
    std::string inputs;
    std::string format = "csv";
    int compute_exact = 5;
    std::string out_path;
};

/// Inputs document: {"exact": {"6": 9}, "decomposition": {"7": 19},
/// "witness_files": ["d7.json"], "solutions": [...]}. Every witness is
/// re-verified before it counts; witness_files are relative to the document.
inline BoundsInputs read_table_inputs(const std::string &path, std::ostream &err)
{
    const Json j = parse_json_text(read_text_file(path), path);
    if (!j.is_object())
        throw InvalidInput(path + ": expected an object");
    BoundsInputs in;
    auto read_map = [&](const char *key, std::map<int, int> &dst) {
        if (!j.contains(key))
            return;
        for (const auto &[k, v] : j.at(key).items()) {
            int d = 0;
            try {
                d = std::stoi(k);
            } catch (const std::exception &) {
                throw InvalidInput(path + ": key \"" + k + "\" in \"" + key + "\" is not a dimension");
            }
            if (!v.is_number_integer())
                throw InvalidInput(path + ": \"" + key + "\"." + k + " must be an integer");
            dst[d] = v.get<int>();
        }
    };
    read_map("exact", in.exact);
    read_map("decomposition", in.decomposition);

    std::vector<VecSet> ws;
    if (j.contains("solutions"))
        for (auto &w : solutions_from_json(Json{{"solutions", j.at("solutions")}}))
            ws.push_back(std::move(w));
    if (j.contains("witness_files")) {
        const auto base = std::filesystem::path(path).parent_path();
        for (const auto &f : j.at("witness_files")) {
            if (!f.is_string())
                throw InvalidInput(path + ": witness_files entries must be strings");
            std::filesystem::path p = f.get<std::string>();
            if (p.is_relative())
                p = base / p;
            for (auto &w : load_solution_file(p.string()))
                ws.push_back(std::move(w));
        }
    }
    for (const auto &w : ws) {
        if (!is_nicg_removal(w)) {
            err << "rejected a witness at d = " << w.dim().value() << " of size " << w.size()
                << ": it is not NICG\n";
            continue;
        }
        auto &slot = in.witness_sizes[w.dim().value()];
        slot = std::max(slot, static_cast<int>(w.size()));
    }
    return in;
}

inline int cmd_table(const TableOptions &o, std::ostream &out, std::ostream &err)
{
    BoundsInputs in;
    if (!o.inputs.empty())
        in = read_table_inputs(o.inputs, err);
    for (int d = 1; d <= std::min(o.compute_exact, o.max_dim); ++d) {
        if (in.exact.contains(d))
            continue;
        SearchConfig cfg;
        cfg.dim = Dim(d);
        in.exact[d] = exact_n(cfg.dim, cfg).n;
    }
    const auto rows = bounds_table(o.max_dim, in);
    std::ostringstream text;
    if (o.format == "json") {
        Json a = Json::array();
        for (const auto &r : rows)
            a.push_back(Json{{"d", r.d},
                             {"lower", r.lower},
                             {"upper", r.upper},
                             {"lower_source", r.lower_source},
                             {"upper_source", r.upper_source},
                             {"exact", r.exact}});
        text << a.dump(2) << "\n";
    } else {
        text << "d,lower,upper,lower_source,upper_source,exact\n";
        for (const auto &r : rows)
            text << r.d << ',' << r.lower << ',' << r.upper << ',' << r.lower_source << ',' << r.upper_source << ','
                 << (r.exact ? "true" : "false") << "\n";
    }
    if (o.out_path.empty())
        out << text.str();
    else
        write_file_atomic(o.out_path, text.str());
    return kExitOk;
}

inline int cmd_verify(const std::string &input, std::ostream &out, std::ostream &err)
{
    const Json doc = parse_json_text(read_text_file(input), input);
    const auto sets = solutions_from_json(doc, false);
    // Raw solution objects, aligned with `sets`, for the recorded sums.
    std::vector<Json> raw;
    if (doc.is_array())
        raw.assign(doc.begin(), doc.end());
    else if (doc.contains("solutions"))
        raw.assign(doc.at("solutions").begin(), doc.at("solutions").end());
    else
        raw.push_back(doc);

    bool all_ok = !sets.empty();
    Json results = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const bool nicg = is_nicg_removal(sets[i]);
        bool sum_ok = true;
        if (raw[i].contains("sum"))
            sum_ok = raw[i].at("sum") == Json(sum_set(sets[i]).counts);
        all_ok = all_ok && nicg && sum_ok;
        if (!nicg)
            err << "solution " << i << " is not NICG\n";
        if (!sum_ok)
            err << "solution " << i << " has a sum that does not match its vectors\n";
        results.push_back(
            Json{{"index", i}, {"dim", sets[i].dim().value()}, {"cardinality", sets[i].size()}, {"nicg", nicg}, {"sum_ok", sum_ok}});
    }
    if (sets.empty())
        err << "no solutions in " << input << "\n";
    emit(Json{{"verified", all_ok}, {"count", sets.size()}, {"results", results}}, "", out);
    return all_ok ? kExitOk : kExitNegative;
}

inline int cmd_canon(const std::string &input, std::ostream &out)
{
    const auto sets = load_solution_file(input);
    std::set<std::pair<int, CanonicalKey>> keys;
    for (const auto &s : sets)
        keys.insert({s.dim().value(), canonical_form(s)});
    Json a = Json::array();
    for (const auto &[d, k] : keys)
        a.push_back(Json{{"dim", d}, {"vectors", masks_to_json(Dim(d), k.masks)}});
    emit(Json{{"input_count", sets.size()}, {"classes", keys.size()}, {"keys", a}}, "", out);
    return kExitOk;
}

} // namespace detail

inline int run_command(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Search tools for non-redundant integer cone generators over {0,1}^d", "nicg_lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    detail::ExactOptions exact;
    exact.common.threads = detail::env_threads();
    auto *s_exact = app.add_subcommand("exact", "compute N(d) by exhaustive search");
    detail::add_common(s_exact, exact.common, true);
    s_exact->add_option("--strategy", exact.strategy, "incremental|binary")
        ->check(CLI::IsMember({"incremental", "binary"}));
    s_exact->add_option("--checkpoint", exact.checkpoint, "checkpoint file (incremental strategy)");
    s_exact->add_option("--every", exact.every, "checkpoint cadence in nodes");
    s_exact->add_option("--resume", exact.resume, "resume from a checkpoint file");

    detail::ExistsOptions exists;
    exists.common.threads = detail::env_threads();
    auto *s_exists = app.add_subcommand("exists", "decide whether an NICG set of a given size exists");
    detail::add_common(s_exists, exists.common, true);
    s_exists->add_option("--size", exists.size, "target size k")->required()->check(CLI::PositiveNumber);
    s_exists->add_option("--restrict", exists.restrict_spec, "comp=J,bit=B (component J counted from 1)");

    detail::LowerOptions lower;
    auto *s_lower = app.add_subcommand("lower", "randomized search for large NICG sets");
    detail::add_common(s_lower, lower.common, true);
    s_lower->add_option("--seed", lower.seed, "PRNG seed")->required();
    s_lower->add_option("--budget-secs", lower.budget_secs, "time budget in seconds")->check(CLI::PositiveNumber);
    s_lower->add_option("--restart-nodes", lower.restart_nodes, "restart after this many nodes (0 = never)");
    s_lower->add_option("--stop-at", lower.stop_at, "stop once a set of this size is found");

    detail::UpperOptions upper;
    upper.common.threads = detail::env_threads();
    auto *s_upper = app.add_subcommand("upper", "upper bounds on N(d)");
    detail::add_common(s_upper, upper.common, true);
    s_upper->add_option("--method", upper.method, "inequality|decomposition")
        ->check(CLI::IsMember({"inequality", "decomposition"}));
    s_upper->add_option("--variant", upper.variant, "eisenbrand|two-d-log|venn-count|zero-row|two-zeros");
    s_upper->add_option("--prev", upper.prev, "upper bound on N(d-1) for the decomposition method");

    detail::TableOptions table;
    auto *s_table = app.add_subcommand("table", "per-dimension table of lower and upper bounds");
    s_table->add_option("--max-dim", table.max_dim, "largest dimension")->required()->check(CLI::Range(1, kMaxDim));
    s_table->add_option("--inputs", table.inputs, "JSON with exact values, decomposition bounds and witnesses");
    s_table->add_option("--format", table.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    s_table->add_option("--compute-exact", table.compute_exact, "run exact search for d up to this value")
        ->check(CLI::Range(0, 6));
    s_table->add_option("--out", table.out_path, "write output here instead of standard output");

    std::string verify_input;
    auto *s_verify = app.add_subcommand("verify", "re-check every witness in a file");
    s_verify->add_option("--input", verify_input, "solution file")->required();

    std::string canon_input;
    auto *s_canon = app.add_subcommand("canon", "canonical keys of the witnesses in a file");
    s_canon->add_option("--input", canon_input, "solution file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &e) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (*s_exact)
            return detail::cmd_exact(exact, out, err);
        if (*s_exists)
            return detail::cmd_exists(exists, out, err);
        if (*s_lower)
            return detail::cmd_lower(lower, out, err);
        if (*s_upper)
            return detail::cmd_upper(upper, out, err);
        if (*s_table)
            return detail::cmd_table(table, out, err);
        if (*s_verify)
            return detail::cmd_verify(verify_input, out, err);
        if (*s_canon)
            return detail::cmd_canon(canon_input, out);
    } catch (const InvalidInput &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Unsupported &e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Indeterminate &e) {
        err << "indeterminate: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

} // namespace nicg

#endif
