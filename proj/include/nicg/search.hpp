#ifndef NICG_SEARCH_HPP
#define NICG_SEARCH_HPP

// Depth-first search for NICG sets over the nonzero vectors of {0,1}^d.
//
// A frame holds a current NICG set X and walks the remaining candidates in
// order. For each candidate y it visits X ∪ {y} (descending into it when it is
// NICG) and then moves on with y excluded, which is the include/exclude
// recursion written as a loop. Subsets of NICG sets are NICG, so non-NICG
// states are never extended.
//
// Pruning:
//   weak       skip y when an earlier candidate of the same frame is
//              isomorphic to it under the permutations fixing every position
//              where X has a 1.
//   canonical  skip X ∪ {y} when its canonical key is already in the visited store.
//   buckets    as canonical, with keys bucketed by signature.
//
// With ascending candidate order both rules keep at least one member of every
// isomorphism class of NICG sets reachable. For the weak rule this rests on the
// positions holding a 1 in X always forming a low prefix {0..k-1}, which the
// ascending order guarantees (a restricted component is first moved to
// position 0). Shuffled order (randomized mode) gives no such guarantee;
// randomized runs are never exact.

#include <nicg/analytic.hpp>
#include <nicg/isomorphism.hpp>
#include <nicg/nicg.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace nicg {

enum class Mode { incremental_exact, binary_search, exists_at_size, randomized, enumerate_all_max };
enum class Prune { none, weak, canonical, buckets };

/// Members must have component `component` (0-based) equal to `value`.
struct Restriction {
    int component = 0;
    int value = 1;

    bool admits(Mask m) const { return static_cast<int>(bit(m, component)) == value; }
    bool operator==(const Restriction &) const = default;
};

struct Budget {
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> max_seconds;
};

struct SearchStats {
    std::uint64_t nodes_visited = 0;
    std::uint64_t nicg_tests = 0;
    std::uint64_t pruned_weak = 0;
    std::uint64_t pruned_canonical = 0;
    std::uint64_t solutions_found = 0;
    std::uint64_t restarts = 0;
    double elapsed_ms = 0;
    std::string prng_name;
    std::uint64_t seed = 0;

    void merge_counters(const SearchStats &o)
    {
        nodes_visited += o.nodes_visited;
        nicg_tests += o.nicg_tests;
        pruned_weak += o.pruned_weak;
        pruned_canonical += o.pruned_canonical;
        solutions_found += o.solutions_found;
        restarts += o.restarts;
        elapsed_ms += o.elapsed_ms;
    }
};

/// One open DFS frame: its current set and the position of the next candidate
/// in the universe (ascending order).
struct Frame {
    std::vector<Mask> prefix;
    std::size_t next = 0;

    bool operator==(const Frame &) const = default;
};

/// Everything needed to continue an interrupted deterministic run.
struct SearchSnapshot {
    std::vector<Frame> frontier;
    SearchStats stats;
    int best = 0;
    std::uint64_t best_count = 0;
    std::vector<std::vector<Mask>> witnesses;
    std::vector<CanonicalKey> visited;
    bool visited_full = false;
    // Driver bookkeeping (incremental exact search): the size being probed and
    // the witness of the previous size, and counters from the finished sizes.
    int stage = 0;
    std::vector<std::vector<Mask>> stage_witnesses;
    SearchStats stage_stats;
};

struct SearchConfig {
    Dim dim;
    Mode mode = Mode::enumerate_all_max;
    Prune prune = Prune::weak;
    NicgTest nicg_test = NicgTest::gauss;
    std::optional<Restriction> restriction;
    std::uint64_t seed = 0;
    Budget budget;

    /// Size sought by exists-at-size.
    std::optional<int> target_size;
    /// Randomized mode: restart with a fresh shuffle after this many nodes (0 = never).
    std::uint64_t restart_nodes = 0;
    /// Randomized mode: stop once a witness of this size is found.
    std::optional<int> stop_at_size;

    std::size_t visited_capacity = std::size_t{1} << 24;
    std::size_t witness_limit = 100000;
    bool verify_witnesses = true;
    int threads = 1;
    int max_enumerate_dim = 6;

    /// Binary search interval override.
    std::optional<int> lo;
    std::optional<int> hi;

    std::uint64_t checkpoint_every = 0;
    std::function<void(const SearchSnapshot &)> on_checkpoint;
    bool checkpoint_on_stop = true;
    std::optional<SearchSnapshot> resume;
};

struct SearchOutcome {
    int best_cardinality = 0;
    std::vector<VecSet> witnesses;
    /// Number of NICG sets of the best size met (witnesses may be capped).
    std::uint64_t best_count = 0;
    bool exact = false;
    SearchStats stats;
};

inline const char *to_string(Prune p)
{
    switch (p) {
    case Prune::none: return "none";
    case Prune::weak: return "weak";
    case Prune::canonical: return "canonical";
    case Prune::buckets: return "buckets";
    }
    return "?";
}

inline const char *to_string(Mode m)
{
    switch (m) {
    case Mode::incremental_exact: return "incremental-exact";
    case Mode::binary_search: return "binary-search";
    case Mode::exists_at_size: return "exists-at-size";
    case Mode::randomized: return "randomized";
    case Mode::enumerate_all_max: return "enumerate-all-max";
    }
    return "?";
}

inline constexpr const char *kPrngName = "mt19937_64";

namespace detail {

/// Unbiased index in [0, n) by rejection.
inline std::size_t uniform_index(std::mt19937_64 &rng, std::size_t n)
{
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % range);
}

inline void shuffle(std::vector<Mask> &v, std::mt19937_64 &rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

/// Swaps component 0 with the restricted component so the engine always sees
/// restrictions on position 0.
inline std::vector<int> restriction_swap(Dim dim, const std::optional<Restriction> &r)
{
    std::vector<int> image(static_cast<std::size_t>(dim.value()));
    std::iota(image.begin(), image.end(), 0);
    if (r && r->component != 0)
        std::swap(image[0], image[static_cast<std::size_t>(r->component)]);
    return image;
}

inline std::vector<Mask> build_universe(Dim dim, const std::optional<Restriction> &r)
{
    std::vector<Mask> u;
    for (Mask m = 1; m <= dim.full_mask(); ++m)
        if (!r || static_cast<int>(bit(m, 0)) == r->value)
            u.push_back(m);
    return u;
}

/// Tracks which weak classes a frame has already tried.
class TriedClasses {
public:
    void init(int d, std::size_t depth_capacity)
    {
        d_ = d;
        use_stamps_ = d <= 12;
        if (use_stamps_) {
            per_depth_ = (std::size_t{1} << d) * static_cast<std::size_t>(d + 1);
            stamps_.assign(per_depth_ * depth_capacity, 0);
        } else {
            lists_.assign(depth_capacity, {});
        }
        ids_.assign(depth_capacity, 0);
    }

    void open(std::size_t depth)
    {
        ids_[depth] = ++counter_;
        if (!use_stamps_)
            lists_[depth].clear();
    }

    /// Marks the class; returns false when it was already tried.
    bool mark(std::size_t depth, Mask y, Mask fixed)
    {
        const std::uint64_t key = (static_cast<std::uint64_t>(y & fixed) << 5) | static_cast<std::uint64_t>(popcount(y));
        if (use_stamps_) {
            auto &s = stamps_[depth * per_depth_ + static_cast<std::size_t>(y & fixed) * static_cast<std::size_t>(d_ + 1)
                              + static_cast<std::size_t>(popcount(y))];
            if (s == ids_[depth])
                return false;
            s = ids_[depth];
            return true;
        }
        auto &l = lists_[depth];
        if (std::find(l.begin(), l.end(), key) != l.end())
            return false;
        l.push_back(key);
        return true;
    }

private:
    int d_ = 0;
    bool use_stamps_ = true;
    std::size_t per_depth_ = 0;
    std::uint64_t counter_ = 0;
    std::vector<std::uint64_t> stamps_;
    std::vector<std::uint64_t> ids_;
    std::vector<std::vector<std::uint64_t>> lists_;
};

/// The DFS proper, over an internal coordinate system where any restriction
/// sits on position 0.
class Engine {
public:
    explicit Engine(const SearchConfig &cfg) : cfg_(cfg), d_(cfg.dim.value())
    {
        if (cfg.restriction) {
            if (cfg.restriction->component < 0 || cfg.restriction->component >= d_)
                throw InvalidInput("restricted component out of range");
            if (cfg.restriction->value != 0 && cfg.restriction->value != 1)
                throw InvalidInput("restricted bit must be 0 or 1");
        }
        swap_ = restriction_swap(cfg.dim, cfg.restriction);
        universe_ = build_universe(cfg.dim, cfg.restriction);
        root_fixed_ = cfg.restriction ? Mask{1} : Mask{0};
        if (cfg.mode == Mode::exists_at_size) {
            if (!cfg.target_size || *cfg.target_size < 1)
                throw InvalidInput("exists-at-size needs a target size >= 1");
            target_ = *cfg.target_size;
        }
        randomized_ = cfg.mode == Mode::randomized;
        if (cfg.prune == Prune::canonical || cfg.prune == Prune::buckets) {
            if (d_ > kMaxCanonicalDim)
                throw Unsupported("canonical pruning needs d <= " + std::to_string(kMaxCanonicalDim));
            store_.emplace(cfg.visited_capacity, cfg.prune == Prune::buckets);
        }
        rng_.seed(cfg.seed);
        // NICG sets never exceed the closed-form bound, which caps the DFS depth.
        tried_.init(d_, std::min<std::size_t>(universe_.size(), static_cast<std::size_t>(best_analytic_upper(d_).value)) + 2);
        stats_.prng_name = randomized_ ? kPrngName : "";
        stats_.seed = cfg.seed;
    }

    /// Runs from the root, or from `start` frames when given (parallel tasks).
    SearchOutcome run(const std::vector<Frame> *start = nullptr)
    {
        const auto t0 = std::chrono::steady_clock::now();
        start_ = t0;
        double carried_ms = 0;
        if (cfg_.resume && !randomized_) {
            restore(*cfg_.resume);
            carried_ms = cfg_.resume->stats.elapsed_ms;
        } else if (start != nullptr) {
            for (const auto &f : *start)
                push_frame(to_internal(f.prefix), f.next, true);
        } else {
            reset_root();
        }

        bool complete = loop();

        SearchOutcome out;
        out.best_cardinality = best_;
        out.best_count = best_count_;
        out.exact = complete && !randomized_;
        stats_.elapsed_ms = carried_ms
                            + std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (const auto &w : witnesses_)
            out.witnesses.push_back(VecSet(cfg_.dim, to_external(w)));
        out.stats = stats_;
        if (cfg_.verify_witnesses)
            for (const auto &w : out.witnesses)
                if (!is_nicg_removal(w))
                    throw std::logic_error("search produced a witness rejected by the removal test");
        return out;
    }

    /// Root-level frames for fan-out: one per root candidate that survives
    /// pruning and the NICG test, in candidate order.
    std::vector<std::vector<Frame>> split_root()
    {
        std::vector<std::vector<Frame>> tasks;
        tried_.open(0);
        for (std::size_t i = 0; i < universe_.size(); ++i) {
            const Mask y = universe_[i];
            if (cfg_.prune == Prune::weak && !tried_.mark(0, y, root_fixed_))
                continue;
            tasks.push_back({Frame{to_external({y}), i + 1}});
        }
        return tasks;
    }

    const SearchStats &stats() const { return stats_; }

private:
    struct Node {
        std::vector<Mask> set;
        Mask fixed = 0;
        std::size_t next = 0;
        // randomized mode: explicit shuffled candidates
        std::vector<Mask> cands;
    };

    std::vector<Mask> to_internal(const std::vector<Mask> &ext) const
    {
        std::vector<Mask> out;
        for (Mask m : ext)
            out.push_back(permute_mask(swap_, m));
        return out;
    }

    std::vector<Mask> to_external(const std::vector<Mask> &in) const
    {
        std::vector<Mask> out;
        for (Mask m : in)
            out.push_back(permute_mask(swap_, m)); // the swap is an involution
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t universe_index_after(Mask m) const
    {
        return static_cast<std::size_t>(std::upper_bound(universe_.begin(), universe_.end(), m) - universe_.begin());
    }

    void push_frame(std::vector<Mask> set, std::size_t next, bool replay_tried)
    {
        Node n;
        n.fixed = root_fixed_;
        for (Mask m : set)
            n.fixed |= m;
        n.set = std::move(set);
        n.next = next;
        stack_.push_back(std::move(n));
        const std::size_t depth = stack_.size() - 1;
        tried_.open(depth);
        if (replay_tried && cfg_.prune == Prune::weak) {
            const Node &top = stack_.back();
            const std::size_t first = top.set.empty() ? 0 : universe_index_after(top.set.back());
            for (std::size_t i = first; i < top.next; ++i)
                tried_.mark(depth, universe_[i], top.fixed);
        }
    }

    void reset_root()
    {
        stack_.clear();
        if (randomized_) {
            Node n;
            n.fixed = root_fixed_;
            n.cands = universe_;
            shuffle(n.cands, rng_);
            stack_.push_back(std::move(n));
            tried_.open(0);
        } else {
            push_frame({}, 0, false);
        }
    }

    void restore(const SearchSnapshot &s)
    {
        stack_.clear();
        for (const auto &f : s.frontier)
            push_frame(to_internal(f.prefix), f.next, true);
        stats_ = s.stats;
        best_ = s.best;
        best_count_ = s.best_count;
        witnesses_.clear();
        for (const auto &w : s.witnesses)
            witnesses_.push_back(to_internal(w));
        if (store_) {
            for (const auto &k : s.visited) {
                std::optional<SignatureKey> sig;
                if (store_->bucketed())
                    sig = signature_key(VecSet(cfg_.dim, k.masks));
                store_->insert_if_absent(k, sig ? &*sig : nullptr);
            }
            store_full_ = s.visited_full;
        }
    }

public:
    SearchSnapshot snapshot() const
    {
        SearchSnapshot s;
        for (const auto &n : stack_) {
            std::vector<Mask> ext;
            for (Mask m : n.set)
                ext.push_back(permute_mask(swap_, m));
            s.frontier.push_back(Frame{std::move(ext), n.next});
        }
        s.stats = stats_;
        s.stats.elapsed_ms = (cfg_.resume ? cfg_.resume->stats.elapsed_ms : 0)
                             + std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        s.best = best_;
        s.best_count = best_count_;
        for (const auto &w : witnesses_)
            s.witnesses.push_back(to_external(w));
        if (store_) {
            s.visited = store_->keys();
            std::sort(s.visited.begin(), s.visited.end());
            s.visited_full = store_full_;
        }
        return s;
    }

private:
    bool budget_exhausted()
    {
        if (cfg_.budget.max_nodes && stats_.nodes_visited >= *cfg_.budget.max_nodes)
            return true;
        if (cfg_.budget.max_seconds && (stats_.nodes_visited & 0x3ff) == 0) {
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (s >= *cfg_.budget.max_seconds)
                timed_out_ = true;
        }
        return timed_out_;
    }

    void record(const std::vector<Mask> &set)
    {
        const int size = static_cast<int>(set.size());
        if (size > best_) {
            best_ = size;
            best_count_ = 0;
            witnesses_.clear();
        }
        if (size == best_) {
            ++best_count_;
            if (witnesses_.size() < cfg_.witness_limit) {
                auto w = set;
                std::sort(w.begin(), w.end());
                witnesses_.push_back(std::move(w));
            }
        }
    }

    bool test_nicg(const std::vector<Mask> &set)
    {
        ++stats_.nicg_tests;
        if (cfg_.nicg_test == NicgTest::gauss)
            return gauss_(set, cfg_.dim);
        return is_nicg_removal(set, cfg_.dim);
    }

    std::size_t remaining(const Node &n) const
    {
        return randomized_ ? n.cands.size() - n.next : universe_.size() - n.next;
    }

    /// Returns true when the space was exhausted (or the target found).
    bool loop()
    {
        std::vector<Mask> cand_set;
        std::uint64_t since_restart = 0;
        while (!stack_.empty()) {
            if (cfg_.checkpoint_every > 0 && cfg_.on_checkpoint && !randomized_
                && stats_.nodes_visited >= next_checkpoint_) {
                if (next_checkpoint_ > 0)
                    cfg_.on_checkpoint(snapshot());
                next_checkpoint_ = (stats_.nodes_visited / cfg_.checkpoint_every + 1) * cfg_.checkpoint_every;
            }
            if (budget_exhausted()) {
                if (cfg_.on_checkpoint && cfg_.checkpoint_on_stop && !randomized_)
                    cfg_.on_checkpoint(snapshot());
                return false;
            }
            if (randomized_ && cfg_.restart_nodes > 0 && since_restart >= cfg_.restart_nodes) {
                since_restart = 0;
                ++stats_.restarts;
                reset_root();
                continue;
            }

            const std::size_t depth = stack_.size() - 1;
            Node &top = stack_.back();
            const std::size_t rem = remaining(top);
            const std::size_t have = top.set.size();
            if (rem == 0) {
                stack_.pop_back();
                continue;
            }
            if (target_ > 0) {
                if (have + rem < static_cast<std::size_t>(target_)) {
                    stack_.pop_back();
                    continue;
                }
            } else if (randomized_ ? have + rem <= static_cast<std::size_t>(best_)
                                   : have + rem < static_cast<std::size_t>(best_)) {
                stack_.pop_back();
                continue;
            }

            const Mask y = randomized_ ? top.cands[top.next] : universe_[top.next];
            ++top.next;

            if (cfg_.prune == Prune::weak && !tried_.mark(depth, y, top.fixed)) {
                ++stats_.pruned_weak;
                continue;
            }

            ++stats_.nodes_visited;
            ++since_restart;
            cand_set = top.set;
            cand_set.push_back(y);

            if (store_ && !store_full_) {
                std::vector<Mask> sorted = cand_set;
                std::sort(sorted.begin(), sorted.end());
                const auto key = canonical_of_masks(cfg_.dim, sorted);
                std::optional<SignatureKey> sig;
                if (store_->bucketed())
                    sig = signature_key(VecSet(cfg_.dim, sorted));
                switch (store_->insert_if_absent(key, sig ? &*sig : nullptr)) {
                case VisitedStore::Insert::present:
                    ++stats_.pruned_canonical;
                    continue;
                case VisitedStore::Insert::full:
                    // Stop recording; keys already stored keep pruning soundly.
                    store_full_ = true;
                    break;
                case VisitedStore::Insert::inserted:
                    break;
                }
            } else if (store_) {
                std::vector<Mask> sorted = cand_set;
                std::sort(sorted.begin(), sorted.end());
                const auto key = canonical_of_masks(cfg_.dim, sorted);
                std::optional<SignatureKey> sig;
                if (store_->bucketed())
                    sig = signature_key(VecSet(cfg_.dim, sorted));
                if (store_->contains(key, sig ? &*sig : nullptr)) {
                    ++stats_.pruned_canonical;
                    continue;
                }
            }

            if (!test_nicg(cand_set))
                continue;
            ++stats_.solutions_found;
            record(cand_set);

            const int size = static_cast<int>(cand_set.size());
            if (target_ > 0 && size >= target_)
                return true;
            if (randomized_ && cfg_.stop_at_size && size >= *cfg_.stop_at_size)
                return false;

            if (randomized_) {
                Node child;
                child.set = cand_set;
                child.fixed = top.fixed | y;
                child.cands.assign(top.cands.begin() + static_cast<std::ptrdiff_t>(top.next), top.cands.end());
                shuffle(child.cands, rng_);
                stack_.push_back(std::move(child));
                tried_.open(stack_.size() - 1);
            } else {
                const std::size_t next = top.next;
                push_frame(cand_set, next, false);
            }
        }
        return true;
    }

    const SearchConfig &cfg_;
    int d_;
    std::vector<int> swap_;
    std::vector<Mask> universe_;
    Mask root_fixed_ = 0;
    int target_ = 0;
    bool randomized_ = false;
    std::optional<VisitedStore> store_;
    bool store_full_ = false;
    std::mt19937_64 rng_;
    TriedClasses tried_;
    GaussNicgChecker gauss_;
    std::vector<Node> stack_;
    SearchStats stats_;
    int best_ = 0;
    std::uint64_t best_count_ = 0;
    std::vector<std::vector<Mask>> witnesses_;
    std::chrono::steady_clock::time_point start_;
    bool timed_out_ = false;
    std::uint64_t next_checkpoint_ = 0;
};

inline SearchOutcome merge_outcomes(std::vector<SearchOutcome> parts, const SearchConfig &cfg)
{
    SearchOutcome out;
    out.exact = true;
    for (const auto &p : parts)
        out.best_cardinality = std::max(out.best_cardinality, p.best_cardinality);
    for (auto &p : parts) {
        out.exact = out.exact && p.exact;
        out.stats.merge_counters(p.stats);
        if (p.best_cardinality != out.best_cardinality || out.best_cardinality == 0)
            continue;
        out.best_count += p.best_count;
        for (auto &w : p.witnesses)
            if (out.witnesses.size() < cfg.witness_limit)
                out.witnesses.push_back(std::move(w));
    }
    out.stats.seed = cfg.seed;
    return out;
}

} // namespace detail

/// Runs one DFS according to `cfg.mode`: exists-at-size stops at the first
/// set of the target size, randomized shuffles candidates at every frame, and
/// every other mode searches for the maximum cardinality and collects all
/// witnesses of that size.
inline SearchOutcome solve_dfs(const SearchConfig &cfg)
{
    if (cfg.threads <= 1 || cfg.mode == Mode::randomized || cfg.resume || cfg.on_checkpoint) {
        detail::Engine engine(cfg);
        return engine.run();
    }
    // Fan out over root candidates; each task has its own visited store.
    detail::Engine splitter(cfg);
    const auto tasks = splitter.split_root();
    std::vector<SearchOutcome> parts(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            try {
                detail::Engine e(cfg);
                parts[i] = e.run(&tasks[i]);
            } catch (...) {
                std::lock_guard lock(err_mu);
                err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < cfg.threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
    if (cfg.mode == Mode::exists_at_size) {
        // Any task that found the target decides the answer; take the first in task order.
        for (auto &p : parts)
            if (p.best_cardinality >= *cfg.target_size) {
                SearchOutcome out = detail::merge_outcomes(parts, cfg);
                out.witnesses = {p.witnesses.front()};
                out.exact = true;
                return out;
            }
    }
    return detail::merge_outcomes(std::move(parts), cfg);
}

struct ExistsResult {
    std::optional<VecSet> witness;
    SearchOutcome outcome;
};

/// A size-k NICG set, if one exists under the configured restriction.
inline ExistsResult exists_nicg(Dim dim, int k, SearchConfig cfg)
{
    cfg.dim = dim;
    cfg.mode = Mode::exists_at_size;
    cfg.target_size = k;
    const Mask universe = dim.universe_size();
    if (k < 1 || static_cast<Mask>(k) > universe)
        throw InvalidInput("size must be in 1..2^d-1");
    ExistsResult r;
    r.outcome = solve_dfs(cfg);
    if (r.outcome.best_cardinality >= k) {
        r.witness = r.outcome.witnesses.front();
        return r;
    }
    if (!r.outcome.exact)
        throw Indeterminate("budget exhausted before deciding whether a size-" + std::to_string(k) + " set exists");
    return r;
}

struct ExactResult {
    int n = 0;
    std::vector<VecSet> witnesses;
    /// Sizes probed, in order.
    std::vector<int> probes;
    SearchStats stats;
};

/// Grows the target size from 1 until no NICG set of that size exists.
inline ExactResult exact_n(Dim dim, SearchConfig cfg)
{
    cfg.dim = dim;
    ExactResult res;
    res.stats.seed = cfg.seed;
    int n = 1;
    std::optional<SearchSnapshot> resume = cfg.resume;
    if (resume) {
        n = std::max(1, resume->stage);
        for (const auto &w : resume->stage_witnesses)
            res.witnesses.push_back(VecSet(dim, w));
        res.n = n - 1;
        for (int k = 1; k < n; ++k)
            res.probes.push_back(k);
        res.stats.merge_counters(resume->stage_stats);
    }
    auto user_sink = cfg.on_checkpoint;
    for (;; ++n) {
        if (static_cast<Mask>(n) > dim.universe_size()) {
            res.n = n - 1;
            return res;
        }
        SearchConfig stage = cfg;
        stage.resume = (resume && resume->stage == n) ? resume : std::nullopt;
        if (user_sink) {
            std::vector<std::vector<Mask>> prev;
            for (const auto &w : res.witnesses)
                prev.push_back(w.masks());
            stage.on_checkpoint = [user_sink, n, prev, done = res.stats](const SearchSnapshot &s) {
                SearchSnapshot copy = s;
                copy.stage = n;
                copy.stage_witnesses = prev;
                copy.stage_stats = done;
                user_sink(copy);
            };
        }
        res.probes.push_back(n);
        auto r = exists_nicg(dim, n, stage);
        res.stats.merge_counters(r.outcome.stats);
        if (!r.witness) {
            res.n = n - 1;
            return res;
        }
        res.witnesses = {*r.witness};
        res.n = n;
    }
}

/// Default interval for the binary search: N(d) >= d (and > d from d = 4 on)
/// below, the tightest closed-form bound above.
inline int default_lower(Dim dim) { return dim.value() >= 4 ? dim.value() + 1 : dim.value(); }
inline int default_upper(Dim dim) { return best_analytic_upper(dim.value()).value; }

/// Bisects [lo, hi] with existence probes; lo must be a known lower bound.
/// The probe is floor((lo+hi)/2), raised to lo+1 when it would repeat lo.
inline ExactResult binary_search_n(Dim dim, SearchConfig cfg)
{
    cfg.dim = dim;
    int lo = cfg.lo.value_or(default_lower(dim));
    int hi = cfg.hi.value_or(default_upper(dim));
    if (lo > hi)
        throw InvalidInput("empty search interval");
    ExactResult res;
    res.stats.seed = cfg.seed;
    cfg.resume.reset();
    cfg.on_checkpoint = nullptr;
    while (lo < hi) {
        const int m = std::max((lo + hi) / 2, lo + 1);
        res.probes.push_back(m);
        auto r = exists_nicg(dim, m, cfg);
        res.stats.merge_counters(r.outcome.stats);
        if (r.witness) {
            lo = m;
            res.witnesses = {*r.witness};
        } else {
            hi = m - 1;
        }
    }
    // Witnesses are present only when lo itself was probed.
    res.n = lo;
    return res;
}

/// Randomized-order DFS for lower bounds. Never exact.
inline SearchOutcome randomized_search(Dim dim, std::uint64_t seed, Budget budget, SearchConfig cfg)
{
    cfg.dim = dim;
    cfg.mode = Mode::randomized;
    cfg.seed = seed;
    cfg.budget = budget;
    cfg.threads = 1;
    return solve_dfs(cfg);
}

struct Census {
    int cardinality = 0;
    std::vector<CanonicalKey> classes;
    SearchOutcome outcome;
};

/// All NICG sets of maximum cardinality, one canonical key per isomorphism class.
inline Census enumerate_all_max_solutions(Dim dim, SearchConfig cfg)
{
    if (dim.value() > cfg.max_enumerate_dim)
        throw Unsupported("enumeration of all maximum solutions is limited to d <= "
                          + std::to_string(cfg.max_enumerate_dim));
    cfg.dim = dim;
    cfg.mode = Mode::enumerate_all_max;
    cfg.witness_limit = std::numeric_limits<std::size_t>::max();
    Census c;
    c.outcome = solve_dfs(cfg);
    if (!c.outcome.exact)
        throw Indeterminate("budget exhausted before the enumeration finished");
    c.cardinality = c.outcome.best_cardinality;
    std::set<CanonicalKey> keys;
    for (const auto &w : c.outcome.witnesses)
        keys.insert(canonical_form(w));
    c.classes.assign(keys.begin(), keys.end());
    return c;
}

} // namespace nicg

#endif
