#ifndef NICG_BOUNDS_HPP
#define NICG_BOUNDS_HPP

// Upper bounds by decomposition and the assembled per-dimension bounds table.

#include <nicg/analytic.hpp>
#include <nicg/search.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nicg {

struct DecompositionResult {
    /// Largest NICG set whose members all have component 1 equal to 1.
    int restricted_max = 0;
    int bound = 0;
    SearchOutcome outcome;
};

/// N(d) <= n_prev + m, where n_prev bounds N(d-1) and m is the largest NICG set
/// with first component 1. A solution splits by its first component into a
/// (d-1)-dimensional NICG set and a restricted one, both NICG as subsets.
inline DecompositionResult decomposition_upper(Dim dim, int n_prev, SearchConfig cfg)
{
    if (dim.value() < 2)
        throw InvalidInput("decomposition needs d >= 2");
    if (n_prev < dim.value() - 1)
        throw InvalidInput("n_prev is below N(d-1) >= d-1 and cannot be an upper bound");
    cfg.dim = dim;
    cfg.mode = Mode::enumerate_all_max;
    cfg.restriction = Restriction{0, 1};
    cfg.witness_limit = std::min<std::size_t>(cfg.witness_limit, 16);
    DecompositionResult r;
    r.outcome = solve_dfs(cfg);
    if (!r.outcome.exact)
        throw Indeterminate("restricted search stopped on its budget; the restricted maximum is not proven");
    r.restricted_max = r.outcome.best_cardinality;
    r.bound = n_prev + r.restricted_max;
    return r;
}

struct BoundsRow {
    int d = 0;
    int lower = 0;
    int upper = 0;
    std::string lower_source;
    std::string upper_source;
    bool exact = false;
};

struct BoundsInputs {
    /// Exact values proven by exhaustive search.
    std::map<int, int> exact;
    /// Sizes of verified witnesses.
    std::map<int, int> witness_sizes;
    /// Decomposition upper bounds.
    std::map<int, int> decomposition;
};

using BoundsReport = std::vector<BoundsRow>;

inline BoundsReport bounds_table(int dmax, const BoundsInputs &in)
{
    if (dmax < 1)
        throw InvalidInput("table needs max dimension >= 1");
    std::map<int, int> known = in.exact;
    for (const auto &[d, n] : in.witness_sizes)
        known[d] = std::max(known[d], n);
    const auto chained = chain_lower(known, dmax);

    BoundsReport rows;
    for (int d = 1; d <= dmax; ++d) {
        BoundsRow row;
        row.d = d;
        row.lower = chained.at(d);
        if (auto it = in.exact.find(d); it != in.exact.end() && it->second == row.lower)
            row.lower_source = "exact-search";
        else if (auto w = in.witness_sizes.find(d); w != in.witness_sizes.end() && w->second == row.lower)
            row.lower_source = "witness";
        else if (row.lower == d)
            row.lower_source = "trivial";
        else
            row.lower_source = "chain";

        const auto analytic = best_analytic_upper(d);
        row.upper = analytic.value;
        row.upper_source = to_string(analytic.variant);
        if (auto it = in.decomposition.find(d); it != in.decomposition.end() && it->second < row.upper) {
            row.upper = it->second;
            row.upper_source = "decomposition";
        }
        if (auto it = in.exact.find(d); it != in.exact.end()) {
            row.upper = it->second;
            row.upper_source = "exact-search";
        }
        if (row.lower > row.upper)
            throw InvalidInput("inconsistent inputs for d = " + std::to_string(d) + ": lower "
                               + std::to_string(row.lower) + " exceeds upper " + std::to_string(row.upper));
        row.exact = row.lower == row.upper;
        rows.push_back(row);
    }
    return rows;
}

} // namespace nicg

#endif
