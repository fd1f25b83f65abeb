#ifndef NICG_ANALYTIC_HPP
#define NICG_ANALYTIC_HPP

// Closed-form bounds on N(d), evaluated with exact integers.

#include <nicg/core.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>

namespace nicg {

enum class BoundVariant {
    eisenbrand, // N <= 2d log2(4d)           (integer cone sparsity, max entry 1)
    two_d_log,  // N <= 2d log2(d)            (nonnegative generators), d >= 2
    venn_count, // 2^N <= (N+1)^d
    zero_row,   // 2^N <= N^d                 (every row of a normalized matrix has a 0), d >= 2
    two_zeros,  // 2^N <= N^(d-1) (N-1)       (some row has two 0s), d >= 5
};

inline constexpr std::array<BoundVariant, 5> kAllBoundVariants = {
    BoundVariant::eisenbrand, BoundVariant::two_d_log, BoundVariant::venn_count, BoundVariant::zero_row,
    BoundVariant::two_zeros};

inline const char *to_string(BoundVariant v)
{
    switch (v) {
    case BoundVariant::eisenbrand: return "eisenbrand";
    case BoundVariant::two_d_log: return "two-d-log";
    case BoundVariant::venn_count: return "venn-count";
    case BoundVariant::zero_row: return "zero-row";
    case BoundVariant::two_zeros: return "two-zeros";
    }
    return "?";
}

inline std::optional<BoundVariant> parse_bound_variant(const std::string &s)
{
    for (auto v : kAllBoundVariants)
        if (s == to_string(v))
            return v;
    return std::nullopt;
}

inline bool variant_applies(BoundVariant v, int d)
{
    switch (v) {
    case BoundVariant::two_d_log:
    case BoundVariant::zero_row: return d >= 2;
    case BoundVariant::two_zeros: return d >= 5;
    default: return d >= 1;
    }
}

namespace detail {

inline BigInt ipow(BigInt base, unsigned e) { return boost::multiprecision::pow(base, e); }

/// Whether N satisfies the variant's inequality.
inline bool bound_holds(BoundVariant v, int d, int n)
{
    const BigInt lhs = ipow(2, static_cast<unsigned>(n));
    const unsigned ud = static_cast<unsigned>(d);
    switch (v) {
    case BoundVariant::eisenbrand:
        // N <= 2d log2(4d)  <=>  2^N <= (4d)^(2d)
        return lhs <= ipow(BigInt(4 * d), 2 * ud);
    case BoundVariant::two_d_log:
        return lhs <= ipow(BigInt(d), 2 * ud);
    case BoundVariant::venn_count:
        return lhs <= ipow(BigInt(n + 1), ud);
    case BoundVariant::zero_row:
        return lhs <= ipow(BigInt(n), ud);
    case BoundVariant::two_zeros:
        return lhs <= ipow(BigInt(n), ud - 1) * (n - 1);
    }
    return false;
}

} // namespace detail

/// Largest N satisfying the variant, scanning upward from N = d.
inline int analytic_upper(int d, BoundVariant v)
{
    if (d < 1)
        throw InvalidInput("dimension must be positive");
    if (!variant_applies(v, d))
        throw Unsupported(std::string("bound variant ") + to_string(v) + " does not apply to d = " + std::to_string(d));
    int n = d;
    while (detail::bound_holds(v, d, n))
        ++n;
    return n - 1;
}

struct UpperBound {
    int value = 0;
    BoundVariant variant = BoundVariant::venn_count;
};

/// Tightest applicable closed-form bound; ties go to the later variant.
inline UpperBound best_analytic_upper(int d)
{
    std::optional<UpperBound> best;
    for (auto v : kAllBoundVariants) {
        if (!variant_applies(v, d))
            continue;
        const int u = analytic_upper(d, v);
        if (!best || u <= best->value)
            best = UpperBound{u, v};
    }
    return *best;
}

/// Lower bounds for d = 1..dmax from N(d) >= d and N(d+1) >= N(d) + 1.
inline std::map<int, int> chain_lower(const std::map<int, int> &known, int dmax)
{
    std::map<int, int> out;
    int prev = 0;
    for (int d = 1; d <= dmax; ++d) {
        int v = std::max(d, prev + 1);
        if (auto it = known.find(d); it != known.end())
            v = std::max(v, it->second);
        out[d] = v;
        prev = v;
    }
    return out;
}

} // namespace nicg

#endif
