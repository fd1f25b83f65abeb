#ifndef NICG_TESTS_SUPPORT_HPP
#define NICG_TESTS_SUPPORT_HPP

#include <nicg/nicg.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace nicg::fixtures {

/// Reference witnesses for d = 1..6, rows are components, columns are vectors.
inline const std::vector<std::vector<std::vector<int>>> &reference_witness_rows()
{
    static const std::vector<std::vector<std::vector<int>>> rows = {
        {{1}},
        {{1, 1}, {0, 1}},
        {{1, 1, 1}, {1, 0, 1}, {0, 1, 1}},
        {{1, 1, 1, 1, 0}, {1, 1, 1, 0, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 1, 1}},
        {{1, 1, 1, 1, 0, 0, 1},
         {1, 1, 0, 0, 1, 1, 1},
         {0, 1, 1, 1, 1, 0, 0},
         {0, 0, 1, 0, 0, 1, 1},
         {0, 0, 0, 1, 1, 1, 1}},
        {{1, 1, 1, 1, 0, 0, 1, 1, 1},
         {1, 1, 1, 0, 1, 1, 0, 1, 1},
         {0, 1, 0, 1, 1, 0, 0, 0, 1},
         {0, 0, 1, 1, 0, 1, 0, 1, 0},
         {0, 0, 0, 0, 1, 0, 1, 1, 0},
         {0, 0, 0, 0, 0, 1, 1, 0, 1}},
    };
    return rows;
}

inline VecSet reference_witness(int d) { return MatrixView::from_rows(reference_witness_rows().at(static_cast<std::size_t>(d - 1))).to_set(); }

/// Columns of the seven-row membership system with right-hand side (100,30,30,30,20,20,20).
inline std::vector<std::vector<int>> venn_system_rows()
{
    return {{1, 1, 1, 1, 1, 1, 1, 1}, {0, 0, 1, 1, 1, 1, 1, 1}, {0, 1, 0, 1, 1, 1, 1, 1},
            {0, 1, 1, 1, 0, 1, 1, 1}, {0, 0, 0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 0, 0, 1, 1},
            {0, 1, 0, 1, 0, 1, 0, 1}};
}

/// Every subset of the nonzero vectors of {0,1}^d, as sorted mask lists.
inline std::vector<std::vector<Mask>> all_subsets(Dim dim)
{
    const Mask u = dim.universe_size();
    std::vector<std::vector<Mask>> out;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << u); ++pick) {
        std::vector<Mask> s;
        for (Mask m = 1; m <= u; ++m)
            if ((pick >> (m - 1)) & 1U)
                s.push_back(m);
        out.push_back(std::move(s));
    }
    return out;
}

/// Random subset: size uniform in [1, max_size], members uniform without replacement.
inline VecSet random_set(Dim dim, std::mt19937_64 &rng, int max_size)
{
    std::vector<Mask> pool;
    for (Mask m = 1; m <= dim.universe_size(); ++m)
        pool.push_back(m);
    std::shuffle(pool.begin(), pool.end(), rng);
    const int cap = std::min<int>(max_size, static_cast<int>(pool.size()));
    std::uniform_int_distribution<int> size_dist(1, cap);
    pool.resize(static_cast<std::size_t>(size_dist(rng)));
    return VecSet(dim, pool);
}

inline Permutation random_perm(Dim dim, std::mt19937_64 &rng)
{
    std::vector<int> image(static_cast<std::size_t>(dim.value()));
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    return Permutation(image);
}

/// Brute force: all lambda in [0, bound]^n with M lambda = b.
inline std::vector<std::vector<int>> brute_solutions(const std::vector<Mask> &cols, Dim dim, const std::vector<int> &b,
                                                     int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> lam(cols.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == cols.size()) {
            std::vector<int> s(static_cast<std::size_t>(dim.value()), 0);
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (int r = 0; r < dim.value(); ++r)
                    if (bit(cols[c], r))
                        s[static_cast<std::size_t>(r)] += lam[c];
            if (s == b)
                out.push_back(lam);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            lam[i] = v;
            rec(i + 1);
        }
        lam[i] = 0;
    };
    rec(0);
    return out;
}

/// Brute-force NICG: the all-ones vector is the only solution of M lambda = sum(X).
inline bool brute_nicg(const VecSet &x)
{
    if (x.empty())
        return true;
    const auto b = sum_set(x).counts;
    const int bound = *std::max_element(b.begin(), b.end());
    const auto sols = brute_solutions(x.masks(), x.dim(), b, bound);
    return sols.size() == 1;
}

inline bool certificate_matches(const std::vector<Mask> &cols, Dim dim, const std::vector<int> &lam, const std::vector<int> &b)
{
    std::vector<int> s(static_cast<std::size_t>(dim.value()), 0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (lam[c] < 0)
            return false;
        for (int r = 0; r < dim.value(); ++r)
            if (bit(cols[c], r))
                s[static_cast<std::size_t>(r)] += lam[c];
    }
    return s == b;
}

} // namespace nicg::fixtures

#endif
