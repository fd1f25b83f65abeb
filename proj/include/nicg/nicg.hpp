#ifndef NICG_NICG_HPP
#define NICG_NICG_HPP

// Non-redundancy tests for generator sets.
//
// X is non-redundant (NICG) when ΣX leaves int_cone(X \ {x}) for every member
// x. Two independent deciders are provided: the removal test built on
// in_int_cone, and exact elimination of M λ = ΣX followed by enumeration of the
// free parameters. The all-ones vector always solves M λ = ΣX, so X is NICG iff
// it is the only nonnegative integer solution.

#include <nicg/cone.hpp>
#include <nicg/core.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace nicg {

/// Dense d × |X| integer matrix; column j is generator j.
class MatrixView {
public:
    MatrixView() = default;
    MatrixView(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows * cols), 0)
    {
        if (rows < 0 || cols < 0)
            throw InvalidInput("matrix shape must be nonnegative");
    }

    static MatrixView from_masks(Dim dim, std::span<const Mask> columns)
    {
        MatrixView m(dim.value(), static_cast<int>(columns.size()));
        for (int j = 0; j < m.cols_; ++j)
            for (int i = 0; i < m.rows_; ++i)
                m.at(i, j) = bit(columns[static_cast<std::size_t>(j)], i) ? 1 : 0;
        return m;
    }

    static MatrixView from_set(const VecSet &x) { return from_masks(x.dim(), x.masks()); }

    /// Row-major literal, as matrices are usually printed.
    static MatrixView from_rows(const std::vector<std::vector<int>> &rows)
    {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
        MatrixView m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
                throw InvalidInput("ragged matrix rows");
            for (int j = 0; j < c; ++j)
                m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int &at(int i, int j) { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }
    int at(int i, int j) const { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }

    bool is_binary() const
    {
        return std::all_of(cells_.begin(), cells_.end(), [](int v) { return v == 0 || v == 1; });
    }

    std::vector<Mask> column_masks() const
    {
        if (!is_binary())
            throw InvalidInput("matrix is not 0/1");
        std::vector<Mask> out(static_cast<std::size_t>(cols_), 0);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i)
                if (at(i, j) != 0)
                    out[static_cast<std::size_t>(j)] |= Mask{1} << i;
        return out;
    }

    /// The represented generator set; requires 0/1 entries and distinct nonzero columns.
    VecSet to_set() const { return VecSet(Dim(rows_), column_masks()); }

    std::vector<int> column_sums_by_row() const
    {
        std::vector<int> b(static_cast<std::size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                b[static_cast<std::size_t>(i)] += at(i, j);
        return b;
    }

    bool operator==(const MatrixView &) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> cells_;
};

/// One equation after elimination: (Σ num[j] λ_j = rhs) / den with den > 0.
struct RationalRow {
    std::vector<std::int64_t> num;
    std::int64_t rhs = 0;
    std::int64_t den = 1;
};

namespace detail {

inline void reduce_row(std::vector<std::int64_t> &row, std::int64_t &rhs)
{
    std::int64_t g = std::abs(rhs);
    for (auto v : row)
        g = std::gcd(g, std::abs(v));
    if (g > 1) {
        for (auto &v : row)
            v /= g;
        rhs /= g;
    }
}

/// Reduced row echelon form over the rationals, kept as integer rows with a
/// per-row denominator. Pivot: first row (top-down) with a nonzero entry in the
/// current column, columns left to right.
class Elimination {
public:
    void run(const MatrixView &m, std::span<const int> b)
    {
        rows_ = m.rows();
        cols_ = m.cols();
        a_.assign(static_cast<std::size_t>(rows_), std::vector<std::int64_t>(static_cast<std::size_t>(cols_), 0));
        rhs_.assign(static_cast<std::size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j)
                a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
            rhs_[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)];
        }
        pivot_cols_.clear();
        is_pivot_.assign(static_cast<std::size_t>(cols_), false);

        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if (a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                continue;
            std::swap(a_[static_cast<std::size_t>(p)], a_[static_cast<std::size_t>(r)]);
            std::swap(rhs_[static_cast<std::size_t>(p)], rhs_[static_cast<std::size_t>(r)]);
            auto &prow = a_[static_cast<std::size_t>(r)];
            if (prow[static_cast<std::size_t>(c)] < 0) {
                for (auto &v : prow)
                    v = -v;
                rhs_[static_cast<std::size_t>(r)] = -rhs_[static_cast<std::size_t>(r)];
            }
            const std::int64_t pv = prow[static_cast<std::size_t>(c)];
            for (int i = 0; i < rows_; ++i) {
                if (i == r)
                    continue;
                auto &row = a_[static_cast<std::size_t>(i)];
                const std::int64_t f = row[static_cast<std::size_t>(c)];
                if (f == 0)
                    continue;
                for (int j = 0; j < cols_; ++j)
                    row[static_cast<std::size_t>(j)] = pv * row[static_cast<std::size_t>(j)] - f * prow[static_cast<std::size_t>(j)];
                rhs_[static_cast<std::size_t>(i)] = pv * rhs_[static_cast<std::size_t>(i)] - f * rhs_[static_cast<std::size_t>(r)];
                reduce_row(row, rhs_[static_cast<std::size_t>(i)]);
            }
            pivot_cols_.push_back(c);
            is_pivot_[static_cast<std::size_t>(c)] = true;
            ++r;
        }
        rank_ = r;
        consistent_ = true;
        for (int i = r; i < rows_; ++i)
            if (rhs_[static_cast<std::size_t>(i)] != 0)
                consistent_ = false;
    }

    int rank() const { return rank_; }
    bool consistent() const { return consistent_; }
    const std::vector<int> &pivot_cols() const { return pivot_cols_; }
    bool is_pivot(int c) const { return is_pivot_[static_cast<std::size_t>(c)]; }

    RationalRow row(int r) const
    {
        RationalRow out;
        out.num = a_[static_cast<std::size_t>(r)];
        out.rhs = rhs_[static_cast<std::size_t>(r)];
        out.den = out.num[static_cast<std::size_t>(pivot_cols_[static_cast<std::size_t>(r)])];
        return out;
    }

    std::int64_t coeff(int r, int c) const { return a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    std::int64_t rhs(int r) const { return rhs_[static_cast<std::size_t>(r)]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    int rank_ = 0;
    bool consistent_ = true;
    std::vector<std::vector<std::int64_t>> a_;
    std::vector<std::int64_t> rhs_;
    std::vector<int> pivot_cols_;
    std::vector<bool> is_pivot_;
};

/// Enumerates nonnegative integer solutions of M λ = b from an elimination.
/// Free parameters are assigned in ascending column order, values ascending;
/// a partial assignment is dropped as soon as a pivot variable whose row is
/// fully assigned comes out negative or fractional. The visitor returns false
/// to stop.
class SolutionEnumerator {
public:
    using Visitor = std::function<bool(const CoeffVec &)>;

    void run(const MatrixView &m, std::span<const int> b, const Visitor &visit)
    {
        elim_.run(m, b);
        if (!elim_.consistent())
            return;
        const int n = m.cols();
        const int rank = elim_.rank();
        free_.clear();
        for (int c = 0; c < n; ++c)
            if (!elim_.is_pivot(c))
                free_.push_back(c);

        upper_.assign(free_.size(), 0);
        for (std::size_t k = 0; k < free_.size(); ++k) {
            int ub = std::numeric_limits<int>::max();
            bool any = false;
            for (int i = 0; i < m.rows(); ++i) {
                const int e = m.at(i, free_[k]);
                if (e > 0) {
                    ub = std::min(ub, b[static_cast<std::size_t>(i)] / e);
                    any = true;
                }
            }
            // A zero column contributes nothing; pin its variable at 0.
            upper_[k] = any ? ub : 0;
        }

        // Rows become checkable once their last free dependency is assigned.
        checks_.assign(free_.size() + 1, {});
        for (int r = 0; r < rank; ++r) {
            int last = -1;
            for (std::size_t k = 0; k < free_.size(); ++k)
                if (elim_.coeff(r, free_[k]) != 0)
                    last = static_cast<int>(k);
            checks_[static_cast<std::size_t>(last + 1)].push_back(r);
        }

        partial_.assign(static_cast<std::size_t>(rank), 0);
        for (int r = 0; r < rank; ++r)
            partial_[static_cast<std::size_t>(r)] = elim_.rhs(r);
        lambda_.assign(static_cast<std::size_t>(n), 0);
        visit_ = &visit;
        stopped_ = false;
        if (!rows_ok(0))
            return;
        assign(0);
    }

private:
    bool rows_ok(std::size_t stage)
    {
        for (int r : checks_[stage]) {
            const std::int64_t v = partial_[static_cast<std::size_t>(r)];
            const std::int64_t den = elim_.coeff(r, elim_.pivot_cols()[static_cast<std::size_t>(r)]);
            if (v < 0 || v % den != 0)
                return false;
            lambda_[static_cast<std::size_t>(elim_.pivot_cols()[static_cast<std::size_t>(r)])] = static_cast<int>(v / den);
        }
        return true;
    }

    void assign(std::size_t k)
    {
        if (k == free_.size()) {
            if (!(*visit_)(lambda_))
                stopped_ = true;
            return;
        }
        const int c = free_[k];
        const int rank = elim_.rank();
        int applied = 0;
        for (int t = 0; t <= upper_[k] && !stopped_; ++t) {
            lambda_[static_cast<std::size_t>(c)] = t;
            if (t > 0) {
                for (int r = 0; r < rank; ++r)
                    partial_[static_cast<std::size_t>(r)] -= elim_.coeff(r, c);
                ++applied;
            }
            if (rows_ok(k + 1))
                assign(k + 1);
        }
        for (int r = 0; r < rank; ++r)
            partial_[static_cast<std::size_t>(r)] += static_cast<std::int64_t>(applied) * elim_.coeff(r, c);
        lambda_[static_cast<std::size_t>(c)] = 0;
    }

    Elimination elim_;
    std::vector<int> free_;
    std::vector<int> upper_;
    std::vector<std::vector<int>> checks_;
    std::vector<std::int64_t> partial_;
    CoeffVec lambda_;
    const Visitor *visit_ = nullptr;
    bool stopped_ = false;
};

} // namespace detail

/// All λ ≥ 0 with M λ = b, at most `cap` of them.
///
/// Each free parameter ranges over 0..min_j floor(b_j / M_jf); for a 0/1 matrix
/// with b = ΣX this never exceeds |X|.
inline std::vector<CoeffVec> nonneg_integer_solutions(const MatrixView &m, std::span<const int> b,
                                                      std::size_t cap = std::numeric_limits<std::size_t>::max())
{
    if (static_cast<int>(b.size()) != m.rows())
        throw InvalidInput("right-hand side length does not match matrix rows");
    for (int v : b)
        if (v < 0)
            throw InvalidInput("right-hand side has a negative component");
    std::vector<CoeffVec> out;
    if (cap == 0)
        return out;
    detail::SolutionEnumerator e;
    e.run(m, b, [&](const CoeffVec &l) {
        out.push_back(l);
        return out.size() < cap;
    });
    return out;
}

inline std::vector<CoeffVec> nonneg_integer_solutions(const MatrixView &m, const SumVec &b,
                                                      std::size_t cap = std::numeric_limits<std::size_t>::max())
{
    return nonneg_integer_solutions(m, b.counts, cap);
}

/// Elimination-based test, reusing its scratch space across calls.
class GaussNicgChecker {
public:
    bool operator()(std::span<const Mask> gens, Dim dim)
    {
        if (gens.empty())
            return true;
        matrix_ = MatrixView::from_masks(dim, gens);
        b_ = sum_masks(dim, gens).counts;
        bool unique = true;
        enumerator_.run(matrix_, b_, [&](const CoeffVec &l) {
            for (int v : l)
                if (v == 0) {
                    unique = false;
                    return false;
                }
            return true;
        });
        return unique;
    }

private:
    MatrixView matrix_;
    std::vector<int> b_;
    detail::SolutionEnumerator enumerator_;
};

inline bool is_nicg_gauss(std::span<const Mask> gens, Dim dim)
{
    GaussNicgChecker check;
    return check(gens, dim);
}

inline bool is_nicg_gauss(const VecSet &x) { return is_nicg_gauss(x.masks(), x.dim()); }

/// Removal test: ΣX ∉ int_cone(X \ {x}) for every member x.
inline bool is_nicg_removal(std::span<const Mask> gens, Dim dim)
{
    const auto b = sum_masks(dim, gens).counts;
    std::vector<Mask> rest;
    rest.reserve(gens.size());
    for (std::size_t skip = 0; skip < gens.size(); ++skip) {
        rest.clear();
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (i != skip)
                rest.push_back(gens[i]);
        if (in_int_cone(rest, dim, b))
            return false;
    }
    return true;
}

inline bool is_nicg_removal(const VecSet &x) { return is_nicg_removal(x.masks(), x.dim()); }

/// Copy of m with column k (0-based) set to zero.
inline MatrixView zero_column_variant(const MatrixView &m, int k)
{
    if (k < 0 || k >= m.cols())
        throw InvalidInput("column index " + std::to_string(k) + " out of range");
    MatrixView out = m;
    for (int i = 0; i < out.rows(); ++i)
        out.at(i, k) = 0;
    return out;
}

/// NICG through the zero-column systems: X is NICG iff no M^k λ = ΣX is solvable.
inline bool is_nicg_zero_columns(const VecSet &x)
{
    const auto m = MatrixView::from_set(x);
    const auto b = sum_set(x);
    for (int k = 0; k < m.cols(); ++k)
        if (!nonneg_integer_solutions(zero_column_variant(m, k), b, 1).empty())
            return false;
    return true;
}

enum class NicgTest { gauss, removal };

inline bool is_nicg(const VecSet &x, NicgTest test = NicgTest::gauss)
{
    return test == NicgTest::gauss ? is_nicg_gauss(x) : is_nicg_removal(x);
}

} // namespace nicg

#endif
