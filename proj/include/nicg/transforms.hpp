#ifndef NICG_TRANSFORMS_HPP
#define NICG_TRANSFORMS_HPP

// Row operations on generator matrices that keep the NICG property.
//
// Replacing row i2 by i1 + i2 is allowed when the rows have disjoint supports;
// replacing row i2 by i2 - i1 when the support of i1 lies inside that of i2.
// Both maps act on each column as an injective map of (M[i1], M[i2]), so the
// columns stay distinct; this is still checked on every result.

#include <nicg/nicg.hpp>

#include <set>
#include <string>
#include <vector>

namespace nicg {

namespace detail {

inline void check_rows(const MatrixView &m, int i1, int i2)
{
    if (i1 < 0 || i1 >= m.rows() || i2 < 0 || i2 >= m.rows())
        throw InvalidInput("row index out of range");
    if (i1 == i2)
        throw InvalidInput("row transform needs two distinct rows");
}

inline void check_distinct_columns(const MatrixView &m)
{
    std::set<std::vector<int>> seen;
    for (int j = 0; j < m.cols(); ++j) {
        std::vector<int> col(static_cast<std::size_t>(m.rows()));
        for (int i = 0; i < m.rows(); ++i)
            col[static_cast<std::size_t>(i)] = m.at(i, j);
        if (!seen.insert(std::move(col)).second)
            throw InvalidTransform("transform produced duplicate column " + std::to_string(j));
    }
}

inline bool row_all_ones(const MatrixView &m, int i)
{
    for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 1)
            return false;
    return true;
}

inline bool row_all_zero(const MatrixView &m, int i)
{
    for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0)
            return false;
    return true;
}

} // namespace detail

inline bool rows_share_variable(const MatrixView &m, int i1, int i2)
{
    detail::check_rows(m, i1, i2);
    for (int j = 0; j < m.cols(); ++j)
        if (m.at(i1, j) != 0 && m.at(i2, j) != 0)
            return true;
    return false;
}

/// Row i2 becomes row i1 + row i2; the rows must not share a variable.
inline MatrixView row_sum_transform(const MatrixView &m, int i1, int i2)
{
    if (rows_share_variable(m, i1, i2))
        throw InvalidTransform("rows " + std::to_string(i1) + " and " + std::to_string(i2) + " share a variable");
    MatrixView out = m;
    for (int j = 0; j < m.cols(); ++j)
        out.at(i2, j) += m.at(i1, j);
    detail::check_distinct_columns(out);
    return out;
}

/// Row i2 becomes row i2 - row i1; the support of i1 must lie inside the support of i2.
inline MatrixView row_subtract_transform(const MatrixView &m, int i1, int i2)
{
    detail::check_rows(m, i1, i2);
    for (int j = 0; j < m.cols(); ++j)
        if (m.at(i1, j) != 0 && m.at(i2, j) == 0)
            throw InvalidTransform("row " + std::to_string(i1) + " is not contained in row " + std::to_string(i2));
    MatrixView out = m;
    for (int j = 0; j < m.cols(); ++j)
        out.at(i2, j) -= m.at(i1, j);
    detail::check_distinct_columns(out);
    return out;
}

/// Removes all-ones rows by subtracting another row from each of them.
///
/// The subtracted row is the lowest-index row holding both a 0 and a 1. Taking
/// it from an all-ones row leaves a row with a 0 and a 1, so every step removes
/// one all-ones row without creating another. Such a row exists whenever the
/// matrix has two distinct columns. A single column has only constant rows and
/// cannot be normalized.
inline MatrixView normalize_all_ones_rows(const MatrixView &m)
{
    if (m.cols() == 0 || m.rows() == 0)
        throw InvalidInput("cannot normalize an empty matrix");
    if (!m.is_binary())
        throw InvalidInput("normalization expects a 0/1 matrix");
    MatrixView out = m;
    for (;;) {
        int full = -1;
        for (int i = 0; i < out.rows(); ++i)
            if (detail::row_all_ones(out, i)) {
                full = i;
                break;
            }
        if (full < 0)
            return out;
        int other = -1;
        for (int i = 0; i < out.rows(); ++i)
            if (!detail::row_all_ones(out, i) && !detail::row_all_zero(out, i)) {
                other = i;
                break;
            }
        if (other < 0)
            throw InvalidTransform("all-ones row " + std::to_string(full)
                                   + " cannot be normalized: no row contains both a 0 and a 1");
        out = row_subtract_transform(out, other, full);
    }
}

} // namespace nicg

#endif
