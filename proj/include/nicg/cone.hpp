#ifndef NICG_CONE_HPP
#define NICG_CONE_HPP

// Integer cone membership by bounded recursive enumeration.

#include <nicg/core.hpp>

#include <optional>
#include <vector>

namespace nicg {

/// Nonnegative coefficients aligned with the member order of a VecSet.
using CoeffVec = std::vector<int>;

namespace detail {

class ConeSearch {
public:
    ConeSearch(std::span<const Mask> gens, int d) : gens_(gens), d_(d), coeffs_(gens.size(), 0)
    {
        // cover_[k]: union of supports of gens_[k..]
        cover_.assign(gens.size() + 1, 0);
        for (std::size_t k = gens.size(); k-- > 0;)
            cover_[k] = cover_[k + 1] | gens[k];
    }

    bool run(std::vector<int> &residual) { return step(0, residual); }
    const CoeffVec &coeffs() const { return coeffs_; }

private:
    bool step(std::size_t k, std::vector<int> &residual)
    {
        Mask positive = 0;
        for (int j = 0; j < d_; ++j)
            if (residual[static_cast<std::size_t>(j)] > 0)
                positive |= Mask{1} << j;
        if (positive == 0)
            return true;
        if (k == gens_.size() || (positive & ~cover_[k]) != 0)
            return false;

        const Mask g = gens_[k];
        int taken = 0;
        for (;;) {
            coeffs_[k] = taken;
            if (step(k + 1, residual))
                return true;
            bool negative = false;
            for (int j = 0; j < d_; ++j)
                if (bit(g, j) && --residual[static_cast<std::size_t>(j)] < 0)
                    negative = true;
            ++taken;
            if (negative)
                break;
        }
        for (int j = 0; j < d_; ++j)
            if (bit(g, j))
                residual[static_cast<std::size_t>(j)] += taken;
        coeffs_[k] = 0;
        return false;
    }

    std::span<const Mask> gens_;
    int d_;
    CoeffVec coeffs_;
    std::vector<Mask> cover_;
};

} // namespace detail

/// Finds λ ≥ 0 with Σ λ_i x_i = b, trying members in set order and coefficients from 0 upward.
inline std::optional<CoeffVec> in_int_cone(std::span<const Mask> gens, Dim dim, const std::vector<int> &b)
{
    if (static_cast<int>(b.size()) != dim.value())
        throw InvalidInput("target dimension does not match generators");
    for (int v : b)
        if (v < 0)
            throw InvalidInput("target has a negative component");
    std::vector<int> residual = b;
    detail::ConeSearch search(gens, dim.value());
    if (!search.run(residual))
        return std::nullopt;
    return search.coeffs();
}

inline std::optional<CoeffVec> in_int_cone(const VecSet &x, const SumVec &b)
{
    if (b.dim != x.dim())
        throw InvalidInput("target dimension does not match generators");
    return in_int_cone(x.masks(), x.dim(), b.counts);
}

} // namespace nicg

#endif
