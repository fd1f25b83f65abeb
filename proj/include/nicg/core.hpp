#ifndef NICG_CORE_HPP
#define NICG_CORE_HPP

// Bit-vector primitives over {0,1}^d.
//
// Component i (1-based, as printed) lives in bit i-1 of a Mask. All types are
// immutable values; nothing here allocates shared state.

#include <nicg/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace nicg {

using Mask = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxDim = 24;

class Dim {
public:
    constexpr Dim() = default;
    constexpr explicit Dim(int d) : value_(d)
    {
        if (d < 1 || d > kMaxDim)
            throw InvalidInput("dimension must be in 1.." + std::to_string(kMaxDim) + ", got " + std::to_string(d));
    }

    constexpr int value() const { return value_; }
    /// Number of nonzero vectors, 2^d - 1.
    constexpr Mask universe_size() const { return (Mask{1} << value_) - 1; }
    constexpr Mask full_mask() const { return universe_size(); }

    constexpr auto operator<=>(const Dim &) const = default;

private:
    int value_ = 1;
};

inline int popcount(Mask m) { return std::popcount(m); }

inline bool bit(Mask m, int i) { return (m >> i) & 1U; }

struct BitVec {
    Dim dim;
    Mask mask = 0;

    /// Component i, 0-based.
    int component(int i) const { return bit(mask, i) ? 1 : 0; }
    int ones() const { return popcount(mask); }

    bool operator==(const BitVec &) const = default;
};

inline BitVec make_vec(Dim dim, std::span<const int> components)
{
    if (static_cast<int>(components.size()) != dim.value())
        throw InvalidInput("vector has " + std::to_string(components.size()) + " components, dimension is "
                           + std::to_string(dim.value()));
    Mask m = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i] != 0 && components[i] != 1)
            throw InvalidInput("vector component must be 0 or 1");
        if (components[i] == 1)
            m |= Mask{1} << i;
    }
    return BitVec{dim, m};
}

inline BitVec make_vec(Dim dim, std::initializer_list<int> components)
{
    return make_vec(dim, std::span<const int>(components.begin(), components.size()));
}

/// A set of distinct nonzero vectors of one dimension, kept sorted by mask.
class VecSet {
public:
    VecSet() = default;
    explicit VecSet(Dim dim) : dim_(dim) {}

    /// Validates and sorts; duplicates, zero, or out-of-range masks are rejected.
    VecSet(Dim dim, std::vector<Mask> masks) : dim_(dim), members_(std::move(masks))
    {
        std::sort(members_.begin(), members_.end());
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i] == 0)
                throw InvalidInput("the zero vector cannot be a generator");
            if (members_[i] > dim_.full_mask())
                throw InvalidInput("mask " + std::to_string(members_[i]) + " exceeds dimension "
                                   + std::to_string(dim_.value()));
            if (i > 0 && members_[i] == members_[i - 1])
                throw InvalidInput("duplicate vector in set");
        }
    }

    VecSet(Dim dim, std::initializer_list<Mask> masks) : VecSet(dim, std::vector<Mask>(masks)) {}

    static VecSet from_vecs(Dim dim, std::span<const BitVec> vecs)
    {
        std::vector<Mask> masks;
        masks.reserve(vecs.size());
        for (const auto &v : vecs) {
            if (v.dim != dim)
                throw InvalidInput("vector dimension does not match set dimension");
            masks.push_back(v.mask);
        }
        return VecSet(dim, std::move(masks));
    }

    Dim dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<Mask> &masks() const { return members_; }
    Mask operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool contains(Mask m) const { return std::binary_search(members_.begin(), members_.end(), m); }

    VecSet with(Mask m) const
    {
        auto masks = members_;
        masks.push_back(m);
        return VecSet(dim_, std::move(masks));
    }

    VecSet without(Mask m) const
    {
        auto masks = members_;
        masks.erase(std::remove(masks.begin(), masks.end(), m), masks.end());
        VecSet out(dim_);
        out.members_ = std::move(masks);
        return out;
    }

    bool operator==(const VecSet &) const = default;

private:
    Dim dim_;
    std::vector<Mask> members_;
};

struct SumVec {
    Dim dim;
    std::vector<int> counts;

    bool operator==(const SumVec &) const = default;
};

inline SumVec sum_masks(Dim dim, std::span<const Mask> masks)
{
    SumVec s{dim, std::vector<int>(static_cast<std::size_t>(dim.value()), 0)};
    for (Mask m : masks)
        for (int i = 0; i < dim.value(); ++i)
            s.counts[static_cast<std::size_t>(i)] += bit(m, i);
    return s;
}

inline SumVec sum_set(const VecSet &x) { return sum_masks(x.dim(), x.masks()); }

/// A bijection of component positions, stored 0-based: position i goes to image[i].
class Permutation {
public:
    explicit Permutation(std::vector<int> image) : image_(std::move(image))
    {
        dim_ = Dim(static_cast<int>(image_.size()));
        std::vector<bool> seen(image_.size(), false);
        for (int v : image_) {
            if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)])
                throw InvalidInput("not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(Dim dim)
    {
        std::vector<int> image(static_cast<std::size_t>(dim.value()));
        std::iota(image.begin(), image.end(), 0);
        return Permutation(std::move(image));
    }

    Dim dim() const { return dim_; }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int> &image() const { return image_; }

    /// (this ∘ inner)(i) = this(inner(i)).
    Permutation compose(const Permutation &inner) const
    {
        if (inner.dim_ != dim_)
            throw InvalidInput("permutation dimensions differ");
        std::vector<int> image(image_.size());
        for (std::size_t i = 0; i < image.size(); ++i)
            image[i] = image_[static_cast<std::size_t>(inner.image_[i])];
        return Permutation(std::move(image));
    }

    Permutation inverse() const
    {
        std::vector<int> image(image_.size());
        for (std::size_t i = 0; i < image.size(); ++i)
            image[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
        return Permutation(std::move(image));
    }

    bool operator==(const Permutation &) const = default;

private:
    Dim dim_;
    std::vector<int> image_;
};

/// y with x_i = y_{P(i)}: bit i of x moves to bit P(i).
inline Mask permute_mask(std::span<const int> image, Mask x)
{
    Mask y = 0;
    while (x != 0) {
        int i = std::countr_zero(x);
        y |= Mask{1} << image[static_cast<std::size_t>(i)];
        x &= x - 1;
    }
    return y;
}

inline BitVec apply_perm(const Permutation &p, const BitVec &x)
{
    if (p.dim() != x.dim)
        throw InvalidInput("permutation and vector dimensions differ");
    return BitVec{x.dim, permute_mask(p.image(), x.mask)};
}

inline VecSet apply_perm_set(const Permutation &p, const VecSet &x)
{
    if (p.dim() != x.dim())
        throw InvalidInput("permutation and set dimensions differ");
    std::vector<Mask> out;
    out.reserve(x.size());
    for (Mask m : x)
        out.push_back(permute_mask(p.image(), m));
    return VecSet(x.dim(), std::move(out));
}

inline SumVec apply_perm_sum(const Permutation &p, const SumVec &s)
{
    SumVec out{s.dim, std::vector<int>(s.counts.size(), 0)};
    for (std::size_t i = 0; i < s.counts.size(); ++i)
        out.counts[static_cast<std::size_t>(p(static_cast<int>(i)))] = s.counts[i];
    return out;
}

inline BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// Number of k-subsets of a v-element universe for k in [kmin, kmax].
inline BigInt enumeration_budget(long long v, long long kmin, long long kmax)
{
    if (v < 1 || kmin < 0 || kmin > kmax || kmax > v)
        throw InvalidInput("enumeration range requires 0 <= kmin <= kmax <= v and v >= 1");
    BigInt total = 0;
    for (long long k = kmin; k <= kmax; ++k)
        total += binomial(static_cast<unsigned>(v), static_cast<unsigned>(k));
    return total;
}

} // namespace nicg

#endif
