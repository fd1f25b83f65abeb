#ifndef NICG_ISOMORPHISM_HPP
#define NICG_ISOMORPHISM_HPP

// Isomorphism of vector sets under permutations of component positions.
//
// Three granularities:
//   * CanonicalKey: exact orbit representative, by enumerating all d! permutations.
//   * SignatureKey: canonical key of the popcount-1 and popcount-2 layers only;
//     a coarser invariant used to bucket canonical keys.
//   * FixedPerms / isomorphic_vectors: the cheap weak test, valid for the
//     permutations that fix every position already holding a 1 in the current set.

#include <nicg/core.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nicg {

inline constexpr int kMaxCanonicalDim = 10;

/// Sub-set of members with exactly k ones.
inline VecSet layer(const VecSet &x, int k)
{
    if (k < 0 || k > x.dim().value())
        throw InvalidInput("layer index out of range");
    std::vector<Mask> out;
    for (Mask m : x)
        if (popcount(m) == k)
            out.push_back(m);
    return VecSet(x.dim(), std::move(out));
}

/// Lexicographically smallest sorted mask list over the orbit of a set.
struct CanonicalKey {
    std::vector<Mask> masks;

    auto operator<=>(const CanonicalKey &) const = default;
    bool operator==(const CanonicalKey &) const = default;
};

struct SignatureKey {
    CanonicalKey layers;

    auto operator<=>(const SignatureKey &) const = default;
    bool operator==(const SignatureKey &) const = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey &k) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL ^ k.masks.size();
        for (Mask m : k.masks) {
            h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct SignatureKeyHash {
    std::size_t operator()(const SignatureKey &k) const noexcept { return CanonicalKeyHash{}(k.layers); }
};

namespace detail {

inline void insertion_sort(std::vector<Mask> &v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        Mask t = v[i];
        std::size_t j = i;
        for (; j > 0 && v[j - 1] > t; --j)
            v[j] = v[j - 1];
        v[j] = t;
    }
}

/// Visits every permutation of 0..d-1 as a position image, in lexicographic order.
template <typename F>
void for_each_permutation(int d, F &&f)
{
    std::vector<int> image(static_cast<std::size_t>(d));
    std::iota(image.begin(), image.end(), 0);
    do {
        f(std::as_const(image));
    } while (std::next_permutation(image.begin(), image.end()));
}

inline CanonicalKey canonical_of_masks(Dim dim, std::span<const Mask> masks)
{
    if (dim.value() > kMaxCanonicalDim)
        throw Unsupported("canonical form enumerates d! permutations; d must be at most "
                          + std::to_string(kMaxCanonicalDim));
    CanonicalKey best{std::vector<Mask>(masks.begin(), masks.end())};
    insertion_sort(best.masks);
    if (masks.empty())
        return best;
    std::vector<Mask> image_masks(masks.size());
    std::vector<Mask> cand;
    cand.reserve(masks.size());
    for_each_permutation(dim.value(), [&](const std::vector<int> &image) {
        // A sorted candidate starts with its smallest member.
        Mask smallest = ~Mask{0};
        for (std::size_t i = 0; i < masks.size(); ++i) {
            image_masks[i] = permute_mask(image, masks[i]);
            smallest = std::min(smallest, image_masks[i]);
        }
        if (smallest > best.masks.front())
            return;
        cand.assign(image_masks.begin(), image_masks.end());
        insertion_sort(cand);
        if (cand < best.masks)
            best.masks = cand;
    });
    return best;
}

} // namespace detail

inline CanonicalKey canonical_form(const VecSet &x) { return detail::canonical_of_masks(x.dim(), x.masks()); }

/// Orbit key of the pair (layer 1, layer 2), computed under one common permutation.
inline SignatureKey signature_key(const VecSet &x)
{
    if (x.dim().value() > kMaxCanonicalDim)
        throw Unsupported("signature key requires d <= " + std::to_string(kMaxCanonicalDim));
    std::vector<Mask> low;
    for (Mask m : x)
        if (popcount(m) == 1 || popcount(m) == 2)
            low.push_back(m);
    // Permutations preserve popcount, so the joint orbit of the union fixes the pair.
    return SignatureKey{detail::canonical_of_masks(x.dim(), low)};
}

/// Positions fixed by every permutation in a 1-order-preserving collection.
struct FixedPerms {
    Dim dim;
    Mask fixed = 0;

    static FixedPerms none(Dim dim) { return FixedPerms{dim, 0}; }

    /// Position i (0-based) is fixed.
    bool operator[](int i) const { return bit(fixed, i); }
    bool operator==(const FixedPerms &) const = default;
};

inline FixedPerms update_fixed_perms(FixedPerms fp, const BitVec &x)
{
    if (fp.dim != x.dim)
        throw InvalidInput("fixed-position array and vector dimensions differ");
    fp.fixed |= x.mask;
    return fp;
}

inline bool isomorphic_vectors(Mask x, Mask y, Mask fixed) { return popcount(x) == popcount(y) && ((x ^ y) & fixed) == 0; }

inline bool isomorphic_vectors(const BitVec &x, const BitVec &y, const FixedPerms &fp)
{
    if (x.dim != y.dim || x.dim != fp.dim)
        throw InvalidInput("dimension mismatch in isomorphic_vectors");
    return isomorphic_vectors(x.mask, y.mask, fp.fixed);
}

/// Keys of explored states, with a capacity limit.
///
/// In bucketed mode keys are grouped by their signature and the canonical key
/// decides membership inside a bucket.
class VisitedStore {
public:
    enum class Insert { inserted, present, full };

    explicit VisitedStore(std::size_t capacity = std::size_t{1} << 24, bool bucketed = false)
        : capacity_(capacity), bucketed_(bucketed)
    {
    }

    Insert insert_if_absent(const CanonicalKey &key, const SignatureKey *sig = nullptr)
    {
        if (bucketed_) {
            if (sig == nullptr)
                throw InvalidInput("bucketed store needs a signature key");
            auto it = buckets_.find(*sig);
            if (it != buckets_.end())
                for (const auto &k : it->second)
                    if (k == key)
                        return Insert::present;
            if (size_ >= capacity_)
                return Insert::full;
            buckets_[*sig].push_back(key);
        } else {
            if (flat_.contains(key))
                return Insert::present;
            if (size_ >= capacity_)
                return Insert::full;
            flat_.insert(key);
        }
        ++size_;
        return Insert::inserted;
    }

    bool contains(const CanonicalKey &key, const SignatureKey *sig = nullptr) const
    {
        if (!bucketed_)
            return flat_.contains(key);
        auto it = buckets_.find(*sig);
        return it != buckets_.end() && std::find(it->second.begin(), it->second.end(), key) != it->second.end();
    }

    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }
    bool bucketed() const { return bucketed_; }
    std::size_t bucket_count() const { return bucketed_ ? buckets_.size() : flat_.size(); }

    /// All stored keys, in unspecified order.
    std::vector<CanonicalKey> keys() const
    {
        std::vector<CanonicalKey> out;
        if (bucketed_) {
            for (const auto &[sig, ks] : buckets_)
                out.insert(out.end(), ks.begin(), ks.end());
        } else {
            out.assign(flat_.begin(), flat_.end());
        }
        return out;
    }

private:
    std::size_t capacity_;
    bool bucketed_;
    std::size_t size_ = 0;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> flat_;
    std::unordered_map<SignatureKey, std::vector<CanonicalKey>, SignatureKeyHash> buckets_;
};

} // namespace nicg

#endif
