#include <nicg/isomorphism.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nicg;

namespace {

Mask v(Dim d, std::initializer_list<int> c) { return make_vec(d, c).mask; }

} // namespace

TEST(Layer, Examples)
{
    const Dim d(4);
    const VecSet x(d, {v(d, {1, 0, 0, 0}), v(d, {1, 1, 1, 0})});
    EXPECT_EQ(layer(x, 1), VecSet(d, {v(d, {1, 0, 0, 0})}));
    EXPECT_TRUE(layer(x, 0).empty());
    const VecSet y(Dim(3), {0b011, 0b110});
    EXPECT_EQ(layer(y, 2), y);
    EXPECT_THROW(layer(y, 4), InvalidInput);
}

TEST(CanonicalForm, KnownIsomorphicPairs)
{
    const Dim d3(3);
    EXPECT_EQ(canonical_form(VecSet(d3, {v(d3, {1, 1, 0}), v(d3, {0, 1, 0})})),
              canonical_form(VecSet(d3, {v(d3, {0, 1, 1}), v(d3, {0, 1, 0})})));
    const Dim d4(4);
    const VecSet x(d4, {v(d4, {1, 0, 0, 0}), v(d4, {1, 1, 1, 0})});
    const VecSet y(d4, {v(d4, {1, 0, 0, 0}), v(d4, {1, 1, 0, 1})});
    EXPECT_EQ(canonical_form(x), canonical_form(y));
    EXPECT_EQ(signature_key(x), signature_key(y));
    EXPECT_EQ(signature_key(x).layers.masks, (std::vector<Mask>{1}));
}

TEST(CanonicalForm, DimensionGuard)
{
    EXPECT_THROW(canonical_form(VecSet(Dim(11), {1})), Unsupported);
    EXPECT_THROW(signature_key(VecSet(Dim(11), {1})), Unsupported);
}

TEST(CanonicalForm, OrbitConstancyAndIdempotence)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 500; ++t) {
        const Dim d(2 + static_cast<int>(rng() % 5));
        const auto x = fixtures::random_set(d, rng, 7);
        const auto p = fixtures::random_perm(d, rng);
        const auto k = canonical_form(x);
        EXPECT_EQ(canonical_form(apply_perm_set(p, x)), k);
        EXPECT_EQ(canonical_form(VecSet(d, k.masks)), k);
        EXPECT_EQ(signature_key(apply_perm_set(p, x)), signature_key(x));
    }
}

// Two sets share a canonical key exactly when some permutation maps one onto the other.
TEST(CanonicalForm, MatchesExplicitOrbitCheck)
{
    std::mt19937_64 rng(32);
    const Dim d(4);
    for (int t = 0; t < 400; ++t) {
        const auto x = fixtures::random_set(d, rng, 4);
        auto y = fixtures::random_set(d, rng, 4);
        if (t % 2 == 0)
            y = apply_perm_set(fixtures::random_perm(d, rng), x);
        bool orbit = false;
        std::vector<int> image{0, 1, 2, 3};
        do {
            orbit = orbit || apply_perm_set(Permutation(image), x) == y;
        } while (std::next_permutation(image.begin(), image.end()));
        EXPECT_EQ(canonical_form(x) == canonical_form(y), orbit);
        if (orbit)
            EXPECT_EQ(signature_key(x), signature_key(y));
    }
}

TEST(CanonicalForm, EmptyLayersGiveEmptySignature)
{
    const VecSet x(Dim(4), {0b0111, 0b1111});
    EXPECT_TRUE(signature_key(x).layers.masks.empty());
}

TEST(FixedPerms, Updates)
{
    const Dim d(4);
    auto fp = update_fixed_perms(FixedPerms::none(d), make_vec(d, {1, 0, 1, 0}));
    EXPECT_TRUE(fp[0]);
    EXPECT_FALSE(fp[1]);
    EXPECT_TRUE(fp[2]);
    EXPECT_FALSE(fp[3]);
    EXPECT_EQ(update_fixed_perms(fp, make_vec(d, {1, 0, 1, 0})), fp);
    const Dim d2(2);
    const FixedPerms half{d2, 0b01};
    EXPECT_EQ(update_fixed_perms(half, make_vec(d2, {0, 1})).fixed, 0b11U);
    EXPECT_THROW(update_fixed_perms(half, make_vec(Dim(3), {0, 1, 0})), InvalidInput);
}

TEST(IsomorphicVectors, Examples)
{
    const Dim d2(2);
    const FixedPerms all{d2, 0b11};
    EXPECT_FALSE(isomorphic_vectors(make_vec(d2, {1, 0}), make_vec(d2, {0, 1}), all));
    const Dim d3(3);
    const auto none = FixedPerms::none(d3);
    EXPECT_TRUE(isomorphic_vectors(make_vec(d3, {1, 0, 0}), make_vec(d3, {0, 1, 0}), none));
    EXPECT_FALSE(isomorphic_vectors(make_vec(d3, {1, 1, 0}), make_vec(d3, {1, 0, 0}), none));
    const auto x = make_vec(d3, {1, 0, 1});
    EXPECT_TRUE(isomorphic_vectors(x, x, FixedPerms{d3, 0b111}));
}

TEST(IsomorphicVectors, EquivalenceRelation)
{
    for (Mask fixed = 0; fixed < 16; ++fixed)
        for (Mask a = 0; a < 16; ++a)
            for (Mask b = 0; b < 16; ++b) {
                EXPECT_EQ(isomorphic_vectors(a, b, fixed), isomorphic_vectors(b, a, fixed));
                if (!isomorphic_vectors(a, b, fixed))
                    continue;
                for (Mask c = 0; c < 16; ++c)
                    if (isomorphic_vectors(b, c, fixed))
                        EXPECT_TRUE(isomorphic_vectors(a, c, fixed));
            }
}

// Weakly equivalent extensions of X are isomorphic as sets.
TEST(IsomorphicVectors, WeakEquivalenceImpliesSameCanonicalForm)
{
    std::mt19937_64 rng(33);
    for (int dv = 2; dv <= 4; ++dv) {
        const Dim d(dv);
        for (int t = 0; t < 300; ++t) {
            const auto x = fixtures::random_set(d, rng, 3);
            auto fp = FixedPerms::none(d);
            for (Mask m : x)
                fp = update_fixed_perms(fp, BitVec{d, m});
            for (Mask a = 1; a <= d.universe_size(); ++a)
                for (Mask b = 1; b <= d.universe_size(); ++b) {
                    if (x.contains(a) || x.contains(b) || !isomorphic_vectors(a, b, fp.fixed))
                        continue;
                    EXPECT_EQ(canonical_form(x.with(a)), canonical_form(x.with(b)));
                }
        }
    }
}

TEST(VisitedStore, FlatAndBucketed)
{
    const Dim d(4);
    const VecSet a(d, {1, 3}), b(d, {2, 3}), c(d, {1, 6});
    for (bool bucketed : {false, true}) {
        VisitedStore store(2, bucketed);
        const auto ka = canonical_form(a), kb = canonical_form(b), kc = canonical_form(c);
        const auto sa = signature_key(a), sb = signature_key(b), sc = signature_key(c);
        EXPECT_EQ(store.insert_if_absent(ka, &sa), VisitedStore::Insert::inserted);
        EXPECT_EQ(store.insert_if_absent(kb, &sb), VisitedStore::Insert::present);
        if (!(kc == ka)) {
            EXPECT_EQ(store.insert_if_absent(kc, &sc), VisitedStore::Insert::inserted);
            EXPECT_EQ(store.insert_if_absent(CanonicalKey{{1, 2, 4}}, &sa), VisitedStore::Insert::full);
        }
        EXPECT_TRUE(store.contains(ka, &sa));
    }
}
