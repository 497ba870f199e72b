#include "support.hpp"

#include <gtest/gtest.h>

using namespace hodge;
using namespace testsupport;

TEST(InnerProduct, SingleEdgeIndicator)
{
    WeightedGraph g;
    g.add_vertex(0, 1.0);
    g.add_vertex(1, 1.0);
    g.set_edge(0, 1, 2.0);
    auto cx = build_complex(g, 1);
    auto f = Cochain::indicator(cx, 1, Flavor::skew, Simplex{0, 1});
    EXPECT_DOUBLE_EQ(inner_product(f, f, WeightedMetric::of(cx, 1)).real(), 2.0);
}

TEST(InnerProduct, DisjointSupports)
{
    auto cx = build_complex(complete_graph(3), 2);
    auto m = WeightedMetric::of(cx, 1);
    auto f = Cochain::indicator(cx, 1, Flavor::skew, Simplex{0, 1});
    auto g = Cochain::indicator(cx, 1, Flavor::skew, Simplex{1, 2});
    EXPECT_EQ(inner_product(f, g, m), Scalar(0.0));
}

TEST(InnerProduct, DegreeMismatchThrows)
{
    auto cx = build_complex(complete_graph(3), 2);
    auto f = Cochain::zero(cx, 1, Flavor::skew);
    auto g = Cochain::zero(cx, 0, Flavor::skew);
    EXPECT_THROW(inner_product(f, g, WeightedMetric::of(cx, 1)), std::invalid_argument);
    EXPECT_THROW(inner_product(f, f, WeightedMetric::of(cx, 0)), std::invalid_argument);
}

TEST(InnerProduct, CanonicalEqualsOrderedSum)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto g = random_graph(seed, {.max_vertices = 5});
        auto cx = build_complex(g, 3, hashed_weights(seed));
        for (int k = 0; k <= 3; ++k) {
            if (cx.size(k) == 0) continue;
            for (Flavor fl : {Flavor::skew, Flavor::sym}) {
                Cochain f{k, fl, random_vector(seed, static_cast<Eigen::Index>(cx.size(k)), 10 + k)};
                Cochain h{k, fl, random_vector(seed, static_cast<Eigen::Index>(cx.size(k)), 20 + k)};
                auto canon = inner_product(f, h, WeightedMetric::of(cx, k));
                auto ordered = ordered_inner_product(cx, f, h);
                EXPECT_LE(std::abs(canon - ordered), 1e-12) << "seed " << seed << " k " << k;
            }
        }
    }
}

TEST(InnerProduct, HermitianAndPositive)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto [s, cx] = random_complex(seed);
        for (int k = 0; k <= cx.dimension(); ++k) {
            if (cx.size(k) == 0) continue;
            auto m = WeightedMetric::of(cx, k);
            Cochain f{k, Flavor::skew, random_vector(seed, static_cast<Eigen::Index>(cx.size(k)), 30)};
            Cochain h{k, Flavor::skew, random_vector(seed, static_cast<Eigen::Index>(cx.size(k)), 31)};
            EXPECT_LE(std::abs(inner_product(f, h, m) - std::conj(inner_product(h, f, m))), 1e-12);
            EXPECT_GT(norm_squared(f, m), 0.0);
            EXPECT_EQ(norm_squared(Cochain::zero(cx, k, Flavor::skew), m), 0.0);
            const Scalar a(0.3, -1.2);
            Cochain af{k, Flavor::skew, a * f.values};
            EXPECT_LE(std::abs(inner_product(af, h, m) - a * inner_product(f, h, m)), 1e-12);
        }
    }
}

TEST(Evaluate, ParityRules)
{
    auto cx = build_complex(complete_graph(3), 2);
    auto skew = Cochain::indicator(cx, 2, Flavor::skew, Simplex{0, 1, 2});
    auto sym = Cochain::indicator(cx, 2, Flavor::sym, Simplex{0, 1, 2});
    EXPECT_EQ(evaluate(cx, skew, Simplex{0, 1, 2}), Scalar(1.0));
    EXPECT_EQ(evaluate(cx, skew, Simplex{1, 0, 2}), Scalar(-1.0));
    EXPECT_EQ(evaluate(cx, skew, Simplex{1, 2, 0}), Scalar(1.0));
    EXPECT_EQ(evaluate(cx, sym, Simplex{1, 0, 2}), Scalar(1.0));

    // indicator of a reordered tuple stores the folded orientation
    auto odd = Cochain::indicator(cx, 2, Flavor::skew, Simplex{1, 0, 2});
    EXPECT_EQ(evaluate(cx, odd, Simplex{1, 0, 2}), Scalar(1.0));
    EXPECT_EQ(odd.values[0], Scalar(-1.0));

    EXPECT_THROW(evaluate(cx, skew, Simplex{0, 0, 1}), InputError);
    auto c4 = build_complex(cycle_graph(4), 1);
    auto e = Cochain::zero(c4, 1, Flavor::skew);
    EXPECT_THROW(evaluate(c4, e, Simplex{0, 2}), InputError);
}

TEST(Evaluate, ParityComposesMultiplicatively)
{
    auto cx = build_complex(complete_graph(5), 3);
    auto rng = rng_for(7);
    for (Index i = 0; i < cx.size(3); ++i) {
        Cochain f{3, Flavor::skew, random_vector(i, static_cast<Eigen::Index>(cx.size(3)))};
        Simplex base = cx.simplex(3, i);
        Simplex p = base;
        for (int rep = 0; rep < 10; ++rep) {
            std::shuffle(p.begin(), p.end(), rng);
            Simplex q = p;
            std::shuffle(q.begin(), q.end(), rng);
            // f(q) / f(p) is the sign of the permutation taking p to q
            std::vector<int> pos(q.size());
            for (std::size_t a = 0; a < q.size(); ++a)
                pos[a] = static_cast<int>(std::find(p.begin(), p.end(), q[a]) - p.begin());
            double rel = parity_sign(sort_parity(std::span<const int>(pos)));
            EXPECT_LE(std::abs(evaluate(cx, f, q) - rel * evaluate(cx, f, p)), 1e-15);
        }
    }
}
