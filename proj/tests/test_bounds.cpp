#include "support.hpp"

#include "hodge/bounds.hpp"

#include <gtest/gtest.h>

using namespace hodge;
using namespace testsupport;

namespace {

/// Circulant graph on N vertices joined to the next `reach` vertices on each side: 2*reach-regular.
WeightedGraph circulant(int N, int reach)
{
    WeightedGraph g;
    for (int v = 0; v < N; ++v) g.add_vertex(v, 1.0);
    for (int v = 0; v < N; ++v)
        for (int s = 1; s <= reach; ++s) g.set_edge(v, (v + s) % N, 1.0);
    return g;
}

WeightedGraph path_graph(int n)
{
    WeightedGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v, 1.0);
    for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1, 1.0);
    return g;
}

} // namespace

TEST(Decimal, ExactParse)
{
    EXPECT_EQ(parse_decimal("0.9"), Rational(9, 10));
    EXPECT_EQ(parse_decimal("1.25"), Rational(5, 4));
    EXPECT_EQ(parse_decimal("-2"), Rational(-2));
    EXPECT_EQ(parse_decimal("2.5e-1"), Rational(1, 4));
    EXPECT_EQ(parse_decimal("3E2"), Rational(300));
    EXPECT_EQ(parse_decimal(".5"), Rational(1, 2));
    for (const char* bad : {"", "abc", "1.2.3", "1e", "1e5x", "--1", "."}) EXPECT_THROW(parse_decimal(bad), InputError) << bad;
}

TEST(WeightedConstant, WorkedValues)
{
    auto c = ComparabilityConstants::parse("0.9", "1.1", "0.8", "1.25");
    EXPECT_EQ(weighted_constant(c), Rational(275, 72));
    EXPECT_NEAR(to_double(weighted_regular_bound(c, 4)), 22.92, 0.01);
    EXPECT_NEAR(to_double(weighted_regular_bound(c, 6)), 38.19, 0.01);
    EXPECT_EQ(weighted_regular_bound(c, 12), Rational(6050, 72));
    EXPECT_NEAR(to_double(weighted_regular_bound(c, 12)), 84.03, 0.01);
    EXPECT_EQ(adjacency_constant(c), Rational(25, 16));

    auto strong = ComparabilityConstants::parse("1", "2", "0.5", "2");
    EXPECT_EQ(weighted_constant(strong), Rational(16));
    EXPECT_EQ(weighted_regular_bound(strong, 4), Rational(96));
    EXPECT_EQ(weighted_regular_bound(strong, 6), Rational(160));
    EXPECT_EQ(weighted_regular_bound(strong, 12), Rational(352));

    auto flat = ComparabilityConstants::parse("0.7", "0.7", "3", "3");
    EXPECT_EQ(weighted_constant(flat), Rational(2));
}

TEST(WeightedConstant, RejectsInvalid)
{
    EXPECT_THROW(ComparabilityConstants::parse("0", "1", "1", "1"), InputError);
    EXPECT_THROW(ComparabilityConstants::parse("2", "1", "1", "1"), InputError);
    EXPECT_THROW(ComparabilityConstants::parse("1", "1", "1", "0.5"), InputError);
}

TEST(Schur, RowSums)
{
    auto lc = line_complex(build_complex(cycle_graph(7), 1));
    // line graph of a cycle is a cycle
    EXPECT_DOUBLE_EQ(schur_bound(lc.kernel()), 2.0);

    RealSparseMatrix neg(2, 2);
    neg.insert(0, 1) = -1.0;
    neg.insert(1, 0) = -1.0;
    EXPECT_THROW(schur_bound(neg), InputError);
    RealSparseMatrix asym(2, 2);
    asym.insert(0, 1) = 1.0;
    EXPECT_THROW(schur_bound(asym), InputError);
    EXPECT_EQ(schur_bound(RealSparseMatrix(0, 0)), 0.0);
}

TEST(Schur, TetraStarLineComplex)
{
    auto lc = line_complex(tetra_star());
    EXPECT_DOUBLE_EQ(schur_bound(lc.kernel()), 4.0);
}

TEST(Schur, UniformRatioKernel)
{
    // every neighbor pair has w = m+/m-: the bound is L m+/m-
    auto cx = tetra_star(3.0, {0.5, 0.5, 0.5, 0.5});
    auto g = cx.graph();
    std::map<Simplex, double> table;
    for (const auto& s : cx.simplices(3)) table[s] = 3.0;
    for (const auto& t : cx.simplices(2)) table[t] = 0.5;
    auto uni = build_complex(g, 3, explicit_weights(table));
    auto tb = top_bound(uni);
    EXPECT_EQ(tb.max_neighbors, 4u);
    EXPECT_NEAR(tb.adjacency, 4 * 3.0 / 0.5, 1e-12);
    EXPECT_NEAR(tb.coarse, coarse_top_bound(4, 3, 3.0, 0.5), 1e-12);
    EXPECT_NEAR(tb.coarse, (4 + 4) * 6.0, 1e-12);
}

TEST(FormBound, Examples)
{
    auto k3 = build_complex(complete_graph(3), 2);
    EXPECT_DOUBLE_EQ(form_bound(k3, 1), 3.0);
    EXPECT_DOUBLE_EQ(form_bound(k3, 2), up_down_degrees(k3, 2).down);
    EXPECT_DOUBLE_EQ(facet_counted_form_bound(k3, 1), 2 * 2.0 + 3 * 1.0);
}

TEST(FormBound, PlainSumUnderestimatesSmallBlocks)
{
    // vertex block of the triangle: norm 3, D_down + D_up = 0 + 2
    auto k3 = build_complex(complete_graph(3), 2);
    auto r = certify(k3, 0, Flavor::skew);
    EXPECT_NEAR(r.computed_norm, 3.0, 1e-7);
    EXPECT_LT(r.find("form")->margin, 0.0);
    EXPECT_GE(r.find("facet_counted_form")->margin, -1e-8);
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.advisories_hold());
}

TEST(TopBound, Examples)
{
    auto unit = top_bound(tetra_star());
    EXPECT_DOUBLE_EQ(unit.adjacency, 4.0);
    EXPECT_DOUBLE_EQ(unit.potential, 4.0);
    EXPECT_DOUBLE_EQ(unit.total, 8.0);

    auto weighted = tetra_star(2.0, {1, 2, 1, 2});
    auto lc = line_complex(weighted);
    EXPECT_DOUBLE_EQ(lc.q[weighted.index_of(3, Simplex{0, 1, 2, 3})], 6.0);
    std::vector<double> a;
    for (const auto& nb : lc.adjacency[weighted.index_of(3, Simplex{0, 1, 2, 3})]) a.push_back(nb.a);
    std::sort(a.begin(), a.end());
    EXPECT_EQ(a, (std::vector<double>{0.5, 0.5, 1.0, 1.0}));

    auto single = top_bound(build_complex(complete_graph(3), 2, constant_weight(2.0)));
    EXPECT_DOUBLE_EQ(single.adjacency, 0.0);
    EXPECT_DOUBLE_EQ(single.total, single.potential);
}

TEST(TopBound, MonotoneInTopWeights)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = random_graph(seed);
        auto rng = rng_for(seed, 9);
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        auto base = build_complex(g, n, hashed_weights(seed));
        if (base.size(n) == 0 || n < 2) continue;
        std::map<Simplex, double> table;
        for (int k = 2; k <= n; ++k)
            for (Index i = 0; i < base.size(k); ++i) table[base.simplex(k, i)] = base.weight(k, i);
        const Simplex bump = base.simplex(n, std::uniform_int_distribution<Index>(0, base.size(n) - 1)(rng));
        table[bump] *= 1.7;
        auto bumped = build_complex(g, n, explicit_weights(table));
        EXPECT_GE(top_bound(bumped).total, top_bound(base).total - 1e-12) << "seed " << seed;
    }
}

TEST(EdgeBounds, Examples)
{
    auto z = edge_block_bounds(path_graph(8));
    EXPECT_EQ(z.line_degree, 2u);
    EXPECT_DOUBLE_EQ(z.unnormalized, 6.0);
    EXPECT_DOUBLE_EQ(z.normalized, 4.0);

    auto sq = edge_block_bounds(torus_grid(6, 6));
    EXPECT_EQ(sq.line_degree, 6u);
    EXPECT_DOUBLE_EQ(sq.normalized, 12.0);

    auto fcc_like = edge_block_bounds(circulant(40, 6));
    EXPECT_EQ(fcc_like.graph_degree, 12u);
    EXPECT_EQ(fcc_like.line_degree, 22u);
    EXPECT_DOUBLE_EQ(fcc_like.normalized, 44.0);
}

TEST(EdgeBounds, RegularTable)
{
    for (int d : {4, 6, 8, 12}) {
        auto b = edge_block_bounds(circulant(3 * d, d / 2));
        EXPECT_EQ(b.graph_degree, static_cast<std::size_t>(d));
        EXPECT_EQ(b.line_degree, static_cast<std::size_t>(2 * (d - 1)));
        EXPECT_DOUBLE_EQ(b.normalized, 4.0 * (d - 1));
        EXPECT_EQ(universal_edge_bound(d), 4 * (d - 1));
    }
}

TEST(Certify, TorusEdgeBlock)
{
    auto cx = build_complex(torus_grid(30, 30), 1);
    auto r = certify(cx, 1, Flavor::skew, {.normalized = true});
    EXPECT_NEAR(r.computed_norm, 8.0, 1e-6);
    ASSERT_NE(r.find("edge_line_graph_normalized"), nullptr);
    EXPECT_DOUBLE_EQ(r.find("edge_line_graph_normalized")->value, 12.0);
    EXPECT_TRUE(r.passed());
    EXPECT_DOUBLE_EQ(r.find("top_schur")->value, 8.0);
}

TEST(Certify, WeightedTetra)
{
    auto cx = tetra_star(2.0, {1, 2, 1, 2});
    for (Flavor fl : {Flavor::skew, Flavor::sym}) {
        auto r = certify(cx, 3, fl);
        ASSERT_NE(r.find("top_schur"), nullptr);
        EXPECT_GE(r.find("top_schur")->margin, -1e-8);
        EXPECT_TRUE(r.passed());
    }
}

TEST(Certify, BindingCertificatesHoldOnRandomComplexes)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto [s, cx] = random_complex(seed);
        for (int k = 0; k <= cx.dimension(); ++k) {
            if (cx.size(k) == 0) continue;
            for (Flavor fl : {Flavor::skew, Flavor::sym}) {
                auto r = certify(cx, k, fl, {.normalized = true, .power = {.seed = seed}});
                EXPECT_TRUE(r.passed()) << "seed " << seed << " k " << k;
            }
        }
    }
}
