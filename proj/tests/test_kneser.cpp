#include <kicolor/fpt_solver.hpp>
#include <kicolor/kneser.hpp>
#include <kicolor/oracle.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

using namespace kicolor;
namespace kt = kicolor::testing;

TEST(Kneser, SmallInstances)
{
    auto k31 = build_kneser(3, 1);
    EXPECT_EQ(k31.graph, kt::complete(3));
    auto pet = build_kneser(5, 2);
    EXPECT_EQ(pet.graph.n(), 10u);
    EXPECT_EQ(pet.graph.edge_count(), 15u);
    for (Vertex v = 0; v < 10; ++v)
        EXPECT_EQ(pet.graph.degree(v), 3u);
    EXPECT_THROW(build_kneser(3, 0), DomainError);
    EXPECT_THROW(build_kneser(2, 3), DomainError);
    EXPECT_THROW(build_kneser(65, 1), DomainError);
}

TEST(Kneser, OddKneserEdgeCount)
{
    for (unsigned k = 1; k <= 3; ++k) {
        auto kg = build_kneser(2 * k + 1, k);
        // each vertex has binomial(k+1,k) disjoint partners
        EXPECT_EQ(kg.graph.edge_count(), binomial(2 * k + 1, k) * (k + 1) / 2);
    }
}

TEST(Kneser, AdjacencyIsDisjointness)
{
    for (unsigned r = 2; r <= 7; ++r)
        for (unsigned k = 1; k <= r / 2 + 1 && k <= r; ++k) {
            auto kg = build_kneser(r, k);
            EXPECT_EQ(kg.graph.n(), binomial(r, k));
            for (Vertex a = 0; a < kg.graph.n(); ++a)
                for (Vertex b = a + 1; b < kg.graph.n(); ++b)
                    EXPECT_EQ(kg.graph.has_edge(a, b), intersection_size(kg.labels[a], kg.labels[b]) == 0);
        }
}

TEST(Kneser, NaturalColoringIsProper)
{
    for (unsigned r = 1; r <= 9; ++r)
        for (unsigned k = 1; k <= std::min(r, 3u); ++k) {
            auto kg = build_kneser(r, k);
            EXPECT_TRUE(is_proper(kg.graph, kg.natural, Params{r, k, 0}));
        }
}

TEST(Kneser, CanonicalTi3Set)
{
    auto label = [](unsigned r, unsigned k, Vertex v) { return build_kneser(r, k).labels[v].to_string(); };
    auto t31 = canonical_ti3set(3, 1);
    EXPECT_EQ(label(3, 1, t31[0]), "{1}");
    EXPECT_EQ(label(3, 1, t31[1]), "{2}");
    EXPECT_EQ(label(3, 1, t31[2]), "{3}");
    auto t52 = canonical_ti3set(5, 2);
    EXPECT_EQ(label(5, 2, t52[0]), "{1,3}");
    EXPECT_EQ(label(5, 2, t52[1]), "{1,4}");
    EXPECT_EQ(label(5, 2, t52[2]), "{1,5}");
    auto t73 = canonical_ti3set(7, 3);
    EXPECT_EQ(label(7, 3, t73[0]), "{1,2,5}");
    EXPECT_EQ(label(7, 3, t73[1]), "{1,2,6}");
    EXPECT_EQ(label(7, 3, t73[2]), "{1,2,7}");
    EXPECT_THROW(canonical_ti3set(4, 2), DomainError);

    // k = 1: the three singletons are mutually adjacent
    auto k31 = build_kneser(3, 1);
    EXPECT_TRUE(k31.graph.has_edge(t31[0], t31[1]));
    for (unsigned k = 2; k <= 3; ++k)
        for (unsigned r = 2 * k + 1; r <= 8; ++r) {
            auto kg = build_kneser(r, k);
            auto t = canonical_ti3set(r, k);
            EXPECT_FALSE(kg.graph.has_edge(t[0], t[1]));
            EXPECT_FALSE(kg.graph.has_edge(t[0], t[2]));
            EXPECT_FALSE(kg.graph.has_edge(t[1], t[2]));
        }
}

TEST(Kneser, NaturalUniqueness)
{
    auto r31 = natural_uniqueness_report(3, 1);
    EXPECT_TRUE(r31.unique);
    EXPECT_EQ(r31.colorings, 6u);
    auto r41 = natural_uniqueness_report(4, 1);
    EXPECT_TRUE(r41.unique);
    EXPECT_EQ(r41.colorings, 24u);
    EXPECT_TRUE(check_natural_uniqueness(5, 2));
    EXPECT_EQ(natural_uniqueness_report(5, 2).colorings, 120u);
    EXPECT_THROW(check_natural_uniqueness(4, 2), DomainError);
}

TEST(Kneser, OccurrenceProfile)
{
    for (auto [r, k, each] : {std::tuple{5u, 2u, 4u}, std::tuple{3u, 1u, 1u}, std::tuple{7u, 3u, 15u}}) {
        auto kg = build_kneser(r, k);
        auto prof = color_occurrence_profile(kg, kg.natural);
        ASSERT_EQ(prof.size(), r);
        for (auto [c, n] : prof)
            EXPECT_EQ(n, each) << "color " << c;
        EXPECT_EQ(each, binomial(r - 1, k - 1));
    }
    auto pet = build_kneser(5, 2);
    Coloring bad(10, 5, 2);
    for (Vertex v = 0; v < 10; ++v)
        bad.assign(v, make_color_set({1, 2}, 5));
    EXPECT_THROW(color_occurrence_profile(pet, bad), DomainError);
}

TEST(Kneser, ErdosKoRadoSpotChecks)
{
    for (auto [r, k] : {std::pair{4u, 1u}, std::pair{5u, 2u}, std::pair{6u, 2u}, std::pair{7u, 3u}}) {
        auto kg = build_kneser(r, k);
        EXPECT_EQ(max_independent_set_size(kg.graph), binomial(r - 1, k - 1));
        if (kg.graph.n() <= 20)
            EXPECT_EQ(kt::naive_alpha(kg.graph), binomial(r - 1, k - 1));
    }
}

TEST(Kneser, NeedsAtLeastRColors)
{
    for (auto [r, k] : {std::pair{3u, 1u}, std::pair{4u, 1u}, std::pair{5u, 2u}}) {
        auto kg = build_kneser(r, k);
        EXPECT_FALSE(brute_decide(kg.graph, Params{r - 1, k, 0}));
        EXPECT_FALSE(decide(kg.graph, Params{r - 1, k, 0}));
        EXPECT_TRUE(decide(kg.graph, Params{r, k, 0}));
    }
}

TEST(Kneser, LabelsSidecar)
{
    std::ostringstream out;
    write_kneser_labels(out, build_kneser(3, 1));
    EXPECT_EQ(out.str(), "v 1 {1}\nv 2 {2}\nv 3 {3}\n");
}
