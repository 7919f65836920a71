#include <kicolor/fpt_solver.hpp>
#include <kicolor/kk1.hpp>
#include <kicolor/oracle.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

using namespace kicolor;
namespace kt = kicolor::testing;

TEST(ChromaticClassic, Examples)
{
    EXPECT_EQ(chromatic_classic(kt::complete(4)), 4u);
    EXPECT_EQ(chromatic_classic(kt::cycle(5)), 3u);
    ASSERT_EQ(brute_chromatic(kt::petersen(), 1, 0), 3u);
    EXPECT_EQ(chromatic_classic(kt::petersen()), 3u);
    EXPECT_EQ(chromatic_classic(Graph(0)), 0u);
    EXPECT_EQ(chromatic_classic(Graph(4)), 1u);
    EXPECT_THROW(chromatic_classic(Graph(25)), ResourceError);
}

TEST(ChromaticClassic, AgreesWithBacktracking)
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 80; ++t) {
        auto g = kt::random_graph(1 + rng() % 9, std::array{0.2, 0.5, 0.8}[t % 3], rng);
        const auto chi = chromatic_classic(g);
        EXPECT_EQ(chi, kt::naive_classic_chromatic(g));
        EXPECT_EQ(chi, brute_chromatic(g, 1, 0));
        EXPECT_EQ(chromatic_classic(relabel(g, kt::random_permutation(g.n(), rng))), chi);
    }
}

TEST(Kk1, Examples)
{
    for (std::size_t n = 1; n <= 7; ++n)
        for (unsigned k = 1; k <= 3; ++k) {
            auto r = chi_k_kminus1(kt::complete(n), k);
            EXPECT_EQ(r.chi, n);
            EXPECT_GE(binomial(r.q_kk1, k), n);
            EXPECT_LT(binomial(r.q_kk1 - 1, k), n);
        }
    EXPECT_EQ(chi_k_kminus1(kt::complete(3), 2).q_kk1, 3u);
    for (unsigned k = 1; k <= 4; ++k) {
        auto r = chi_k_kminus1(kt::path(4), k);
        EXPECT_EQ(r.chi, 2u);
        EXPECT_EQ(r.q_kk1, k + 1);
    }
    auto c5 = chi_k_kminus1(kt::cycle(5), 2);
    EXPECT_EQ(c5.chi, 3u);
    EXPECT_EQ(c5.q_kk1, 3u);
    EXPECT_EQ(chromatic_number_ki(kt::cycle(5), 2, 1), 3u);
    EXPECT_THROW(chi_k_kminus1(kt::path(2), 0), DomainError);
}

TEST(Kk1, CrossEngineAgreement)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        auto g = kt::random_graph(1 + rng() % 7, std::array{0.3, 0.6, 0.9}[t % 3], rng);
        for (unsigned k = 1; k <= 3; ++k) {
            const auto q = chi_k_kminus1(g, k).q_kk1;
            EXPECT_EQ(q, chromatic_number_ki(g, k, k - 1));
            EXPECT_EQ(q, brute_chromatic(g, k, k - 1));
        }
    }
}

TEST(Kk1, LeastPalette)
{
    EXPECT_EQ(least_palette_for(0, 3), 0u);
    EXPECT_EQ(least_palette_for(1, 3), 3u);
    EXPECT_EQ(least_palette_for(10, 2), 5u);
    EXPECT_EQ(least_palette_for(11, 2), 6u);
}
