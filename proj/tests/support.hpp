#ifndef KICOLOR_TESTS_SUPPORT_HPP
#define KICOLOR_TESTS_SUPPORT_HPP

#include <kicolor/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace kicolor::testing {

inline auto make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> one_based) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (auto [a, b] : one_based)
        e.emplace_back(a - 1, b - 1);
    return Graph(n, e);
}

inline auto path(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v < n; ++v)
        e.emplace_back(v - 1, v);
    return Graph(n, e);
}

inline auto cycle(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 0; v < n; ++v)
        e.emplace_back(v, (v + 1) % n);
    return Graph(n, e);
}

inline auto complete(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            e.emplace_back(a, b);
    return Graph(n, e);
}

inline auto star(std::size_t leaves) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v <= leaves; ++v)
        e.emplace_back(0, v);
    return Graph(leaves + 1, e);
}

inline auto petersen() -> Graph
{
    return make_graph(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 7}, {3, 8},
                           {4, 9}, {5, 10}, {6, 8}, {8, 10}, {7, 10}, {7, 9}, {6, 9}});
}

inline auto random_graph(std::size_t n, double density, std::mt19937_64 & rng) -> Graph
{
    std::bernoulli_distribution coin(density);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng))
                e.emplace_back(a, b);
    return Graph(n, e);
}

/// Uniform-ish random labelled tree by attaching each vertex to an earlier one.
inline auto random_tree(std::size_t n, std::mt19937_64 & rng) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v < n; ++v)
        e.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
    return Graph(n, e);
}

inline auto random_permutation(std::size_t n, std::mt19937_64 & rng) -> std::vector<Vertex>
{
    std::vector<Vertex> p(n);
    for (Vertex v = 0; v < n; ++v)
        p[v] = v;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// All k-subsets of {0..q-1} as sorted integer vectors, from next_permutation
/// over a selection mask; independent of the library's Psi.
inline auto naive_subsets(unsigned q, unsigned k) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> out;
    if (k > q)
        return out;
    std::vector<char> mask(q, 0);
    std::fill(mask.end() - k, mask.end(), 1);
    do {
        std::vector<int> s;
        for (unsigned c = 0; c < q; ++c)
            if (mask[c])
                s.push_back(static_cast<int>(c));
        out.push_back(s);
    } while (std::next_permutation(mask.begin(), mask.end()));
    return out;
}

inline auto naive_overlap(const std::vector<int> & a, const std::vector<int> & b) -> unsigned
{
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return static_cast<unsigned>(common.size());
}

/**
 * Counts proper (q,k,i)-colorings by walking the full product of subsets
 * with a mixed-radix counter, checking every edge at the leaves. No pruning,
 * so keep |subsets|^n small.
 */
inline auto naive_count(const Graph & g, unsigned q, unsigned k, unsigned i) -> std::uint64_t
{
    const auto subsets = naive_subsets(q, k);
    const auto n = g.n();
    if (n == 0)
        return 1;
    if (subsets.empty())
        return 0;
    const auto edges = g.edges();
    std::vector<std::size_t> digit(n, 0);
    std::uint64_t total = 0;
    while (true) {
        bool ok = true;
        for (auto [a, b] : edges)
            if (naive_overlap(subsets[digit[a]], subsets[digit[b]]) > i) {
                ok = false;
                break;
            }
        total += ok;
        std::size_t pos = 0;
        while (pos < n && ++digit[pos] == subsets.size())
            digit[pos++] = 0;
        if (pos == n)
            break;
    }
    return total;
}

inline auto naive_decide(const Graph & g, unsigned q, unsigned k, unsigned i) -> bool
{
    return naive_count(g, q, k, i) > 0;
}

/// Least q >= k with a proper coloring (naive), searched up to `stop`.
inline auto naive_chromatic(const Graph & g, unsigned k, unsigned i, unsigned stop) -> unsigned
{
    if (g.n() == 0)
        return 0;
    for (unsigned q = k; q <= stop; ++q)
        if (naive_decide(g, q, k, i))
            return q;
    return 0;
}

/// Acyclicity by edge counting per component: a forest has n - c edges.
inline auto naive_is_forest_without(const Graph & g, const std::vector<Vertex> & removed) -> bool
{
    std::vector<char> gone(g.n(), 0);
    for (auto v : removed)
        gone[v] = 1;
    std::vector<int> comp(g.n(), -1);
    int components = 0;
    std::size_t alive = 0, edges = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (gone[s] || comp[s] >= 0)
            continue;
        ++components;
        std::vector<Vertex> stack{s};
        comp[s] = components;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            ++alive;
            for (auto u : g.neighbors(v))
                if (!gone[u] && comp[u] < 0) {
                    comp[u] = components;
                    stack.push_back(u);
                }
        }
    }
    for (auto [a, b] : g.edges())
        if (!gone[a] && !gone[b])
            ++edges;
    return edges + static_cast<std::size_t>(components) == alive;
}

/// Minimum FVS size by trying subsets in increasing size (n <= ~12).
inline auto naive_min_fvs_size(const Graph & g) -> std::size_t
{
    const auto n = g.n();
    for (std::size_t size = 0; size <= n; ++size) {
        std::vector<char> mask(n, 0);
        std::fill(mask.end() - static_cast<std::ptrdiff_t>(size), mask.end(), 1);
        do {
            std::vector<Vertex> s;
            for (Vertex v = 0; v < n; ++v)
                if (mask[v])
                    s.push_back(v);
            if (naive_is_forest_without(g, s))
                return size;
        } while (std::next_permutation(mask.begin(), mask.end()));
    }
    return n;
}

/// Independence number by subset enumeration (n <= ~20).
inline auto naive_alpha(const Graph & g) -> std::size_t
{
    const auto n = g.n();
    std::size_t best = 0;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        bool ok = true;
        for (auto [a, b] : g.edges())
            if ((m >> a & 1U) && (m >> b & 1U)) {
                ok = false;
                break;
            }
        if (ok)
            best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(m)));
    }
    return best;
}

/// Classic chromatic number by trying t-colorings with plain backtracking.
inline auto naive_classic_chromatic(const Graph & g) -> unsigned
{
    const auto n = g.n();
    if (n == 0)
        return 0;
    std::vector<int> col(n, -1);
    for (unsigned t = 1;; ++t) {
        auto place = [&](auto && self, Vertex v) -> bool {
            if (v == n)
                return true;
            for (int c = 0; c < static_cast<int>(t); ++c) {
                bool ok = true;
                for (auto u : g.neighbors(v))
                    if (u < v && col[u] == c)
                        ok = false;
                if (!ok)
                    continue;
                col[v] = c;
                if (self(self, v + 1))
                    return true;
            }
            return false;
        };
        if (place(place, 0))
            return t;
    }
}

} // namespace kicolor::testing

#endif // KICOLOR_TESTS_SUPPORT_HPP
