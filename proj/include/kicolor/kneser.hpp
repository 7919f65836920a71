#ifndef KICOLOR_KNESER_HPP
#define KICOLOR_KNESER_HPP

#include <kicolor/color_set.hpp>
#include <kicolor/coloring.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>
#include <kicolor/oracle.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kicolor {

/// K(r,k): vertex v carries the k-subset labels[v] of [r] (canonical Psi
/// order); two vertices are adjacent iff their labels are disjoint.
struct KneserGraph
{
    unsigned r = 0;
    unsigned k = 0;
    Graph graph;
    std::vector<ColorSet> labels;
    /// Every vertex colored by its own label: a proper (r,k,0)-coloring.
    Coloring natural;
};

inline auto build_kneser(unsigned r, unsigned k) -> KneserGraph
{
    if (k < 1 || r < k || r > max_palette)
        throw DomainError("Kneser graph needs 1 <= k <= r <= 64, got r = " + std::to_string(r)
                          + ", k = " + std::to_string(k));
    Psi psi(r, k);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < psi.size(); ++a)
        for (Vertex b = a + 1; b < psi.size(); ++b)
            if ((psi[a].bits() & psi[b].bits()) == 0)
                edges.emplace_back(a, b);
    KneserGraph kg;
    kg.r = r;
    kg.k = k;
    kg.graph = Graph(psi.size(), edges);
    kg.labels.assign(psi.begin(), psi.end());
    kg.natural = Coloring(psi.size(), r, k);
    for (Vertex v = 0; v < psi.size(); ++v)
        kg.natural.assign(v, psi[v]);
    return kg;
}

/// Labels {1..k-1} plus 2k-1, 2k and 2k+1 respectively.
inline auto canonical_ti3set_labels(unsigned r, unsigned k) -> std::array<ColorSet, 3>
{
    if (k < 1 || r < 2 * k + 1)
        throw DomainError("totally independent 3-set needs r >= 2k+1 (r = " + std::to_string(r)
                          + ", k = " + std::to_string(k) + ")");
    std::array<ColorSet, 3> out;
    for (unsigned j = 0; j < 3; ++j) {
        std::vector<unsigned> colors;
        for (unsigned c = 1; c < k; ++c)
            colors.push_back(c);
        colors.push_back(2 * k - 1 + j);
        out[j] = make_color_set(colors, r);
    }
    return out;
}

/**
 * Vertices of K(r,k) sharing the colors {1..k-1} and differing in the last
 * one (2k-1, 2k, 2k+1). For k = 1 the shared part is empty and the three
 * singletons are pairwise adjacent; only the three-distinct-colors property
 * survives there.
 */
inline auto canonical_ti3set(unsigned r, unsigned k) -> std::array<Vertex, 3>
{
    const auto labels = canonical_ti3set_labels(r, k);
    Psi psi(r, k);
    return {psi.index_of(labels[0]), psi.index_of(labels[1]), psi.index_of(labels[2])};
}

/// Per-color usage counts of a coloring, keyed by 1-based color, zeros included.
inline auto color_occurrence_profile(const Coloring & f) -> std::map<unsigned, std::size_t>
{
    std::map<unsigned, std::size_t> profile;
    for (unsigned c = 1; c <= f.q(); ++c)
        profile[c] = 0;
    for (Vertex v = 0; v < f.n(); ++v)
        if (f.has(v))
            for (auto c : f.at(v).colors())
                ++profile[c];
    return profile;
}

/// As above, after checking f is a proper (r,k,0)-coloring of the Kneser graph.
inline auto color_occurrence_profile(const KneserGraph & kg, const Coloring & f)
    -> std::map<unsigned, std::size_t>
{
    if (f.n() != kg.graph.n() || f.k() != kg.k || !f.is_total()
        || !is_proper(kg.graph, f, Params{f.q(), kg.k, 0}))
        throw DomainError("not a proper (q," + std::to_string(kg.k) + ",0)-coloring of K("
                          + std::to_string(kg.r) + "," + std::to_string(kg.k) + ")");
    return color_occurrence_profile(f);
}

/// Color classes (vertex sets per color), sorted: equal signatures means the
/// colorings agree up to a permutation of colors.
inline auto color_class_signature(const Coloring & f) -> std::vector<std::vector<Vertex>>
{
    std::vector<std::vector<Vertex>> classes(f.q());
    for (Vertex v = 0; v < f.n(); ++v)
        if (f.has(v))
            for (auto c : f.at(v).colors())
                classes[c - 1].push_back(v);
    std::sort(classes.begin(), classes.end());
    return classes;
}

struct UniquenessReport
{
    bool unique = true;
    std::size_t colorings = 0;
};

/**
 * Enumerates every proper (r,k,0)-coloring of K(r,k) and checks each one is
 * a relabeling of the natural coloring. Expect r! colorings when it holds.
 */
inline auto natural_uniqueness_report(unsigned r, unsigned k,
                                      std::uint64_t budget = default_oracle_budget) -> UniquenessReport
{
    if (r < 2 * k + 1)
        throw DomainError("natural-coloring uniqueness is stated for r >= 2k+1");
    const auto kg = build_kneser(r, k);
    const auto reference = color_class_signature(kg.natural);
    UniquenessReport report;
    enumerate_proper_colorings(
        kg.graph, Params{r, k, 0},
        [&](const Coloring & f) {
            ++report.colorings;
            if (color_class_signature(f) != reference) {
                report.unique = false;
                return false;
            }
            return true;
        },
        budget, VertexOrder::natural);
    return report;
}

inline auto check_natural_uniqueness(unsigned r, unsigned k,
                                     std::uint64_t budget = default_oracle_budget) -> bool
{
    return natural_uniqueness_report(r, k, budget).unique;
}

/// Kneser labels as "v <vertex> {set}" lines.
inline auto write_kneser_labels(std::ostream & out, const KneserGraph & kg) -> void
{
    write_coloring(out, kg.natural);
}

} // namespace kicolor

#endif // KICOLOR_KNESER_HPP
