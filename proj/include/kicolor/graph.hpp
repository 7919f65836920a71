#ifndef KICOLOR_GRAPH_HPP
#define KICOLOR_GRAPH_HPP

#include <kicolor/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kicolor {

using Vertex = std::size_t;

/**
 * Simple undirected graph on the dense vertex set 0..n-1. Neighbor lists are
 * sorted and symmetric; self-loops are rejected and parallel edges collapse.
 * Immutable once built.
 */
class Graph
{
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adjacency_(n) {}

    Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adjacency_(n)
    {
        for (auto [a, b] : edges) {
            if (a >= n || b >= n)
                throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b)
                                  + ") out of range for n = " + std::to_string(n));
            if (a == b)
                throw DomainError("self-loop at vertex " + std::to_string(a));
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        for (auto & nb : adjacency_) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            edge_count_ += nb.size();
        }
        edge_count_ /= 2;
    }

    auto n() const noexcept -> std::size_t { return adjacency_.size(); }
    auto edge_count() const noexcept -> std::size_t { return edge_count_; }

    auto neighbors(Vertex v) const -> std::span<const Vertex> { return adjacency_.at(v); }
    auto degree(Vertex v) const -> std::size_t { return adjacency_.at(v).size(); }

    auto has_edge(Vertex a, Vertex b) const -> bool
    {
        const auto & nb = adjacency_.at(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    /// Edges as (u, v) with u < v, sorted.
    auto edges() const -> std::vector<std::pair<Vertex, Vertex>>
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < n(); ++u)
            for (auto v : adjacency_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    friend auto operator==(const Graph &, const Graph &) -> bool = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

namespace detail {

class DisjointSets
{
public:
    explicit DisjointSets(std::size_t n) : parent_(n)
    {
        for (std::size_t v = 0; v < n; ++v)
            parent_[v] = v;
    }

    auto find(std::size_t v) -> std::size_t
    {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// False when a and b were already joined.
    auto unite(std::size_t a, std::size_t b) -> bool
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

/// Applies a vertex permutation: vertex v of g becomes perm[v].
inline auto relabel(const Graph & g, std::span<const Vertex> perm) -> Graph
{
    if (perm.size() != g.n())
        throw DomainError("permutation size does not match vertex count");
    auto edges = g.edges();
    for (auto & [a, b] : edges) {
        a = perm[a];
        b = perm[b];
    }
    return Graph(g.n(), edges);
}

/// The subgraph induced by `keep`, renumbered in the order given.
inline auto induced_subgraph(const Graph & g, std::span<const Vertex> keep) -> Graph
{
    std::vector<std::size_t> pos(g.n(), g.n());
    for (std::size_t j = 0; j < keep.size(); ++j)
        pos.at(keep[j]) = j;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [a, b] : g.edges())
        if (pos[a] != g.n() && pos[b] != g.n())
            edges.emplace_back(pos[a], pos[b]);
    return Graph(keep.size(), edges);
}

/**
 * Reads the DIMACS .col format: "c" comment lines, a single
 * "p edge <n> <m>" header (also "p col"), then "e <u> <v>" lines with
 * 1-based endpoints. Duplicate edges are merged; the header's edge count is
 * informational only.
 */
inline auto parse_dimacs_graph(std::istream & in) -> Graph
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string fmt;
            long long nn = -1, mm = -1;
            if (have_header)
                throw ParseError("duplicate problem line", lineno);
            if (!(ls >> fmt >> nn >> mm) || (fmt != "edge" && fmt != "col") || nn < 0 || mm < 0)
                throw ParseError("malformed header, expected 'p edge <n> <m>'", lineno);
            std::string extra;
            if (ls >> extra)
                throw ParseError("trailing tokens in header", lineno);
            n = static_cast<std::size_t>(nn);
            have_header = true;
        }
        else if (tag == "e") {
            if (!have_header)
                throw ParseError("edge line before 'p edge' header", lineno);
            long long a = 0, b = 0;
            std::string extra;
            if (!(ls >> a >> b) || (ls >> extra))
                throw ParseError("malformed edge line, expected 'e <u> <v>'", lineno);
            if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n)
                throw ParseError("vertex index out of range [1.." + std::to_string(n) + "]", lineno);
            if (a == b)
                throw ParseError("self-loop at vertex " + std::to_string(a), lineno);
            edges.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
        }
        else {
            throw ParseError("unrecognised line tag '" + tag + "'", lineno);
        }
    }
    if (!have_header)
        throw ParseError("missing 'p edge <n> <m>' header", 0);
    return Graph(n, edges);
}

inline auto parse_dimacs_graph(const std::string & text) -> Graph
{
    std::istringstream in(text);
    return parse_dimacs_graph(in);
}

/// Canonical writer: header then "e u v" with u < v in sorted order, 1-based.
inline auto write_dimacs_graph(std::ostream & out, const Graph & g) -> void
{
    out << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [a, b] : g.edges())
        out << "e " << a + 1 << ' ' << b + 1 << '\n';
}

inline auto to_dimacs_string(const Graph & g) -> std::string
{
    std::ostringstream out;
    write_dimacs_graph(out, g);
    return out.str();
}

} // namespace kicolor

#endif // KICOLOR_GRAPH_HPP
