#ifndef KICOLOR_FVS_HPP
#define KICOLOR_FVS_HPP

#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kicolor {

using VertexSet = std::vector<Vertex>;

/// Sorted, duplicate-free copy; throws if a member is not a vertex of g.
inline auto normalize_vertex_set(const Graph & g, VertexSet s) -> VertexSet
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= g.n())
        throw DomainError("vertex " + std::to_string(s.back() + 1) + " is not in the graph (n = "
                          + std::to_string(g.n()) + ")");
    return s;
}

/// True iff G[V \ S] has no cycle.
inline auto verify_fvs(const Graph & g, const VertexSet & s) -> bool
{
    std::vector<char> removed(g.n(), 0);
    for (auto v : s) {
        if (v >= g.n())
            throw DomainError("vertex " + std::to_string(v + 1) + " is not in the graph");
        removed[v] = 1;
    }
    detail::DisjointSets ds(g.n());
    for (auto [a, b] : g.edges())
        if (!removed[a] && !removed[b] && !ds.unite(a, b))
            return false;
    return true;
}

enum class FvsMethod { exact, greedy, user_supplied };

inline auto to_string(FvsMethod m) -> std::string
{
    switch (m) {
    case FvsMethod::exact: return "exact";
    case FvsMethod::greedy: return "greedy";
    case FvsMethod::user_supplied: return "user-supplied";
    }
    return "unknown";
}

/// A feedback vertex set together with how it was obtained. Acyclicity of
/// the remainder is checked on construction.
class FvsResult
{
public:
    FvsResult(const Graph & g, VertexSet vertices, FvsMethod method, bool certified_minimum)
        : vertices_(normalize_vertex_set(g, std::move(vertices))), method_(method),
          certified_minimum_(certified_minimum)
    {
        if (!verify_fvs(g, vertices_))
            throw DomainError("vertex set is not a feedback vertex set");
    }

    auto vertices() const noexcept -> const VertexSet & { return vertices_; }
    auto size() const noexcept -> std::size_t { return vertices_.size(); }
    auto method() const noexcept -> FvsMethod { return method_; }
    auto certified_minimum() const noexcept -> bool { return certified_minimum_; }

private:
    VertexSet vertices_;
    FvsMethod method_;
    bool certified_minimum_;
};

namespace detail {

/// Drops the 2-core-external vertices: repeatedly removes degree <= 1.
inline auto strip_to_two_core(const Graph & g, std::vector<char> & alive) -> void
{
    std::vector<std::size_t> deg(g.n(), 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!alive[v])
            continue;
        for (auto u : g.neighbors(v))
            deg[v] += alive[u] ? 1 : 0;
        if (deg[v] <= 1)
            queue.push_back(v);
    }
    while (!queue.empty()) {
        auto v = queue.back();
        queue.pop_back();
        if (!alive[v])
            continue;
        alive[v] = 0;
        for (auto u : g.neighbors(v))
            if (alive[u] && --deg[u] == 1)
                queue.push_back(u);
    }
}

class ExactFvsSearch
{
public:
    ExactFvsSearch(const Graph & g, std::size_t best_size, std::uint64_t node_cap)
        : g_(g), best_size_(best_size), node_cap_(node_cap)
    {
    }

    auto run() -> std::optional<VertexSet>
    {
        State st;
        st.alive.assign(g_.n(), 1);
        st.forbidden.assign(g_.n(), 0);
        search(std::move(st));
        return best_;
    }

private:
    struct State
    {
        std::vector<char> alive;
        std::vector<char> forbidden;
        VertexSet chosen;
    };

    auto alive_degree(const State & st, Vertex v) const -> std::size_t
    {
        std::size_t d = 0;
        for (auto u : g_.neighbors(v))
            d += st.alive[u] ? 1 : 0;
        return d;
    }

    /// Returns false if the state cannot lead to a solution.
    auto reduce(State & st) const -> bool
    {
        for (bool changed = true; changed;) {
            changed = false;
            strip_to_two_core(g_, st.alive);

            DisjointSets forest(g_.n());
            for (auto [a, b] : g_.edges())
                if (st.alive[a] && st.alive[b] && st.forbidden[a] && st.forbidden[b]
                    && !forest.unite(a, b))
                    return false;

            // a free vertex touching one kept tree twice closes a cycle
            for (Vertex v = 0; v < g_.n(); ++v) {
                if (!st.alive[v] || st.forbidden[v])
                    continue;
                std::vector<std::size_t> roots;
                for (auto u : g_.neighbors(v))
                    if (st.alive[u] && st.forbidden[u])
                        roots.push_back(forest.find(u));
                std::sort(roots.begin(), roots.end());
                if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) {
                    st.alive[v] = 0;
                    st.chosen.push_back(v);
                    changed = true;
                }
            }
        }
        return true;
    }

    auto search(State st) -> void
    {
        if (++nodes_ > node_cap_)
            throw ResourceError("exact FVS search exceeded " + std::to_string(node_cap_) + " nodes");
        if (!reduce(st) || st.chosen.size() >= best_size_)
            return;

        std::size_t alive_n = 0, alive_m = 0, components = 0;
        DisjointSets ds(g_.n());
        std::vector<std::size_t> free_degrees;
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (!st.alive[v])
                continue;
            ++alive_n;
            auto d = alive_degree(st, v);
            alive_m += d;
            if (!st.forbidden[v])
                free_degrees.push_back(d);
            for (auto u : g_.neighbors(v))
                if (u > v && st.alive[u])
                    ds.unite(u, v);
        }
        alive_m /= 2;
        for (Vertex v = 0; v < g_.n(); ++v)
            if (st.alive[v] && ds.find(v) == v)
                ++components;
        const std::size_t cyclomatic = alive_m + components - alive_n;

        if (cyclomatic == 0) {
            best_size_ = st.chosen.size();
            best_ = st.chosen;
            std::sort(best_->begin(), best_->end());
            return;
        }

        // each deletion of a degree-d vertex lowers the cycle rank by at most d-1
        std::sort(free_degrees.begin(), free_degrees.end(), std::greater<>());
        std::size_t covered = 0, lower = 0;
        for (auto d : free_degrees) {
            if (covered >= cyclomatic)
                break;
            covered += d > 0 ? d - 1 : 0;
            ++lower;
        }
        if (covered < cyclomatic || st.chosen.size() + lower >= best_size_)
            return;

        Vertex pick = g_.n();
        std::size_t pick_deg = 0;
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (!st.alive[v] || st.forbidden[v])
                continue;
            auto d = alive_degree(st, v);
            if (pick == g_.n() || d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        if (pick == g_.n())
            return;

        State take = st;
        take.alive[pick] = 0;
        take.chosen.push_back(pick);
        search(std::move(take));

        st.forbidden[pick] = 1;
        search(std::move(st));
    }

    const Graph & g_;
    std::size_t best_size_;
    std::uint64_t node_cap_;
    std::uint64_t nodes_ = 0;
    std::optional<VertexSet> best_;
};

} // namespace detail

/// Default node cap for the exact search before callers fall back to greedy.
inline constexpr std::uint64_t default_fvs_node_cap = 5'000'000;

/**
 * Some valid FVS, no optimality guarantee: repeatedly strip to the 2-core and
 * delete a maximum-degree vertex of it, then drop members that turn out to be
 * redundant (latest first).
 */
inline auto find_fvs_greedy(const Graph & g) -> FvsResult
{
    std::vector<char> alive(g.n(), 1);
    VertexSet s;
    for (;;) {
        detail::strip_to_two_core(g, alive);
        Vertex pick = g.n();
        std::size_t pick_deg = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (!alive[v])
                continue;
            std::size_t d = 0;
            for (auto u : g.neighbors(v))
                d += alive[u] ? 1 : 0;
            if (pick == g.n() || d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        if (pick == g.n())
            break;
        alive[pick] = 0;
        s.push_back(pick);
    }
    for (std::size_t j = s.size(); j-- > 0;) {
        VertexSet trial = s;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(j));
        if (verify_fvs(g, trial))
            s = std::move(trial);
    }
    return FvsResult(g, std::move(s), FvsMethod::greedy, false);
}

/**
 * Minimum FVS by branch and reduce, or nothing if every FVS is larger than
 * `budget`. Throws ResourceError once `node_cap` search nodes are spent.
 */
inline auto find_fvs_exact(const Graph & g, std::size_t budget,
                           std::uint64_t node_cap = default_fvs_node_cap) -> std::optional<FvsResult>
{
    auto incumbent = find_fvs_greedy(g);
    std::optional<VertexSet> best;
    std::size_t best_size = budget + 1;
    if (incumbent.size() <= budget) {
        best = incumbent.vertices();
        best_size = incumbent.size();
    }
    detail::ExactFvsSearch search(g, best_size, node_cap);
    if (auto better = search.run())
        best = std::move(better);
    if (!best)
        return std::nullopt;
    return FvsResult(g, std::move(*best), FvsMethod::exact, true);
}

/// Exact search with the whole vertex count as budget, falling back to greedy
/// when the node cap runs out.
inline auto find_fvs(const Graph & g, std::uint64_t node_cap = default_fvs_node_cap) -> FvsResult
{
    try {
        if (auto r = find_fvs_exact(g, g.n(), node_cap))
            return std::move(*r);
    }
    catch (const ResourceError &) {
    }
    return find_fvs_greedy(g);
}

/// User-supplied set, verified.
inline auto user_fvs(const Graph & g, VertexSet s) -> FvsResult
{
    return FvsResult(g, std::move(s), FvsMethod::user_supplied, false);
}

/// FVS file: one 1-based vertex index per line; blank lines ignored.
inline auto parse_fvs_file(std::istream & in, std::size_t n) -> VertexSet
{
    VertexSet s;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        long long v = 0;
        std::string extra;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (!(ls >> v) || (ls >> extra))
            throw ParseError("expected a single vertex index", lineno);
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw ParseError("vertex index out of range [1.." + std::to_string(n) + "]", lineno);
        s.push_back(static_cast<Vertex>(v - 1));
    }
    return s;
}

inline auto write_fvs_file(std::ostream & out, const VertexSet & s) -> void
{
    for (auto v : s)
        out << v + 1 << '\n';
}

} // namespace kicolor

#endif // KICOLOR_FVS_HPP
