#ifndef KICOLOR_ORACLE_HPP
#define KICOLOR_ORACLE_HPP

#include <kicolor/color_set.hpp>
#include <kicolor/coloring.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

namespace kicolor {

/// Default cap on search-node expansions for every oracle routine.
inline constexpr std::uint64_t default_oracle_budget = 100'000'000;

enum class VertexOrder {
    /// 0..n-1; the first coloring found is then the lexicographically least.
    natural,
    /// descending degree, ties by index; prunes harder.
    by_degree,
};

namespace detail {

class BruteColoring
{
public:
    BruteColoring(const Graph & g, const Params & params, std::uint64_t budget, VertexOrder order)
        : g_(g), params_(params), psi_(params.q, params.k), budget_(budget), order_(g.n()),
          earlier_(g.n()), current_(g.n(), 0)
    {
        params.validate();
        for (const auto & c : psi_)
            bits_.push_back(c.bits());
        std::iota(order_.begin(), order_.end(), Vertex{0});
        if (order == VertexOrder::by_degree)
            std::stable_sort(order_.begin(), order_.end(),
                             [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
        std::vector<std::size_t> pos(g.n());
        for (std::size_t j = 0; j < order_.size(); ++j)
            pos[order_[j]] = j;
        for (std::size_t j = 0; j < order_.size(); ++j)
            for (auto u : g.neighbors(order_[j]))
                if (pos[u] < j)
                    earlier_[j].push_back(pos[u]);
    }

    auto psi() const noexcept -> const Psi & { return psi_; }

    /// visit(indices by vertex) -> bool (keep going). Returns false if stopped early.
    template <class Visit>
    auto run(Visit && visit) -> bool
    {
        nodes_ = 0;
        std::vector<std::uint32_t> by_vertex(g_.n(), 0);
        return descend(0, by_vertex, visit);
    }

    /// Number of proper assignments; the last vertex is tallied without descending.
    auto count() -> std::uint64_t
    {
        nodes_ = 0;
        if (g_.n() == 0)
            return 1;
        return count_from(0);
    }

private:
    auto tick() -> void
    {
        if (++nodes_ > budget_)
            throw ResourceError("oracle exceeded its budget of " + std::to_string(budget_) + " nodes");
    }

    auto fits(std::size_t pos, std::uint32_t c) const -> bool
    {
        for (auto e : earlier_[pos])
            if (static_cast<unsigned>(std::popcount(bits_[c] & bits_[current_[e]])) > params_.i)
                return false;
        return true;
    }

    template <class Visit>
    auto descend(std::size_t pos, std::vector<std::uint32_t> & by_vertex, Visit & visit) -> bool
    {
        tick();
        if (pos == order_.size())
            return visit(static_cast<const std::vector<std::uint32_t> &>(by_vertex));
        for (std::uint32_t c = 0; c < bits_.size(); ++c) {
            if (!fits(pos, c))
                continue;
            current_[pos] = c;
            by_vertex[order_[pos]] = c;
            if (!descend(pos + 1, by_vertex, visit))
                return false;
        }
        return true;
    }

    auto count_from(std::size_t pos) -> std::uint64_t
    {
        tick();
        std::uint64_t total = 0;
        const bool last = pos + 1 == order_.size();
        for (std::uint32_t c = 0; c < bits_.size(); ++c) {
            if (!fits(pos, c))
                continue;
            if (last) {
                ++total;
                continue;
            }
            current_[pos] = c;
            total += count_from(pos + 1);
        }
        return total;
    }

    const Graph & g_;
    Params params_;
    Psi psi_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<Vertex> order_;
    std::vector<std::vector<std::size_t>> earlier_;
    std::vector<std::uint32_t> current_;
};

} // namespace detail

/// Exhaustive backtracking decision.
inline auto brute_decide(const Graph & g, const Params & params,
                         std::uint64_t budget = default_oracle_budget) -> bool
{
    detail::BruteColoring search(g, params, budget, VertexOrder::by_degree);
    return !search.run([](const std::vector<std::uint32_t> &) { return false; });
}

inline auto brute_count(const Graph & g, const Params & params,
                        std::uint64_t budget = default_oracle_budget) -> boost::multiprecision::cpp_int
{
    detail::BruteColoring search(g, params, budget, VertexOrder::by_degree);
    return search.count();
}

/**
 * Calls visit(const Coloring &) for every proper coloring, in lexicographic
 * order of (Psi index of vertex 0, vertex 1, ...) when order is natural.
 * Stops when visit returns false.
 */
template <class Visit>
auto enumerate_proper_colorings(const Graph & g, const Params & params, Visit && visit,
                                std::uint64_t budget = default_oracle_budget,
                                VertexOrder order = VertexOrder::natural) -> void
{
    detail::BruteColoring search(g, params, budget, order);
    const auto & psi = search.psi();
    search.run([&](const std::vector<std::uint32_t> & idx) {
        Coloring f(g.n(), params.q, params.k);
        for (Vertex v = 0; v < g.n(); ++v)
            f.assign(v, psi[idx[v]]);
        return static_cast<bool>(visit(static_cast<const Coloring &>(f)));
    });
}

/// Least q >= k that admits a proper (q,k,i)-coloring, searched up to k(n+2).
inline auto brute_chromatic(const Graph & g, unsigned k, unsigned i,
                            std::uint64_t budget = default_oracle_budget) -> unsigned
{
    if (k < 1)
        throw DomainError("k must be at least 1");
    if (g.n() == 0)
        return 0;
    const auto stop = std::min<std::size_t>(static_cast<std::size_t>(k) * (g.n() + 2), max_palette);
    for (unsigned q = k; q <= stop; ++q)
        if (brute_decide(g, Params{q, k, i}, budget))
            return q;
    throw DomainError("no proper coloring within " + std::to_string(stop) + " colors");
}

namespace detail {

class MaxIndependentSet
{
public:
    MaxIndependentSet(const Graph & g, std::uint64_t budget) : adj_(g.n(), 0), budget_(budget)
    {
        for (auto [a, b] : g.edges()) {
            adj_[a] |= std::uint64_t{1} << b;
            adj_[b] |= std::uint64_t{1} << a;
        }
    }

    auto solve() -> std::size_t
    {
        const std::uint64_t all = adj_.empty() ? 0
                                  : adj_.size() == 64 ? ~std::uint64_t{0}
                                                      : (std::uint64_t{1} << adj_.size()) - 1;
        search(all, 0);
        return best_;
    }

private:
    /// Greedy clique cover of P: its size bounds alpha(G[P]) from above.
    auto clique_cover(std::uint64_t p) const -> std::size_t
    {
        std::size_t cliques = 0;
        while (p) {
            auto v = std::countr_zero(p);
            std::uint64_t cand = p & adj_[v];
            p &= p - 1;
            while (cand) {
                auto u = std::countr_zero(cand);
                p &= ~(std::uint64_t{1} << u);
                cand &= adj_[u];
            }
            ++cliques;
        }
        return cliques;
    }

    auto search(std::uint64_t p, std::size_t size) -> void
    {
        if (++nodes_ > budget_)
            throw ResourceError("independent-set search exceeded its budget of "
                                + std::to_string(budget_) + " nodes");
        // vertices of degree <= 1 inside P always belong to some maximum set
        for (bool again = true; again && p;) {
            again = false;
            for (auto rest = p; rest; rest &= rest - 1) {
                auto v = std::countr_zero(rest);
                auto nb = adj_[v] & p;
                if (std::popcount(nb) <= 1) {
                    p &= ~(nb | (std::uint64_t{1} << v));
                    ++size;
                    again = true;
                    break;
                }
            }
        }
        if (!p) {
            best_ = std::max(best_, size);
            return;
        }
        if (size + clique_cover(p) <= best_)
            return;
        int pick = -1, pick_deg = -1;
        for (auto rest = p; rest; rest &= rest - 1) {
            auto v = std::countr_zero(rest);
            auto d = std::popcount(adj_[v] & p);
            if (d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        const auto bit = std::uint64_t{1} << pick;
        search(p & ~(adj_[pick] | bit), size + 1);
        search(p & ~bit, size);
    }

    std::vector<std::uint64_t> adj_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::size_t best_ = 0;
};

} // namespace detail

/// Exact independence number by branch and bound (n <= 64).
inline auto max_independent_set_size(const Graph & g, std::uint64_t budget = default_oracle_budget)
    -> std::size_t
{
    if (g.n() > 64)
        throw ResourceError("independent-set oracle supports at most 64 vertices");
    return detail::MaxIndependentSet(g, budget).solve();
}

} // namespace kicolor

#endif // KICOLOR_ORACLE_HPP
