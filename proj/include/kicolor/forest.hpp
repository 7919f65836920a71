#ifndef KICOLOR_FOREST_HPP
#define KICOLOR_FOREST_HPP

#include <kicolor/fvs.hpp>
#include <kicolor/graph.hpp>

#include <limits>
#include <utility>
#include <vector>

namespace kicolor {

inline constexpr Vertex no_vertex = std::numeric_limits<Vertex>::max();

struct RootedTree
{
    Vertex root = no_vertex;
    /// Every child appears before its parent; the root is last.
    std::vector<Vertex> post_order;
};

/**
 * The forest G[V \ S], one rooted tree per component. Each root is the
 * smallest vertex of its component and children are kept in ascending order,
 * so the decomposition is a pure function of (G, S).
 */
class RootedForest
{
public:
    RootedForest() = default;

    RootedForest(const Graph & g, const VertexSet & s)
        : in_forest_(g.n(), 1), parent_(g.n(), no_vertex), children_(g.n())
    {
        for (auto v : normalize_vertex_set(g, s))
            in_forest_[v] = 0;
        if (!verify_fvs(g, s))
            throw DomainError("vertex set is not a feedback vertex set: G[V\\S] has a cycle");

        std::vector<char> seen(g.n(), 0);
        for (Vertex r = 0; r < g.n(); ++r) {
            if (!in_forest_[r] || seen[r])
                continue;
            RootedTree tree;
            tree.root = r;
            // iterative DFS; frame = (vertex, next neighbor position)
            std::vector<std::pair<Vertex, std::size_t>> stack{{r, 0}};
            seen[r] = 1;
            while (!stack.empty()) {
                auto & [v, pos] = stack.back();
                auto nb = g.neighbors(v);
                bool descended = false;
                while (pos < nb.size()) {
                    auto u = nb[pos++];
                    if (!in_forest_[u] || seen[u])
                        continue;
                    seen[u] = 1;
                    parent_[u] = v;
                    children_[v].push_back(u);
                    stack.emplace_back(u, 0);
                    descended = true;
                    break;
                }
                if (!descended) {
                    tree.post_order.push_back(v);
                    stack.pop_back();
                }
            }
            trees_.push_back(std::move(tree));
        }
    }

    auto trees() const noexcept -> const std::vector<RootedTree> & { return trees_; }
    auto in_forest(Vertex v) const -> bool { return in_forest_.at(v) != 0; }
    auto parent(Vertex v) const -> Vertex { return parent_.at(v); }
    auto children(Vertex v) const -> const std::vector<Vertex> & { return children_.at(v); }

    /// Number of forest vertices.
    auto size() const -> std::size_t
    {
        std::size_t total = 0;
        for (const auto & t : trees_)
            total += t.post_order.size();
        return total;
    }

private:
    std::vector<char> in_forest_;
    std::vector<Vertex> parent_;
    std::vector<std::vector<Vertex>> children_;
    std::vector<RootedTree> trees_;
};

inline auto induced_forest(const Graph & g, const VertexSet & s) -> RootedForest
{
    return RootedForest(g, s);
}

} // namespace kicolor

#endif // KICOLOR_FOREST_HPP
