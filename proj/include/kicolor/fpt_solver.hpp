#ifndef KICOLOR_FPT_SOLVER_HPP
#define KICOLOR_FPT_SOLVER_HPP

#include <kicolor/color_set.hpp>
#include <kicolor/coloring.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/forest.hpp>
#include <kicolor/fvs.hpp>
#include <kicolor/graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace kicolor {

using BigCount = boost::multiprecision::cpp_int;

/**
 * Per-forest-vertex rows over the canonical Psi order. Rows of vertices in
 * the FVS are left empty.
 */
template <class Entry>
struct DpTable
{
    std::vector<std::vector<Entry>> rows;

    auto row(Vertex w) const -> const std::vector<Entry> & { return rows.at(w); }
};

namespace detail {

inline constexpr std::size_t not_in_s = static_cast<std::size_t>(-1);

/// Read-only data shared by every h-evaluation of one (G, S, params).
class FptInstance
{
public:
    FptInstance(const Graph & g, const Params & params, const VertexSet & s)
        : g_(g), params_(params), s_(normalize_vertex_set(g, s)), forest_(g, s_),
          psi_(params.q, params.k), s_pos_(g.n(), not_in_s), s_neighbors_(g.n()),
          earlier_s_neighbors_(s_.size())
    {
        params.validate();
        psi_bits_.reserve(psi_.size());
        for (const auto & c : psi_)
            psi_bits_.push_back(c.bits());
        for (std::size_t j = 0; j < s_.size(); ++j)
            s_pos_[s_[j]] = j;
        for (Vertex v = 0; v < g.n(); ++v) {
            for (auto u : g.neighbors(v)) {
                if (s_pos_[u] == not_in_s)
                    continue;
                if (s_pos_[v] == not_in_s)
                    s_neighbors_[v].push_back(s_pos_[u]);
                else if (s_pos_[u] < s_pos_[v])
                    earlier_s_neighbors_[s_pos_[v]].push_back(s_pos_[u]);
            }
        }
    }

    auto graph() const noexcept -> const Graph & { return g_; }
    auto params() const noexcept -> const Params & { return params_; }
    auto s() const noexcept -> const VertexSet & { return s_; }
    auto forest() const noexcept -> const RootedForest & { return forest_; }
    auto psi() const noexcept -> const Psi & { return psi_; }
    auto psi_size() const noexcept -> std::size_t { return psi_bits_.size(); }
    auto bits(std::size_t idx) const noexcept -> std::uint64_t { return psi_bits_[idx]; }

    auto legal(std::size_t a, std::size_t b) const noexcept -> bool
    {
        return static_cast<unsigned>(std::popcount(psi_bits_[a] & psi_bits_[b])) <= params_.i;
    }

    /// S-neighbors of a forest vertex, as positions into s().
    auto s_neighbors(Vertex w) const -> const std::vector<std::size_t> & { return s_neighbors_[w]; }

    /// S-neighbors of the j-th S vertex that come earlier in s().
    auto earlier_s_neighbors(std::size_t j) const -> const std::vector<std::size_t> &
    {
        return earlier_s_neighbors_[j];
    }

    /// (w, C) is h-compatible: C legal against h(x) for every S-neighbor x.
    auto compatible(Vertex w, std::size_t c, const std::vector<std::uint32_t> & h) const -> bool
    {
        for (auto pos : s_neighbors_[w])
            if (!legal(c, h[pos]))
                return false;
        return true;
    }

    /// Converts a Coloring restricted to S into Psi indices, checking totality
    /// on S, nothing outside S, and properness on G[S].
    auto h_indices(const Coloring & h) const -> std::vector<std::uint32_t>
    {
        if (h.n() != g_.n() || h.q() != params_.q || h.k() != params_.k)
            throw DomainError("coloring of S does not match graph or parameters "
                              + params_.to_string());
        std::vector<std::uint32_t> out(s_.size());
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (s_pos_[v] == not_in_s) {
                if (h.has(v))
                    throw DomainError("coloring of S also colors vertex " + std::to_string(v + 1)
                                      + " outside S");
                continue;
            }
            out[s_pos_[v]] = static_cast<std::uint32_t>(psi_.index_of(h.at(v)));
        }
        for (std::size_t j = 0; j < s_.size(); ++j)
            for (auto e : earlier_s_neighbors_[j])
                if (!legal(out[j], out[e]))
                    throw DomainError("coloring of S is not proper on G[S]");
        return out;
    }

private:
    const Graph & g_;
    Params params_;
    VertexSet s_;
    RootedForest forest_;
    Psi psi_;
    std::vector<std::uint64_t> psi_bits_;
    std::vector<std::size_t> s_pos_;
    std::vector<std::vector<std::size_t>> s_neighbors_;
    std::vector<std::vector<std::size_t>> earlier_s_neighbors_;
};

/**
 * DP evaluator for a single coloring h of S. Owns its table rows, which are
 * reused across consecutive h so one evaluator per worker suffices.
 */
class FptEvaluator
{
public:
    explicit FptEvaluator(const FptInstance & inst) : inst_(inst) {}

    /// Fills the boolean table for one tree. Unless `full_table` is set, gives up
    /// (returning false) as soon as some row is all zero.
    auto decide_tree(const RootedTree & tree, const std::vector<std::uint32_t> & h,
                     bool full_table = false) -> bool
    {
        bool feasible = true;
        const auto p = inst_.psi_size();
        ensure_bool_rows();
        for (auto w : tree.post_order) {
            auto & row = bool_rows_[w];
            row.assign(p, 0);
            const auto & kids = inst_.forest().children(w);
            bool any = false;
            for (std::size_t c = 0; c < p; ++c) {
                if (!inst_.compatible(w, c, h))
                    continue;
                bool ok = true;
                for (auto u : kids) {
                    if (!has_legal_partner(c, feasible_[u])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    row[c] = 1;
                    any = true;
                }
            }
            if (!any) {
                feasible = false;
                if (!full_table)
                    return false;
            }
            auto & feas = feasible_[w];
            feas.clear();
            for (std::size_t c = 0; c < p; ++c)
                if (row[c])
                    feas.push_back(static_cast<std::uint32_t>(c));
        }
        return feasible;
    }

    auto decide(const std::vector<std::uint32_t> & h) -> bool
    {
        for (const auto & tree : inst_.forest().trees())
            if (!decide_tree(tree, h))
                return false;
        return true;
    }

    /// Number of proper extensions of h to the whole graph.
    auto count(const std::vector<std::uint32_t> & h) -> BigCount
    {
        const auto p = inst_.psi_size();
        ensure_count_rows();
        BigCount total = 1;
        for (const auto & tree : inst_.forest().trees()) {
            for (auto w : tree.post_order) {
                auto & row = count_rows_[w];
                row.assign(p, BigCount(0));
                const auto & kids = inst_.forest().children(w);
                for (std::size_t c = 0; c < p; ++c) {
                    if (!inst_.compatible(w, c, h))
                        continue;
                    BigCount prod = 1;
                    for (auto u : kids) {
                        BigCount sum = 0;
                        const auto & child = count_rows_[u];
                        for (std::size_t c2 = 0; c2 < p; ++c2)
                            if (!child[c2].is_zero() && inst_.legal(c, c2))
                                sum += child[c2];
                        if (sum.is_zero()) {
                            prod = 0;
                            break;
                        }
                        prod *= sum;
                    }
                    row[c] = std::move(prod);
                }
            }
            BigCount tree_total = 0;
            for (const auto & x : count_rows_[tree.root])
                tree_total += x;
            total *= tree_total;
        }
        return total;
    }

    /// Top-down extraction after a successful decide(h); smallest Psi index wins.
    auto extract(const std::vector<std::uint32_t> & h) -> std::vector<std::uint32_t>
    {
        const auto & forest = inst_.forest();
        std::vector<std::uint32_t> chosen(inst_.graph().n(), 0);
        for (std::size_t j = 0; j < inst_.s().size(); ++j)
            chosen[inst_.s()[j]] = h[j];
        for (const auto & tree : forest.trees()) {
            if (!decide_tree(tree, h))
                throw DomainError("coloring of S has no proper extension");
            for (auto it = tree.post_order.rbegin(); it != tree.post_order.rend(); ++it) {
                const auto w = *it;
                const auto parent = forest.parent(w);
                const auto & row = bool_rows_[w];
                std::size_t pick = row.size();
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (row[c] && (parent == no_vertex || inst_.legal(c, chosen[parent]))) {
                        pick = c;
                        break;
                    }
                }
                chosen[w] = static_cast<std::uint32_t>(pick);
            }
        }
        return chosen;
    }

    auto bool_rows() const -> const std::vector<std::vector<char>> & { return bool_rows_; }
    auto count_rows() const -> const std::vector<std::vector<BigCount>> & { return count_rows_; }

private:
    auto has_legal_partner(std::size_t c, const std::vector<std::uint32_t> & feas) const -> bool
    {
        for (auto c2 : feas)
            if (inst_.legal(c, c2))
                return true;
        return false;
    }

    auto ensure_bool_rows() -> void
    {
        if (bool_rows_.size() != inst_.graph().n()) {
            bool_rows_.assign(inst_.graph().n(), {});
            feasible_.assign(inst_.graph().n(), {});
        }
    }

    auto ensure_count_rows() -> void
    {
        if (count_rows_.size() != inst_.graph().n())
            count_rows_.assign(inst_.graph().n(), {});
    }

    const FptInstance & inst_;
    std::vector<std::vector<char>> bool_rows_;
    std::vector<std::vector<std::uint32_t>> feasible_;
    std::vector<std::vector<BigCount>> count_rows_;
};

/**
 * Depth-first odometer over Psi indices for S in ascending vertex order,
 * last position fastest. A prefix is abandoned as soon as its newest vertex
 * clashes with an earlier S-neighbor. `visit` returns false to stop.
 */
template <class Visit>
auto enumerate_s_colorings(const FptInstance & inst, std::vector<std::uint32_t> & h, std::size_t pos,
                           std::size_t stop, Visit && visit) -> bool
{
    if (pos == stop)
        return visit(h);
    const auto p = static_cast<std::uint32_t>(inst.psi_size());
    for (std::uint32_t c = 0; c < p; ++c) {
        bool ok = true;
        for (auto e : inst.earlier_s_neighbors(pos)) {
            if (!inst.legal(c, h[e])) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        h[pos] = c;
        if (!enumerate_s_colorings(inst, h, pos + 1, stop, visit))
            return false;
    }
    return true;
}

/// Proper prefixes of length d, in odometer order, used as parallel work units.
inline auto proper_prefixes(const FptInstance & inst, std::size_t threads)
    -> std::pair<std::vector<std::vector<std::uint32_t>>, std::size_t>
{
    const auto s = inst.s().size();
    std::size_t depth = 0;
    double units = 1;
    while (depth < s && units < 8.0 * static_cast<double>(threads)) {
        units *= static_cast<double>(std::max<std::size_t>(inst.psi_size(), 1));
        ++depth;
    }
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> h(s, 0);
    enumerate_s_colorings(inst, h, 0, depth, [&](const std::vector<std::uint32_t> & pre) {
        out.push_back(pre);
        return true;
    });
    return {std::move(out), depth};
}

/// Runs `work(unit_index, evaluator)` over all units on up to `threads` workers.
template <class Work>
auto run_parallel(const FptInstance & inst, std::size_t units, std::size_t threads, Work && work)
    -> void
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        FptEvaluator eval(inst);
        try {
            for (;;) {
                auto u = next.fetch_add(1);
                if (u >= units)
                    break;
                if (!work(u, eval))
                    break;
            }
        }
        catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(units);
        }
    };
    std::vector<std::jthread> pool;
    const auto n = std::min(threads, units);
    for (std::size_t t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace detail

/// Candidates C for an uncolored w that form legal pairs with every colored neighbor.
inline auto h_compatible_sets(Vertex w, const Coloring & h, const Graph & g, const Params & params)
    -> std::vector<ColorSet>
{
    params.validate();
    if (h.n() != g.n() || h.q() != params.q || h.k() != params.k)
        throw DomainError("coloring does not match graph or parameters " + params.to_string());
    if (h.has(w))
        throw DomainError("vertex " + std::to_string(w + 1) + " is already colored");
    std::vector<ColorSet> out;
    for (const auto & c : Psi(params.q, params.k)) {
        bool ok = true;
        for (auto x : g.neighbors(w))
            if (h.has(x) && intersection_size(c, h.at(x)) > params.i)
                ok = false;
        if (ok)
            out.push_back(c);
    }
    return out;
}

/// Colored vertices of a coloring, ascending.
inline auto colored_vertices(const Coloring & h) -> VertexSet
{
    VertexSet s;
    for (Vertex v = 0; v < h.n(); ++v)
        if (h.has(v))
            s.push_back(v);
    return s;
}

/**
 * Solver for one (G, params, S). S must be a feedback vertex set; colorings
 * of S are enumerated and each is pushed through the forest DP.
 */
class FptSolver
{
public:
    FptSolver(const Graph & g, const Params & params, const VertexSet & s)
        : inst_(g, params, s)
    {
    }

    auto instance() const noexcept -> const detail::FptInstance & { return inst_; }

    auto extend_decide(const Coloring & h) const -> bool
    {
        auto idx = inst_.h_indices(h);
        detail::FptEvaluator eval(inst_);
        return eval.decide(idx);
    }

    auto extend_count(const Coloring & h) const -> BigCount
    {
        auto idx = inst_.h_indices(h);
        detail::FptEvaluator eval(inst_);
        return eval.count(idx);
    }

    auto extend_extract(const Coloring & h) const -> std::optional<Coloring>
    {
        auto idx = inst_.h_indices(h);
        detail::FptEvaluator eval(inst_);
        if (!eval.decide(idx))
            return std::nullopt;
        return to_coloring(eval.extract(idx));
    }

    auto decide_table(const Coloring & h) const -> DpTable<char>
    {
        auto idx = inst_.h_indices(h);
        detail::FptEvaluator eval(inst_);
        for (const auto & tree : inst_.forest().trees())
            eval.decide_tree(tree, idx, true);
        return table_from(eval.bool_rows());
    }

    auto count_table(const Coloring & h) const -> DpTable<BigCount>
    {
        auto idx = inst_.h_indices(h);
        detail::FptEvaluator eval(inst_);
        eval.count(idx);
        return table_from(eval.count_rows());
    }

    auto decide(std::size_t threads = 1) const -> bool
    {
        if (auto trivial = trivial_answer())
            return *trivial;
        const auto s = inst_.s().size();
        if (threads <= 1) {
            detail::FptEvaluator eval(inst_);
            std::vector<std::uint32_t> h(s, 0);
            bool found = false;
            detail::enumerate_s_colorings(inst_, h, 0, s, [&](const std::vector<std::uint32_t> & hh) {
                found = eval.decide(hh);
                return !found;
            });
            return found;
        }
        const auto units = detail::proper_prefixes(inst_, threads);
        const auto & prefixes = units.first;
        std::atomic<bool> found{false};
        detail::run_parallel(inst_, prefixes.size(), threads, [&, d = units.second](std::size_t u, detail::FptEvaluator & eval) {
            auto h = prefixes[u];
            h.resize(s, 0);
            detail::enumerate_s_colorings(inst_, h, d, s, [&](const std::vector<std::uint32_t> & hh) {
                if (found.load(std::memory_order_relaxed))
                    return false;
                if (eval.decide(hh))
                    found.store(true);
                return !found.load(std::memory_order_relaxed);
            });
            return !found.load();
        });
        return found.load();
    }

    /// Total number of proper colorings; the reduction over work units runs in a
    /// fixed order so the result does not depend on scheduling.
    auto count(std::size_t threads = 1) const -> BigCount
    {
        if (inst_.graph().n() == 0)
            return 1;
        if (inst_.psi_size() == 0)
            return 0;
        const auto s = inst_.s().size();
        if (threads <= 1) {
            detail::FptEvaluator eval(inst_);
            std::vector<std::uint32_t> h(s, 0);
            BigCount total = 0;
            detail::enumerate_s_colorings(inst_, h, 0, s, [&](const std::vector<std::uint32_t> & hh) {
                total += eval.count(hh);
                return true;
            });
            return total;
        }
        const auto units = detail::proper_prefixes(inst_, threads);
        const auto & prefixes = units.first;
        std::vector<BigCount> partial(prefixes.size());
        detail::run_parallel(inst_, prefixes.size(), threads, [&, d = units.second](std::size_t u, detail::FptEvaluator & eval) {
            auto h = prefixes[u];
            h.resize(s, 0);
            BigCount sum = 0;
            detail::enumerate_s_colorings(inst_, h, d, s, [&](const std::vector<std::uint32_t> & hh) {
                sum += eval.count(hh);
                return true;
            });
            partial[u] = std::move(sum);
            return true;
        });
        BigCount total = 0;
        for (const auto & x : partial)
            total += x;
        return total;
    }

    /// First colorable h in odometer order, extended top-down.
    auto extract() const -> std::optional<Coloring>
    {
        if (inst_.graph().n() == 0)
            return Coloring(0, inst_.params().q, inst_.params().k);
        if (inst_.psi_size() == 0)
            return std::nullopt;
        const auto s = inst_.s().size();
        detail::FptEvaluator eval(inst_);
        std::vector<std::uint32_t> h(s, 0);
        std::optional<Coloring> out;
        detail::enumerate_s_colorings(inst_, h, 0, s, [&](const std::vector<std::uint32_t> & hh) {
            if (!eval.decide(hh))
                return true;
            out = to_coloring(eval.extract(hh));
            return false;
        });
        return out;
    }

private:
    auto trivial_answer() const -> std::optional<bool>
    {
        const auto & p = inst_.params();
        if (inst_.graph().n() == 0)
            return true;
        if (p.q < p.k)
            return false;
        if (p.i >= p.k)
            return true;
        return std::nullopt;
    }

    auto to_coloring(const std::vector<std::uint32_t> & idx) const -> Coloring
    {
        Coloring f(inst_.graph().n(), inst_.params().q, inst_.params().k);
        for (Vertex v = 0; v < idx.size(); ++v)
            f.assign(v, inst_.psi()[idx[v]]);
        return f;
    }

    template <class Entry>
    auto table_from(const std::vector<std::vector<Entry>> & rows) const -> DpTable<Entry>
    {
        DpTable<Entry> t;
        t.rows.assign(inst_.graph().n(), {});
        for (Vertex v = 0; v < rows.size(); ++v)
            if (inst_.forest().in_forest(v))
                t.rows[v] = rows[v];
        return t;
    }

    detail::FptInstance inst_;
};

inline auto extend_decide(const Graph & g, const VertexSet & s, const Coloring & h, const Params & params)
    -> bool
{
    return FptSolver(g, params, s).extend_decide(h);
}

inline auto extend_extract(const Graph & g, const VertexSet & s, const Coloring & h,
                           const Params & params) -> std::optional<Coloring>
{
    return FptSolver(g, params, s).extend_extract(h);
}

inline auto extend_count(const Graph & g, const VertexSet & s, const Coloring & h, const Params & params)
    -> BigCount
{
    return FptSolver(g, params, s).extend_count(h);
}

/// Uses the supplied FVS after verifying it, otherwise computes one.
inline auto resolve_fvs(const Graph & g, const std::optional<VertexSet> & s) -> FvsResult
{
    return s ? user_fvs(g, *s) : find_fvs(g);
}

inline auto decide(const Graph & g, const Params & params,
                   const std::optional<VertexSet> & s = std::nullopt, std::size_t threads = 1) -> bool
{
    params.validate();
    return FptSolver(g, params, resolve_fvs(g, s).vertices()).decide(threads);
}

inline auto count_colorings(const Graph & g, const Params & params,
                            const std::optional<VertexSet> & s = std::nullopt, std::size_t threads = 1)
    -> BigCount
{
    params.validate();
    return FptSolver(g, params, resolve_fvs(g, s).vertices()).count(threads);
}

inline auto extract_coloring(const Graph & g, const Params & params,
                             const std::optional<VertexSet> & s = std::nullopt) -> std::optional<Coloring>
{
    params.validate();
    return FptSolver(g, params, resolve_fvs(g, s).vertices()).extract();
}

/**
 * Least q admitting a proper (q,k,i)-coloring. With an FVS S the answer is at
 * most k|S| + 2k - i, so binary search runs over [k, k|S| + 2k - i]. The
 * empty graph needs no colors at all and yields 0.
 */
inline auto chromatic_number_ki(const Graph & g, unsigned k, unsigned i,
                                const std::optional<VertexSet> & s = std::nullopt, std::size_t threads = 1)
    -> unsigned
{
    if (k < 1)
        throw DomainError("k must be at least 1");
    if (i > k)
        throw DomainError("i must not exceed k");
    if (g.n() == 0)
        return 0;
    if (i == k)
        return k;
    const auto fvs = resolve_fvs(g, s);
    const auto bound = static_cast<std::size_t>(k) * fvs.size() + 2 * k - i;
    unsigned lo = k;
    auto hi = static_cast<unsigned>(std::min<std::size_t>(bound, max_palette));
    auto colorable = [&](unsigned q) {
        return FptSolver(g, Params{q, k, i}, fvs.vertices()).decide(threads);
    };
    if (bound > max_palette && !colorable(hi))
        throw DomainError("unsupported palette: chromatic number exceeds " + std::to_string(max_palette));
    while (lo < hi) {
        const unsigned mid = lo + (hi - lo) / 2;
        if (colorable(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace kicolor

#endif // KICOLOR_FPT_SOLVER_HPP
