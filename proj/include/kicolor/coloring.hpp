#ifndef KICOLOR_COLORING_HPP
#define KICOLOR_COLORING_HPP

#include <kicolor/color_set.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kicolor {

/// A (q,k,i) instance: k colors per vertex out of q, neighbors share <= i.
struct Params
{
    unsigned q = 0;
    unsigned k = 1;
    unsigned i = 0;

    auto validate() const -> void
    {
        if (k < 1)
            throw DomainError("k must be at least 1");
        ColorSet::check_palette(q);
    }

    auto to_string() const -> std::string
    {
        return "(" + std::to_string(q) + "," + std::to_string(k) + "," + std::to_string(i) + ")";
    }

    friend auto operator==(const Params &, const Params &) -> bool = default;
};

/**
 * Partial or total map vertex -> k-subset of [q]. Properness is a predicate
 * over a graph (is_proper), not an invariant of the type.
 */
class Coloring
{
public:
    Coloring() = default;

    Coloring(std::size_t n, unsigned q, unsigned k) : q_(q), k_(k), sets_(n)
    {
        ColorSet::check_palette(q);
    }

    auto n() const noexcept -> std::size_t { return sets_.size(); }
    auto q() const noexcept -> unsigned { return q_; }
    auto k() const noexcept -> unsigned { return k_; }

    auto assign(Vertex v, const ColorSet & c) -> void
    {
        if (c.q() != q_ || c.k() != k_)
            throw DomainError("color set " + c.to_string() + " is not a " + std::to_string(k_)
                              + "-subset of [" + std::to_string(q_) + "]");
        sets_.at(v) = c;
    }

    auto clear(Vertex v) -> void { sets_.at(v).reset(); }

    auto has(Vertex v) const -> bool { return sets_.at(v).has_value(); }

    auto at(Vertex v) const -> const ColorSet &
    {
        const auto & c = sets_.at(v);
        if (!c)
            throw DomainError("vertex " + std::to_string(v + 1) + " is uncolored");
        return *c;
    }

    auto get(Vertex v) const -> const std::optional<ColorSet> & { return sets_.at(v); }

    auto is_total() const -> bool
    {
        for (const auto & c : sets_)
            if (!c)
                return false;
        return true;
    }

    friend auto operator==(const Coloring &, const Coloring &) -> bool = default;

private:
    unsigned q_ = 0;
    unsigned k_ = 0;
    std::vector<std::optional<ColorSet>> sets_;
};

/**
 * True iff every edge with both endpoints colored is a legal pair. Edges
 * leaving the colored set X are ignored.
 */
inline auto is_proper(const Graph & g, const Coloring & f, const Params & params) -> bool
{
    if (f.n() != g.n())
        throw DomainError("coloring covers " + std::to_string(f.n()) + " vertices, graph has "
                          + std::to_string(g.n()));
    if (f.q() != params.q || f.k() != params.k)
        throw DomainError("coloring palette does not match parameters " + params.to_string());
    for (auto [a, b] : g.edges()) {
        const auto & ca = f.get(a);
        const auto & cb = f.get(b);
        if (ca && cb && intersection_size(*ca, *cb) > params.i)
            return false;
    }
    return true;
}

/// "v <vertex> {c1,...}" per colored vertex, 1-based, ascending vertex order.
inline auto write_coloring(std::ostream & out, const Coloring & f) -> void
{
    for (Vertex v = 0; v < f.n(); ++v)
        if (f.has(v))
            out << "v " << v + 1 << ' ' << f.at(v).to_string() << '\n';
}

inline auto coloring_to_string(const Coloring & f) -> std::string
{
    std::ostringstream out;
    write_coloring(out, f);
    return out.str();
}

/// Reads the "v <vertex> {set}" format; "c" lines and blank lines are skipped.
inline auto parse_coloring(std::istream & in, std::size_t n, unsigned q, unsigned k) -> Coloring
{
    Coloring f(n, q, k);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        long long v = 0;
        std::string set, extra;
        if (tag != "v" || !(ls >> v >> set) || (ls >> extra))
            throw ParseError("expected 'v <vertex> {c1,...}'", lineno);
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw ParseError("vertex index out of range [1.." + std::to_string(n) + "]", lineno);
        if (f.has(static_cast<Vertex>(v - 1)))
            throw ParseError("vertex " + std::to_string(v) + " colored twice", lineno);
        try {
            f.assign(static_cast<Vertex>(v - 1), parse_color_set(set, q));
        }
        catch (const DomainError & e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return f;
}

inline auto parse_coloring(const std::string & text, std::size_t n, unsigned q, unsigned k) -> Coloring
{
    std::istringstream in(text);
    return parse_coloring(in, n, q, k);
}

} // namespace kicolor

#endif // KICOLOR_COLORING_HPP
