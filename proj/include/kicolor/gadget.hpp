#ifndef KICOLOR_GADGET_HPP
#define KICOLOR_GADGET_HPP

#include <kicolor/cnf.hpp>
#include <kicolor/color_set.hpp>
#include <kicolor/coloring.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>
#include <kicolor/kneser.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kicolor {

/**
 * Graph built from a 3-CNF formula that is (2k+i, k, 0)-colorable exactly
 * when the formula is satisfiable, plus the role of every vertex.
 *
 * Vertex layout: u, w, the shared block A, one block B_p per variable, then
 * per clause the three z vertices followed by the Kneser copy Gamma_j.
 * A, B_p and Gamma_j vertices carry k-subset labels of [2k+i]; A holds the
 * labels containing both or neither of {2k, 2k+1}, B_p the labels with
 * exactly one of them, so A + B_p is a copy of K(2k+i, k).
 */
struct GadgetGraph
{
    CnfFormula formula;
    unsigned k = 1;
    unsigned i = 1;
    Graph graph;

    Vertex u = 0;
    Vertex w = 1;
    Vertex u_prime = 0;
    Vertex w_prime = 0;
    std::vector<Vertex> a;
    std::vector<Vertex> u_primes;
    std::vector<Vertex> w_primes;
    std::vector<std::vector<Vertex>> b;
    std::vector<Vertex> x;
    std::vector<Vertex> x_bar;
    std::vector<std::array<Vertex, 3>> z;
    std::vector<std::vector<Vertex>> gamma;
    std::vector<std::array<Vertex, 3>> t;
    std::vector<std::optional<ColorSet>> labels;

    auto q() const noexcept -> unsigned { return 2 * k + i; }
    auto params() const noexcept -> Params { return Params{q(), k, 0}; }

    /// The vertex of the opposite literal (x_p for -p, x_bar_p for +p).
    auto negated_literal_vertex(Literal lit) const -> Vertex
    {
        const auto p = static_cast<std::size_t>(std::abs(lit)) - 1;
        return lit > 0 ? x_bar.at(p) : x.at(p);
    }
};

/// 2 + C(2k+i-1,k-1) + n C(2k+i-1,k) + m (3 + C(2k+i,k)). Matches the built
/// graph whenever i = 1 (or n = 1); see gadget_vertex_count.
inline auto gadget_vertex_count_formula(std::size_t n, std::size_t m, unsigned k, unsigned i)
    -> std::uint64_t
{
    const unsigned q = 2 * k + i;
    return 2 + binomial(q - 1, k - 1) + n * binomial(q - 1, k) + m * (3 + binomial(q, k));
}

/// Exact size of the constructed graph: |A| = C(q-2,k) + C(q-2,k-2),
/// |B_p| = 2 C(q-2,k-1) with q = 2k+i.
inline auto gadget_vertex_count(std::size_t n, std::size_t m, unsigned k, unsigned i) -> std::uint64_t
{
    const unsigned q = 2 * k + i;
    const std::uint64_t a = binomial(q - 2, k) + (k >= 2 ? binomial(q - 2, k - 2) : 0);
    const std::uint64_t b = 2 * binomial(q - 2, k - 1);
    return 2 + a + n * b + m * (3 + binomial(q, k));
}

namespace detail {

inline auto range_set(unsigned lo, unsigned hi, unsigned q) -> std::vector<unsigned>
{
    std::vector<unsigned> out;
    for (unsigned c = lo; c <= hi; ++c)
        out.push_back(c);
    (void)q;
    return out;
}

inline auto set_of(std::vector<unsigned> colors, unsigned q) -> ColorSet
{
    return make_color_set(colors, q);
}

inline auto with(std::vector<unsigned> colors, unsigned extra) -> std::vector<unsigned>
{
    colors.push_back(extra);
    return colors;
}

/// Swaps two colors inside a set.
inline auto swap_colors(const ColorSet & s, unsigned c1, unsigned c2) -> ColorSet
{
    const auto m1 = std::uint64_t{1} << (c1 - 1);
    const auto m2 = std::uint64_t{1} << (c2 - 1);
    auto bits = s.bits() & ~(m1 | m2);
    if (s.bits() & m1)
        bits |= m2;
    if (s.bits() & m2)
        bits |= m1;
    return ColorSet::from_bits(bits, s.q());
}

} // namespace detail

inline auto build_gadget(const CnfFormula & formula, unsigned k, unsigned i) -> GadgetGraph
{
    if (k < 1 || i < 1)
        throw DomainError("gadget needs k >= 1 and i >= 1");
    if (2 * k + i > max_palette)
        throw DomainError("gadget needs 2k+i <= 64");
    for (const auto & cl : formula.clauses)
        for (auto lit : cl)
            if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > formula.num_vars)
                throw DomainError("literal " + std::to_string(lit) + " out of range");

    using detail::range_set;
    using detail::set_of;
    using detail::with;

    const unsigned q = 2 * k + i;
    const Psi psi(q, k);
    const auto true_bit = std::uint64_t{1} << (2 * k - 1);  // color 2k
    const auto false_bit = std::uint64_t{1} << (2 * k);     // color 2k+1

    GadgetGraph gg;
    gg.formula = formula;
    gg.k = k;
    gg.i = i;

    std::size_t next = 0;
    auto fresh = [&](std::optional<ColorSet> label) {
        gg.labels.push_back(label);
        return next++;
    };
    gg.u = fresh(std::nullopt);
    gg.w = fresh(std::nullopt);

    const auto u_prime_label = set_of(range_set(1, k, q), q);
    const auto w_prime_label = set_of(range_set(k, 2 * k - 1, q), q);
    std::vector<ColorSet> u_primes_labels, w_primes_labels;
    for (unsigned c = 2 * k + 2; c <= q; ++c) {
        u_primes_labels.push_back(set_of(with(range_set(1, k - 1, q), c), q));
        w_primes_labels.push_back(set_of(with(range_set(k, 2 * k - 2, q), c), q));
    }
    auto contains_label = [](const std::vector<ColorSet> & v, const ColorSet & c) {
        return std::find(v.begin(), v.end(), c) != v.end();
    };

    for (const auto & c : psi) {
        const bool has_t = (c.bits() & true_bit) != 0;
        const bool has_f = (c.bits() & false_bit) != 0;
        if (has_t != has_f)
            continue;
        const auto v = fresh(c);
        gg.a.push_back(v);
        if (c == u_prime_label)
            gg.u_prime = v;
        if (c == w_prime_label)
            gg.w_prime = v;
        if (contains_label(u_primes_labels, c))
            gg.u_primes.push_back(v);
        if (contains_label(w_primes_labels, c))
            gg.w_primes.push_back(v);
    }

    const auto x_label = set_of(with(range_set(1, k - 1, q), 2 * k), q);
    const auto x_bar_label = set_of(with(range_set(1, k - 1, q), 2 * k + 1), q);
    for (std::size_t p = 0; p < formula.num_vars; ++p) {
        std::vector<Vertex> block;
        Vertex xv = 0, xbv = 0;
        for (const auto & c : psi) {
            const bool has_t = (c.bits() & true_bit) != 0;
            const bool has_f = (c.bits() & false_bit) != 0;
            if (has_t == has_f)
                continue;
            const auto v = fresh(c);
            block.push_back(v);
            if (c == x_label)
                xv = v;
            if (c == x_bar_label)
                xbv = v;
        }
        gg.b.push_back(std::move(block));
        gg.x.push_back(xv);
        gg.x_bar.push_back(xbv);
    }

    const auto ti3 = canonical_ti3set_labels(q, k);
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
        std::array<Vertex, 3> zs{fresh(std::nullopt), fresh(std::nullopt), fresh(std::nullopt)};
        gg.z.push_back(zs);
        std::vector<Vertex> block;
        std::array<Vertex, 3> ts{};
        for (const auto & c : psi) {
            const auto v = fresh(c);
            block.push_back(v);
            for (std::size_t l = 0; l < 3; ++l)
                if (c == ti3[l])
                    ts[l] = v;
        }
        gg.gamma.push_back(std::move(block));
        gg.t.push_back(ts);
    }

    std::vector<std::pair<Vertex, Vertex>> edges;
    auto kneser_edges = [&](const std::vector<Vertex> & vs) {
        for (std::size_t x1 = 0; x1 < vs.size(); ++x1)
            for (std::size_t x2 = x1 + 1; x2 < vs.size(); ++x2)
                if ((gg.labels[vs[x1]]->bits() & gg.labels[vs[x2]]->bits()) == 0)
                    edges.emplace_back(vs[x1], vs[x2]);
    };

    // A with each B_p is a Kneser copy; A-internal edges repeat and collapse
    if (formula.num_vars == 0)
        kneser_edges(gg.a);
    for (const auto & block : gg.b) {
        auto vs = gg.a;
        vs.insert(vs.end(), block.begin(), block.end());
        kneser_edges(vs);
    }
    edges.emplace_back(gg.u, gg.w);
    edges.emplace_back(gg.u, gg.u_prime);
    edges.emplace_back(gg.w, gg.w_prime);
    for (auto v : gg.u_primes)
        edges.emplace_back(gg.u, v);
    for (auto v : gg.w_primes)
        edges.emplace_back(gg.w, v);
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
        kneser_edges(gg.gamma[j]);
        for (std::size_t l = 0; l < 3; ++l) {
            const auto zv = gg.z[j][l];
            edges.emplace_back(gg.w, zv);
            edges.emplace_back(zv, gg.negated_literal_vertex(formula.clauses[j][l]));
            edges.emplace_back(zv, gg.t[j][l]);
            for (auto v : gg.u_primes)
                edges.emplace_back(zv, v);
            for (auto v : gg.w_primes)
                edges.emplace_back(gg.t[j][l], v);
        }
    }
    gg.graph = Graph(next, edges);
    return gg;
}

/**
 * Proper (2k+i,k,0)-coloring from a satisfying assignment: natural colors on
 * A + B_p with 2k and 2k+1 swapped in B_p for false variables; u and w get
 * {k+1..2k} and {1..k-1, 2k+1}; in each clause the first true literal's z
 * takes 2k and the matching t takes 2k-1, Gamma_j being the natural coloring
 * with 2k-1, 2k, 2k+1 permuted to fit.
 */
inline auto assignment_to_coloring(const GadgetGraph & gg, const Assignment & assignment) -> Coloring
{
    if (!satisfies(gg.formula, assignment))
        throw DomainError("assignment does not satisfy the formula");

    using detail::range_set;
    using detail::set_of;
    using detail::with;

    const unsigned k = gg.k;
    const unsigned q = gg.q();
    Coloring f(gg.graph.n(), q, k);

    for (auto v : gg.a)
        f.assign(v, *gg.labels[v]);
    for (std::size_t p = 0; p < gg.b.size(); ++p)
        for (auto v : gg.b[p])
            f.assign(v, assignment[p] ? *gg.labels[v] : detail::swap_colors(*gg.labels[v], 2 * k, 2 * k + 1));

    f.assign(gg.u, set_of(range_set(k + 1, 2 * k, q), q));
    f.assign(gg.w, set_of(with(range_set(1, k - 1, q), 2 * k + 1), q));

    const auto z_plain = set_of(range_set(k, 2 * k - 1, q), q);
    const auto z_special = set_of(with(range_set(k, 2 * k - 2, q), 2 * k), q);
    for (std::size_t j = 0; j < gg.z.size(); ++j) {
        const auto & cl = gg.formula.clauses[j];
        std::size_t star = 0;
        while (!literal_value(cl[star], assignment))
            ++star;
        for (std::size_t l = 0; l < 3; ++l)
            f.assign(gg.z[j][l], l == star ? z_special : z_plain);

        // t_l carries last color 2k-1+l; send t_star's to 2k-1, the others to 2k, 2k+1
        std::array<unsigned, 3> target{};
        unsigned spare = 2 * k;
        for (std::size_t l = 0; l < 3; ++l)
            target[l] = l == star ? 2 * k - 1 : spare++;
        for (auto v : gg.gamma[j]) {
            const auto & lab = *gg.labels[v];
            auto bits = lab.bits() & ~(std::uint64_t{7} << (2 * k - 2));
            for (std::size_t l = 0; l < 3; ++l)
                if (lab.contains(2 * k - 1 + static_cast<unsigned>(l)))
                    bits |= std::uint64_t{1} << (target[l] - 1);
            f.assign(v, ColorSet::from_bits(bits, q));
        }
    }

    if (!is_proper(gg.graph, f, gg.params()))
        throw std::logic_error("gadget coloring from a satisfying assignment is improper");
    return f;
}

/**
 * Reads a satisfying assignment off a proper (2k+i,k,0)-coloring. The colors
 * of A fix the relabeling onto the natural coloring except for the pair that
 * plays 2k / 2k+1; of those two, the one u carries is the true color, and x_p
 * is true iff it carries the true color.
 */
inline auto coloring_to_assignment(const GadgetGraph & gg, const Coloring & f) -> Assignment
{
    const unsigned k = gg.k;
    const unsigned q = gg.q();
    if (f.n() != gg.graph.n() || f.q() != q || f.k() != k || !f.is_total()
        || !is_proper(gg.graph, f, gg.params()))
        throw DomainError("not a proper (" + std::to_string(q) + "," + std::to_string(k)
                          + ",0)-coloring of the gadget");
    if (gg.formula.num_vars == 0)
        return {};

    auto class_in_a = [&](auto && has_color) {
        std::vector<Vertex> out;
        for (auto v : gg.a)
            if (has_color(v))
                out.push_back(v);
        return out;
    };

    std::vector<char> used(q + 1, 0);
    for (unsigned natural = 1; natural <= q; ++natural) {
        if (natural == 2 * k || natural == 2 * k + 1)
            continue;
        const auto want = class_in_a([&](Vertex v) { return gg.labels[v]->contains(natural); });
        unsigned match = 0;
        for (unsigned c = 1; c <= q && !match; ++c)
            if (!used[c] && class_in_a([&](Vertex v) { return f.at(v).contains(c); }) == want)
                match = c;
        if (!match)
            throw DomainError("coloring of A is not a relabeled natural coloring");
        used[match] = 1;
    }
    std::vector<unsigned> pair;
    for (unsigned c = 1; c <= q; ++c)
        if (!used[c])
            pair.push_back(c);
    const bool u_has0 = f.at(gg.u).contains(pair.at(0));
    const bool u_has1 = f.at(gg.u).contains(pair.at(1));
    if (u_has0 == u_has1)
        throw DomainError("u does not single out one of the two free colors");
    const unsigned true_color = u_has0 ? pair[0] : pair[1];

    Assignment out(gg.formula.num_vars);
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = f.at(gg.x[p]).contains(true_color);
    if (!satisfies(gg.formula, out))
        throw std::logic_error("decoded assignment does not satisfy the formula");
    return out;
}

/// Vertex-wise complement [q] \ f(v).
inline auto complement_coloring(const Coloring & f) -> Coloring
{
    if (f.k() > f.q())
        throw DomainError("cannot complement: k exceeds q");
    Coloring out(f.n(), f.q(), f.q() - f.k());
    for (Vertex v = 0; v < f.n(); ++v)
        if (f.has(v))
            out.assign(v, complement_set(f.at(v)));
    return out;
}

/// (2k+i,k,0) -> (2k+i,k+i,i): adjacent complements share exactly i colors.
inline auto complement_lift(const Graph & g, const Coloring & f) -> Coloring
{
    if (f.q() < 2 * f.k())
        throw DomainError("complement lift needs q >= 2k");
    if (!is_proper(g, f, Params{f.q(), f.k(), 0}))
        throw DomainError("complement lift needs a proper (q,k,0)-coloring");
    return complement_coloring(f);
}

/// (2k+i,k+i,i) -> (2k+i,k,0), the inverse of complement_lift.
inline auto complement_unlift(const Graph & g, const Coloring & f) -> Coloring
{
    if (2 * f.k() < f.q())
        throw DomainError("complement unlift needs k' >= q/2");
    const unsigned i = 2 * f.k() - f.q();
    if (!is_proper(g, f, Params{f.q(), f.k(), i}))
        throw DomainError("complement unlift needs a proper (q,k',2k'-q)-coloring");
    return complement_coloring(f);
}

/**
 * Roles sidecar: "role <name> <vertex...>" lines then "label <vertex> {set}"
 * lines, all 1-based. Names: u, w, u_prime, w_prime, A, U_prime, W_prime,
 * B_<p>, x_<p>, xbar_<p>, z_<j>, gamma_<j>, t_<j>.
 */
inline auto write_gadget_roles(std::ostream & out, const GadgetGraph & gg) -> void
{
    auto role = [&](const std::string & name, auto && vs) {
        out << "role " << name;
        for (auto v : vs)
            out << ' ' << v + 1;
        out << '\n';
    };
    role("u", std::array{gg.u});
    role("w", std::array{gg.w});
    role("u_prime", std::array{gg.u_prime});
    role("w_prime", std::array{gg.w_prime});
    role("A", gg.a);
    role("U_prime", gg.u_primes);
    role("W_prime", gg.w_primes);
    for (std::size_t p = 0; p < gg.b.size(); ++p) {
        const auto id = std::to_string(p + 1);
        role("B_" + id, gg.b[p]);
        role("x_" + id, std::array{gg.x[p]});
        role("xbar_" + id, std::array{gg.x_bar[p]});
    }
    for (std::size_t j = 0; j < gg.z.size(); ++j) {
        const auto id = std::to_string(j + 1);
        role("z_" + id, gg.z[j]);
        role("gamma_" + id, gg.gamma[j]);
        role("t_" + id, gg.t[j]);
    }
    for (Vertex v = 0; v < gg.labels.size(); ++v)
        if (gg.labels[v])
            out << "label " << v + 1 << ' ' << gg.labels[v]->to_string() << '\n';
}

} // namespace kicolor

#endif // KICOLOR_GADGET_HPP
