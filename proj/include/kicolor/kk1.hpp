#ifndef KICOLOR_KK1_HPP
#define KICOLOR_KK1_HPP

#include <kicolor/color_set.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kicolor {

inline constexpr std::size_t max_classic_chromatic_vertices = 24;

/**
 * Classic chromatic number in O*(2^n). For every vertex subset X we count
 * the independent sets inside X, ind(X), then G is t-colorable iff
 *
 *     sum over X of (-1)^(n-|X|) * ind(X)^t  >  0
 *
 * (that sum counts t-tuples of independent sets covering V). Subsets are
 * bucketed by ind(X) first so each t costs one pass over distinct values.
 */
inline auto chromatic_classic(const Graph & g) -> unsigned
{
    using boost::multiprecision::cpp_int;

    const auto n = g.n();
    if (n > max_classic_chromatic_vertices)
        throw ResourceError("classic chromatic number supports at most "
                            + std::to_string(max_classic_chromatic_vertices) + " vertices, got "
                            + std::to_string(n));
    if (n == 0)
        return 0;

    std::vector<std::uint32_t> closed(n);
    for (Vertex v = 0; v < n; ++v) {
        closed[v] = std::uint32_t{1} << v;
        for (auto u : g.neighbors(v))
            closed[v] |= std::uint32_t{1} << u;
    }

    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::uint32_t> ind(subsets);
    ind[0] = 1;
    // signed multiplicity of each ind(X) value
    std::map<std::uint32_t, std::int64_t> net;
    const bool n_odd = n % 2 == 1;
    net[1] += n_odd ? -1 : 1;
    for (std::size_t x = 1; x < subsets; ++x) {
        const auto v = std::countr_zero(x);
        const auto without_v = x & (x - 1);
        ind[x] = ind[without_v] + ind[x & ~static_cast<std::size_t>(closed[v])];
        const bool odd_gap = ((n - static_cast<std::size_t>(std::popcount(x))) % 2) == 1;
        net[ind[x]] += odd_gap ? -1 : 1;
    }

    for (unsigned t = 1; t <= n; ++t) {
        cpp_int total = 0;
        for (const auto & [value, mult] : net) {
            if (mult == 0)
                continue;
            cpp_int term = boost::multiprecision::pow(cpp_int(value), t);
            total += term * mult;
        }
        if (total > 0)
            return t;
    }
    return static_cast<unsigned>(n);
}

struct ChromaticResult
{
    /// Classic chromatic number.
    unsigned chi = 0;
    /// Least q with binomial(q,k) >= chi.
    unsigned q_kk1 = 0;
    unsigned k = 1;
};

/// Least q with binomial(q,k) >= target (0 when target is 0).
inline auto least_palette_for(std::uint64_t target, unsigned k) -> unsigned
{
    if (target == 0)
        return 0;
    for (unsigned q = k; q <= max_palette; ++q)
        if (binomial(q, k) >= target)
            return q;
    throw DomainError("unsupported palette: more than " + std::to_string(max_palette)
                      + " colors required");
}

/// (k,k-1)-chromatic number: k-subsets act as ordinary colors, so it is the
/// smallest palette offering chi distinct k-subsets.
inline auto chi_k_kminus1(const Graph & g, unsigned k) -> ChromaticResult
{
    if (k < 1)
        throw DomainError("k must be at least 1");
    ChromaticResult r;
    r.k = k;
    r.chi = chromatic_classic(g);
    r.q_kk1 = least_palette_for(r.chi, k);
    return r;
}

} // namespace kicolor

#endif // KICOLOR_KK1_HPP
