#ifndef KICOLOR_COLOR_SET_HPP
#define KICOLOR_COLOR_SET_HPP

#include <kicolor/errors.hpp>

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kicolor {

/// Largest supported palette: one machine word of colors.
inline constexpr unsigned max_palette = 64;

/// Upper bound on how many k-subsets we are willing to materialise in a Psi.
inline constexpr std::uint64_t max_psi_size = std::uint64_t{1} << 24;

/// Exact binomial coefficient for n <= 64 (always fits in 64 bits there).
/// Returns 0 when k > n.
constexpr auto binomial(unsigned n, unsigned k) -> std::uint64_t
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    std::uint64_t r = 1;
    for (unsigned j = 1; j <= k; ++j) {
        // r * (n-k+j) / j stays exact; split to avoid overflow near n = 64
        std::uint64_t num = n - k + j;
        std::uint64_t g = std::gcd(r, std::uint64_t{j});
        r = (r / g) * (num / (j / g));
    }
    return r;
}

/**
 * A subset of the palette [q] = {1..q}, stored as a bit-vector where bit c
 * stands for color c+1. Colors are 1-based at every textual boundary and
 * 0-based in the bits.
 */
class ColorSet
{
public:
    ColorSet() = default;

    /// Raw construction from a bit pattern; every set bit must be below q.
    static auto from_bits(std::uint64_t bits, unsigned q) -> ColorSet
    {
        check_palette(q);
        if (q < 64 && (bits >> q) != 0)
            throw DomainError("color set has bits outside the palette of size " + std::to_string(q));
        return ColorSet(bits, q);
    }

    auto bits() const noexcept -> std::uint64_t { return bits_; }
    auto q() const noexcept -> unsigned { return q_; }
    auto k() const noexcept -> unsigned { return static_cast<unsigned>(std::popcount(bits_)); }

    /// Membership of a 1-based color.
    auto contains(unsigned color) const noexcept -> bool
    {
        return color >= 1 && color <= q_ && ((bits_ >> (color - 1)) & 1U);
    }

    /// 1-based colors in ascending order.
    auto colors() const -> std::vector<unsigned>
    {
        std::vector<unsigned> out;
        out.reserve(k());
        for (auto b = bits_; b; b &= b - 1)
            out.push_back(static_cast<unsigned>(std::countr_zero(b)) + 1);
        return out;
    }

    auto to_string() const -> std::string
    {
        std::string s = "{";
        bool first = true;
        for (auto c : colors()) {
            if (!first)
                s += ',';
            s += std::to_string(c);
            first = false;
        }
        s += '}';
        return s;
    }

    friend auto operator==(const ColorSet &, const ColorSet &) -> bool = default;

    static auto check_palette(unsigned q) -> void
    {
        if (q > max_palette)
            throw DomainError("unsupported palette: q = " + std::to_string(q) + " exceeds "
                              + std::to_string(max_palette) + " colors");
    }

private:
    ColorSet(std::uint64_t bits, unsigned q) : bits_(bits), q_(q) {}

    std::uint64_t bits_ = 0;
    unsigned q_ = 0;
};

/// Builds a set from 1-based colors; duplicates collapse.
inline auto make_color_set(std::span<const unsigned> colors, unsigned q) -> ColorSet
{
    ColorSet::check_palette(q);
    std::uint64_t bits = 0;
    for (auto c : colors) {
        if (c < 1 || c > q)
            throw DomainError("color " + std::to_string(c) + " outside palette [1.."
                              + std::to_string(q) + "]");
        bits |= std::uint64_t{1} << (c - 1);
    }
    return ColorSet::from_bits(bits, q);
}

inline auto make_color_set(std::initializer_list<unsigned> colors, unsigned q) -> ColorSet
{
    return make_color_set(std::span<const unsigned>(colors.begin(), colors.size()), q);
}

/// Parses the "{c1,c2,...}" rendering back into a set over [q].
inline auto parse_color_set(std::string_view text, unsigned q) -> ColorSet
{
    auto fail = [&] { throw DomainError("malformed color set '" + std::string(text) + "'"); };
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        fail();
    std::vector<unsigned> colors;
    std::string_view body = text.substr(1, text.size() - 2);
    while (!body.empty()) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        if (tok.empty())
            fail();
        unsigned v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9')
                fail();
            v = v * 10 + static_cast<unsigned>(ch - '0');
            if (v > 1000)
                fail();
        }
        colors.push_back(v);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
        if (body.empty())
            fail();
    }
    return make_color_set(colors, q);
}

inline auto intersection_size(const ColorSet & a, const ColorSet & b) -> unsigned
{
    return static_cast<unsigned>(std::popcount(a.bits() & b.bits()));
}

/// Legal pair: the two sets share at most i colors.
inline auto is_legal_pair(const ColorSet & a, const ColorSet & b, unsigned i) -> bool
{
    if (a.q() != b.q())
        throw DomainError("color sets over different palettes (" + std::to_string(a.q()) + " vs "
                          + std::to_string(b.q()) + ")");
    return intersection_size(a, b) <= i;
}

/// [q] minus the set.
inline auto complement_set(const ColorSet & c) -> ColorSet
{
    const std::uint64_t full = c.q() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << c.q()) - 1);
    return ColorSet::from_bits(full & ~c.bits(), c.q());
}

/**
 * All k-subsets of [q] in colexicographic order, which for bit-vectors is
 * plain numeric order of the bit pattern. Index i in this order is the
 * combinatorial-number-system rank of the set, so lookups are O(k).
 */
class Psi
{
public:
    Psi() = default;

    Psi(unsigned q, unsigned k) : q_(q), k_(k)
    {
        ColorSet::check_palette(q);
        if (k > q)
            return;
        const auto size = binomial(q, k);
        if (size > max_psi_size)
            throw ResourceError("Psi(" + std::to_string(q) + "," + std::to_string(k) + ") has "
                                + std::to_string(size) + " sets; too many to materialise");
        sets_.reserve(size);
        if (k == 0) {
            sets_.push_back(ColorSet::from_bits(0, q));
            return;
        }
        std::uint64_t v = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
        for (std::uint64_t n = 0; n < size; ++n) {
            sets_.push_back(ColorSet::from_bits(v, q));
            if (n + 1 == size)
                break;
            // Gosper's hack: next larger word with the same popcount
            const std::uint64_t t = v | (v - 1);
            v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
        }
    }

    auto q() const noexcept -> unsigned { return q_; }
    auto k() const noexcept -> unsigned { return k_; }
    auto size() const noexcept -> std::size_t { return sets_.size(); }
    auto empty() const noexcept -> bool { return sets_.empty(); }
    auto operator[](std::size_t idx) const -> const ColorSet & { return sets_[idx]; }
    auto sets() const noexcept -> std::span<const ColorSet> { return sets_; }
    auto begin() const noexcept { return sets_.begin(); }
    auto end() const noexcept { return sets_.end(); }

    /// Position of a k-set in the canonical order.
    auto index_of(const ColorSet & c) const -> std::size_t
    {
        if (c.q() != q_ || c.k() != k_)
            throw DomainError("color set " + c.to_string() + " is not a member of Psi("
                              + std::to_string(q_) + "," + std::to_string(k_) + ")");
        std::uint64_t rank = 0;
        unsigned j = 1;
        for (auto b = c.bits(); b; b &= b - 1, ++j)
            rank += binomial(static_cast<unsigned>(std::countr_zero(b)), j);
        return static_cast<std::size_t>(rank);
    }

private:
    unsigned q_ = 0;
    unsigned k_ = 0;
    std::vector<ColorSet> sets_;
};

inline auto enumerate_psi(unsigned q, unsigned k) -> Psi { return Psi(q, k); }

} // namespace kicolor

#endif // KICOLOR_COLOR_SET_HPP
