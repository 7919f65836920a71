#ifndef KICOLOR_CNF_HPP
#define KICOLOR_CNF_HPP

#include <kicolor/errors.hpp>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kicolor {

/// Signed variable index: +p is x_p, -p is its negation (p is 1-based).
using Literal = int;
using Clause = std::array<Literal, 3>;
using Assignment = std::vector<bool>;

/// A 3-CNF formula: every clause has exactly three literals.
struct CnfFormula
{
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    friend auto operator==(const CnfFormula &, const CnfFormula &) -> bool = default;
};

inline auto literal_value(Literal lit, const Assignment & a) -> bool
{
    const bool v = a.at(static_cast<std::size_t>(std::abs(lit)) - 1);
    return lit > 0 ? v : !v;
}

inline auto satisfies(const CnfFormula & f, const Assignment & a) -> bool
{
    if (a.size() != f.num_vars)
        throw DomainError("assignment has " + std::to_string(a.size()) + " values for "
                          + std::to_string(f.num_vars) + " variables");
    for (const auto & cl : f.clauses)
        if (!literal_value(cl[0], a) && !literal_value(cl[1], a) && !literal_value(cl[2], a))
            return false;
    return true;
}

/// First satisfying assignment in binary-counter order (x_1 is the low bit),
/// found by exhaustive enumeration.
inline auto find_satisfying_assignment(const CnfFormula & f) -> std::optional<Assignment>
{
    if (f.num_vars > 30)
        throw ResourceError("exhaustive satisfiability limited to 30 variables");
    Assignment a(f.num_vars);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
        for (std::size_t p = 0; p < f.num_vars; ++p)
            a[p] = ((bits >> p) & 1U) != 0;
        if (satisfies(f, a))
            return a;
    }
    return std::nullopt;
}

inline auto is_satisfiable(const CnfFormula & f) -> bool
{
    return find_satisfying_assignment(f).has_value();
}

/**
 * DIMACS cnf: "c" comments, "p cnf <vars> <clauses>", then 0-terminated
 * clauses that may span lines. Clauses must have exactly three literals;
 * repeated literals are kept as written.
 */
inline auto parse_dimacs_cnf(std::istream & in) -> CnfFormula
{
    CnfFormula f;
    bool have_header = false;
    long long declared = 0;
    std::vector<Literal> pending;
    std::size_t pending_line = 0;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok == "%")
            continue;
        if (tok == "p") {
            std::string fmt;
            long long n = -1;
            if (have_header)
                throw ParseError("duplicate problem line", lineno);
            if (!(ls >> fmt >> n >> declared) || fmt != "cnf" || n < 0 || declared < 0 || (ls >> tok))
                throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", lineno);
            f.num_vars = static_cast<std::size_t>(n);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError("clause before 'p cnf' header", lineno);
        ls.clear();
        ls.seekg(0);
        long long lit = 0;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                lit = std::stoll(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            }
            catch (const std::exception &) {
                throw ParseError("expected an integer literal, got '" + tok + "'", lineno);
            }
            if (lit == 0) {
                if (pending.size() != 3)
                    throw DomainError("line " + std::to_string(pending_line ? pending_line : lineno)
                                      + ": clause has " + std::to_string(pending.size())
                                      + " literals; exactly 3 are required");
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                pending_line = 0;
                continue;
            }
            if (static_cast<std::size_t>(std::llabs(lit)) > f.num_vars)
                throw ParseError("variable " + std::to_string(std::llabs(lit)) + " out of range [1.."
                                     + std::to_string(f.num_vars) + "]",
                                 lineno);
            if (pending.empty())
                pending_line = lineno;
            pending.push_back(static_cast<Literal>(lit));
        }
    }
    if (!have_header)
        throw ParseError("missing 'p cnf' header", 0);
    if (!pending.empty())
        throw ParseError("last clause is not terminated by 0", pending_line);
    if (f.clauses.size() != static_cast<std::size_t>(declared))
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found "
                             + std::to_string(f.clauses.size()),
                         0);
    return f;
}

inline auto parse_dimacs_cnf(const std::string & text) -> CnfFormula
{
    std::istringstream in(text);
    return parse_dimacs_cnf(in);
}

inline auto write_dimacs_cnf(std::ostream & out, const CnfFormula & f) -> void
{
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto & cl : f.clauses)
        out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
}

} // namespace kicolor

#endif // KICOLOR_CNF_HPP
