#ifndef KICOLOR_ERRORS_HPP
#define KICOLOR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kicolor {

/// Precondition or argument violation (bad parameters, improper coloring, non-FVS, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string & what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A configured work budget (node expansions, instance size) was exceeded.
class ResourceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace kicolor

#endif // KICOLOR_ERRORS_HPP
