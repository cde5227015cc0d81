#ifndef STRUCSENSE_ERROR_HPP_
#define STRUCSENSE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strucsense {

/// Shapes of two operands do not fit together (non-square, size mismatch, ...).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller supplied a value outside the operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The requested placement rule does not apply to the given graph.
class PlacementError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace strucsense

#endif
