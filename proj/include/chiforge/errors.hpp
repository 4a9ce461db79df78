#ifndef CHIFORGE_ERRORS_HPP
#define CHIFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chiforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on input that violates its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A search ran out of its work budget before deciding. Carries the best
/// bounds known at the moment it stopped.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string & what, std::size_t lower, std::size_t upper) :
        Error(what + " (bounds [" + std::to_string(lower) + ", " + std::to_string(upper) + "])"),
        lower_(lower),
        upper_(upper)
    {
    }

    std::size_t lower() const noexcept { return lower_; }
    std::size_t upper() const noexcept { return upper_; }

private:
    std::size_t lower_;
    std::size_t upper_;
};

/// A search that a theorem guarantees to succeed has failed. Seeing one of
/// these means either a bug or a false claim; tests treat it as a failure.
class InternalContradiction : public Error {
public:
    using Error::Error;
};

/// A bounded constructive search found nothing within its bound.
class ExhaustionError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
    ParseError(const std::string & what, std::size_t line = 0, std::size_t column = 0) :
        Error(line == 0 ? what : what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace chiforge

#endif // CHIFORGE_ERRORS_HPP
