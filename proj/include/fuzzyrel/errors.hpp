#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyrel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric argument or value is outside its legal range.
struct DomainError : Error {
    using Error::Error;
};

/// A label is not part of the domain a proximity spec knows about.
struct UnknownValueError : Error {
    using Error::Error;
};

struct UnknownAttributeError : Error {
    using Error::Error;
};

struct UnknownRelationError : Error {
    using Error::Error;
};

struct SchemaMismatchError : Error {
    using Error::Error;
};

/// Structural validation failure (e.g. an asymmetric proximity matrix).
struct ValidationError : Error {
    using Error::Error;
};

/// Malformed input file; carries the 1-based line number, 0 when the
/// problem has no single line.
struct FormatError : Error {
    FormatError(std::string what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace fuzzyrel
