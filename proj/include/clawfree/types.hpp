#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace clawfree {

using Vertex = std::uint32_t;
using Weight = std::int64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr Weight kInfiniteWeight = std::numeric_limits<Weight>::max() / 4;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (not a tree, not a block graph, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A configured node/state/size budget was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("weight sum overflows 64-bit range");
  return r;
}

}  // namespace detail
}  // namespace clawfree
