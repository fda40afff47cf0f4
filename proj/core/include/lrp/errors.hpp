#pragma once

#include <stdexcept>
#include <string>

namespace lrp {

/// Thrown when an operation would exceed a configured resource cap
/// (edge count, node count, BFS visit budget).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the graph file reader; carries the 1-based line number of the
/// offending input line (0 when the whole stream is at fault).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lrp
