#pragma once

#include <stdexcept>
#include <string>

namespace homind {

// malformed input text; column is 1-based, 0 when unknown
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line), column(column) {}
    int line;
    int column;
};

class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// input exceeds a desk-scale bound (overridable via HOMIND_MAX_N)
class CapabilityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// desk-scale bounds, overridable through the HOMIND_MAX_N environment variable
struct Limits {
    int canonical_max_n = 9;
    int iso_max_n = 128;
    int game_max_n = 64;
    int exhaustive_search_max_n = 16;
    int enumerate_max_n = 7;
};

Limits& limits();

} // namespace homind
