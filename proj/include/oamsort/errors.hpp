#pragma once

#include <stdexcept>
#include <string>

namespace oamsort {

// Requested mode does not decay enough before the edge of the sampling window.
struct ModeTruncatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two fields with different sampling geometries were combined.
struct GeometryMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stage parameters violate 0 <= k < 2^n.
struct InvalidStageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mode was handed to a stage outside the stage's residue class.
struct ResidueClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested operation has no grid-engine implementation.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Netlist syntax or semantic problem, with 1-based source position.
class NetlistParseError : public std::runtime_error {
public:
  NetlistParseError(int line, int col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line_(line), col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_ = 0;
  int col_ = 0;
};

}  // namespace oamsort
