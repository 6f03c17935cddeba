#pragma once

#include <stdexcept>
#include <string>

namespace qsa {

// Dimension or shape mismatch between arguments.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Kernel evaluation requested at a singular point (x = 0 or x = x').
struct SingularPoint : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation point not strictly inside the integration domain.
struct PointOutsideDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Extension integral requested with n+m < 2.
struct DimensionTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Polynomial is not annihilated by d'': no hypervariable expansion exists.
struct NotQs : std::domain_error {
  using std::domain_error::domain_error;
};

// Text-format parse failure; carries a line number when known.
struct ParseError : std::runtime_error {
  int line;
  explicit ParseError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

}  // namespace qsa
