#pragma once

#include <stdexcept>
#include <string>

namespace pdecoy {

// Internal failures are exceptions; the C boundary turns them into status
// codes. Each class corresponds to one pdecoy_status value.

struct argument_error : std::runtime_error {
  // Line number of the offending config line, 0 when not line-based.
  int line = 0;
  explicit argument_error(const std::string &msg, int line_ = 0)
      : std::runtime_error(msg), line(line_) {}
};

struct validation_error : std::runtime_error {
  int line = 0;
  explicit validation_error(const std::string &msg, int line_ = 0)
      : std::runtime_error(msg), line(line_) {}
};

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct certificate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct no_positive_rate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace pdecoy
