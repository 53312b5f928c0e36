#pragma once

#include "channel.h"
#include "keyrate.h"
#include "numerics.h"
#include "optimizer.h"

#include <string>

namespace pdecoy {

// Everything a run needs, with the benchmark parameter set as defaults.
// Accepts `key = value` text with '#' comments; unknown keys are rejected.
struct RunConfig {
  double mu1 = 1e-4, mu2 = 0.55, t = 0.5;
  ChannelParams channel;
  ProtocolParams protocol;
  int n_max = 60;
  int quad_points = 512;
  OptimizerDomain domain;
  std::string output = "scan.csv";

  // Assigns one key (canonical name or alias) and range-checks the value.
  // Throws argument_error for unknown keys or unparsable values,
  // validation_error for out-of-range ones; both carry `line` when given.
  void set(const std::string &key, const std::string &value, int line = 0);

  double get(const std::string &key) const;      // numeric keys
  std::string get_string(const std::string &key) const;

  // Cross-field invariants (search box ordering, quadrature spec).
  void validate() const;

  // Applies config text on top of the current values, then validates.
  void apply(const std::string &text);

  // Parses full config text over defaults and validates the result.
  static RunConfig parse(const std::string &text);

  Interference interference() const;
  QuadratureSpec quadrature() const { return QuadratureSpec{quad_points}; }
};

} // namespace pdecoy
