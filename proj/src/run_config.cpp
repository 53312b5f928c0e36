#include "run_config.h"

#include "errors.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pdecoy {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value,
                    int line) {
  const std::string v = trim(value);
  char *end = nullptr;
  const double parsed = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(parsed))
    throw argument_error("value for '" + key + "' is not a finite number: '" +
                             value + "'",
                         line);
  return parsed;
}

int parse_int(const std::string &key, const std::string &value, int line) {
  const double d = parse_double(key, value, line);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw argument_error("value for '" + key + "' must be an integer", line);
  return static_cast<int>(d);
}

void require(bool ok, const std::string &what, int line) {
  if (!ok) throw validation_error(what, line);
}

} // namespace

void RunConfig::set(const std::string &raw_key, const std::string &value,
                    int line) {
  const std::string key = trim(raw_key);
  auto num = [&] { return parse_double(key, value, line); };

  if (key == "mu1") {
    mu1 = num();
    require(mu1 >= 0.0, "mu1 must be non-negative", line);
  } else if (key == "mu2") {
    mu2 = num();
    require(mu2 >= 0.0, "mu2 must be non-negative", line);
  } else if (key == "t") {
    t = num();
    require(t >= 0.0 && t <= 1.0, "t must be in [0,1]", line);
  } else if (key == "alpha_db_per_km" || key == "alpha") {
    channel.alpha_db_per_km = num();
    require(channel.alpha_db_per_km >= 0.0,
            "alpha_db_per_km must be non-negative", line);
  } else if (key == "eta_det") {
    channel.eta_det = num();
    require(channel.eta_det >= 0.0 && channel.eta_det <= 1.0,
            "eta_det must be in [0,1]", line);
  } else if (key == "e_d" || key == "ed") {
    channel.e_d = num();
    require(channel.e_d >= 0.0 && channel.e_d <= 1.0, "e_d must be in [0,1]",
            line);
  } else if (key == "e_0" || key == "e0") {
    channel.e0 = num();
    require(channel.e0 >= 0.0 && channel.e0 <= 1.0, "e_0 must be in [0,1]",
            line);
  } else if (key == "y_0" || key == "y0") {
    channel.y0 = num();
    require(channel.y0 >= 0.0 && channel.y0 <= 1.0, "y_0 must be in [0,1]",
            line);
  } else if (key == "q_eff" || key == "q") {
    protocol.q_eff = num();
    require(protocol.q_eff > 0.0 && protocol.q_eff <= 1.0,
            "q_eff must be in (0,1]", line);
  } else if (key == "f_ec" || key == "f") {
    protocol.f_ec = num();
    require(protocol.f_ec >= 1.0, "f_ec must be at least 1", line);
  } else if (key == "n_max" || key == "nmax") {
    n_max = parse_int(key, value, line);
    require(n_max >= 0 && n_max <= 10000, "n_max must be in [0, 10000]",
            line);
  } else if (key == "quad_points") {
    quad_points = parse_int(key, value, line);
    require(quad_points >= 16 && quad_points % 2 == 0,
            "quad_points must be even and at least 16", line);
  } else if (key == "mu1_min") {
    domain.mu1_min = num();
    require(domain.mu1_min > 0.0, "mu1_min must be positive", line);
  } else if (key == "mu1_max") {
    domain.mu1_max = num();
    require(domain.mu1_max > 0.0, "mu1_max must be positive", line);
  } else if (key == "mu2_min") {
    domain.mu2_min = num();
    require(domain.mu2_min > 0.0, "mu2_min must be positive", line);
  } else if (key == "mu2_max") {
    domain.mu2_max = num();
    require(domain.mu2_max > 0.0, "mu2_max must be positive", line);
  } else if (key == "output") {
    const std::string v = trim(value);
    if (v.empty()) throw argument_error("output path must not be empty", line);
    output = v;
  } else {
    throw argument_error("unknown key '" + key + "'", line);
  }
}

double RunConfig::get(const std::string &raw_key) const {
  const std::string key = trim(raw_key);
  if (key == "mu1") return mu1;
  if (key == "mu2") return mu2;
  if (key == "t") return t;
  if (key == "alpha_db_per_km" || key == "alpha") return channel.alpha_db_per_km;
  if (key == "eta_det") return channel.eta_det;
  if (key == "e_d" || key == "ed") return channel.e_d;
  if (key == "e_0" || key == "e0") return channel.e0;
  if (key == "y_0" || key == "y0") return channel.y0;
  if (key == "q_eff" || key == "q") return protocol.q_eff;
  if (key == "f_ec" || key == "f") return protocol.f_ec;
  if (key == "n_max" || key == "nmax") return n_max;
  if (key == "quad_points") return quad_points;
  if (key == "mu1_min") return domain.mu1_min;
  if (key == "mu1_max") return domain.mu1_max;
  if (key == "mu2_min") return domain.mu2_min;
  if (key == "mu2_max") return domain.mu2_max;
  throw argument_error("unknown numeric key '" + key + "'");
}

std::string RunConfig::get_string(const std::string &raw_key) const {
  if (trim(raw_key) == "output") return output;
  throw argument_error("unknown string key '" + raw_key + "'");
}

void RunConfig::validate() const {
  channel.validate();
  protocol.validate();
  domain.validate();
  quadrature().validate();
  if (!(mu1 >= 0.0) || !(mu2 >= 0.0))
    throw validation_error("intensities must be non-negative");
  if (!(t >= 0.0 && t <= 1.0))
    throw validation_error("t must be in [0,1]");
  if (n_max < 0 || n_max > 10000)
    throw validation_error("n_max must be in [0, 10000]");
}

void RunConfig::apply(const std::string &text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body =
        trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw argument_error("expected 'key = value'", line);
    set(body.substr(0, eq), body.substr(eq + 1), line);
  }
  validate();
}

RunConfig RunConfig::parse(const std::string &text) {
  RunConfig cfg;
  cfg.apply(text);
  return cfg;
}

Interference RunConfig::interference() const {
  return Interference::derive(mu1, mu2, t);
}

} // namespace pdecoy
