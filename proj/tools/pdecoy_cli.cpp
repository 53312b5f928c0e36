// Command-line front end. Links only the public C API.

#include "CLI11.hpp"
#include "pdecoy/pdecoy.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code_for(pdecoy_status st) {
  switch (st) {
    case PDECOY_OK: return 0;
    case PDECOY_ERR_ARGUMENT:
    case PDECOY_ERR_VALIDATION: return 1;
    default: return 2;
  }
}

int report_failure(pdecoy_status st) {
  std::fprintf(stderr, "error: %s (%s)\n", pdecoy_last_error(),
               pdecoy_status_message(st));
  return exit_code_for(st);
}

// Fixed 10-significant-digit formatting keeps output byte-identical.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct ConfigHandle {
  pdecoy_config *ptr;
  ConfigHandle() : ptr(pdecoy_config_create()) {}
  ~ConfigHandle() { pdecoy_config_destroy(ptr); }
  ConfigHandle(const ConfigHandle &) = delete;
  ConfigHandle &operator=(const ConfigHandle &) = delete;
};

// Loads --config (when given) into cfg; returns 0 or a process exit code.
int load_config_file(pdecoy_config *cfg, const std::string &path) {
  if (path.empty()) return 0;
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot read config file '%s'\n",
                 path.c_str());
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();
  int line = 0;
  const pdecoy_status st =
      pdecoy_config_parse(cfg, text.str().c_str(), &line);
  if (st != PDECOY_OK) {
    if (line > 0)
      std::fprintf(stderr, "error: %s:%d: %s\n", path.c_str(), line,
                   pdecoy_last_error());
    else
      std::fprintf(stderr, "error: %s: %s\n", path.c_str(),
                   pdecoy_last_error());
    return exit_code_for(st);
  }
  return 0;
}

int set_or_fail(pdecoy_config *cfg, const char *key, double value) {
  const std::string v = num(value);
  const pdecoy_status st = pdecoy_config_set(cfg, key, v.c_str());
  return st == PDECOY_OK ? 0 : report_failure(st);
}

int run_stats(const std::string &config_path, double mu1, double mu2, double t,
              int nmax) {
  ConfigHandle cfg;
  if (!cfg.ptr) return 2;
  if (int rc = load_config_file(cfg.ptr, config_path)) return rc;
  if (int rc = set_or_fail(cfg.ptr, "mu1", mu1)) return rc;
  if (int rc = set_or_fail(cfg.ptr, "mu2", mu2)) return rc;
  if (int rc = set_or_fail(cfg.ptr, "t", t)) return rc;
  if (int rc = set_or_fail(cfg.ptr, "nmax", nmax)) return rc;

  std::vector<pdecoy_stats_row> rows(nmax + 1);
  int written = 0;
  pdecoy_stats_meta meta{};
  const pdecoy_status st =
      pdecoy_photon_stats(cfg.ptr, rows.data(), &written, &meta);
  if (st != PDECOY_OK) return report_failure(st);

  std::string out =
      "n,p_total,p_noclick,p_click,r_click,r_noclick,"
      "poisson_same_mean_as_r_click\n";
  for (int i = 0; i < written; ++i) {
    const pdecoy_stats_row &r = rows[i];
    out += std::to_string(r.n) + ',' + num(r.p_total) + ',' +
           num(r.p_noclick) + ',' + num(r.p_click) + ',' + num(r.r_click) +
           ',' + num(r.r_noclick) + ',' + num(r.poisson_ref) + '\n';
  }
  std::fputs(out.c_str(), stdout);

  if (!meta.certificate_valid) {
    std::fprintf(stderr,
                 "warning: estimation certificate failed at this source "
                 "configuration (branch statistics are proportional)\n");
    return 2;
  }
  return 0;
}

int parse_mode(const std::string &mode, int *out) {
  if (mode == "both") *out = 0;
  else if (mode == "passive") *out = 1;
  else if (mode == "active") *out = 2;
  else {
    std::fprintf(stderr, "error: mode must be both, passive or active\n");
    return 1;
  }
  return 0;
}

int run_scan(const std::string &config_path, double lmin, double lmax,
             double step, const std::string &mode_name) {
  int mode = 0;
  if (int rc = parse_mode(mode_name, &mode)) return rc;
  if (!(step > 0.0) || !(lmin >= 0.0) || !(lmax >= lmin)) {
    std::fprintf(stderr,
                 "error: need 0 <= lmin <= lmax and step > 0 "
                 "(got lmin=%g lmax=%g step=%g)\n",
                 lmin, lmax, step);
    return 1;
  }

  ConfigHandle cfg;
  if (!cfg.ptr) return 2;
  if (int rc = load_config_file(cfg.ptr, config_path)) return rc;

  char out_path[4096];
  pdecoy_status st =
      pdecoy_config_get_string(cfg.ptr, "output", out_path, sizeof(out_path));
  if (st != PDECOY_OK) return report_failure(st);

  std::string csv =
      "distance_km,eta,mu1_opt,mu2_opt,R_passive,R_active,Q_total,E_total,"
      "Q_noclick,E_noclick,Y1_lower,e1_upper,Y0_lower,Y0_upper\n";
  // Half-open [lmin, lmax): the start of each step belongs to the row.
  for (long i = 0;; ++i) {
    const double l = lmin + i * step;
    if (l >= lmax - step * 1e-9) break;
    pdecoy_scan_entry e{};
    st = pdecoy_scan_entry_at(cfg.ptr, l, mode, &e);
    if (st != PDECOY_OK) return report_failure(st);
    csv += num(e.distance_km) + ',' + num(e.eta) + ',' + num(e.mu1_opt) +
           ',' + num(e.mu2_opt) + ',' + num(e.rate_passive) + ',' +
           num(e.rate_active) + ',' + num(e.q_total) + ',' + num(e.e_total) +
           ',' + num(e.q_noclick) + ',' + num(e.e_noclick) + ',' +
           num(e.y1_lower) + ',' + num(e.e1_upper) + ',' + num(e.y0_lower) +
           ',' + num(e.y0_upper) + '\n';
  }

  // Write next to the final path, then rename: readers never see a partial
  // file and a failed run leaves no output at all.
  const std::string tmp_path = std::string(out_path) + ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::fprintf(stderr, "error: cannot write '%s'\n", tmp_path.c_str());
      return 2;
    }
    out << csv;
    if (!out.flush()) {
      std::remove(tmp_path.c_str());
      std::fprintf(stderr, "error: short write to '%s'\n", tmp_path.c_str());
      return 2;
    }
  }
  if (std::rename(tmp_path.c_str(), out_path) != 0) {
    std::remove(tmp_path.c_str());
    std::fprintf(stderr, "error: cannot move output into place at '%s'\n",
                 out_path);
    return 2;
  }
  return 0;
}

int run_cutoff(const std::string &config_path, const std::string &mode_name) {
  int mode = 0;
  if (int rc = parse_mode(mode_name, &mode)) return rc;
  if (mode == 0) {
    std::fprintf(stderr, "error: cutoff mode must be passive or active\n");
    return 1;
  }

  ConfigHandle cfg;
  if (!cfg.ptr) return 2;
  if (int rc = load_config_file(cfg.ptr, config_path)) return rc;

  double km = 0.0;
  const pdecoy_status st = pdecoy_cutoff(cfg.ptr, mode == 2 ? 1 : 0, &km);
  if (st != PDECOY_OK) return report_failure(st);
  std::printf("%s cutoff_km=%.2f\n", mode_name.c_str(), km);
  return 0;
}

int run_validate(const std::string &config_path) {
  ConfigHandle cfg;
  if (!cfg.ptr) return 2;
  if (int rc = load_config_file(cfg.ptr, config_path)) return rc;

  pdecoy_validation v{};
  const pdecoy_status st = pdecoy_validate_report(cfg.ptr, &v);
  if (st != PDECOY_OK) return report_failure(st);

  std::printf("determinant_d0 = %s\n", num(v.d0).c_str());
  std::printf("determinant_d1 = %s\n", num(v.d1).c_str());
  std::printf("determinant_de = %s\n", num(v.de).c_str());
  std::printf("coeff02_sign = %+d\n", static_cast<int>(v.coeff02_sign));
  std::printf("certificate: %s\n", v.certificate_valid ? "PASS" : "FAIL");
  std::printf("normalization_residual_total = %s\n",
              num(v.norm_residual_total).c_str());
  std::printf("normalization_residual_branches = %s\n",
              num(v.norm_residual_branches).c_str());
  std::printf("closed_vs_quadrature_max_rel = %s\n",
              num(v.closed_vs_quad_max_rel).c_str());
  std::printf("quadrature_degree: %s\n", v.quad_rule_ok ? "PASS" : "FAIL");
  std::printf("overall: %s\n", v.ok ? "PASS" : "FAIL");
  return v.ok ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "Passive decoy-state QKD simulator: photon statistics of two "
      "interfering phase-randomized pulses, channel observables, "
      "single-photon bounds and key rates"};
  app.require_subcommand(1);

  std::string config_path;
  double mu1 = 1e-4, mu2 = 0.55, t = 0.5;
  int nmax = 60;
  auto *stats = app.add_subcommand(
      "stats", "Photon-number statistics table (CSV to stdout)");
  stats->add_option("--config", config_path, "Config file (key = value)");
  stats->add_option("--mu1", mu1, "Intensity of pulse 1");
  stats->add_option("--mu2", mu2, "Intensity of pulse 2");
  stats->add_option("--t", t, "Beam-splitter transmittance");
  stats->add_option("--nmax", nmax, "Largest photon number to print");

  double lmin = 0.0, lmax = 150.0, step = 1.0;
  std::string scan_mode = "both";
  auto *scan = app.add_subcommand(
      "scan", "Optimized rate vs distance (CSV to the configured output)");
  scan->add_option("--config", config_path, "Config file (key = value)");
  scan->add_option("--lmin", lmin, "First distance, km");
  scan->add_option("--lmax", lmax, "End of range, km (excluded)");
  scan->add_option("--step", step, "Row spacing, km");
  scan->add_option("--mode", scan_mode, "both | passive | active");

  std::string cutoff_mode = "passive";
  auto *cutoff =
      app.add_subcommand("cutoff", "Largest distance with a positive rate");
  cutoff->add_option("--config", config_path, "Config file (key = value)");
  cutoff->add_option("--mode", cutoff_mode, "passive | active");

  auto *validate = app.add_subcommand(
      "validate", "Certificate and consistency report for the config");
  validate->add_option("--config", config_path, "Config file (key = value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  if (stats->parsed()) return run_stats(config_path, mu1, mu2, t, nmax);
  if (scan->parsed()) return run_scan(config_path, lmin, lmax, step, scan_mode);
  if (cutoff->parsed()) return run_cutoff(config_path, cutoff_mode);
  if (validate->parsed()) return run_validate(config_path);
  return 1;
}
