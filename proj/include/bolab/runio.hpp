#pragma once

#include <map>
#include <string>
#include <vector>

namespace bolab {

// Run configuration shared by the CLI subcommands.  JSON file plus flag
// overrides; epsilons are snapped to M/round(M/eps) when snap is set.
struct RunConfig {
  std::string profile_name = "lorentzian";
  std::map<std::string, double> profile_params;
  std::vector<double> epsilons = {0.02};
  bool snap = true;
  std::vector<double> times = {1.5};
  double x_min = -2.0, x_max = 10.0;
  int x_count = 1201;
  double x0 = 4.0;
  // classification / measurement thresholds
  double c_out = 10.0;
  double c_split = 0.5;
  double B_bound = 10.0;
  double r_exp = 1.0 / 3.0;  // small-eigenvalue cutoff exponent
  std::string out_dir = "out";
  unsigned long long seed = 20240801;
  int workers = 4;
  bool emit_plot_scripts = false;
  bool cache_spectra = false;

  static RunConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  std::string hash() const;
  std::vector<double> x_grid() const;
};

// CSV writing with fixed 17-significant-digit scientific formatting so that
// identical configs produce byte-identical outputs.
std::string format_g17(double v);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Run manifest: config hash and the inventory of emitted files with content
// hashes and stage wall times.
class Manifest {
 public:
  explicit Manifest(std::string config_hash) : config_hash_(std::move(config_hash)) {}
  void add_file(const std::string& path);
  void add_stage(const std::string& name, double seconds);
  void write(const std::string& path) const;

 private:
  std::string config_hash_;
  std::vector<std::pair<std::string, std::string>> files_;  // path, hash
  std::vector<std::pair<std::string, double>> stages_;
};

}  // namespace bolab
