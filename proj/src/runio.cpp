#include "bolab/runio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bolab/hash.hpp"

namespace bolab {

using json = nlohmann::json;

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RunConfig c;
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    c.profile_name = p.value("name", c.profile_name);
    if (p.contains("params"))
      for (auto it = p.at("params").begin(); it != p.at("params").end(); ++it)
        c.profile_params[it.key()] = it.value().get<double>();
  }
  auto load = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  load("epsilons", c.epsilons);
  load("snap", c.snap);
  load("times", c.times);
  load("x_min", c.x_min);
  load("x_max", c.x_max);
  load("x_count", c.x_count);
  load("x0", c.x0);
  load("c_out", c.c_out);
  load("c_split", c.c_split);
  load("B_bound", c.B_bound);
  load("r_exp", c.r_exp);
  load("out_dir", c.out_dir);
  load("seed", c.seed);
  load("workers", c.workers);
  load("emit_plot_scripts", c.emit_plot_scripts);
  load("cache_spectra", c.cache_spectra);
  for (double e : c.epsilons)
    if (!(e > 0)) throw std::invalid_argument("config: epsilons must be positive");
  if (c.x_count < 2) throw std::invalid_argument("config: x_count must be >= 2");
  return c;
}

std::string RunConfig::to_json_text() const {
  json j;
  j["profile"]["name"] = profile_name;
  j["profile"]["params"] = profile_params;
  j["epsilons"] = epsilons;
  j["snap"] = snap;
  j["times"] = times;
  j["x_min"] = x_min;
  j["x_max"] = x_max;
  j["x_count"] = x_count;
  j["x0"] = x0;
  j["c_out"] = c_out;
  j["c_split"] = c_split;
  j["B_bound"] = B_bound;
  j["r_exp"] = r_exp;
  j["out_dir"] = out_dir;
  j["seed"] = seed;
  j["workers"] = workers;
  j["emit_plot_scripts"] = emit_plot_scripts;
  j["cache_spectra"] = cache_spectra;
  return j.dump(2);
}

std::string RunConfig::hash() const { return hex64(fnv1a64(to_json_text())); }

std::vector<double> RunConfig::x_grid() const {
  std::vector<double> xs(x_count);
  for (int i = 0; i < x_count; ++i)
    xs[i] = x_min + (x_max - x_min) * double(i) / double(x_count - 1);
  return xs;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (!columns.empty())
    for (const auto& col : columns)
      if (col.size() != columns.front().size())
        throw std::invalid_argument("write_csv: ragged columns");
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (size_t c = 0; c < header.size(); ++c)
    out << header[c] << (c + 1 < header.size() ? "," : "\n");
  if (columns.empty()) return;
  const size_t rows = columns.front().size();
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < columns.size(); ++c)
      out << format_g17(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
}

void Manifest::add_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("manifest: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  files_.emplace_back(path, hex64(fnv1a64(ss.str())));
}

void Manifest::add_stage(const std::string& name, double seconds) {
  stages_.emplace_back(name, seconds);
}

void Manifest::write(const std::string& path) const {
  json j;
  j["config_hash"] = config_hash_;
  j["artifact_version"] = "1.0.0";
  for (const auto& [p, h] : files_) j["outputs"].push_back({{"path", p}, {"fnv1a64", h}});
  for (const auto& [n, s] : stages_) j["wall_times"].push_back({{"stage", n}, {"seconds", s}});
  std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace bolab
