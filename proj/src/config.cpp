#include "treebo/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace treebo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KvMap parse_kv_text(const std::string& text) {
  KvMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not of the form key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    kv[key] = value;
  }
  return kv;
}

KvMap parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kv_text(ss.str());
}

namespace {

template <typename T, typename Conv>
T kv_get(const KvMap& kv, const std::string& key, T fallback, Conv conv) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return conv(it->second);
  } catch (const std::exception&) {
    throw ConfigError("malformed value for config key '" + key + "': " + it->second);
  }
}

long to_long(const std::string& s) {
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

std::uint64_t to_uint64(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

int kv_int(const KvMap& kv, const std::string& key, int fallback) {
  return kv_get(kv, key, fallback,
                [](const std::string& s) { return static_cast<int>(to_long(s)); });
}

long kv_long(const KvMap& kv, const std::string& key, long fallback) {
  return kv_get(kv, key, fallback, to_long);
}

double kv_double(const KvMap& kv, const std::string& key, double fallback) {
  return kv_get(kv, key, fallback, to_double);
}

std::uint64_t kv_uint64(const KvMap& kv, const std::string& key, std::uint64_t fallback) {
  return kv_get(kv, key, fallback, to_uint64);
}

std::string kv_string(const KvMap& kv, const std::string& key, const std::string& fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

RunConfig run_config_from_kv(const KvMap& kv, RunConfig base) {
  RunConfig c = base;
  c.n_init = kv_int(kv, "n_init", c.n_init);
  c.n_iter = kv_int(kv, "n_iter", c.n_iter);
  c.relearn_interval = kv_int(kv, "relearn_interval", c.relearn_interval);
  c.structure_samples = kv_int(kv, "structure_samples", c.structure_samples);
  c.gibbs_prior = kv_double(kv, "gibbs_prior", c.gibbs_prior);
  c.discrete_levels = kv_int(kv, "discrete_levels", c.discrete_levels);
  c.zoom_grid = kv_int(kv, "zoom_grid", c.zoom_grid);
  c.zoom_levels = kv_int(kv, "zoom_levels", c.zoom_levels);
  c.acquisition_eval_cap = kv_long(kv, "acquisition_eval_cap", c.acquisition_eval_cap);
  c.seed = kv_uint64(kv, "seed", c.seed);
  if (kv.count("mode")) c.mode = acq_mode_from_string(kv.at("mode"));
  c.noise_std = kv_double(kv, "noise_std", c.noise_std);
  c.init_lengthscale = kv_double(kv, "init_lengthscale", c.init_lengthscale);
  c.init_scale = kv_double(kv, "init_scale", c.init_scale);
  return c;
}

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "n_init",          "n_iter",      "relearn_interval", "structure_samples",
      "gibbs_prior",     "discrete_levels", "zoom_grid",    "zoom_levels",
      "acquisition_eval_cap", "seed",   "mode",             "noise_std",
      "init_lengthscale", "init_scale"};
  return keys;
}

}  // namespace treebo
