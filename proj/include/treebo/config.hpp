#pragma once

#include <map>
#include <string>

#include "treebo/domain.hpp"

namespace treebo {

// Flat key-value configuration text: one `key = value` per line, `#` starts a
// comment, blank lines ignored. Later duplicates override earlier ones.
using KvMap = std::map<std::string, std::string>;

KvMap parse_kv_text(const std::string& text);
KvMap parse_kv_file(const std::string& path);

// Typed readers; throw ConfigError naming the key on malformed values.
int kv_int(const KvMap& kv, const std::string& key, int fallback);
long kv_long(const KvMap& kv, const std::string& key, long fallback);
double kv_double(const KvMap& kv, const std::string& key, double fallback);
std::uint64_t kv_uint64(const KvMap& kv, const std::string& key, std::uint64_t fallback);
std::string kv_string(const KvMap& kv, const std::string& key, const std::string& fallback);

// Applies the run-level keys of `kv` on top of `base`. Keys not recognized at
// this level are left for the caller (the experiment layer rejects unknowns).
RunConfig run_config_from_kv(const KvMap& kv, RunConfig base = {});

// The run-level key names accepted by run_config_from_kv.
const std::vector<std::string>& run_config_keys();

}  // namespace treebo
