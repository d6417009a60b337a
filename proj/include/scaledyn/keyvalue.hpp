#pragma once

#include <map>
#include <string>
#include <vector>

#include "scaledyn/common.hpp"

namespace scaledyn {

struct ConfigKeyError : Error {
  std::string path;  // "section.key"
  explicit ConfigKeyError(const std::string& p)
      : Error("missing config key: " + p), path(p) {}
};

// Flat typed key-value configuration with [section] headers. Every resolved
// access (including defaulted ones) is recorded so the full effective
// configuration can be echoed into output manifests.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& def) const;
  double get_double_or(const std::string& section, const std::string& key, double def) const;
  long long get_int_or(const std::string& section, const std::string& key,
                       long long def) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool def) const;
  std::vector<double> get_doubles_or(const std::string& section, const std::string& key,
                                     const std::vector<double>& def) const;

  // Effective configuration: every key touched so far, with the value used.
  std::string manifest() const;

 private:
  const std::string* find(const std::string& section, const std::string& key) const;
  void record(const std::string& section, const std::string& key,
              const std::string& value) const;

  std::map<std::string, std::map<std::string, std::string>> data_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace scaledyn
