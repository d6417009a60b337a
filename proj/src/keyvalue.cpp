#include "scaledyn/keyvalue.hpp"

#include <fstream>
#include <sstream>

#include "scaledyn/textio.hpp"

namespace scaledyn {

static std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config c;
  std::stringstream ss(text);
  std::string line, section;
  size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw Error("config line " + std::to_string(lineno) + ": bad section");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw Error("config line " + std::to_string(lineno) + ": empty key");
    c.data_[section][key] = value;
  }
  return c;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  data_[section][key] = value;
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
  auto s = data_.find(section);
  if (s == data_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

void Config::record(const std::string& section, const std::string& key,
                    const std::string& value) const {
  resolved_[section + "." + key] = value;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const std::string* v = find(section, key);
  if (!v) throw ConfigKeyError(section + "." + key);
  record(section, key, *v);
  return *v;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_double(get_string(section, key));
}

long long Config::get_int(const std::string& section, const std::string& key) const {
  return std::stoll(get_string(section, key));
}

bool Config::get_bool(const std::string& section, const std::string& key) const {
  std::string v = get_string(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config " + section + "." + key + ": expected boolean, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  std::string v = get_string(section, key);
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (ss >> tok) out.push_back(parse_double(tok));
  return out;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& def) const {
  const std::string* v = find(section, key);
  std::string out = v ? *v : def;
  record(section, key, out);
  return out;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double def) const {
  const std::string* v = find(section, key);
  double out = v ? parse_double(*v) : def;
  record(section, key, format_double(out));
  return out;
}

long long Config::get_int_or(const std::string& section, const std::string& key,
                             long long def) const {
  const std::string* v = find(section, key);
  long long out = v ? std::stoll(*v) : def;
  record(section, key, std::to_string(out));
  return out;
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool def) const {
  if (!has(section, key)) {
    record(section, key, def ? "true" : "false");
    return def;
  }
  return get_bool(section, key);
}

std::vector<double> Config::get_doubles_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& def) const {
  if (!has(section, key)) {
    std::string repr;
    for (size_t i = 0; i < def.size(); ++i) repr += (i ? " " : "") + format_double(def[i]);
    record(section, key, repr);
    return def;
  }
  return get_doubles(section, key);
}

std::string Config::manifest() const {
  std::string out;
  for (const auto& [k, v] : resolved_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace scaledyn
