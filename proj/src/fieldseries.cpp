#include "scaledyn/fieldseries.hpp"

#include <fstream>
#include <sstream>

#include "scaledyn/common.hpp"
#include "scaledyn/textio.hpp"

namespace scaledyn {

void FieldSeries::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "# source=" << source << " eps=" << format_double(eps) << " beta="
      << format_double(beta) << " z=" << format_double(z) << " L=" << format_double(box)
      << " dt=" << format_double(dt) << " seed=" << seed << "\n";
  out << "# fns=";
  for (size_t i = 0; i < fn_ids.size(); ++i) out << (i ? ";" : "") << fn_ids[i];
  out << "\n";
  for (size_t t = 0; t < times.size(); ++t) {
    out << format_double(times[t]);
    for (double v : values[t]) out << " " << format_double(v);
    out << "\n";
  }
}

FieldSeries FieldSeries::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  FieldSeries fs;
  std::string line;
  auto header_value = [](const std::string& l, const std::string& key) {
    size_t p = l.find(key + "=");
    if (p == std::string::npos) throw Error("field series header missing " + key);
    size_t start = p + key.size() + 1;
    size_t end = l.find(' ', start);
    return l.substr(start, end == std::string::npos ? std::string::npos : end - start);
  };
  if (!std::getline(in, line)) throw Error("empty field series file");
  fs.source = header_value(line, "source");
  fs.eps = parse_double(header_value(line, "eps"));
  fs.beta = parse_double(header_value(line, "beta"));
  fs.z = parse_double(header_value(line, "z"));
  fs.box = parse_double(header_value(line, "L"));
  fs.dt = parse_double(header_value(line, "dt"));
  fs.seed = std::stoull(header_value(line, "seed"));
  if (!std::getline(in, line)) throw Error("field series: missing fn header");
  {
    std::string ids = header_value(line, "fns");
    std::stringstream ss(ids);
    std::string tok;
    while (std::getline(ss, tok, ';'))
      if (!tok.empty()) fs.fn_ids.push_back(tok);
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tok;
    ss >> tok;
    fs.times.push_back(parse_double(tok));
    std::vector<double> row;
    while (ss >> tok) row.push_back(parse_double(tok));
    fs.values.push_back(std::move(row));
  }
  return fs;
}

std::vector<double> FieldSeries::column(size_t fn) const {
  std::vector<double> out;
  out.reserve(times.size());
  for (const auto& row : values) out.push_back(row.at(fn));
  return out;
}

}  // namespace scaledyn
