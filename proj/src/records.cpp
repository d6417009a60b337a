#include "scaledyn/records.hpp"

#include <fstream>
#include <sstream>

#include "scaledyn/common.hpp"
#include "scaledyn/textio.hpp"

namespace scaledyn {

std::string status_name(RecordStatus s) {
  switch (s) {
    case RecordStatus::Pass: return "pass";
    case RecordStatus::Fail: return "fail";
    case RecordStatus::Inconclusive: return "inconclusive";
    case RecordStatus::Info: return "info";
  }
  return "?";
}

static RecordStatus status_from(const std::string& s) {
  if (s == "pass") return RecordStatus::Pass;
  if (s == "fail") return RecordStatus::Fail;
  if (s == "inconclusive") return RecordStatus::Inconclusive;
  if (s == "info") return RecordStatus::Info;
  throw Error("unknown record status '" + s + "'");
}

void write_records_csv(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "experiment,point,quantity,estimate,stderr,target,rule,status\n";
  for (const auto& r : records) {
    out << r.experiment << "," << r.point << "," << r.quantity << ","
        << format_double(r.estimate) << "," << format_double(r.stderr_) << ","
        << format_double(r.target) << "," << r.rule << "," << status_name(r.status) << "\n";
  }
}

std::vector<ResultRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<ResultRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() < 8) throw Error("malformed record line: " + line);
    ResultRecord r;
    r.experiment = cols[0];
    r.point = cols[1];
    r.quantity = cols[2];
    r.estimate = parse_double(cols[3]);
    r.stderr_ = parse_double(cols[4]);
    r.target = parse_double(cols[5]);
    r.rule = cols[6];
    r.status = status_from(cols[7]);
    out.push_back(std::move(r));
  }
  return out;
}

int exit_code_for(const std::vector<ResultRecord>& records) {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& r : records) {
    if (r.status == RecordStatus::Fail) any_fail = true;
    if (r.status == RecordStatus::Inconclusive) any_inconclusive = true;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 3;
  return 0;
}

}  // namespace scaledyn
