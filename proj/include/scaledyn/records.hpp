#pragma once

#include <string>
#include <vector>

namespace scaledyn {

enum class RecordStatus { Pass, Fail, Inconclusive, Info };

std::string status_name(RecordStatus s);

// One line of experiment output. Pass/fail is decided only by the explicit
// rule carried with the record.
struct ResultRecord {
  std::string experiment;
  std::string point;     // parameter point, e.g. "eps=0.25,fn=mode:1,0:cos"
  std::string quantity;  // what was measured
  double estimate = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  std::string rule;  // the declared tolerance rule
  RecordStatus status = RecordStatus::Info;
};

void write_records_csv(const std::string& path, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_records_csv(const std::string& path);

// 0 all pass (infos ignored), 1 any fail, 3 inconclusive-only.
int exit_code_for(const std::vector<ResultRecord>& records);

}  // namespace scaledyn
