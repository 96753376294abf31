// Pass/fail bookkeeping for the axiom suites.
//
// Line format: "PASS <identity-name> <sample-id>" / "FAIL ...".
// The JSON summary carries, per identity, pass/fail counts and the first
// counterexample.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace gcalc {

struct CheckLine {
  std::string identity;
  std::string sample;
  bool pass = true;
  std::string detail;  // counterexample description for failures
};

class Report {
 public:
  void record(const std::string& identity, const std::string& sample,
              bool pass, const std::string& detail = "");
  void merge(const Report& other);

  bool all_pass() const;
  int fail_count() const;
  int pass_count() const;
  const std::vector<CheckLine>& lines() const { return lines_; }
  // First failing line for a given identity, if any.
  const CheckLine* first_failure(const std::string& identity) const;

  std::string render_lines() const;
  std::string render_json() const;

 private:
  std::vector<CheckLine> lines_;
};

}  // namespace gcalc
