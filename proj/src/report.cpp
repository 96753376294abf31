#include "gcalc/report.hpp"

#include <sstream>

#include <json.hpp>

namespace gcalc {

void Report::record(const std::string& identity, const std::string& sample,
                    bool pass, const std::string& detail) {
  lines_.push_back({identity, sample, pass, detail});
}

void Report::merge(const Report& other) {
  lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
}

bool Report::all_pass() const { return fail_count() == 0; }

int Report::fail_count() const {
  int n = 0;
  for (const auto& l : lines_)
    if (!l.pass) ++n;
  return n;
}

int Report::pass_count() const {
  return static_cast<int>(lines_.size()) - fail_count();
}

const CheckLine* Report::first_failure(const std::string& identity) const {
  for (const auto& l : lines_)
    if (!l.pass && l.identity == identity) return &l;
  return nullptr;
}

std::string Report::render_lines() const {
  std::ostringstream os;
  for (const auto& l : lines_) {
    os << (l.pass ? "PASS " : "FAIL ") << l.identity << " " << l.sample;
    if (!l.pass && !l.detail.empty()) os << "  # " << l.detail;
    os << "\n";
  }
  return os.str();
}

std::string Report::render_json() const {
  struct Tally {
    int pass = 0, fail = 0;
    std::string first;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& l : lines_) {
    auto& t = tallies[l.identity];
    if (l.pass) {
      ++t.pass;
    } else {
      ++t.fail;
      if (t.first.empty())
        t.first = l.sample + (l.detail.empty() ? "" : ": " + l.detail);
    }
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, t] : tallies) {
    nlohmann::json j{{"identity", name},
                     {"pass_count", t.pass},
                     {"fail_count", t.fail}};
    j["first_counterexample"] =
        t.first.empty() ? nlohmann::json() : nlohmann::json(t.first);
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace gcalc
