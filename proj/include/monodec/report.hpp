#pragma once

// Deterministic report rendering. The JSON form is byte-identical across
// runs with the same inputs: canonical orderings everywhere, fixed seeds,
// and no wall-clock data (timings appear only in the text rendering).

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "monodec/checks.hpp"

namespace monodec {

using ordered_json = nlohmann::ordered_json;

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckResult> checks;
  ordered_json payload = ordered_json::object();

  bool pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add_config(const std::string& k, const std::string& v) { config.emplace_back(k, v); }
  void merge(const CheckList& list, const std::string& prefix = {}) {
    for (const CheckResult& c : list.checks)
      checks.push_back({prefix.empty() ? c.name : prefix + "." + c.name, c.pass, c.count, c.ms, c.note});
  }

  ordered_json to_json() const {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    ordered_json cs = ordered_json::array();
    for (const CheckResult& c : checks) {
      ordered_json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      e["count"] = c.count;
      if (!c.note.empty()) e["note"] = c.note;
      cs.push_back(e);
    }
    j["checks"] = cs;
    j["overall"] = pass() ? "pass" : "fail";
    j["payload"] = payload;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    for (const auto& [k, v] : config) os << "  " << k << " = " << v << "\n";
    for (const CheckResult& c : checks) {
      os << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name << "  (count " << c.count;
      os.setf(std::ios::fixed);
      os.precision(1);
      os << ", " << c.ms << " ms)";
      if (!c.note.empty()) os << "  " << c.note;
      os << "\n";
    }
    if (!payload.empty()) os << "  payload: " << payload.dump() << "\n";
    os << "overall: " << (pass() ? "pass" : "FAIL") << "\n";
    return os.str();
  }
};

}  // namespace monodec
