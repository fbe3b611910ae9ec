#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace monodec {

struct CheckResult {
  std::string name;
  bool pass = false;
  uint64_t count = 0;
  double ms = 0;
  std::string note;
};

// Ordered list of named pass/fail checks; the building block of every
// verification report in the library.
struct CheckList {
  std::vector<CheckResult> checks;
  bool all_pass = true;

  void add(std::string name, bool pass, uint64_t count = 0, double ms = 0, std::string note = {}) {
    all_pass = all_pass && pass;
    checks.push_back({std::move(name), pass, count, ms, std::move(note)});
  }
  void merge(const CheckList& other, const std::string& prefix = {}) {
    for (const CheckResult& c : other.checks)
      add(prefix.empty() ? c.name : prefix + "." + c.name, c.pass, c.count, c.ms, c.note);
  }

  // Runs fn() -> std::pair<bool, uint64_t> under a wall-clock timer.
  template <typename Fn>
  void timed(const std::string& name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto [pass, count] = fn();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    add(name, pass, count, ms);
  }
};

}  // namespace monodec
