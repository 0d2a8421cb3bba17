// The acceptance suite: one exact check per criterion,
// each with a wall-clock limit.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace nilmat {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;  // condition held and the limit was met
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

/// "PASS 3 ..." line with timing and detail.
std::string format_result(const CriterionResult& r);

/// Runs criteria 1..10 in order, then 11 (all earlier criteria passed).
/// on_result is called as each one finishes.
std::vector<CriterionResult> run_acceptance_suite(std::size_t threads = 1,
                                                 const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace nilmat
