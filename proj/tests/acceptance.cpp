// Prints one PASS/FAIL line per acceptance criterion.
//
//   acceptance [--allow-fail 7,11]
//
// Exit status is 0 when every failing criterion is listed in --allow-fail.

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "nilmat/verify.hpp"

int main(int argc, char** argv) {
  std::set<int> allowed;
  for (int a = 1; a + 1 < argc; ++a)
    if (std::string(argv[a]) == "--allow-fail") {
      std::stringstream list(argv[a + 1]);
      for (std::string id; std::getline(list, id, ',');) allowed.insert(std::stoi(id));
    }
  std::size_t threads = 1;
  if (const char* t = std::getenv("NILMAT_THREADS")) threads = std::max(1, std::atoi(t));

  int unexpected = 0;
  const auto results = nilmat::run_acceptance_suite(threads, [&](const nilmat::CriterionResult& r) {
    std::cout << nilmat::format_result(r) << std::endl;
    if (!r.passed && !allowed.count(r.id)) ++unexpected;
  });
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << " criteria pass";
  if (!allowed.empty()) {
    std::cout << "; known failures allowed:";
    for (int id : allowed) std::cout << " " << id;
  }
  std::cout << std::endl;
  return unexpected == 0 ? 0 : 1;
}
