#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shtuka {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// The acceptance suite; on_result fires as each criterion finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);
std::string format_summary(const std::vector<CriterionResult>& rs);

}  // namespace shtuka
