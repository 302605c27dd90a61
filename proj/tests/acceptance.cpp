#include "shtuka/selftest.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  auto results = shtuka::run_acceptance(seed, [](const shtuka::CriterionResult& r) {
    std::cout << shtuka::format_result(r) << std::endl;
  });
  std::cout << shtuka::format_summary(results) << std::endl;
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
