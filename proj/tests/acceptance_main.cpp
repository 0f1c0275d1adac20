// Runs every acceptance criterion and prints one pass/fail line per entry.

#include <iostream>

#include "homind/accept.hpp"

int main() {
    auto results = homind::run_acceptance(&std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
