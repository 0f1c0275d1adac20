#pragma once

// The acceptance suite: one entry per shipped guarantee, each runnable on its
// own. `homind accept` and the acceptance test binary both drive this.

#include <iosfwd>
#include <string>
#include <vector>

namespace homind {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// all criteria in order; progress lines go to *out as they finish
std::vector<CriterionResult> run_acceptance(std::ostream* out = nullptr);

} // namespace homind
