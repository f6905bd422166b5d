#pragma once

#include "bellforge/caps.hpp"

#include <string>
#include <vector>

namespace bellforge {

struct CriterionResult {
    int id = 0;
    std::string key;          // short machine name
    std::string description;  // the claim under test
    bool passed = false;
    std::vector<std::string> details; // failing sub-checks and recorded values
    double seconds = 0;
};

// Runs one acceptance criterion (1..8). Every tolerance is pinned here.
CriterionResult run_criterion(int id, EnumerationCaps caps = EnumerationCaps::from_env());

// All criteria in order.
std::vector<CriterionResult> run_acceptance(EnumerationCaps caps = EnumerationCaps::from_env());

} // namespace bellforge
