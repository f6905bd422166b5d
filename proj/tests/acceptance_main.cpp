// Acceptance runner: executes the claim-level criteria and prints one
// PASS/FAIL line per criterion. Exit code 0 only when everything passed.

#include "bellforge/acceptance.hpp"
#include "bellforge/errors.hpp"

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            ids.push_back(std::stoi(argv[++i]));
        } else {
            std::cerr << "usage: bellforge_acceptance [--criterion N]...\n";
            return 1;
        }
    }
    if (ids.empty())
        for (int id = 1; id <= 8; ++id) ids.push_back(id);

    bool all = true;
    for (int id : ids) {
        try {
            const bellforge::CriterionResult result = bellforge::run_criterion(id);
            std::cout << (result.passed ? "PASS" : "FAIL") << "  criterion " << result.id << "  "
                      << result.key << "  [" << result.description << "]  (" << result.seconds
                      << " s)\n";
            for (const auto& line : result.details) std::cout << "      " << line << "\n";
            all = all && result.passed;
        } catch (const std::exception& e) {
            std::cout << "FAIL  criterion " << id << "  (exception: " << e.what() << ")\n";
            all = false;
        }
    }
    return all ? 0 : 1;
}
