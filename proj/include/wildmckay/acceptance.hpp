#pragma once

// The acceptance criteria as runnable checks, shared by the acceptance test
// binary and `wildmckay selftest`.

#include <optional>
#include <string>
#include <vector>

#include "wildmckay/kernels.hpp"

namespace wmk::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    unsigned workers = 1;
    std::optional<kernels::Isa> isa;
};

inline constexpr int kCriterionCount = 10;

// Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const Options& options = {});
std::vector<CriterionResult> run_all(const Options& options = {});

} // namespace wmk::acceptance
