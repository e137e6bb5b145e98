#pragma once

// Named property suites behind `avgdyn verify`. Each check is deterministic
// given the seed and reports one pass/fail line.

#include <cstdint>
#include <string>
#include <vector>

namespace avgdyn::suites {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

std::vector<CheckResult> bounds_suite();
std::vector<CheckResult> optimality_suite(std::uint64_t seed);
std::vector<CheckResult> matrix_suite(std::uint64_t seed);
std::vector<CheckResult> majorization_suite(std::uint64_t seed);
std::vector<CheckResult> dynamics_suite(std::uint64_t seed);

// `suite` is one of bounds|optimality|matrix|majorization|dynamics|all.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace avgdyn::suites
