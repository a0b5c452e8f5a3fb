// checks.hpp: fast invariant suite behind `qtt check`
#pragma once

#include "qtt/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtt {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Random full-rank state: a mixture of `components` random pure states.
Operator random_density(std::uint64_t seed, int components = 4);

std::vector<CheckResult> run_invariant_checks();

// One line per check; returns true when all pass.
bool report_checks(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace qtt
