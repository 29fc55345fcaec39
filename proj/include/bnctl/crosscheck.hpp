#pragma once

// Production results checked against the oracles of verify.hpp.

#include "bnctl/control.hpp"

#include <string>
#include <vector>

namespace bnctl::verify {

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct CrossCheckReport {
    std::vector<Check> checks;
    /// Observations that are not mismatches, such as an unsound blockwise union.
    std::vector<std::string> notes;

    bool ok() const;
};

/// Attractors, basins, global control, block composition and blockwise
/// basins against the oracles. Needs n <= kOracleControlMaxVariables.
CrossCheckReport cross_check(const BooleanNetwork& bn);

}  // namespace bnctl::verify
