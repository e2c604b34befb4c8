#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockverify/simulator.hpp"
#include "blockverify/solver.hpp"

namespace blockverify {

/// Everything one CLI run produced, rendered as a human table and as JSON.
struct RunReport {
    std::string model_name;
    std::vector<std::string> overrides;  // applied --set assignments
    int steps = 0;
    std::vector<CheckResult> checks;
    std::vector<ProveResult> proofs;
    std::string sweep_param;
    std::vector<SweepRow> sweep_rows;

    std::string to_text() const;
    std::string to_json() const;
};

} // namespace blockverify
