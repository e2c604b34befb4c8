#pragma once

#include <map>
#include <string>
#include <vector>

#include "blockverify/formula.hpp"
#include "blockverify/graph.hpp"
#include "blockverify/model.hpp"

namespace blockverify {

/// Time-indexed valuation of every output signal at steps 0..N. Boolean
/// columns store 0/1.
struct Trace {
    int steps = 0;  // N; columns hold N+1 samples
    std::map<std::string, SignalType> types;
    std::map<std::string, std::vector<double>> columns;

    double real_at(const std::string& signal, int k) const;
    bool bool_at(const std::string& signal, int k) const;
    bool has_signal(const std::string& signal) const { return columns.count(signal) != 0; }
};

/// Adapter so formulas can be evaluated directly against a trace.
class TraceValues : public SignalValues {
public:
    explicit TraceValues(const Trace& trace) : trace_(trace) {}
    bool has(const std::string& signal, int step) const override;
    double real_at(const std::string& signal, int step) const override;
    bool bool_at(const std::string& signal, int step) const override;

private:
    const Trace& trace_;
};

/// Fixed-step execution over steps 0..N. The model must be valid and free of
/// algebraic loops; subsystems are flattened on entry. Non-finite values are
/// recorded, not faulted.
Trace simulate(const Model& model, int steps);

enum class CheckVerdict { Pass, Fail, NotChecked };

struct CheckResult {
    std::string goal_name;
    CheckVerdict verdict = CheckVerdict::NotChecked;
    int first_step = -1;     // minimal violating k when verdict == Fail
    int checked_steps = 0;   // steps where the precondition held

    bool operator==(const CheckResult&) const = default;
};

const char* to_string(CheckVerdict verdict);

/// Hoare-style monitoring: wherever pre(k) holds, post(k) must. A
/// precondition that never fires yields NotChecked.
std::vector<CheckResult> check_assertions(const Trace& trace,
                                          const std::vector<Requirement>& requirements);

/// Standalone Assert blocks outside any Require: the input must hold at
/// every step (no gating). Result names are `assert:<block_id>`.
std::vector<CheckResult> check_standalone_asserts(const Model& model, const Trace& trace);

/// Debugging export: one row per step, one column per signal (Booleans as
/// 0/1), signals in ascending name order.
std::string trace_to_text(const Trace& trace);

} // namespace blockverify
