#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockverify/model.hpp"
#include "blockverify/simulator.hpp"
#include "blockverify/translator.hpp"

namespace blockverify {

struct SolverConfig {
    std::string executable;
    /// argv template; "{script}" is replaced by the script path.
    std::vector<std::string> args = {"{script}"};
    double timeout_seconds = 150.0;
    SmtMode mode = SmtMode::Quantified;
    BoundedOptions bounded;
};

/// Uses --solver when given, else BLOCKVERIFY_SOLVER, else searches PATH for
/// well-known solver names. Empty result means no solver is available.
std::string discover_solver(const std::string& cli_override = "");

enum class SolverStatus { Sat, Unsat, Unknown, Timeout, Error };

struct RawOutcome {
    SolverStatus status = SolverStatus::Error;
    std::string output;       // combined stdout/stderr
    double wall_time_seconds = 0.0;
};

/// Writes the script to a temporary file and runs the solver on it, with an
/// enforced wall-clock kill. Timeouts and garbage output are reported in the
/// outcome; only spawn-level failures throw.
RawOutcome run_solver(const std::string& script, const SolverConfig& config);

enum class Verdict { Valid, BoundedValid, Falsifiable, Unknown, Timeout, SolverError };

const char* to_string(Verdict verdict);

/// Step-indexed assignment extracted from a sat model of a bounded script.
struct Witness {
    int depth = 0;
    int step = -1;  // violating step: pre(step) && !post(step)
    std::map<std::string, std::vector<double>> values;  // Booleans as 0/1
};

struct ProveResult {
    std::string goal_name;
    Verdict verdict = Verdict::Unknown;
    int bounded_depth = 0;            // set for BoundedValid
    std::optional<Witness> witness;   // set for Falsifiable
    std::string note;                 // diagnostics (solver errors, unknown-with-note)
    double wall_time_seconds = 0.0;
};

/// Discharges one goal. Quantified: unsat => Valid, sat => Unknown with a
/// note (a model over uninterpreted time functions is not a trusted trace).
/// Bounded: unsat => BoundedValid{depth}, sat => Falsifiable with witness.
ProveResult prove(const LogicTheory& theory, const std::string& goal_name,
                  const SolverConfig& config);

/// Re-runs the simulator with the witness's initial conditions. Delay
/// initial values are taken from the step-0 entries of the witness.
Trace replay_witness(const Model& model, const Witness& witness, int steps);

struct SweepRow {
    double value = 0.0;
    ProveResult result;
    bool pre_satisfiable = false;  // exists k in domain: pre(k)
    bool post_always = false;      // forall k in domain: post(k)
};

/// Proves every goal for each parameter value; `param_path` is
/// "<block>.<param>". The pre/post status columns come from two bounded
/// auxiliary queries per row. Rows are ordered goal name first, then value;
/// row proving runs in parallel.
std::vector<SweepRow> sweep(const Model& model, const std::string& param_path,
                            const std::vector<double>& values, const SolverConfig& config);

/// Applies "<block>.<param>=value" style overrides in place.
void set_param(Model& model, const std::string& block_id, const std::string& param,
               const ParamValue& value);

} // namespace blockverify
