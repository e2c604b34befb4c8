#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockverify/formula.hpp"
#include "blockverify/graph.hpp"
#include "blockverify/model.hpp"
#include "blockverify/theory.hpp"

namespace blockverify {

/// One cloned block theory: which schema, under which alias, with slots
/// bound to signal names and parameters fixed to values.
struct TheoryClone {
    std::string schema_name;
    std::string alias;           // block id with the first letter capitalised
    std::string block_id;
    std::vector<std::pair<std::string, std::string>> bindings;  // slot -> signal, inputs then output
    std::vector<std::pair<std::string, double>> params;         // schema parameter order
    std::vector<NamedFormula> axioms;                           // instantiated
};

struct Goal {
    std::string name;               // G<i>
    std::string pre;                // Boolean signal
    std::string post;               // Boolean signal
    std::optional<int> domain_lo;   // k >= bound; nullopt quantifies all of int
    Term formula;                   // forall k [in domain]. pre k = True -> post k = True
};

struct LogicTheory {
    std::string name;  // M_<model name>
    std::vector<std::pair<std::string, SignalType>> declarations;  // block id ascending
    std::vector<TheoryClone> clones;                               // eval-graph order
    std::vector<Goal> goals;

    std::vector<Term> all_axioms() const;
    const Goal* find_goal(const std::string& name) const;
};

struct TranslateOptions {
    /// Lower bound of goal quantification. The default keeps delayed values
    /// anchored to the modelled history; nullopt mirrors the all-int form.
    std::optional<int> goal_domain_lo = 1;
};

/// Steps 2-5 of the translation: signals become declarations, functional
/// blocks become clones with parameter axioms, Require blocks become goals.
/// Subsystems are flattened first.
LogicTheory translate(const Model& model, const TranslateOptions& options = {});

/// Why3-compatible theory text; deterministic and golden-testable. Real
/// literals print with six fractional digits, negatives in `-.` prefix form.
std::string emit_why3(const LogicTheory& theory);

enum class SmtMode { Quantified, Bounded };

struct BoundedOptions {
    int depth = 10;
    bool symbolic_init = false;  // leave UnitDelay initial values free
};

/// What the bounded script asks the solver.
enum class BoundedQuery {
    GoalViolation,  // exists k in domain: pre(k) and not post(k)
    PreReachable,   // exists k in domain: pre(k)
    PostViolation,  // exists k in domain: not post(k)
    ModelOnly,      // axioms only; the unique trace model
};

/// SMT-LIB2 script for one goal. Quantified mode asserts the axioms over all
/// k and the negated goal (unsat == valid, logic UFNIRA). Bounded mode
/// unrolls steps 0..depth into per-step constants (logic QF_NRA) and asks
/// for a violation within the horizon, with model extraction enabled.
std::string emit_smtlib(const LogicTheory& theory, const std::string& goal_name, SmtMode mode,
                        const BoundedOptions& bounded = {},
                        BoundedQuery query = BoundedQuery::GoalViolation);

/// The per-step ground formulas of the bounded encoding, in emission order.
/// This is what emit_smtlib asserts and what the in-process evaluator solves.
std::vector<Term> bounded_ground_formulas(const LogicTheory& theory, const BoundedOptions& bounded);

/// Constant name of a signal at a step in bounded scripts: `<signal>_k<step>`.
std::string step_constant(const std::string& signal, int step);

} // namespace blockverify
