#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blockverify/model.hpp"

namespace blockverify {

/// Time argument of a signal application: either the quantified step plus a
/// constant offset (k, k-1, ...) or an absolute step index.
struct TimeExpr {
    bool absolute = false;
    int value = 0;  // offset when relative, step index when absolute

    bool operator==(const TimeExpr&) const = default;
};

inline TimeExpr at_k(int offset = 0) { return TimeExpr{false, offset}; }
inline TimeExpr at_step(int step) { return TimeExpr{true, step}; }

enum class TermOp {
    RealConst,
    BoolConst,
    ParamRef,   // named real parameter of a theory schema
    SignalAt,   // time-indexed function application
    Neg,
    Add,
    Sub,
    Mul,
    Rel,        // real comparison
    Not,
    And,
    Or,
    Implies,
    Iff,        // Boolean equality
    ForallK,    // universal quantification over integer time
};

/// Solver-neutral logic term. A formula is a Boolean-valued term; axioms and
/// goals are either ForallK at the top or closed (absolute times only).
struct Term {
    TermOp op = TermOp::RealConst;
    double real_value = 0.0;
    bool bool_value = false;
    std::string symbol;               // SignalAt / ParamRef name
    TimeExpr time;                    // SignalAt
    Relation rel = Relation::Eq;      // Rel
    std::optional<int> lower_bound;   // ForallK: restrict to k >= bound
    std::vector<Term> args;

    bool operator==(const Term&) const = default;
};

Term real_const(double v);
Term bool_const(bool v);
Term param_ref(const std::string& name);
Term signal_at(const std::string& signal, TimeExpr t = at_k());
Term neg(Term a);
Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term rel(Relation r, Term lhs, Term rhs);
Term not_(Term a);
Term and_(std::vector<Term> args);
Term or_(std::vector<Term> args);
Term implies(Term a, Term b);
Term iff(Term a, Term b);
/// `signal(t) = True/False` — kept as explicit Boolean equality so both
/// emitters print the comparison the way the goals are written.
Term bool_is(const std::string& signal, bool value, TimeExpr t = at_k());
Term forall_k(Term body, std::optional<int> lower_bound = std::nullopt);

/// Renames SignalAt symbols and replaces ParamRef nodes by constants.
Term substitute(const Term& t,
                const std::map<std::string, std::string>& renames,
                const std::map<std::string, double>& param_values);

/// Binds k := step, turning every relative time into an absolute one. Must
/// not be applied to quantified terms.
Term ground_at(const Term& t, int step);

/// Lisp-ish rendering for diagnostics.
std::string to_text(const Term& t);

/// Lookup interface the evaluator reads signal values through.
class SignalValues {
public:
    virtual ~SignalValues() = default;
    virtual bool has(const std::string& signal, int step) const = 0;
    virtual double real_at(const std::string& signal, int step) const = 0;
    virtual bool bool_at(const std::string& signal, int step) const = 0;
};

/// Evaluates a formula with k bound to `step`. Returns nullopt when a signal
/// reference falls outside the available range.
std::optional<bool> eval_at(const Term& formula, const SignalValues& values, int step);

/// Checks a (possibly ForallK-quantified) formula over every step in
/// [0, horizon], skipping steps with out-of-range references. On failure
/// fills `why` with the violating step and the formula text.
bool check_on_range(const Term& formula, const SignalValues& values, int horizon,
                    std::string* why = nullptr);

using GroundValue = std::variant<double, bool>;
using GroundEnv = std::map<std::pair<std::string, int>, GroundValue>;

/// Forward-substitution solver for the ground equation systems produced by
/// bounded translation with concrete initial conditions. Defining equalities
/// (out = expr, out <-> expr) are oriented left to right; every remaining
/// formula is verified against the assignment. Throws Error if the system is
/// not uniquely determined or some formula evaluates to false.
GroundEnv solve_equation_system(const std::vector<Term>& ground_formulas);

class GroundEnvValues : public SignalValues {
public:
    explicit GroundEnvValues(const GroundEnv& env) : env_(env) {}
    bool has(const std::string& signal, int step) const override;
    double real_at(const std::string& signal, int step) const override;
    bool bool_at(const std::string& signal, int step) const override;

private:
    const GroundEnv& env_;
};

} // namespace blockverify
