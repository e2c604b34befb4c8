#include "blockverify/formula.hpp"

#include <cmath>
#include <sstream>

namespace blockverify {

Term real_const(double v) {
    Term t;
    t.op = TermOp::RealConst;
    t.real_value = v;
    return t;
}

Term bool_const(bool v) {
    Term t;
    t.op = TermOp::BoolConst;
    t.bool_value = v;
    return t;
}

Term param_ref(const std::string& name) {
    Term t;
    t.op = TermOp::ParamRef;
    t.symbol = name;
    return t;
}

Term signal_at(const std::string& signal, TimeExpr time) {
    Term t;
    t.op = TermOp::SignalAt;
    t.symbol = signal;
    t.time = time;
    return t;
}

namespace {
Term nary(TermOp op, std::vector<Term> args) {
    Term t;
    t.op = op;
    t.args = std::move(args);
    return t;
}
} // namespace

Term neg(Term a) { return nary(TermOp::Neg, {std::move(a)}); }
Term add(Term a, Term b) { return nary(TermOp::Add, {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return nary(TermOp::Sub, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return nary(TermOp::Mul, {std::move(a), std::move(b)}); }

Term rel(Relation r, Term lhs, Term rhs) {
    Term t = nary(TermOp::Rel, {std::move(lhs), std::move(rhs)});
    t.rel = r;
    return t;
}

Term not_(Term a) { return nary(TermOp::Not, {std::move(a)}); }
Term and_(std::vector<Term> args) { return nary(TermOp::And, std::move(args)); }
Term or_(std::vector<Term> args) { return nary(TermOp::Or, std::move(args)); }
Term implies(Term a, Term b) { return nary(TermOp::Implies, {std::move(a), std::move(b)}); }
Term iff(Term a, Term b) { return nary(TermOp::Iff, {std::move(a), std::move(b)}); }

Term bool_is(const std::string& signal, bool value, TimeExpr t) {
    return iff(signal_at(signal, t), bool_const(value));
}

Term forall_k(Term body, std::optional<int> lower_bound) {
    Term t = nary(TermOp::ForallK, {std::move(body)});
    t.lower_bound = lower_bound;
    return t;
}

Term substitute(const Term& t,
                const std::map<std::string, std::string>& renames,
                const std::map<std::string, double>& param_values) {
    Term out = t;
    if (t.op == TermOp::ParamRef) {
        auto it = param_values.find(t.symbol);
        if (it == param_values.end()) throw Error("unbound parameter '" + t.symbol + "'");
        return real_const(it->second);
    }
    if (t.op == TermOp::SignalAt) {
        auto it = renames.find(t.symbol);
        if (it != renames.end()) out.symbol = it->second;
        return out;
    }
    out.args.clear();
    for (const auto& a : t.args) out.args.push_back(substitute(a, renames, param_values));
    return out;
}

Term ground_at(const Term& t, int step) {
    if (t.op == TermOp::ForallK) throw Error("cannot ground a quantified term");
    Term out = t;
    if (t.op == TermOp::SignalAt) {
        if (!t.time.absolute) out.time = at_step(step + t.time.value);
        return out;
    }
    out.args.clear();
    for (const auto& a : t.args) out.args.push_back(ground_at(a, step));
    return out;
}

std::string to_text(const Term& t) {
    std::ostringstream out;
    switch (t.op) {
        case TermOp::RealConst: out << t.real_value; break;
        case TermOp::BoolConst: out << (t.bool_value ? "true" : "false"); break;
        case TermOp::ParamRef: out << "$" << t.symbol; break;
        case TermOp::SignalAt:
            out << t.symbol << "(";
            if (t.time.absolute) {
                out << t.time.value;
            } else {
                out << "k";
                if (t.time.value > 0) out << "+" << t.time.value;
                if (t.time.value < 0) out << t.time.value;
            }
            out << ")";
            break;
        case TermOp::Rel:
            out << "(" << to_string(t.rel) << " " << to_text(t.args[0]) << " " << to_text(t.args[1]) << ")";
            break;
        case TermOp::ForallK:
            out << "(forall k";
            if (t.lower_bound) out << ">=" << *t.lower_bound;
            out << ". " << to_text(t.args[0]) << ")";
            break;
        default: {
            const char* name = "?";
            switch (t.op) {
                case TermOp::Neg: name = "-"; break;
                case TermOp::Add: name = "+"; break;
                case TermOp::Sub: name = "-"; break;
                case TermOp::Mul: name = "*"; break;
                case TermOp::Not: name = "not"; break;
                case TermOp::And: name = "and"; break;
                case TermOp::Or: name = "or"; break;
                case TermOp::Implies: name = "=>"; break;
                case TermOp::Iff: name = "iff"; break;
                default: break;
            }
            out << "(" << name;
            for (const auto& a : t.args) out << " " << to_text(a);
            out << ")";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

struct OutOfRange {};

bool is_bool_term(const Term& t, const SignalValues& values, int step);

double eval_real(const Term& t, const SignalValues& values, int step) {
    switch (t.op) {
        case TermOp::RealConst: return t.real_value;
        case TermOp::SignalAt: {
            int at = t.time.absolute ? t.time.value : step + t.time.value;
            if (!values.has(t.symbol, at)) throw OutOfRange{};
            return values.real_at(t.symbol, at);
        }
        case TermOp::Neg: return -eval_real(t.args[0], values, step);
        case TermOp::Add: return eval_real(t.args[0], values, step) + eval_real(t.args[1], values, step);
        case TermOp::Sub: return eval_real(t.args[0], values, step) - eval_real(t.args[1], values, step);
        case TermOp::Mul: return eval_real(t.args[0], values, step) * eval_real(t.args[1], values, step);
        default: throw Error("not a real-valued term: " + to_text(t));
    }
}

bool eval_bool(const Term& t, const SignalValues& values, int step) {
    switch (t.op) {
        case TermOp::BoolConst: return t.bool_value;
        case TermOp::SignalAt: {
            int at = t.time.absolute ? t.time.value : step + t.time.value;
            if (!values.has(t.symbol, at)) throw OutOfRange{};
            return values.bool_at(t.symbol, at);
        }
        case TermOp::Rel:
            return holds(t.rel, eval_real(t.args[0], values, step), eval_real(t.args[1], values, step));
        case TermOp::Not: return !eval_bool(t.args[0], values, step);
        case TermOp::And:
            for (const auto& a : t.args)
                if (!eval_bool(a, values, step)) return false;
            return true;
        case TermOp::Or:
            for (const auto& a : t.args)
                if (eval_bool(a, values, step)) return true;
            return false;
        case TermOp::Implies:
            return !eval_bool(t.args[0], values, step) || eval_bool(t.args[1], values, step);
        case TermOp::Iff:
            return eval_bool(t.args[0], values, step) == eval_bool(t.args[1], values, step);
        default: throw Error("not a Boolean term: " + to_text(t));
    }
}

} // namespace

std::optional<bool> eval_at(const Term& formula, const SignalValues& values, int step) {
    try {
        return eval_bool(formula, values, step);
    } catch (const OutOfRange&) {
        return std::nullopt;
    }
}

bool check_on_range(const Term& formula, const SignalValues& values, int horizon, std::string* why) {
    const Term& body = formula.op == TermOp::ForallK ? formula.args[0] : formula;
    int from = 0;
    if (formula.op == TermOp::ForallK && formula.lower_bound)
        from = std::max(0, *formula.lower_bound);
    int to = formula.op == TermOp::ForallK ? horizon : 0;
    for (int k = from; k <= to; ++k) {
        std::optional<bool> ok = eval_at(body, values, k);
        if (ok && !*ok) {
            if (why) {
                std::ostringstream msg;
                msg << "false at k=" << k << ": " << to_text(body);
                *why = msg.str();
            }
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// ground equation solving

bool GroundEnvValues::has(const std::string& signal, int step) const {
    return env_.count({signal, step}) != 0;
}

double GroundEnvValues::real_at(const std::string& signal, int step) const {
    return std::get<double>(env_.at({signal, step}));
}

bool GroundEnvValues::bool_at(const std::string& signal, int step) const {
    return std::get<bool>(env_.at({signal, step}));
}

namespace {

/// Pattern: formula defines one signal sample. out = expr (Rel Eq with
/// SignalAt on the left), out <-> expr, (out = const) <-> expr.
struct Definition {
    std::string signal;
    int step = 0;
    bool boolean = false;
    bool negated = false;  // (out = False) <-> expr
    const Term* rhs = nullptr;
};

std::optional<Definition> match_definition(const Term& t) {
    if (t.op == TermOp::Rel && t.rel == Relation::Eq && t.args[0].op == TermOp::SignalAt) {
        return Definition{t.args[0].symbol, t.args[0].time.value, false, false, &t.args[1]};
    }
    if (t.op == TermOp::Iff) {
        const Term& lhs = t.args[0];
        if (lhs.op == TermOp::SignalAt)
            return Definition{lhs.symbol, lhs.time.value, true, false, &t.args[1]};
        // (signal = BoolConst) <-> rhs
        if (lhs.op == TermOp::Iff && lhs.args[0].op == TermOp::SignalAt &&
            lhs.args[1].op == TermOp::BoolConst)
            return Definition{lhs.args[0].symbol, lhs.args[0].time.value, true,
                              !lhs.args[1].bool_value, &t.args[1]};
    }
    return std::nullopt;
}

} // namespace

GroundEnv solve_equation_system(const std::vector<Term>& ground_formulas) {
    GroundEnv env;
    GroundEnvValues values(env);

    bool progress = true;
    while (progress) {
        progress = false;
        for (const Term& t : ground_formulas) {
            std::optional<Definition> def = match_definition(t);
            if (!def || env.count({def->signal, def->step})) continue;
            try {
                if (def->boolean) {
                    bool v = eval_bool(*def->rhs, values, 0);
                    env[{def->signal, def->step}] = def->negated ? !v : v;
                } else {
                    env[{def->signal, def->step}] = eval_real(*def->rhs, values, 0);
                }
                progress = true;
            } catch (const OutOfRange&) {
                // inputs not assigned yet; retry next round
            }
        }
    }

    for (const Term& t : ground_formulas) {
        std::optional<Definition> def = match_definition(t);
        if (def && !env.count({def->signal, def->step}))
            throw Error("equation system is not uniquely determined: " + to_text(t));
        std::optional<bool> ok = eval_at(t, values, 0);
        if (!ok) throw Error("equation references an unassigned sample: " + to_text(t));
        if (!*ok) throw Error("equation system is inconsistent: " + to_text(t));
    }
    return env;
}

} // namespace blockverify
