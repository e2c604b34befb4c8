#include "blockverify/theory.hpp"

#include <algorithm>

namespace blockverify {

namespace {

const char* relation_code(Relation r) {
    switch (r) {
        case Relation::Eq: return "eq";
        case Relation::Neq: return "neq";
        case Relation::Gt: return "g";
        case Relation::Lt: return "l";
        case Relation::Ge: return "ge";
        case Relation::Le: return "le";
    }
    return "?";
}

std::vector<SlotDecl> real_inputs(int n) {
    std::vector<SlotDecl> slots;
    for (int i = 1; i <= n; ++i) slots.push_back({"in" + std::to_string(i), SignalType::Real});
    return slots;
}

std::vector<SlotDecl> bool_inputs(int n) {
    std::vector<SlotDecl> slots;
    for (int i = 1; i <= n; ++i) slots.push_back({"in" + std::to_string(i), SignalType::Boolean});
    return slots;
}

TheorySchema compare_schema(const std::string& base, Relation r, Term threshold,
                            std::vector<std::string> params) {
    TheorySchema s;
    s.name = base + "_" + relation_code(r) + "_int";
    s.inputs = real_inputs(1);
    s.output = {"out1", SignalType::Boolean};
    s.params = std::move(params);
    s.axioms.push_back(
        {"v1", forall_k(iff(bool_is("out1", true), rel(r, signal_at("in1"), threshold)))});
    s.axioms.push_back(
        {"v2", forall_k(iff(bool_is("out1", false), rel(negate(r), signal_at("in1"), threshold)))});
    return s;
}

} // namespace

TheorySchema block_theory(const Block& block) {
    TheorySchema s;
    switch (block.kind) {
        case BlockType::Constant:
            s.name = "Constant_int";
            s.output = {"out1", SignalType::Real};
            s.params = {"value"};
            s.axioms.push_back({"v", forall_k(rel(Relation::Eq, signal_at("out1"), param_ref("value")))});
            return s;

        case BlockType::Gain:
            s.name = "Gain_int";
            s.inputs = real_inputs(1);
            s.output = {"out1", SignalType::Real};
            s.params = {"gain"};
            s.axioms.push_back({"v", forall_k(rel(Relation::Eq, signal_at("out1"),
                                                  mul(param_ref("gain"), signal_at("in1"))))});
            return s;

        case BlockType::Sum: {
            std::string signs = block.string_param("signs");
            int n = static_cast<int>(signs.size());
            if (signs == "++") {
                s.name = "Sum_int";
            } else {
                std::string code;
                for (char c : signs) code += (c == '+' ? 'p' : 'm');
                s.name = "Sum_" + code + "_int";
            }
            s.inputs = real_inputs(n);
            s.output = {"out1", SignalType::Real};
            Term acc = signs[0] == '+' ? signal_at("in1") : neg(signal_at("in1"));
            for (int i = 2; i <= n; ++i) {
                Term next = signal_at("in" + std::to_string(i));
                acc = signs[i - 1] == '+' ? add(std::move(acc), std::move(next))
                                          : sub(std::move(acc), std::move(next));
            }
            s.axioms.push_back({"v", forall_k(rel(Relation::Eq, signal_at("out1"), std::move(acc)))});
            return s;
        }

        case BlockType::Product:
            s.name = "Product_int";
            s.inputs = real_inputs(2);
            s.output = {"out1", SignalType::Real};
            s.axioms.push_back({"v", forall_k(rel(Relation::Eq, signal_at("out1"),
                                                  mul(signal_at("in1"), signal_at("in2"))))});
            s.axioms.push_back(
                {"c1", forall_k(implies(and_({rel(Relation::Gt, signal_at("in1"), real_const(0.0)),
                                              rel(Relation::Gt, signal_at("in2"), real_const(0.0))}),
                                        rel(Relation::Gt, signal_at("out1"), real_const(0.0))))});
            s.axioms.push_back(
                {"c2", forall_k(implies(and_({rel(Relation::Lt, signal_at("in1"), real_const(0.0)),
                                              rel(Relation::Lt, signal_at("in2"), real_const(0.0))}),
                                        rel(Relation::Gt, signal_at("out1"), real_const(0.0))))});
            return s;

        case BlockType::UnitDelay:
            s.name = "UnitDelay_int";
            s.inputs = real_inputs(1);
            s.output = {"out1", SignalType::Real};
            s.params = {"initial"};
            s.axioms.push_back(
                {"v", forall_k(rel(Relation::Eq, signal_at("out1"), signal_at("in1", at_k(-1))), 1)});
            s.axioms.push_back(
                {"init", rel(Relation::Eq, signal_at("out1", at_step(0)), param_ref("initial"))});
            return s;

        case BlockType::CompareToZero:
            return compare_schema("CompareToZero",
                                  *relation_from_string(block.string_param("relation")),
                                  real_const(0.0), {});

        case BlockType::CompareToConstant:
            return compare_schema("CompareToConstant",
                                  *relation_from_string(block.string_param("relation")),
                                  param_ref("c"), {"c"});

        case BlockType::Logical: {
            LogicalOp op = *logical_op_from_string(block.string_param("op"));
            int n = ports_of(block).inputs;
            if (op == LogicalOp::Not) {
                s.name = "Logical_not_int";
                s.inputs = bool_inputs(1);
                s.output = {"out1", SignalType::Boolean};
                s.axioms.push_back({"v", forall_k(iff(signal_at("out1"), not_(signal_at("in1"))))});
                return s;
            }
            std::string base = op == LogicalOp::And ? "and" : "or";
            s.name = "Logical_" + base + (n == 2 ? "" : std::to_string(n)) + "_int";
            s.inputs = bool_inputs(n);
            s.output = {"out1", SignalType::Boolean};
            std::vector<Term> ins;
            for (int i = 1; i <= n; ++i) ins.push_back(signal_at("in" + std::to_string(i)));
            Term body = op == LogicalOp::And ? and_(std::move(ins)) : or_(std::move(ins));
            s.axioms.push_back({"v", forall_k(iff(signal_at("out1"), std::move(body)))});
            return s;
        }

        case BlockType::Assert:
        case BlockType::Require:
        case BlockType::Subsystem:
        case BlockType::Inport:
        case BlockType::Outport:
            break;
    }
    throw Error(std::string("no block theory for kind ") + to_string(block.kind));
}

std::vector<NamedFormula> instantiate(const TheorySchema& schema,
                                      const std::string& alias,
                                      const std::map<std::string, std::string>& bindings,
                                      const std::map<std::string, double>& params) {
    std::vector<SlotDecl> slots = schema.inputs;
    slots.push_back(schema.output);
    for (const auto& slot : slots)
        if (!bindings.count(slot.name))
            throw Error("instantiate " + schema.name + " as " + alias + ": missing binding for slot '" +
                        slot.name + "'");
    for (const auto& p : schema.params)
        if (!params.count(p))
            throw Error("instantiate " + schema.name + " as " + alias + ": missing parameter '" + p + "'");

    std::vector<NamedFormula> out;
    for (const auto& axiom : schema.axioms)
        out.push_back({alias + "." + axiom.name, substitute(axiom.formula, bindings, params)});
    return out;
}

} // namespace blockverify
