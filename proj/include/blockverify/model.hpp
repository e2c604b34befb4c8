#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blockverify/errors.hpp"

namespace blockverify {

enum class SignalType { Real, Boolean };

enum class BlockType {
    Constant,
    Gain,
    Sum,
    Product,
    UnitDelay,
    CompareToZero,
    CompareToConstant,
    Logical,
    Assert,
    Require,
    Subsystem,
    Inport,
    Outport,
};

enum class Relation { Eq, Neq, Gt, Lt, Ge, Le };

enum class LogicalOp { And, Or, Not };

const char* to_string(BlockType kind);
const char* to_string(Relation rel);
const char* to_string(LogicalOp op);
std::optional<BlockType> block_type_from_string(std::string_view text);
std::optional<Relation> relation_from_string(std::string_view text);
std::optional<LogicalOp> logical_op_from_string(std::string_view text);

/// Negation of a relation (== <-> ~=, < <-> >=, > <-> <=).
Relation negate(Relation rel);

bool holds(Relation rel, double lhs, double rhs);

using ParamValue = std::variant<double, std::string>;

struct Model;

struct Block {
    std::string id;
    BlockType kind = BlockType::Constant;
    std::map<std::string, ParamValue> params;
    std::shared_ptr<const Model> children;  // Subsystem only

    double real_param(const std::string& name) const;
    std::string string_param(const std::string& name) const;
    bool has_param(const std::string& name) const { return params.count(name) != 0; }

    bool operator==(const Block& other) const;
};

/// Port references are 1-based, matching the op<n> signal convention.
struct PortRef {
    std::string block;
    int port = 1;

    auto operator<=>(const PortRef&) const = default;
};

struct Connection {
    PortRef from;
    PortRef to;

    auto operator<=>(const Connection&) const = default;
};

struct Model {
    std::string name;
    double sample_time = 1.0;
    std::vector<Block> blocks;
    std::vector<Connection> connections;

    const Block* find_block(const std::string& id) const;

    bool operator==(const Model& other) const;
};

/// Input/output arity and port types of a block, derived from its kind and
/// parameters (Sum arity from the sign string, Logical from `arity`,
/// Subsystem from its children's Inport/Outport blocks).
struct BlockPorts {
    int inputs = 0;
    int outputs = 0;
    SignalType input_type = SignalType::Real;
    SignalType output_type = SignalType::Real;
};

BlockPorts ports_of(const Block& block);

struct Violation {
    std::string code;     // stable machine-readable tag, e.g. "unconnected-input"
    std::string locus;    // block id or "<from> -> <to>" for connections
    std::string message;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

/// Raised by operations whose precondition is a valid model when handed an
/// invalid one (parse_model attaches the full report).
class ValidationError : public Error {
public:
    ValidationError(const std::string& message, ValidationReport report)
        : Error(message), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Collects every invariant violation; an empty report means the model is
/// valid. Block-scoped findings come first (ascending block id), then
/// connection findings in document order.
ValidationReport validate_model(const Model& model);

/// Inlines all Subsystem blocks, prefixing child block ids with
/// `<subsystem_id>__` and replacing Inport/Outport indirection by direct
/// wiring. Require blocks survive. Idempotent.
Model flatten(const Model& model);

SignalType signal_type_of(const Block& block, int port);

} // namespace blockverify
