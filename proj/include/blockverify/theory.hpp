#pragma once

#include <map>
#include <string>
#include <vector>

#include "blockverify/formula.hpp"
#include "blockverify/model.hpp"

namespace blockverify {

struct SlotDecl {
    std::string name;  // in1, in2, ..., out1
    SignalType type = SignalType::Real;

    bool operator==(const SlotDecl&) const = default;
};

struct NamedFormula {
    std::string name;
    Term formula;

    bool operator==(const NamedFormula&) const = default;
};

/// Per-block axiom schema, the counterpart of one theory in the block
/// library file. Axioms range over the slot symbols and named parameters.
struct TheorySchema {
    std::string name;                  // e.g. Product_int, CompareToZero_neq_int
    std::vector<SlotDecl> inputs;
    SlotDecl output;
    std::vector<std::string> params;   // e.g. gain, initial, value, c
    std::vector<NamedFormula> axioms;
};

/// Schema for a functional block. Structural kinds (Require, Assert,
/// Subsystem, Inport, Outport) have no theory and raise Error.
TheorySchema block_theory(const Block& block);

/// Clones a schema: slots are renamed to concrete signal names, parameters
/// replaced by their values, axiom names prefixed `<alias>.`.
std::vector<NamedFormula> instantiate(const TheorySchema& schema,
                                      const std::string& alias,
                                      const std::map<std::string, std::string>& bindings,
                                      const std::map<std::string, double>& params);

} // namespace blockverify
