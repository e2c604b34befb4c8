#pragma once

#include <map>
#include <string>
#include <vector>

#include "blockverify/model.hpp"

namespace blockverify {

/// `<block_id>_op<port>` — the time-indexed function symbol of one output.
std::string signal_name(const std::string& block_id, int port);

/// Names every output port of every block. Iteration order is block id
/// ascending, then port ascending.
std::map<std::pair<std::string, int>, std::string> name_signals(const Model& model);

struct DataflowGraph {
    std::vector<std::string> nodes;  // block ids, ascending
    std::map<std::pair<std::string, int>, PortRef> pred;               // (block, in port) -> source
    std::map<std::pair<std::string, int>, std::vector<PortRef>> succ;  // (block, out port) -> sinks
    std::vector<std::string> eval_order;
};

/// Predecessor/successor maps plus a topological order of the graph with
/// UnitDelay output edges removed (a delay's output only depends on the
/// previous step). Ties are broken by ascending block id. Throws GraphError
/// listing the cycle when an algebraic loop remains.
DataflowGraph build_dataflow(const Model& model);

struct Requirement {
    std::string goal_name;     // G1, G2, ... by ascending Require block id
    std::string pre;           // Boolean signal wired to port 1
    std::string post;          // Boolean signal wired to port 2
    std::string source_block;  // the Require block id

    bool operator==(const Requirement&) const = default;
};

std::vector<Requirement> extract_requirements(const Model& model);

} // namespace blockverify
