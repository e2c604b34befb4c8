#include "blockverify/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace blockverify {

namespace {

const std::pair<BlockType, const char*> kBlockTypeNames[] = {
    {BlockType::Constant, "Constant"},
    {BlockType::Gain, "Gain"},
    {BlockType::Sum, "Sum"},
    {BlockType::Product, "Product"},
    {BlockType::UnitDelay, "UnitDelay"},
    {BlockType::CompareToZero, "CompareToZero"},
    {BlockType::CompareToConstant, "CompareToConstant"},
    {BlockType::Logical, "Logical"},
    {BlockType::Assert, "Assert"},
    {BlockType::Require, "Require"},
    {BlockType::Subsystem, "Subsystem"},
    {BlockType::Inport, "Inport"},
    {BlockType::Outport, "Outport"},
};

const std::pair<Relation, const char*> kRelationNames[] = {
    {Relation::Eq, "=="}, {Relation::Neq, "~="}, {Relation::Gt, ">"},
    {Relation::Lt, "<"},  {Relation::Ge, ">="},  {Relation::Le, "<="},
};

const std::pair<LogicalOp, const char*> kLogicalOpNames[] = {
    {LogicalOp::And, "AND"}, {LogicalOp::Or, "OR"}, {LogicalOp::Not, "NOT"},
};

bool valid_identifier(const std::string& id) {
    if (id.empty() || !std::islower(static_cast<unsigned char>(id.front()))) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::islower(c) || std::isdigit(c) || c == '_';
    });
}

} // namespace

const char* to_string(BlockType kind) {
    for (const auto& [k, n] : kBlockTypeNames)
        if (k == kind) return n;
    return "?";
}

const char* to_string(Relation rel) {
    for (const auto& [r, n] : kRelationNames)
        if (r == rel) return n;
    return "?";
}

const char* to_string(LogicalOp op) {
    for (const auto& [o, n] : kLogicalOpNames)
        if (o == op) return n;
    return "?";
}

std::optional<BlockType> block_type_from_string(std::string_view text) {
    for (const auto& [k, n] : kBlockTypeNames)
        if (text == n) return k;
    return std::nullopt;
}

std::optional<Relation> relation_from_string(std::string_view text) {
    for (const auto& [r, n] : kRelationNames)
        if (text == n) return r;
    return std::nullopt;
}

std::optional<LogicalOp> logical_op_from_string(std::string_view text) {
    for (const auto& [o, n] : kLogicalOpNames)
        if (text == n) return o;
    return std::nullopt;
}

Relation negate(Relation rel) {
    switch (rel) {
        case Relation::Eq: return Relation::Neq;
        case Relation::Neq: return Relation::Eq;
        case Relation::Gt: return Relation::Le;
        case Relation::Lt: return Relation::Ge;
        case Relation::Ge: return Relation::Lt;
        case Relation::Le: return Relation::Gt;
    }
    return Relation::Eq;
}

bool holds(Relation rel, double lhs, double rhs) {
    switch (rel) {
        case Relation::Eq: return lhs == rhs;
        case Relation::Neq: return lhs != rhs;
        case Relation::Gt: return lhs > rhs;
        case Relation::Lt: return lhs < rhs;
        case Relation::Ge: return lhs >= rhs;
        case Relation::Le: return lhs <= rhs;
    }
    return false;
}

double Block::real_param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<double>(it->second))
        throw Error("block '" + id + "': missing numeric parameter '" + name + "'");
    return std::get<double>(it->second);
}

std::string Block::string_param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<std::string>(it->second))
        throw Error("block '" + id + "': missing string parameter '" + name + "'");
    return std::get<std::string>(it->second);
}

bool Block::operator==(const Block& other) const {
    if (id != other.id || kind != other.kind || params != other.params) return false;
    if (!children != !other.children) return false;
    return !children || *children == *other.children;
}

const Block* Model::find_block(const std::string& id) const {
    for (const auto& b : blocks)
        if (b.id == id) return &b;
    return nullptr;
}

bool Model::operator==(const Model& other) const {
    return name == other.name && sample_time == other.sample_time &&
           blocks == other.blocks && connections == other.connections;
}

BlockPorts ports_of(const Block& block) {
    switch (block.kind) {
        case BlockType::Constant:
            return {0, 1, SignalType::Real, SignalType::Real};
        case BlockType::Gain:
        case BlockType::UnitDelay:
            return {1, 1, SignalType::Real, SignalType::Real};
        case BlockType::Product:
            return {2, 1, SignalType::Real, SignalType::Real};
        case BlockType::Sum: {
            int n = 2;
            if (auto it = block.params.find("signs");
                it != block.params.end() && std::holds_alternative<std::string>(it->second))
                n = static_cast<int>(std::get<std::string>(it->second).size());
            return {n, 1, SignalType::Real, SignalType::Real};
        }
        case BlockType::CompareToZero:
        case BlockType::CompareToConstant:
            return {1, 1, SignalType::Real, SignalType::Boolean};
        case BlockType::Logical: {
            int n = 2;
            if (auto it = block.params.find("op");
                it != block.params.end() && std::holds_alternative<std::string>(it->second) &&
                std::get<std::string>(it->second) == "NOT") {
                n = 1;
            } else if (auto ar = block.params.find("arity");
                       ar != block.params.end() && std::holds_alternative<double>(ar->second)) {
                n = static_cast<int>(std::get<double>(ar->second));
            }
            return {n, 1, SignalType::Boolean, SignalType::Boolean};
        }
        case BlockType::Assert:
            return {1, 0, SignalType::Boolean, SignalType::Boolean};
        case BlockType::Require:
            return {2, 0, SignalType::Boolean, SignalType::Boolean};
        case BlockType::Inport:
            return {0, 1, SignalType::Real, SignalType::Real};
        case BlockType::Outport:
            return {1, 0, SignalType::Real, SignalType::Real};
        case BlockType::Subsystem: {
            BlockPorts p{0, 0, SignalType::Real, SignalType::Real};
            if (block.children) {
                for (const auto& child : block.children->blocks) {
                    if (child.kind == BlockType::Inport) ++p.inputs;
                    if (child.kind == BlockType::Outport) ++p.outputs;
                }
            }
            return p;
        }
    }
    return {};
}

SignalType signal_type_of(const Block& block, int port) {
    BlockPorts p = ports_of(block);
    if (port < 1 || port > p.outputs)
        throw Error("block '" + block.id + "' has no output port " + std::to_string(port));
    return p.output_type;
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct Validator {
    ValidationReport report;

    void add(const std::string& code, const std::string& locus, const std::string& message) {
        report.push_back({code, locus, message});
    }

    void check_param_schema(const Block& b, const std::string& locus) {
        std::vector<std::pair<std::string, bool>> expected;  // name, numeric?
        switch (b.kind) {
            case BlockType::Constant: expected = {{"value", true}}; break;
            case BlockType::Gain: expected = {{"gain", true}}; break;
            case BlockType::Sum: expected = {{"signs", false}}; break;
            case BlockType::UnitDelay: expected = {{"initial", true}}; break;
            case BlockType::CompareToZero: expected = {{"relation", false}}; break;
            case BlockType::CompareToConstant: expected = {{"relation", false}, {"constant", true}}; break;
            case BlockType::Logical: expected = {{"op", false}}; break;
            case BlockType::Inport:
            case BlockType::Outport: expected = {{"index", true}}; break;
            default: break;
        }
        std::set<std::string> allowed;
        for (const auto& [name, numeric] : expected) {
            allowed.insert(name);
            auto it = b.params.find(name);
            if (it == b.params.end()) {
                add("missing-param", locus,
                    "block '" + b.id + "' (" + to_string(b.kind) + ") requires parameter '" + name + "'");
                continue;
            }
            if (std::holds_alternative<double>(it->second) != numeric)
                add("param-type", locus,
                    "parameter '" + name + "' of block '" + b.id + "' has the wrong type");
        }
        if (b.kind == BlockType::Logical) allowed.insert("arity");
        for (const auto& [name, value] : b.params) {
            (void)value;
            if (!allowed.count(name))
                add("extraneous-param", locus,
                    "block '" + b.id + "' has extraneous parameter '" + name + "'");
        }

        if (b.kind == BlockType::Sum) {
            if (auto it = b.params.find("signs");
                it != b.params.end() && std::holds_alternative<std::string>(it->second)) {
                const std::string& signs = std::get<std::string>(it->second);
                if (signs.size() < 2 || signs.find_first_not_of("+-") != std::string::npos)
                    add("bad-signs", locus,
                        "Sum '" + b.id + "' needs a sign string over {+,-} of length >= 2");
            }
        }
        if (b.kind == BlockType::CompareToZero || b.kind == BlockType::CompareToConstant) {
            if (auto it = b.params.find("relation");
                it != b.params.end() && std::holds_alternative<std::string>(it->second) &&
                !relation_from_string(std::get<std::string>(it->second)))
                add("bad-relation", locus,
                    "block '" + b.id + "': relation must be one of ==, ~=, >, <, >=, <=");
        }
        if (b.kind == BlockType::Logical) {
            auto it = b.params.find("op");
            std::optional<LogicalOp> op;
            if (it != b.params.end() && std::holds_alternative<std::string>(it->second))
                op = logical_op_from_string(std::get<std::string>(it->second));
            if (it != b.params.end() && !op) {
                add("bad-logical-op", locus, "block '" + b.id + "': op must be AND, OR or NOT");
            } else if (op) {
                int arity = ports_of(b).inputs;
                if (*op == LogicalOp::Not && arity != 1)
                    add("bad-arity", locus, "NOT block '" + b.id + "' must have arity 1");
                if (*op != LogicalOp::Not && arity < 2)
                    add("bad-arity", locus, "block '" + b.id + "': AND/OR arity must be >= 2");
            }
        }
        if ((b.kind == BlockType::Inport || b.kind == BlockType::Outport) &&
            b.params.count("index") && std::holds_alternative<double>(b.params.at("index"))) {
            double idx = std::get<double>(b.params.at("index"));
            if (idx < 1 || idx != static_cast<int>(idx))
                add("bad-index", locus, "port block '" + b.id + "' needs a positive integer index");
        }
        if (b.kind == BlockType::Subsystem) {
            if (!b.children)
                add("missing-children", locus, "Subsystem '" + b.id + "' has no nested model");
        } else if (b.children) {
            add("unexpected-children", locus,
                "block '" + b.id + "' (" + to_string(b.kind) + ") cannot carry a nested model");
        }
    }
};

void validate_into(const Model& model, Validator& v, bool top_level, const std::string& scope) {
    auto loc = [&](const std::string& id) { return scope.empty() ? id : scope + "/" + id; };

    if (!valid_identifier(model.name))
        v.add("bad-identifier", loc(model.name.empty() ? "<model>" : model.name),
              "model name '" + model.name + "' must match [a-z][a-z0-9_]*");
    if (!(model.sample_time > 0))
        v.add("bad-sample-time", loc(model.name), "sample_time must be positive");

    std::vector<const Block*> by_id;
    for (const auto& b : model.blocks) by_id.push_back(&b);
    std::stable_sort(by_id.begin(), by_id.end(),
                     [](const Block* a, const Block* b) { return a->id < b->id; });

    std::set<std::string> seen;
    for (const Block* b : by_id) {
        if (!valid_identifier(b->id))
            v.add("bad-identifier", loc(b->id), "block id '" + b->id + "' must match [a-z][a-z0-9_]*");
        if (!seen.insert(b->id).second)
            v.add("duplicate-id", loc(b->id), "duplicate block id '" + b->id + "'");
        if (top_level && (b->kind == BlockType::Inport || b->kind == BlockType::Outport))
            v.add("port-at-top-level", loc(b->id),
                  "Inport/Outport '" + b->id + "' only makes sense inside a Subsystem");
        v.check_param_schema(*b, loc(b->id));
    }

    std::map<std::pair<std::string, int>, int> in_degree;
    for (const auto& c : model.connections) {
        const Block* src = model.find_block(c.from.block);
        const Block* dst = model.find_block(c.to.block);
        std::string conn = c.from.block + "/" + std::to_string(c.from.port) + " -> " +
                           c.to.block + "/" + std::to_string(c.to.port);
        if (!src) {
            v.add("unknown-block", loc(conn),
                  "connection source block '" + c.from.block + "' does not exist");
            continue;
        }
        if (!dst) {
            v.add("unknown-block", loc(conn),
                  "connection sink block '" + c.to.block + "' does not exist");
            continue;
        }
        BlockPorts sp = ports_of(*src);
        BlockPorts dp = ports_of(*dst);
        if (c.from.port < 1 || c.from.port > sp.outputs) {
            v.add("bad-port", loc(conn), "source port " + std::to_string(c.from.port) +
                                             " out of range for '" + c.from.block + "'");
            continue;
        }
        if (c.to.port < 1 || c.to.port > dp.inputs) {
            v.add("bad-port", loc(conn), "sink port " + std::to_string(c.to.port) +
                                             " out of range for '" + c.to.block + "'");
            continue;
        }
        if (sp.output_type != dp.input_type)
            v.add("type-mismatch", loc(conn),
                  "connection " + conn + " links " +
                      (sp.output_type == SignalType::Real ? "Real" : "Boolean") + " to " +
                      (dp.input_type == SignalType::Real ? "Real" : "Boolean"));
        ++in_degree[{c.to.block, c.to.port}];
    }

    for (const Block* b : by_id) {
        BlockPorts p = ports_of(*b);
        for (int port = 1; port <= p.inputs; ++port) {
            auto it = in_degree.find({b->id, port});
            int deg = it == in_degree.end() ? 0 : it->second;
            if (deg == 0)
                v.add("unconnected-input", loc(b->id),
                      "unconnected input " + b->id + "/" + std::to_string(port));
            else if (deg > 1)
                v.add("multiple-drivers", loc(b->id),
                      "input " + b->id + "/" + std::to_string(port) + " has " +
                          std::to_string(deg) + " incoming connections");
        }
    }

    for (const Block* b : by_id) {
        if (b->kind != BlockType::Subsystem || !b->children) continue;
        validate_into(*b->children, v, false, loc(b->id));
        std::set<int> ins, outs;
        for (const auto& child : b->children->blocks) {
            if ((child.kind == BlockType::Inport || child.kind == BlockType::Outport) &&
                child.params.count("index") &&
                std::holds_alternative<double>(child.params.at("index"))) {
                int idx = static_cast<int>(std::get<double>(child.params.at("index")));
                auto& dest = child.kind == BlockType::Inport ? ins : outs;
                if (!dest.insert(idx).second)
                    v.add("duplicate-port-index", loc(b->id),
                          "subsystem '" + b->id + "' has two ports with index " + std::to_string(idx));
            }
        }
        auto contiguous = [](const std::set<int>& s) {
            int want = 1;
            for (int i : s)
                if (i != want++) return false;
            return true;
        };
        if (!contiguous(ins) || !contiguous(outs))
            v.add("port-index-gap", loc(b->id),
                  "subsystem '" + b->id + "' port indices must be 1..n without gaps");
    }
}

} // namespace

ValidationReport validate_model(const Model& model) {
    Validator v;
    validate_into(model, v, true, "");
    return v.report;
}

// ---------------------------------------------------------------------------
// flatten

namespace {

bool has_subsystems(const Model& m) {
    return std::any_of(m.blocks.begin(), m.blocks.end(),
                       [](const Block& b) { return b.kind == BlockType::Subsystem; });
}

const Connection* child_outport_feed(const Model& child, int index) {
    for (const auto& c : child.connections) {
        const Block* dst = child.find_block(c.to.block);
        if (dst && dst->kind == BlockType::Outport &&
            static_cast<int>(dst->real_param("index")) == index)
            return &c;
    }
    return nullptr;
}

/// Inlines exactly one level of subsystems.
Model flatten_once(const Model& m) {
    Model out;
    out.name = m.name;
    out.sample_time = m.sample_time;

    // parent-level driver of each subsystem input port
    std::map<std::string, std::map<int, PortRef>> in_src;
    for (const auto& c : m.connections) {
        const Block* dst = m.find_block(c.to.block);
        if (dst && dst->kind == BlockType::Subsystem) in_src[dst->id][c.to.port] = c.from;
    }

    auto push_block = [&](Block b, const std::string& origin) {
        for (const auto& existing : out.blocks)
            if (existing.id == b.id)
                throw Error("flatten: id '" + b.id + "' from " + origin +
                            " collides with an existing block of the same id");
        out.blocks.push_back(std::move(b));
    };

    for (const auto& b : m.blocks) {
        if (b.kind == BlockType::Subsystem) {
            for (const auto& cb : b.children->blocks) {
                if (cb.kind == BlockType::Inport || cb.kind == BlockType::Outport) continue;
                Block copy = cb;
                copy.id = b.id + "__" + cb.id;
                push_block(std::move(copy), "subsystem '" + b.id + "'");
            }
        } else {
            push_block(b, "the top level");
        }
    }

    // Resolves a parent-level source through subsystem outputs (and inport
    // passthroughs) to a block that exists in `out`.
    auto resolve = [&](PortRef p) -> PortRef {
        for (int hops = 0; hops < 1000; ++hops) {
            const Block* b = m.find_block(p.block);
            if (!b || b->kind != BlockType::Subsystem) return p;
            const Connection* feed = child_outport_feed(*b->children, p.port);
            if (!feed)
                throw Error("flatten: subsystem '" + b->id + "' has no source for output port " +
                            std::to_string(p.port));
            const Block* inner = b->children->find_block(feed->from.block);
            if (inner && inner->kind == BlockType::Inport) {
                p = in_src.at(b->id).at(static_cast<int>(inner->real_param("index")));
            } else {
                return {b->id + "__" + feed->from.block, feed->from.port};
            }
        }
        throw Error("flatten: circular Inport/Outport passthrough");
    };

    for (const auto& c : m.connections) {
        const Block* dst = m.find_block(c.to.block);
        if (dst && dst->kind == BlockType::Subsystem) continue;  // re-emitted from the child side
        out.connections.push_back({resolve(c.from), c.to});
    }
    for (const auto& b : m.blocks) {
        if (b.kind != BlockType::Subsystem) continue;
        for (const auto& cc : b.children->connections) {
            const Block* dst = b.children->find_block(cc.to.block);
            if (dst && dst->kind == BlockType::Outport) continue;
            const Block* src = b.children->find_block(cc.from.block);
            PortRef from;
            if (src && src->kind == BlockType::Inport) {
                from = resolve(in_src.at(b.id).at(static_cast<int>(src->real_param("index"))));
            } else {
                from = {b.id + "__" + cc.from.block, cc.from.port};
            }
            out.connections.push_back({from, {b.id + "__" + cc.to.block, cc.to.port}});
        }
    }
    return out;
}

} // namespace

Model flatten(const Model& model) {
    Model m = model;
    while (has_subsystems(m)) m = flatten_once(m);
    return m;
}

} // namespace blockverify
