#include "blockverify/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace blockverify {

std::string signal_name(const std::string& block_id, int port) {
    return block_id + "_op" + std::to_string(port);
}

std::map<std::pair<std::string, int>, std::string> name_signals(const Model& model) {
    std::map<std::pair<std::string, int>, std::string> names;
    for (const auto& b : model.blocks) {
        BlockPorts p = ports_of(b);
        for (int port = 1; port <= p.outputs; ++port)
            names[{b.id, port}] = signal_name(b.id, port);
    }
    return names;
}

DataflowGraph build_dataflow(const Model& model) {
    DataflowGraph g;
    for (const auto& b : model.blocks) g.nodes.push_back(b.id);
    std::sort(g.nodes.begin(), g.nodes.end());

    for (const auto& c : model.connections) {
        g.pred[{c.to.block, c.to.port}] = c.from;
        g.succ[{c.from.block, c.from.port}].push_back(c.to);
    }
    for (auto& [port, sinks] : g.succ) {
        (void)port;
        std::sort(sinks.begin(), sinks.end());
    }

    // Kahn's algorithm over the graph without UnitDelay-sourced edges;
    // a delay's output carries the previous step, so it is no same-step
    // dependency. The min-heap keeps ties in ascending id order.
    std::map<std::string, int> in_degree;
    std::map<std::string, std::set<std::string>> edges_out;
    for (const auto& id : g.nodes) in_degree[id] = 0;
    for (const auto& c : model.connections) {
        const Block* src = model.find_block(c.from.block);
        if (src && src->kind == BlockType::UnitDelay) continue;
        if (c.from.block == c.to.block) {
            throw GraphError("algebraic loop: block '" + c.from.block + "' feeds itself",
                             {c.from.block});
        }
        if (edges_out[c.from.block].insert(c.to.block).second) ++in_degree[c.to.block];
    }

    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [id, deg] : in_degree)
        if (deg == 0) ready.push(id);

    while (!ready.empty()) {
        std::string id = ready.top();
        ready.pop();
        g.eval_order.push_back(id);
        for (const auto& next : edges_out[id])
            if (--in_degree[next] == 0) ready.push(next);
    }

    if (g.eval_order.size() != g.nodes.size()) {
        // every unresolved node keeps an unresolved predecessor, so walking
        // predecessors must revisit a node: that is the loop
        std::set<std::string> leftover;
        for (const auto& [id, deg] : in_degree)
            if (deg > 0) leftover.insert(id);
        std::map<std::string, std::set<std::string>> edges_in;
        for (const auto& [from, tos] : edges_out)
            for (const auto& to : tos)
                if (leftover.count(from) && leftover.count(to)) edges_in[to].insert(from);
        std::vector<std::string> path;
        std::set<std::string> on_path;
        std::string cur = *leftover.begin();
        while (!on_path.count(cur)) {
            path.push_back(cur);
            on_path.insert(cur);
            cur = *edges_in.at(cur).begin();
        }
        std::vector<std::string> cycle(std::find(path.begin(), path.end(), cur), path.end());
        std::reverse(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        std::ostringstream msg;
        msg << "algebraic loop through blocks:";
        for (const auto& id : cycle) msg << " " << id;
        throw GraphError(msg.str(), std::move(cycle));
    }
    return g;
}

std::vector<Requirement> extract_requirements(const Model& model) {
    std::vector<const Block*> requires_blocks;
    for (const auto& b : model.blocks)
        if (b.kind == BlockType::Require) requires_blocks.push_back(&b);
    std::sort(requires_blocks.begin(), requires_blocks.end(),
              [](const Block* a, const Block* b) { return a->id < b->id; });

    std::vector<Requirement> reqs;
    int index = 1;
    for (const Block* r : requires_blocks) {
        const PortRef* pre = nullptr;
        const PortRef* post = nullptr;
        for (const auto& c : model.connections) {
            if (c.to.block != r->id) continue;
            if (c.to.port == 1) pre = &c.from;
            if (c.to.port == 2) post = &c.from;
        }
        if (!pre || !post)
            throw Error("Require block '" + r->id + "' is missing a precondition or postcondition input");
        for (const PortRef* src : {pre, post}) {
            const Block* sb = model.find_block(src->block);
            if (!sb || signal_type_of(*sb, src->port) != SignalType::Boolean)
                throw Error("Require block '" + r->id + "' is fed by a non-Boolean signal from '" +
                            src->block + "/" + std::to_string(src->port) + "'");
        }
        reqs.push_back({"G" + std::to_string(index++),
                        signal_name(pre->block, pre->port),
                        signal_name(post->block, post->port),
                        r->id});
    }
    return reqs;
}

} // namespace blockverify
