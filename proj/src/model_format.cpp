#include "blockverify/model_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace blockverify {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(ParseErrorKind kind, const std::string& message, int line = 0, int col = 0) {
    throw ParseError(kind, message, line, col);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(ParseErrorKind::Syntax, path + ": expected a number");
    return j.get<double>();
}

std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail(ParseErrorKind::Syntax, path + ": expected a string");
    return j.get<std::string>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            fail(ParseErrorKind::Syntax, path + ": unknown key '" + key + "'");
    }
}

PortRef parse_endpoint(const std::string& text, const std::string& path) {
    auto slash = text.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
        fail(ParseErrorKind::Syntax, path + ": endpoint '" + text + "' must look like \"block/port\"");
    int port = 0;
    auto digits = text.substr(slash + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || port < 1)
        fail(ParseErrorKind::Syntax, path + ": port in '" + text + "' must be a positive integer");
    return {text.substr(0, slash), port};
}

Model parse_model_object(const json& j, const std::string& path);

Block parse_block(const json& j, const std::string& path) {
    if (!j.is_object()) fail(ParseErrorKind::Syntax, path + ": expected an object");
    reject_unknown_keys(j, {"id", "kind", "params", "children"}, path);
    if (!j.contains("id")) fail(ParseErrorKind::Syntax, path + ": block needs an \"id\"");
    if (!j.contains("kind")) fail(ParseErrorKind::Syntax, path + ": block needs a \"kind\"");

    Block b;
    b.id = string_at(j.at("id"), path + ".id");
    std::string kind = string_at(j.at("kind"), path + ".kind");
    auto bt = block_type_from_string(kind);
    if (!bt) fail(ParseErrorKind::UnknownBlockKind, path + ": unknown block kind '" + kind + "'");
    b.kind = *bt;

    if (j.contains("params")) {
        const json& params = j.at("params");
        if (!params.is_object()) fail(ParseErrorKind::ParamSchema, path + ".params: expected an object");
        for (const auto& [key, value] : params.items()) {
            if (value.is_number())
                b.params[key] = value.get<double>();
            else if (value.is_string())
                b.params[key] = value.get<std::string>();
            else
                fail(ParseErrorKind::ParamSchema,
                     path + ".params." + key + ": parameter values are numbers or strings");
        }
    }
    if (j.contains("children"))
        b.children = std::make_shared<const Model>(parse_model_object(j.at("children"), path + ".children"));
    return b;
}

Model parse_model_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(ParseErrorKind::Syntax, path + ": expected an object");
    reject_unknown_keys(j, {"schema_version", "name", "sample_time", "blocks", "connections"}, path);
    if (j.contains("schema_version")) {
        std::string v = string_at(j.at("schema_version"), path + ".schema_version");
        if (v != "1") fail(ParseErrorKind::Syntax, path + ": unsupported schema_version '" + v + "'");
    }
    if (!j.contains("name")) fail(ParseErrorKind::Syntax, path + ": model needs a \"name\"");
    if (!j.contains("sample_time")) fail(ParseErrorKind::Syntax, path + ": model needs a \"sample_time\"");

    Model m;
    m.name = string_at(j.at("name"), path + ".name");
    m.sample_time = number_at(j.at("sample_time"), path + ".sample_time");

    if (j.contains("blocks")) {
        const json& blocks = j.at("blocks");
        if (!blocks.is_array()) fail(ParseErrorKind::Syntax, path + ".blocks: expected an array");
        std::set<std::string> ids;
        for (size_t i = 0; i < blocks.size(); ++i) {
            Block b = parse_block(blocks.at(i), path + ".blocks[" + std::to_string(i) + "]");
            if (!ids.insert(b.id).second)
                fail(ParseErrorKind::DuplicateId, path + ": duplicate block id '" + b.id + "'");
            m.blocks.push_back(std::move(b));
        }
    }
    if (j.contains("connections")) {
        const json& conns = j.at("connections");
        if (!conns.is_array()) fail(ParseErrorKind::Syntax, path + ".connections: expected an array");
        for (size_t i = 0; i < conns.size(); ++i) {
            const json& c = conns.at(i);
            std::string cpath = path + ".connections[" + std::to_string(i) + "]";
            if (!c.is_object()) fail(ParseErrorKind::Syntax, cpath + ": expected an object");
            reject_unknown_keys(c, {"from", "to"}, cpath);
            if (!c.contains("from") || !c.contains("to"))
                fail(ParseErrorKind::Syntax, cpath + ": connection needs \"from\" and \"to\"");
            m.connections.push_back({parse_endpoint(string_at(c.at("from"), cpath + ".from"), cpath),
                                     parse_endpoint(string_at(c.at("to"), cpath + ".to"), cpath)});
        }
    }
    return m;
}

ordered_json serialize_model_object(const Model& m, bool top_level) {
    ordered_json j;
    if (top_level) j["schema_version"] = "1";
    j["name"] = m.name;
    j["sample_time"] = m.sample_time;

    std::vector<const Block*> by_id;
    for (const auto& b : m.blocks) by_id.push_back(&b);
    std::sort(by_id.begin(), by_id.end(),
              [](const Block* a, const Block* b) { return a->id < b->id; });

    if (!by_id.empty()) {
        ordered_json blocks = ordered_json::array();
        for (const Block* b : by_id) {
            ordered_json jb;
            jb["id"] = b->id;
            jb["kind"] = to_string(b->kind);
            if (!b->params.empty()) {
                ordered_json params;
                for (const auto& [key, value] : b->params) {
                    if (std::holds_alternative<double>(value))
                        params[key] = std::get<double>(value);
                    else
                        params[key] = std::get<std::string>(value);
                }
                jb["params"] = std::move(params);
            }
            if (b->children) jb["children"] = serialize_model_object(*b->children, false);
            blocks.push_back(std::move(jb));
        }
        j["blocks"] = std::move(blocks);
    }

    if (!m.connections.empty()) {
        std::vector<Connection> conns = m.connections;
        std::sort(conns.begin(), conns.end(), [](const Connection& a, const Connection& b) {
            return std::tie(a.to.block, a.to.port, a.from.block, a.from.port) <
                   std::tie(b.to.block, b.to.port, b.from.block, b.from.port);
        });
        ordered_json arr = ordered_json::array();
        for (const auto& c : conns) {
            ordered_json jc;
            jc["from"] = c.from.block + "/" + std::to_string(c.from.port);
            jc["to"] = c.to.block + "/" + std::to_string(c.to.port);
            arr.push_back(std::move(jc));
        }
        j["connections"] = std::move(arr);
    }
    return j;
}

} // namespace

Model parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 0, col = 0;
        std::cmatch m;
        static const std::regex pos(R"(line (\d+), column (\d+))");
        if (std::regex_search(e.what(), m, pos)) {
            line = std::stoi(m[1]);
            col = std::stoi(m[2]);
        }
        fail(ParseErrorKind::Syntax, e.what(), line, col);
    }
    Model m = parse_model_object(j, "$");
    ValidationReport report = validate_model(m);
    if (!report.empty()) {
        std::ostringstream msg;
        msg << "model '" << m.name << "' is invalid (" << report.size() << " violation"
            << (report.size() == 1 ? "" : "s") << "): " << report.front().message;
        throw ValidationError(msg.str(), std::move(report));
    }
    return m;
}

std::string serialize_model(const Model& model) {
    return serialize_model_object(model, true).dump(2) + "\n";
}

Model load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace blockverify
