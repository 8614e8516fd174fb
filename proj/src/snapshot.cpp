#include "ideaforge/snapshot.hpp"

#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <zlib.h>

#include "ideaforge/error.hpp"

namespace ideaforge {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json properties_to_json(const Properties& props) {
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : props)
        std::visit([&](const auto& v) { out[key] = v; }, value);
    return out;
}

Properties properties_from_json(const ordered_json& j) {
    if (!j.is_object()) throw CorruptSnapshot("properties must be an object");
    Properties props;
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            props[key] = value.get<std::string>();
        else if (value.is_boolean())
            props[key] = value.get<bool>();
        else if (value.is_number_integer())
            props[key] = value.get<std::int64_t>();
        else if (value.is_number_float())
            props[key] = value.get<double>();
        else
            throw CorruptSnapshot(fmt::format("property '{}' has an unsupported value type", key));
    }
    return props;
}

std::uint64_t parse_id(const ordered_json& j, std::string_view what) {
    if (!j.is_string()) throw CorruptSnapshot(fmt::format("{} id must be a string", what));
    auto id = parse_node_id(j.get<std::string>());
    if (!id) throw CorruptSnapshot(fmt::format("bad {} id '{}'", what, j.get<std::string>()));
    return id->value;
}

std::string checksum_of(const ordered_json& body) {
    auto text = body.dump();
    auto crc = crc32(0L, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size()));
    return fmt::format("{:08x}", crc);
}

std::string escape_dot(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::string_view headline_key(NodeLabel label) {
    switch (label) {
        case NodeLabel::Problem: return "statement";
        case NodeLabel::Contradiction: return "improving";
        case NodeLabel::Principle: return "name";
        case NodeLabel::UserNeed: return "persona";
        case NodeLabel::Transformation: return "scamper_type";
        case NodeLabel::Analogy: return "source_domain";
        case NodeLabel::PriorArt: return "title";
        case NodeLabel::Claim: return "text";
    }
    return "";
}

}  // namespace

ordered_json graph_to_json(const GraphData& data) {
    ordered_json doc;
    doc["version"] = kSnapshotVersion;
    doc["nodes"] = ordered_json::array();
    for (const auto& [id, n] : data.nodes)
        doc["nodes"].push_back(
            {{"id", to_string(id)}, {"label", to_string(n.label)}, {"properties", properties_to_json(n.properties)}});
    doc["edges"] = ordered_json::array();
    for (const auto& [id, e] : data.edges)
        doc["edges"].push_back({{"id", to_string(id)},
                                {"src", to_string(e.src)},
                                {"dst", to_string(e.dst)},
                                {"type", to_string(e.type)},
                                {"properties", properties_to_json(e.properties)}});
    return doc;
}

GraphData graph_from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw CorruptSnapshot("graph document must be an object");
    if (!doc.contains("version") || doc["version"] != kSnapshotVersion)
        throw CorruptSnapshot("unsupported snapshot version");
    if (!doc.contains("nodes") || !doc["nodes"].is_array() || !doc.contains("edges") || !doc["edges"].is_array())
        throw CorruptSnapshot("graph document needs nodes and edges arrays");

    GraphData data;
    for (const auto& jn : doc["nodes"]) {
        if (!jn.is_object() || !jn.contains("id") || !jn.contains("label") || !jn.contains("properties"))
            throw CorruptSnapshot("malformed node record");
        NodeId id{parse_id(jn["id"], "node")};
        auto label = jn["label"].is_string() ? parse_node_label(jn["label"].get<std::string>()) : std::nullopt;
        if (!label) throw CorruptSnapshot("unknown node label");
        if (!data.nodes.emplace(id, Node{id, *label, properties_from_json(jn["properties"])}).second)
            throw CorruptSnapshot("duplicate node id");
    }
    for (const auto& je : doc["edges"]) {
        if (!je.is_object() || !je.contains("id") || !je.contains("src") || !je.contains("dst") ||
            !je.contains("type") || !je.contains("properties"))
            throw CorruptSnapshot("malformed edge record");
        EdgeId id{parse_id(je["id"], "edge")};
        auto type = je["type"].is_string() ? parse_edge_type(je["type"].get<std::string>()) : std::nullopt;
        if (!type) throw CorruptSnapshot("unknown edge type");
        Edge e{id, NodeId{parse_id(je["src"], "node")}, NodeId{parse_id(je["dst"], "node")}, *type,
               properties_from_json(je["properties"])};
        if (!data.edges.emplace(id, std::move(e)).second) throw CorruptSnapshot("duplicate edge id");
    }
    return data;
}

void snapshot_save(const KnowledgeGraph& graph, const std::filesystem::path& path) {
    auto doc = graph_to_json(graph.data());
    doc["checksum"] = checksum_of(doc);

    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure(fmt::format("cannot write snapshot {}", tmp.string()));
        out << doc.dump(1) << '\n';
        if (!out.flush()) throw IoFailure(fmt::format("write failed for {}", tmp.string()));
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoFailure(fmt::format("cannot move snapshot into {}: {}", path.string(), ec.message()));
}

KnowledgeGraph snapshot_load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(fmt::format("cannot read snapshot {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();

    ordered_json doc;
    try {
        doc = ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw CorruptSnapshot(fmt::format("snapshot {} is not valid JSON: {}", path.string(), e.what()));
    }
    if (!doc.is_object() || !doc.contains("checksum") || !doc["checksum"].is_string())
        throw CorruptSnapshot("snapshot has no checksum");
    auto stored = doc["checksum"].get<std::string>();
    doc.erase("checksum");
    if (checksum_of(doc) != stored) throw CorruptSnapshot("snapshot checksum mismatch");

    try {
        return KnowledgeGraph(graph_from_json(doc));
    } catch (const CorruptSnapshot&) {
        throw;
    } catch (const Error& e) {
        throw CorruptSnapshot(fmt::format("snapshot violates the schema: {}", e.what()));
    }
}

std::string export_dot(const GraphData& data) {
    std::string out = "digraph ideaforge {\n  rankdir=LR;\n  node [shape=box];\n";
    for (const auto& [id, n] : data.nodes) {
        auto text = n.text(headline_key(n.label));
        if (text.size() > 40) text = text.substr(0, 37) + "...";
        out += fmt::format("  n{} [label=\"{}: {}\"];\n", id.value, to_string(n.label), escape_dot(text));
    }
    for (const auto& [id, e] : data.edges) {
        if (e.type == EdgeType::Convergent) {
            auto sim = as_number(e.properties.at("similarity")).value_or(0.0);
            out += fmt::format("  n{} -> n{} [label=\"CONVERGENT {:.3f}\", dir=none, style=bold];\n", e.src.value,
                               e.dst.value, sim);
        } else {
            out += fmt::format("  n{} -> n{} [label=\"{}\"];\n", e.src.value, e.dst.value, to_string(e.type));
        }
    }
    out += "}\n";
    return out;
}

std::string export_graph(const KnowledgeGraph& graph, ExportFormat format) {
    auto data = graph.data();
    if (format == ExportFormat::Dot) return export_dot(data);
    return graph_to_json(data).dump(2) + "\n";
}

}  // namespace ideaforge
