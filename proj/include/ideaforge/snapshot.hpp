#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ideaforge/graph.hpp"
#include "json.hpp"

namespace ideaforge {

inline constexpr int kSnapshotVersion = 1;

enum class ExportFormat { Json, Dot };

/// {version, nodes:[{id,label,properties}], edges:[{id,src,dst,type,properties}]}
nlohmann::ordered_json graph_to_json(const GraphData& data);
/// Inverse of graph_to_json. Throws CorruptSnapshot on shape errors.
GraphData graph_from_json(const nlohmann::ordered_json& doc);

/// Writes the JSON document plus a trailing CRC-32 "checksum" field.
/// The file is replaced atomically. Throws IoFailure.
void snapshot_save(const KnowledgeGraph& graph, const std::filesystem::path& path);

/// Throws IoFailure when unreadable, CorruptSnapshot on parse, version or
/// checksum mismatch.
KnowledgeGraph snapshot_load(const std::filesystem::path& path);

std::string export_graph(const KnowledgeGraph& graph, ExportFormat format);
std::string export_dot(const GraphData& data);

}  // namespace ideaforge
