#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "causal/bbn.hpp"
#include "causal/intervention.hpp"
#include "causal/sem_bridge.hpp"
#include "causal/structure_matrix.hpp"

namespace causal::io {

using Json = nlohmann::ordered_json;

/// File could not be read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

enum class DocumentKind { kSystem, kBbn, kSem, kChange };

/// Classifies a document by its top-level keys ("equations" with "variables"
/// is a system, "nodes" a network, "equations" alone a threshold system,
/// "kind" a change). Throws ParseError when none match.
DocumentKind detect_kind(const Json& doc);

// System file: {"variables":[...], "equations":[{"label":..., "vars":[...]}]}
StructureMatrix system_from_json(const Json& doc);
Json to_json(const StructureMatrix& matrix);

// Network file: {"nodes":[{"name", "outcomes", "parents", "cpt"}]}. CPT rows
// follow mixed-radix parent order, first parent most significant.
Bbn bbn_from_json(const Json& doc);
Json to_json(const Bbn& bbn);

// Threshold system file: {"equations":[{"target", "parents", "thresholds"}]}.
ThresholdEquationSystem sem_from_json(const Json& doc);
Json to_json(const ThresholdEquationSystem& sem);

// Change file: {"kind", "target", "vars" | "dist"}.
StructuralChange change_from_json(const Json& doc);
Json to_json(const StructuralChange& change);

Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& doc);

}  // namespace causal::io
