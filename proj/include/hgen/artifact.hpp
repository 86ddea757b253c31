#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hgen {

// One documentation unit at any level: a summarized code file, a user
// story, an epic, a requirement. Immutable value type once constructed.
struct Artifact {
  std::string id;
  int layer_index = 0;
  std::string artifact_type;
  std::string title;
  std::string body;
  std::optional<std::string> source_path;  // layer-0 code artifacts only
  int size = 0;  // lines for code artifacts, words for text artifacts

  bool operator==(const Artifact&) const = default;
};

struct Layer {
  int index = 0;
  std::string artifact_type;
  std::vector<Artifact> artifacts;  // insertion order from the pipeline

  bool operator==(const Layer&) const = default;
};

// Directed parent->child relation between adjacent layers.
struct TraceLink {
  std::string parent_id;  // higher layer
  std::string child_id;   // lower layer
  double score = 0.0;     // in [0, 1]

  bool operator==(const TraceLink&) const = default;
  auto operator<=>(const TraceLink&) const = default;
};

// The pipeline's persistent output: ordered layers plus the link set.
struct ArtifactTree {
  std::string project_name;
  std::vector<Layer> layers;
  std::vector<TraceLink> links;  // kept sorted by (parent, child)
  std::map<std::string, std::string> provenance;

  bool operator==(const ArtifactTree&) const = default;

  const Artifact* find_artifact(const std::string& id) const;
};

// Returns a description per violated invariant; empty means valid. Never
// throws: violations are data, not failures.
std::vector<std::string> validate_tree(const ArtifactTree& tree);

// Canonical JSON (key-sorted, UTF-8, links sorted by parent then child).
// load(save(t)) is structurally identical to t.
std::string save_tree(const ArtifactTree& tree);

// Throws ParseError naming the offending path on malformed input. Parsing
// does not validate invariants; run validate_tree separately.
ArtifactTree load_tree(const std::string& bytes);

}  // namespace hgen
