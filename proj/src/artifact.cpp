#include "hgen/artifact.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hgen/errors.hpp"
#include "json.hpp"

namespace hgen {

using nlohmann::json;

const Artifact* ArtifactTree::find_artifact(const std::string& id) const {
  for (const Layer& layer : layers)
    for (const Artifact& artifact : layer.artifacts)
      if (artifact.id == id) return &artifact;
  return nullptr;
}

std::vector<std::string> validate_tree(const ArtifactTree& tree) {
  std::vector<std::string> violations;
  std::unordered_map<std::string, int> layer_of_id;

  for (std::size_t i = 0; i < tree.layers.size(); ++i) {
    const Layer& layer = tree.layers[i];
    if (layer.index != static_cast<int>(i))
      violations.push_back("layer at position " + std::to_string(i) +
                           " has non-contiguous index " +
                           std::to_string(layer.index));
    for (const Artifact& artifact : layer.artifacts) {
      if (artifact.layer_index != layer.index)
        violations.push_back("artifact " + artifact.id +
                             " disagrees with its layer index");
      if (artifact.body.empty())
        violations.push_back("artifact " + artifact.id + " has empty body");
      if (layer.index == 0 && !artifact.source_path.has_value())
        violations.push_back("layer-0 artifact " + artifact.id +
                             " lacks source_path");
      if (layer.index > 0 && artifact.source_path.has_value())
        violations.push_back("artifact " + artifact.id +
                             " above layer 0 carries source_path");
      if (artifact.size < 0)
        violations.push_back("artifact " + artifact.id + " has negative size");
      auto [it, inserted] = layer_of_id.emplace(artifact.id, layer.index);
      if (!inserted)
        violations.push_back("duplicate artifact id " + artifact.id);
    }
  }

  std::set<std::pair<std::string, std::string>> seen_links;
  for (const TraceLink& link : tree.links) {
    auto parent = layer_of_id.find(link.parent_id);
    auto child = layer_of_id.find(link.child_id);
    if (parent == layer_of_id.end()) {
      violations.push_back("dangling parent " + link.parent_id + " in link to " +
                           link.child_id);
      continue;
    }
    if (child == layer_of_id.end()) {
      violations.push_back("dangling child " + link.child_id + " in link from " +
                           link.parent_id);
      continue;
    }
    if (parent->second != child->second + 1)
      violations.push_back("non-adjacent layers in link " + link.parent_id +
                           " -> " + link.child_id);
    if (link.score < 0.0 || link.score > 1.0)
      violations.push_back("link " + link.parent_id + " -> " + link.child_id +
                           " has score outside [0,1]");
    if (!seen_links.emplace(link.parent_id, link.child_id).second)
      violations.push_back("duplicate link " + link.parent_id + " -> " +
                           link.child_id);
  }
  return violations;
}

std::string save_tree(const ArtifactTree& tree) {
  // json's std::map backing sorts object keys, which gives the canonical
  // key order for free.
  json root;
  root["project"] = tree.project_name;
  root["layers"] = json::array();
  for (const Layer& layer : tree.layers) {
    json layer_json;
    layer_json["index"] = layer.index;
    layer_json["artifact_type"] = layer.artifact_type;
    layer_json["artifacts"] = json::array();
    for (const Artifact& artifact : layer.artifacts) {
      json artifact_json;
      artifact_json["id"] = artifact.id;
      artifact_json["title"] = artifact.title;
      artifact_json["body"] = artifact.body;
      artifact_json["source_path"] =
          artifact.source_path ? json(*artifact.source_path) : json(nullptr);
      artifact_json["size"] = artifact.size;
      layer_json["artifacts"].push_back(std::move(artifact_json));
    }
    root["layers"].push_back(std::move(layer_json));
  }
  std::vector<TraceLink> sorted_links = tree.links;
  std::sort(sorted_links.begin(), sorted_links.end());
  root["links"] = json::array();
  for (const TraceLink& link : sorted_links) {
    json link_json;
    link_json["parent"] = link.parent_id;
    link_json["child"] = link.child_id;
    link_json["score"] = link.score;
    root["links"].push_back(std::move(link_json));
  }
  root["provenance"] = tree.provenance;
  return root.dump(2) + "\n";
}

namespace {

const json& require(const json& node, const char* key, const std::string& path) {
  auto it = node.find(key);
  if (it == node.end())
    throw ParseError("tree JSON: missing key at " + path + "/" + key);
  return *it;
}

template <typename T>
T as(const json& node, const std::string& path) {
  try {
    return node.get<T>();
  } catch (const json::exception&) {
    throw ParseError("tree JSON: wrong type at " + path);
  }
}

}  // namespace

ArtifactTree load_tree(const std::string& bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("tree JSON: ") + err.what());
  }
  if (!root.is_object()) throw ParseError("tree JSON: root is not an object");

  ArtifactTree tree;
  tree.project_name = as<std::string>(require(root, "project", ""), "/project");

  const json& layers = require(root, "layers", "");
  if (!layers.is_array()) throw ParseError("tree JSON: /layers is not an array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::string layer_path = "/layers/" + std::to_string(i);
    const json& layer_json = layers[i];
    Layer layer;
    layer.index = as<int>(require(layer_json, "index", layer_path), layer_path + "/index");
    layer.artifact_type = as<std::string>(require(layer_json, "artifact_type", layer_path),
                                          layer_path + "/artifact_type");
    const json& artifacts = require(layer_json, "artifacts", layer_path);
    if (!artifacts.is_array())
      throw ParseError("tree JSON: " + layer_path + "/artifacts is not an array");
    for (std::size_t j = 0; j < artifacts.size(); ++j) {
      std::string artifact_path = layer_path + "/artifacts/" + std::to_string(j);
      const json& artifact_json = artifacts[j];
      Artifact artifact;
      artifact.id = as<std::string>(require(artifact_json, "id", artifact_path),
                                    artifact_path + "/id");
      artifact.layer_index = layer.index;
      artifact.artifact_type = layer.artifact_type;
      artifact.title = as<std::string>(require(artifact_json, "title", artifact_path),
                                       artifact_path + "/title");
      artifact.body = as<std::string>(require(artifact_json, "body", artifact_path),
                                      artifact_path + "/body");
      const json& source_path = require(artifact_json, "source_path", artifact_path);
      if (!source_path.is_null())
        artifact.source_path = as<std::string>(source_path, artifact_path + "/source_path");
      artifact.size = as<int>(require(artifact_json, "size", artifact_path),
                              artifact_path + "/size");
      layer.artifacts.push_back(std::move(artifact));
    }
    tree.layers.push_back(std::move(layer));
  }

  const json& links = require(root, "links", "");
  if (!links.is_array()) throw ParseError("tree JSON: /links is not an array");
  for (std::size_t i = 0; i < links.size(); ++i) {
    std::string link_path = "/links/" + std::to_string(i);
    const json& link_json = links[i];
    TraceLink link;
    link.parent_id = as<std::string>(require(link_json, "parent", link_path),
                                     link_path + "/parent");
    link.child_id = as<std::string>(require(link_json, "child", link_path),
                                    link_path + "/child");
    link.score = as<double>(require(link_json, "score", link_path), link_path + "/score");
    tree.links.push_back(std::move(link));
  }
  std::sort(tree.links.begin(), tree.links.end());

  const json& provenance = require(root, "provenance", "");
  if (!provenance.is_object())
    throw ParseError("tree JSON: /provenance is not an object");
  for (auto it = provenance.begin(); it != provenance.end(); ++it)
    tree.provenance[it.key()] = as<std::string>(it.value(), "/provenance/" + it.key());

  return tree;
}

}  // namespace hgen
