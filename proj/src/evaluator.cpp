#include "hgen/evaluator.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hgen/errors.hpp"
#include "json.hpp"

namespace hgen {

using nlohmann::json;

std::pair<std::optional<double>, std::optional<double>> precision_recall(
    const std::set<LinkKey>& predicted, const std::set<LinkKey>& truth) {
  std::size_t hits = 0;
  for (const LinkKey& link : predicted)
    if (truth.count(link)) ++hits;
  std::optional<double> precision;
  std::optional<double> recall;
  if (!predicted.empty())
    precision = static_cast<double>(hits) / static_cast<double>(predicted.size());
  if (!truth.empty())
    recall = static_cast<double>(hits) / static_cast<double>(truth.size());
  return {precision, recall};
}

std::optional<double> mean_average_precision(
    const std::vector<RankedQuery>& queries, const std::set<LinkKey>& truth) {
  double sum = 0.0;
  int counted = 0;
  for (const RankedQuery& query : queries) {
    bool has_true_link = false;
    for (const LinkKey& link : truth)
      if (link.first == query.parent_id) {
        has_true_link = true;
        break;
      }
    if (!has_true_link) continue;

    // Candidates must already be ranked by raw score descending, ties by
    // child id; the walk only counts hits.
    double average = 0.0;
    int hits = 0;
    for (std::size_t rank = 0; rank < query.ranked_children.size(); ++rank) {
      if (truth.count({query.parent_id, query.ranked_children[rank]})) {
        ++hits;
        average += static_cast<double>(hits) / static_cast<double>(rank + 1);
      }
    }
    sum += hits > 0 ? average / hits : 0.0;
    ++counted;
  }
  if (counted == 0) return std::nullopt;
  return sum / counted;
}

int count_orphans(const ArtifactTree& tree, int layer_index) {
  if (layer_index < 0 || layer_index >= static_cast<int>(tree.layers.size()))
    return 0;
  std::set<std::string> linked;
  for (const TraceLink& link : tree.links) linked.insert(link.child_id);
  int orphans = 0;
  for (const Artifact& artifact : tree.layers[layer_index].artifacts)
    if (!linked.count(artifact.id)) ++orphans;
  return orphans;
}

std::pair<std::optional<double>, std::optional<double>> concept_coverage(
    const std::vector<ConceptAnnotation>& annotations, int generated_count) {
  if (annotations.empty()) return {std::nullopt, std::nullopt};
  int covered = 0;
  std::set<std::string> citing_artifacts;
  for (const ConceptAnnotation& annotation : annotations) {
    if (!annotation.present_in_ids.empty()) ++covered;
    for (const std::string& id : annotation.present_in_ids)
      citing_artifacts.insert(id);
  }
  std::optional<double> coverage =
      static_cast<double>(covered) / static_cast<double>(annotations.size());
  std::optional<double> covered_by;
  if (generated_count > 0)
    covered_by = static_cast<double>(citing_artifacts.size()) /
                 static_cast<double>(generated_count);
  return {coverage, covered_by};
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError("cannot open CSV file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

GroundTruth load_ground_truth_csv(const std::string& path) {
  GroundTruth truth;
  std::vector<std::vector<std::string>> rows = read_csv(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && row.size() >= 3 && row[0] == "parent_id") continue;  // header
    if (row.size() != 3)
      throw ParseError("truth CSV row " + std::to_string(i + 1) +
                       ": expected parent_id,child_id,verdict");
    const std::string& verdict = row[2];
    if (verdict == "approved")
      truth.approved.insert({row[0], row[1]});
    else if (verdict == "added")
      truth.added.insert({row[0], row[1]});
    else if (verdict == "declined")
      ;  // declined links are not part of the truth set
    else
      throw ParseError("truth CSV row " + std::to_string(i + 1) +
                       ": unknown verdict '" + verdict + "'");
  }
  return truth;
}

std::set<LinkKey> GroundTruth::all() const {
  std::set<LinkKey> links = approved;
  links.insert(added.begin(), added.end());
  return links;
}

std::vector<ConceptAnnotation> load_concepts_csv(const std::string& path) {
  std::vector<ConceptAnnotation> annotations;
  std::set<std::string> labels;
  std::vector<std::vector<std::string>> rows = read_csv(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && !row.empty() && row[0] == "concept") continue;  // header
    if (row.empty() || row.size() > 2)
      throw ParseError("concepts CSV row " + std::to_string(i + 1) +
                       ": expected concept,artifact_ids");
    ConceptAnnotation annotation;
    annotation.concept = row[0];
    if (!labels.insert(annotation.concept).second)
      throw ParseError("concepts CSV: duplicate concept '" + annotation.concept +
                       "'");
    if (row.size() == 2 && !row[1].empty()) {
      std::istringstream stream(row[1]);
      std::string id;
      while (std::getline(stream, id, ';'))
        if (!id.empty()) annotation.present_in_ids.insert(id);
    }
    annotations.push_back(std::move(annotation));
  }
  return annotations;
}

EvalReport evaluate_tree(const ArtifactTree& tree, const GroundTruth& truth,
                         const std::vector<ConceptAnnotation>* concepts) {
  // Every id referenced by the truth must resolve in the tree.
  for (const LinkKey& link : truth.all()) {
    if (tree.find_artifact(link.first) == nullptr)
      throw ArgumentError("truth references unknown id: " + link.first);
    if (tree.find_artifact(link.second) == nullptr)
      throw ArgumentError("truth references unknown id: " + link.second);
  }

  std::set<LinkKey> predicted;
  for (const TraceLink& link : tree.links)
    predicted.insert({link.parent_id, link.child_id});
  std::set<LinkKey> truth_links = truth.all();

  EvalReport report;
  auto [precision, recall] = precision_recall(predicted, truth_links);
  report.precision = precision;
  report.recall = recall;

  // Rank each parent's tree links by raw score descending, ties by child id.
  std::map<std::string, std::vector<std::pair<double, std::string>>> by_parent;
  for (const TraceLink& link : tree.links)
    by_parent[link.parent_id].emplace_back(link.score, link.child_id);
  std::vector<RankedQuery> queries;
  for (auto& [parent_id, children] : by_parent) {
    std::sort(children.begin(), children.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
              });
    RankedQuery query;
    query.parent_id = parent_id;
    for (const auto& [score, child_id] : children)
      query.ranked_children.push_back(child_id);
    queries.push_back(std::move(query));
  }
  report.map = mean_average_precision(queries, truth_links);

  // Orphans summed over the layers that have a layer above them.
  int orphans = 0;
  for (int layer = 0; layer + 1 < static_cast<int>(tree.layers.size()); ++layer)
    orphans += count_orphans(tree, layer);
  report.orphan_count = orphans;

  if (concepts != nullptr) {
    int generated_count = 0;
    for (const Layer& layer : tree.layers)
      if (layer.index > 0) generated_count += static_cast<int>(layer.artifacts.size());
    auto [coverage, covered_by] = concept_coverage(*concepts, generated_count);
    report.coverage_pct = coverage;
    report.covered_by_pct = covered_by;
  }
  return report;
}

std::string EvalReport::to_json() const {
  json out;
  if (precision) out["precision"] = *precision;
  if (recall) out["recall"] = *recall;
  if (map) out["map"] = *map;
  out["orphan_count"] = orphan_count;
  if (coverage_pct) out["coverage_pct"] = *coverage_pct;
  if (covered_by_pct) out["covered_by_pct"] = *covered_by_pct;
  return out.dump(2) + "\n";
}

}  // namespace hgen
