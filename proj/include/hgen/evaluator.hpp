#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hgen/artifact.hpp"

namespace hgen {

using LinkKey = std::pair<std::string, std::string>;  // parent, child

// Expert-reviewed link set: approved survivors plus expert additions. The
// union is the truth set used by the metrics.
struct GroundTruth {
  std::set<LinkKey> approved;
  std::set<LinkKey> added;

  std::set<LinkKey> all() const;
};

struct ConceptAnnotation {
  std::string concept;
  std::set<std::string> present_in_ids;  // empty means not covered
};

struct EvalReport {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> map;
  int orphan_count = 0;
  std::optional<double> coverage_pct;
  std::optional<double> covered_by_pct;

  // Absent metrics are omitted from the JSON, never reported as 0.
  std::string to_json() const;
};

// precision = |predicted ∩ truth| / |predicted|, recall over |truth|.
// Empty denominators yield absent values.
std::pair<std::optional<double>, std::optional<double>> precision_recall(
    const std::set<LinkKey>& predicted, const std::set<LinkKey>& truth);

// One parent's candidate children, ranked by raw similarity descending
// (ties by child id) before the call.
struct RankedQuery {
  std::string parent_id;
  std::vector<std::string> ranked_children;
};

// AP per parent = mean over ranks of correct hits of (hits so far / rank);
// parents with true links but no retrieved hit contribute 0. The mean runs
// over parents holding at least one true link; absent when none does.
std::optional<double> mean_average_precision(
    const std::vector<RankedQuery>& queries, const std::set<LinkKey>& truth);

// Artifacts in the given layer with no parent link.
int count_orphans(const ArtifactTree& tree, int layer_index);

// coverage = fraction of concepts present somewhere; covered_by = fraction
// of the generated artifacts cited by at least one concept.
std::pair<std::optional<double>, std::optional<double>> concept_coverage(
    const std::vector<ConceptAnnotation>& annotations, int generated_count);

// CSV loaders for the externally supplied expert data.
// truth: parent_id,child_id,verdict{approved,added,declined}
// concepts: concept,artifact_ids (semicolon-joined)
GroundTruth load_ground_truth_csv(const std::string& path);
std::vector<ConceptAnnotation> load_concepts_csv(const std::string& path);

// Full report for a tree: link metrics against the truth, orphan count over
// the non-top layers, and concept coverage when annotations are given.
// Throws ArgumentError naming the id when the truth references an unknown
// artifact.
EvalReport evaluate_tree(const ArtifactTree& tree, const GroundTruth& truth,
                         const std::vector<ConceptAnnotation>* concepts = nullptr);

}  // namespace hgen
