#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgen/artifact.hpp"
#include "hgen/cluster.hpp"
#include "hgen/prompts.hpp"
#include "hgen/provider.hpp"

namespace hgen {

// Target shape of one generated layer.
struct LayerSpec {
  std::string artifact_type;
  std::optional<std::string> format_template;  // skips format generation
  double lower_bound = 0.5;  // n_targets strictly above lower*size ...
  double upper_bound = 1.0;  // ... and strictly below upper*size
};

struct GenerationRecord {
  int cluster_index = -1;  // into the generation-time cluster list
  std::vector<std::string> generated_ids;
  int n_targets = 0;
  double concept_diversity = 1.0;
  double information_density = 0.0;
};

struct NTargets {
  int n_targets = 1;
  double diversity = 1.0;
  double density = 0.0;
};

// Asks the provider for a fill-in-the-blank format for the artifact type;
// a user-supplied template short-circuits the call. Throws ArgumentError on
// an empty type. Callers cache per artifact type per run.
std::string generate_format(const std::string& artifact_type,
                            const std::optional<std::string>& user_template,
                            CompletionProvider& provider,
                            const PromptLibrary& prompts);

// diversity = inverse cohesion normalized so the layer maximum is 1 (the
// normalizer `max_inverse_cohesion` is max over the layer's multi-member
// clusters; nonpositive-cohesion clusters pin to 1). density = member size
// sum over the layer's mean artifact size. n = trunc(diversity * density)
// clamped strictly between the bounds; size <= 2 yields 1.
NTargets compute_n_targets(int cluster_size, std::optional<double> cohesion,
                           double max_inverse_cohesion, int member_size_sum,
                           double layer_mean_size, const LayerSpec& spec);

// Normalizer for compute_n_targets over one clustering.
double max_inverse_cohesion_of(const Clustering& clustering);

// One provider call producing exactly n_targets artifacts via the numbered
// "Title:" list protocol. A wrong count triggers a single corrective retry;
// an over-long retry is truncated, a short one raises ProviderError.
std::vector<Artifact> generate_artifacts(
    const std::vector<const Artifact*>& members, const std::string& format,
    int n_targets, const std::string& artifact_type, int target_layer,
    CompletionProvider& provider, const PromptLibrary& prompts);

// Parses the numbered-list protocol; exposed for tests.
struct ParsedItem {
  std::string title;
  std::string body;
};
std::vector<ParsedItem> parse_numbered_items(const std::string& response);

// Stage 3, step 1: re-clusters the generated artifacts and flags groups in
// the top quartile of cohesion whose members originate from >= 2 distinct
// source clusters. Returns groups of generated-artifact indices.
std::vector<std::vector<int>> find_duplicate_clusters(
    const std::vector<Artifact>& generated,
    const std::vector<Embedding>& generated_embeddings,
    const std::vector<int>& source_cluster_of, const ClusterParams& params);

// Stage 3, step 2: for each generated artifact in the group, selects the
// source-cluster members within 0.1 of its best similarity and unions them
// into one fresh source cluster (indices into the lower layer).
std::vector<int> trace_duplicate_sources(
    const std::vector<int>& group,
    const std::vector<Embedding>& generated_embeddings,
    const std::vector<int>& source_cluster_of,
    const std::vector<std::vector<int>>& cluster_members,
    const std::vector<Embedding>& lower_embeddings);

inline constexpr double kDuplicateSourceTolerance = 0.1;

}  // namespace hgen
