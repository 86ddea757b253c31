#pragma once

#include <set>
#include <string>
#include <vector>

#include "hgen/artifact.hpp"
#include "hgen/embedding.hpp"
#include "hgen/kernels.hpp"

namespace hgen {

enum class ScoreNormalization { minmax, raw_max };

struct LinkParams {
  double sigma_window = 2.0;     // link when normalized >= 1 - window*sigma
  double floor_hint = 0.8;       // diagnostic only, not a hard cutoff
  double duplicate_sigma = 2.0;  // flag pairs above mean + sigma*std
  double share_tolerance = 0.1;
  ScoreNormalization normalization = ScoreNormalization::minmax;
};

// Parent x child cosine scores for one cluster, with the applied
// normalization. Exportable as CSV for inspection.
struct SimilarityMatrix {
  std::vector<std::string> parent_ids;
  std::vector<std::string> child_ids;
  ScoreMatrix scores;  // raw cosine
  ScoreNormalization normalization = ScoreNormalization::minmax;

  std::string to_csv() const;
};

// Stage 4 per cluster: min-max scales the cluster's score set (all scores
// normalize to 1 when max == min, so constant-score clusters link fully),
// then links pairs whose normalized score clears 1 - sigma_window * std.
// A single parent-child pair links unconditionally. Link scores store the
// raw cosine clamped into [0, 1].
std::vector<TraceLink> link_intra_cluster(
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings, const LinkParams& params);

// Stage 4 fallback: any child without a parent links to its globally most
// similar parent in the new layer, not just within its own cluster. Throws
// PipelineError when the new layer is empty.
std::vector<TraceLink> ensure_no_orphans(
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings,
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    std::vector<TraceLink> links);

// Stage 5: pairs of generated artifacts whose similarity exceeds
// mean + duplicate_sigma * std (strict). Needs >= 3 artifacts. Ordered by
// score descending, then ids.
struct FlaggedPair {
  std::string first_id;
  std::string second_id;
  double score = 0.0;
};
std::vector<FlaggedPair> detect_cross_duplicates(
    const std::vector<std::string>& ids,
    const std::vector<Embedding>& embeddings, const LinkParams& params);

// JSON report of flagged pairs for inspection.
std::string flagged_pairs_json(const std::vector<FlaggedPair>& pairs);

// Stage 5 sharing: each member of a flagged pair adopts the other's
// children whose similarity differs by at most share_tolerance. Idempotent.
std::vector<TraceLink> share_links(
    const std::vector<FlaggedPair>& pairs, std::vector<TraceLink> links,
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings,
    const LinkParams& params);

// Stage 5 merge: after sharing, a flagged pair with identical child sets
// loses the member with the lower mean child similarity (ties keep the
// lexicographically smaller id). Children stay covered by the survivor.
struct MergeResult {
  std::vector<TraceLink> links;
  std::set<std::string> dropped_parent_ids;
};
MergeResult merge_duplicates(const std::vector<FlaggedPair>& pairs,
                             std::vector<TraceLink> links);

}  // namespace hgen
