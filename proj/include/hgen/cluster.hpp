#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgen/embedding.hpp"
#include "hgen/techniques.hpp"

namespace hgen {

struct ClusterParams {
  double alpha = 0.1;                          // size weight in importance
  int large_cluster_min = 5;                   // discard threshold
  double outlier_sigma = 1.5;                  // cleansing threshold
  double selection_cohesion_percentile = 25.0; // keep the top 75%
  double orphan_tolerance = 0.1;
  std::vector<Technique> technique_set = {
      Technique::optics, Technique::spectral, Technique::agglomerative,
      Technique::affinity, Technique::kmeans};
  std::uint64_t seed = 1;
  TechniqueParams technique;
};

// Candidate cluster over item indices of one layer.
struct Candidate {
  std::vector<int> members;  // ascending indices
  int votes = 1;             // techniques producing this exact member set
  std::vector<std::string> origins;
  double cohesion = 0.0;     // defined for >= 2 members once scored
  double importance = 0.0;
};

// Final cluster with resolved artifact ids, members in layer order.
struct Cluster {
  std::vector<std::string> member_ids;
  double cohesion = 0.0;
  int votes = 1;
  double importance = 0.0;
  std::vector<std::string> origins;

  int size() const { return static_cast<int>(member_ids.size()); }
};

// Every input id lands in exactly one cluster or in singletons.
struct Clustering {
  std::vector<Cluster> clusters;
  std::vector<std::string> singletons;
  int layer_index = 0;
};

// Mean cosine over unordered member pairs, in [-1, 1]. The printed
// double-sum form of this score counts ordered pairs and would rate
// identical vectors 2.0; the unordered mean keeps them at exactly 1.0.
// Throws ArgumentError for fewer than 2 members.
double cluster_cohesion(std::span<const Embedding> members);

// (alpha * ln(size) + cohesion) * votes. Natural log; any other base only
// rescales alpha.
double cluster_importance(int size, double cohesion, int votes, double alpha);

// Runs every configured technique and pools the results, counting one vote
// per technique that produced the exact member set. Pool order is
// lexicographic by member indices.
std::vector<Candidate> generate_candidates(std::span<const Embedding> items,
                                           const ClusterParams& params);

struct SizeFilterResult {
  std::vector<Candidate> kept;        // 2 <= size < large_cluster_min
  std::vector<int> set_aside;         // members of singleton candidates
  std::vector<Candidate> discarded;   // size >= large_cluster_min
};
SizeFilterResult filter_by_size(std::vector<Candidate> pool,
                                const ClusterParams& params);

// Fills cohesion and importance on each candidate.
void score_candidates(std::vector<Candidate>& pool,
                      std::span<const Embedding> items,
                      const ClusterParams& params);

// Stable descending sort by importance; ties by higher cohesion, then by
// the lexicographically smallest member id.
void rank_candidates(std::vector<Candidate>& pool,
                     const std::vector<std::string>& ids);

// Ejects members whose mean similarity to the rest falls outlier_sigma
// standard deviations below the per-member average. No-op under 3 members.
// Cohesion and importance are recomputed when membership changes.
struct CleanseResult {
  Candidate cleansed;
  std::vector<int> ejected;
};
CleanseResult cleanse_candidate(const Candidate& candidate,
                                std::span<const Embedding> items,
                                const ClusterParams& params);

// Iterates the ranked pool, drops members already admitted, and admits the
// remainder when it still has >= 2 members and cohesion at or above the
// pool's selection percentile.
std::vector<Candidate> select_clusters(const std::vector<Candidate>& ranked,
                                       std::span<const Embedding> items,
                                       const ClusterParams& params);

// Places each orphan into the qualifying admitted cluster with the highest
// mean similarity (qualify: |mean - cohesion| <= tolerance, or mean above
// cohesion). Unplaced orphans stay singletons.
Clustering assign_orphans(std::vector<Candidate> admitted,
                          const std::vector<int>& orphans,
                          const std::vector<std::string>& ids,
                          std::span<const Embedding> items,
                          const ClusterParams& params, int layer_index);

// The full consensus sequence. Deterministic given inputs and seed. With
// fewer than 2 artifacts the result is all singletons. When debug_json is
// non-null it receives a JSON dump of the candidate pool and decisions.
Clustering cluster_layer(const std::vector<std::string>& ids,
                         const std::vector<Embedding>& embeddings,
                         const ClusterParams& params, int layer_index = 0,
                         std::string* debug_json = nullptr);

}  // namespace hgen
