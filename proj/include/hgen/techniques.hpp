#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgen/embedding.hpp"
#include "hgen/kernels.hpp"

namespace hgen {

enum class Technique { optics, spectral, agglomerative, affinity, kmeans };

const char* technique_name(Technique technique);
Technique technique_from_name(const std::string& name);

// A partition of item indices: every index appears in exactly one group.
using Partition = std::vector<std::vector<int>>;

struct TechniqueParams {
  std::uint64_t seed = 1;
  int kmeans_max_iter = 100;
  double affinity_damping = 0.9;
  int affinity_max_iter = 200;
  int optics_min_samples = 2;
  double optics_xi = 0.05;
};

// Cluster-count heuristic for the k-targeted techniques: surviving
// candidates need size 2-4, so aim for a mean size of 3.
int default_cluster_count(std::size_t item_count);

// Runs one technique. Guarantees a partition; deterministic given
// (technique, items, seed). Fewer than 2 items or an all-identical input
// short-circuit to all-singletons / one-cluster respectively.
// Technique-specific noise points come back as their own singleton groups.
Partition run_technique(Technique technique, std::span<const Embedding> items,
                        const TechniqueParams& params);

// Individual algorithms, exposed for direct testing. All operate on cosine
// distance (1 - cosine) and break ties by index.
Partition kmeans_cluster(std::span<const Embedding> items, int k,
                         const TechniqueParams& params);
Partition spectral_cluster(std::span<const Embedding> items, int k,
                           const TechniqueParams& params);
Partition agglomerative_cluster(std::span<const Embedding> items, int k);
Partition affinity_cluster(std::span<const Embedding> items,
                           const TechniqueParams& params);
Partition optics_cluster(std::span<const Embedding> items,
                         const TechniqueParams& params);

// Sorts members within groups and groups by first member, and verifies the
// result is a partition of [0, item_count).
Partition canonicalize_partition(Partition partition, std::size_t item_count);

}  // namespace hgen
