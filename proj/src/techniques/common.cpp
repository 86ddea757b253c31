#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hgen/errors.hpp"
#include "hgen/techniques.hpp"

namespace hgen {

const char* technique_name(Technique technique) {
  switch (technique) {
    case Technique::optics: return "optics";
    case Technique::spectral: return "spectral";
    case Technique::agglomerative: return "agglomerative";
    case Technique::affinity: return "affinity";
    case Technique::kmeans: return "kmeans";
  }
  return "unknown";
}

Technique technique_from_name(const std::string& name) {
  if (name == "optics") return Technique::optics;
  if (name == "spectral") return Technique::spectral;
  if (name == "agglomerative") return Technique::agglomerative;
  if (name == "affinity") return Technique::affinity;
  if (name == "kmeans") return Technique::kmeans;
  throw ArgumentError("unknown clustering technique: " + name);
}

int default_cluster_count(std::size_t item_count) {
  int k = static_cast<int>(std::llround(static_cast<double>(item_count) / 3.0));
  k = std::max(2, k);
  return std::min<int>(k, static_cast<int>(item_count));
}

Partition canonicalize_partition(Partition partition, std::size_t item_count) {
  std::set<int> seen;
  for (std::vector<int>& group : partition) {
    std::sort(group.begin(), group.end());
    for (int index : group) {
      if (index < 0 || index >= static_cast<int>(item_count) ||
          !seen.insert(index).second)
        throw Error("technique produced a non-partition");
    }
  }
  std::erase_if(partition, [](const std::vector<int>& group) { return group.empty(); });
  if (seen.size() != item_count)
    throw Error("technique dropped items from the partition");
  std::sort(partition.begin(), partition.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return partition;
}

Partition run_technique(Technique technique, std::span<const Embedding> items,
                        const TechniqueParams& params) {
  const std::size_t count = items.size();
  if (count < 2) {
    Partition singletons;
    for (std::size_t i = 0; i < count; ++i)
      singletons.push_back({static_cast<int>(i)});
    return singletons;
  }

  // Zero-diameter input: nothing any technique could distinguish.
  ScoreMatrix pairwise = par::pairwise_cosine_matrix(items);
  double min_cosine = 1.0;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      min_cosine = std::min(min_cosine, pairwise.at(i, j));
  if (min_cosine >= 1.0 - 1e-12) {
    std::vector<int> all(count);
    std::iota(all.begin(), all.end(), 0);
    return {all};
  }

  int k = default_cluster_count(count);
  Partition partition;
  switch (technique) {
    case Technique::optics:
      partition = optics_cluster(items, params);
      break;
    case Technique::spectral:
      partition = spectral_cluster(items, k, params);
      break;
    case Technique::agglomerative:
      partition = agglomerative_cluster(items, k);
      break;
    case Technique::affinity:
      partition = affinity_cluster(items, params);
      break;
    case Technique::kmeans:
      partition = kmeans_cluster(items, k, params);
      break;
  }
  return canonicalize_partition(std::move(partition), count);
}

}  // namespace hgen
