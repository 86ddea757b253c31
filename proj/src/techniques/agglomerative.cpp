#include <limits>
#include <vector>

#include "hgen/techniques.hpp"

namespace hgen {

// Average-linkage agglomerative clustering on cosine distance, cut at k
// clusters. Zero-distance merges continue past k: identical items always
// end up together. Linkage updates use Lance-Williams weights.
Partition agglomerative_cluster(std::span<const Embedding> items, int k) {
  const int count = static_cast<int>(items.size());
  ScoreMatrix cosine = par::pairwise_cosine_matrix(items);

  std::vector<std::vector<int>> groups(count);
  std::vector<bool> alive(count, true);
  std::vector<std::vector<double>> linkage(count, std::vector<double>(count, 0.0));
  for (int i = 0; i < count; ++i) {
    groups[i] = {i};
    for (int j = 0; j < count; ++j)
      linkage[i][j] = 1.0 - cosine.at(i, j);
  }

  int remaining = count;
  while (remaining > 1) {
    int best_a = -1, best_b = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < count; ++a) {
      if (!alive[a]) continue;
      for (int b = a + 1; b < count; ++b) {
        if (!alive[b]) continue;
        if (linkage[a][b] < best) {
          best = linkage[a][b];
          best_a = a;
          best_b = b;
        }
      }
    }
    if (remaining <= k && best > 1e-12) break;

    double size_a = static_cast<double>(groups[best_a].size());
    double size_b = static_cast<double>(groups[best_b].size());
    for (int c = 0; c < count; ++c) {
      if (!alive[c] || c == best_a || c == best_b) continue;
      double merged = (size_a * linkage[best_a][c] + size_b * linkage[best_b][c]) /
                      (size_a + size_b);
      linkage[best_a][c] = merged;
      linkage[c][best_a] = merged;
    }
    groups[best_a].insert(groups[best_a].end(), groups[best_b].begin(),
                          groups[best_b].end());
    groups[best_b].clear();
    alive[best_b] = false;
    --remaining;
  }

  Partition partition;
  for (int i = 0; i < count; ++i)
    if (alive[i]) partition.push_back(groups[i]);
  return partition;
}

}  // namespace hgen
