#include <algorithm>
#include <cmath>

#include "hgen/hash.hpp"
#include "hgen/rng.hpp"
#include "hgen/techniques.hpp"

namespace hgen {

namespace {

Embedding normalized(const Embedding& vector) {
  double norm_sq = 0.0;
  for (double value : vector.values) norm_sq += value * value;
  Embedding out = vector;
  if (norm_sq > 0.0) {
    double inv = 1.0 / std::sqrt(norm_sq);
    for (double& value : out.values) value *= inv;
  }
  return out;
}

double unit_cosine(const Embedding& unit_a, const Embedding& unit_b) {
  double dot = 0.0;
  for (std::size_t k = 0; k < unit_a.values.size(); ++k)
    dot += unit_a.values[k] * unit_b.values[k];
  return dot;
}

}  // namespace

// Spherical k-means with k-means++ seeding. Centroids are the normalized
// member means; assignment maximizes cosine with ties to the lowest
// centroid index.
Partition kmeans_cluster(std::span<const Embedding> items, int k,
                         const TechniqueParams& params) {
  const int count = static_cast<int>(items.size());
  k = std::min(k, count);
  Rng rng(params.seed ^ fnv1a64("kmeans"));

  std::vector<Embedding> units;
  units.reserve(items.size());
  for (const Embedding& item : items) units.push_back(normalized(item));

  // k-means++: first center uniform, the rest sampled with weight D^2.
  std::vector<int> center_indices;
  center_indices.push_back(static_cast<int>(rng.next_below(count)));
  std::vector<double> best_distance(count);
  while (static_cast<int>(center_indices.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
      double nearest = 2.0;
      for (int center : center_indices)
        nearest = std::min(nearest, 1.0 - unit_cosine(units[i], units[center]));
      best_distance[i] = nearest * nearest;
      total += best_distance[i];
    }
    int chosen = -1;
    if (total <= 0.0) {
      // All remaining points coincide with a center; take the lowest index
      // not already chosen.
      for (int i = 0; i < count && chosen < 0; ++i)
        if (std::find(center_indices.begin(), center_indices.end(), i) ==
            center_indices.end())
          chosen = i;
      if (chosen < 0) break;
    } else {
      double target = rng.next_double() * total;
      double cumulative = 0.0;
      for (int i = 0; i < count; ++i) {
        cumulative += best_distance[i];
        if (cumulative >= target) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) chosen = count - 1;
    }
    center_indices.push_back(chosen);
  }

  std::vector<Embedding> centers;
  centers.reserve(center_indices.size());
  for (int index : center_indices) centers.push_back(units[index]);
  const int center_count = static_cast<int>(centers.size());

  std::vector<int> assignment(count, -1);
  for (int iter = 0; iter < params.kmeans_max_iter; ++iter) {
    std::vector<int> next_assignment(count);
    for (int i = 0; i < count; ++i) {
      int best = 0;
      double best_cosine = unit_cosine(units[i], centers[0]);
      for (int c = 1; c < center_count; ++c) {
        double cosine = unit_cosine(units[i], centers[c]);
        if (cosine > best_cosine) {
          best_cosine = cosine;
          best = c;
        }
      }
      next_assignment[i] = best;
    }

    // Re-seed empty centers with the worst-fitting point.
    for (int c = 0; c < center_count; ++c) {
      bool empty = std::none_of(next_assignment.begin(), next_assignment.end(),
                                [c](int a) { return a == c; });
      if (!empty) continue;
      int farthest = -1;
      double worst = 2.0;
      for (int i = 0; i < count; ++i) {
        double cosine = unit_cosine(units[i], centers[next_assignment[i]]);
        if (cosine < worst - 1e-15) {
          worst = cosine;
          farthest = i;
        }
      }
      if (farthest >= 0 && worst < 1.0 - 1e-12) {
        next_assignment[farthest] = c;
        centers[c] = units[farthest];
      }
    }

    bool converged = assignment == next_assignment;
    assignment = std::move(next_assignment);
    if (converged) break;

    for (int c = 0; c < center_count; ++c) {
      Embedding sum;
      sum.values.assign(units.front().dim(), 0.0);
      int members = 0;
      for (int i = 0; i < count; ++i) {
        if (assignment[i] != c) continue;
        for (std::size_t d = 0; d < sum.values.size(); ++d)
          sum.values[d] += units[i].values[d];
        ++members;
      }
      if (members == 0) continue;  // keep previous center
      Embedding candidate = normalized(sum);
      double norm_sq = 0.0;
      for (double value : candidate.values) norm_sq += value * value;
      if (norm_sq > 0.0) centers[c] = candidate;
    }
  }

  Partition partition(center_count);
  for (int i = 0; i < count; ++i) partition[assignment[i]].push_back(i);
  return partition;
}

}  // namespace hgen
