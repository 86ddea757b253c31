#include <algorithm>
#include <cmath>
#include <vector>

#include "hgen/hash.hpp"
#include "hgen/rng.hpp"
#include "hgen/techniques.hpp"

namespace hgen {

// Affinity propagation over cosine similarities with damped
// responsibility/availability message passing. Preference is the median
// off-diagonal similarity. A seeded micro-perturbation breaks the exact
// ties that identical inputs would otherwise leave unresolved.
Partition affinity_cluster(std::span<const Embedding> items,
                           const TechniqueParams& params) {
  const int count = static_cast<int>(items.size());
  ScoreMatrix cosine = par::pairwise_cosine_matrix(items);

  std::vector<double> off_diagonal;
  off_diagonal.reserve(static_cast<std::size_t>(count) * (count - 1) / 2);
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      off_diagonal.push_back(cosine.at(i, j));
  std::sort(off_diagonal.begin(), off_diagonal.end());
  double preference;
  std::size_t half = off_diagonal.size() / 2;
  if (off_diagonal.size() % 2 == 1)
    preference = off_diagonal[half];
  else
    preference = 0.5 * (off_diagonal[half - 1] + off_diagonal[half]);

  std::uint64_t noise_seed = params.seed ^ fnv1a64("affinity");
  std::vector<std::vector<double>> similarity(count, std::vector<double>(count));
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      double base = i == j ? preference : cosine.at(i, j);
      similarity[i][j] = base + 1e-9 * tie_noise(noise_seed,
                                                 static_cast<std::uint64_t>(i),
                                                 static_cast<std::uint64_t>(j));
    }
  }

  std::vector<std::vector<double>> responsibility(count, std::vector<double>(count, 0.0));
  std::vector<std::vector<double>> availability(count, std::vector<double>(count, 0.0));
  const double damping = params.affinity_damping;

  std::vector<int> exemplar_of(count, -1);
  int stable_iterations = 0;
  for (int iter = 0; iter < params.affinity_max_iter; ++iter) {
    // Responsibilities.
    for (int i = 0; i < count; ++i) {
      double best = -1e300, second = -1e300;
      int best_k = -1;
      for (int k = 0; k < count; ++k) {
        double value = availability[i][k] + similarity[i][k];
        if (value > best) {
          second = best;
          best = value;
          best_k = k;
        } else if (value > second) {
          second = value;
        }
      }
      for (int k = 0; k < count; ++k) {
        double target = similarity[i][k] - (k == best_k ? second : best);
        responsibility[i][k] =
            damping * responsibility[i][k] + (1.0 - damping) * target;
      }
    }

    // Availabilities.
    for (int k = 0; k < count; ++k) {
      double positive_sum = 0.0;
      for (int i = 0; i < count; ++i)
        if (i != k) positive_sum += std::max(0.0, responsibility[i][k]);
      for (int i = 0; i < count; ++i) {
        double target;
        if (i == k) {
          target = positive_sum;
        } else {
          double sum = responsibility[k][k] + positive_sum -
                       std::max(0.0, responsibility[i][k]);
          target = std::min(0.0, sum);
        }
        availability[i][k] =
            damping * availability[i][k] + (1.0 - damping) * target;
      }
    }

    // Convergence: exemplar choices stable for 15 iterations.
    std::vector<int> current(count);
    for (int i = 0; i < count; ++i) {
      int best_k = 0;
      double best = responsibility[i][0] + availability[i][0];
      for (int k = 1; k < count; ++k) {
        double value = responsibility[i][k] + availability[i][k];
        if (value > best) {
          best = value;
          best_k = k;
        }
      }
      current[i] = best_k;
    }
    if (current == exemplar_of) {
      if (++stable_iterations >= 15) break;
    } else {
      stable_iterations = 0;
      exemplar_of = std::move(current);
    }
  }

  std::vector<int> exemplars;
  for (int k = 0; k < count; ++k)
    if (responsibility[k][k] + availability[k][k] > 0.0) exemplars.push_back(k);
  if (exemplars.empty()) {
    // Degenerate run: fall back to the strongest self-evidence point.
    int best_k = 0;
    double best = responsibility[0][0] + availability[0][0];
    for (int k = 1; k < count; ++k) {
      double value = responsibility[k][k] + availability[k][k];
      if (value > best) {
        best = value;
        best_k = k;
      }
    }
    exemplars.push_back(best_k);
  }

  Partition partition(exemplars.size());
  for (int i = 0; i < count; ++i) {
    int choice = 0;
    double best = -1e300;
    for (std::size_t e = 0; e < exemplars.size(); ++e) {
      if (exemplars[e] == i) {
        choice = static_cast<int>(e);
        break;
      }
      double value = similarity[i][exemplars[e]];
      if (value > best) {
        best = value;
        choice = static_cast<int>(e);
      }
    }
    partition[choice].push_back(i);
  }
  std::erase_if(partition, [](const std::vector<int>& group) { return group.empty(); });
  return partition;
}

}  // namespace hgen
