#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hgen/techniques.hpp"

namespace hgen {

// Normalized-Laplacian spectral clustering: affinity from clamped cosine,
// L_sym = I - D^-1/2 W D^-1/2, then seeded k-means on the row-normalized
// leading eigenvectors. Isolated points (zero affinity to everything) are
// split off as singletons first.
Partition spectral_cluster(std::span<const Embedding> items, int k,
                           const TechniqueParams& params) {
  const int count = static_cast<int>(items.size());
  ScoreMatrix cosine = par::pairwise_cosine_matrix(items);

  std::vector<int> active;
  Partition isolated;
  for (int i = 0; i < count; ++i) {
    double degree = 0.0;
    for (int j = 0; j < count; ++j)
      if (j != i) degree += std::max(0.0, cosine.at(i, j));
    if (degree <= 0.0)
      isolated.push_back({i});
    else
      active.push_back(i);
  }
  const int active_count = static_cast<int>(active.size());
  if (active_count == 0) return isolated;
  if (active_count == 1) {
    isolated.push_back({active[0]});
    return isolated;
  }

  Eigen::MatrixXd affinity(active_count, active_count);
  Eigen::VectorXd degree(active_count);
  for (int a = 0; a < active_count; ++a) {
    double sum = 0.0;
    for (int b = 0; b < active_count; ++b) {
      double value =
          a == b ? 0.0 : std::max(0.0, cosine.at(active[a], active[b]));
      affinity(a, b) = value;
      sum += value;
    }
    degree(a) = sum;
  }

  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Identity(active_count, active_count);
  for (int a = 0; a < active_count; ++a) {
    for (int b = 0; b < active_count; ++b) {
      if (affinity(a, b) == 0.0) continue;
      laplacian(a, b) -= affinity(a, b) / std::sqrt(degree(a) * degree(b));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  int dims = std::min(k, active_count);
  Eigen::MatrixXd basis = solver.eigenvectors().leftCols(dims);

  std::vector<Embedding> spectral_points(active_count);
  for (int a = 0; a < active_count; ++a) {
    double norm = basis.row(a).norm();
    spectral_points[a].values.resize(dims);
    for (int d = 0; d < dims; ++d)
      spectral_points[a].values[d] =
          norm > 0.0 ? basis(a, d) / norm : (d == 0 ? 1.0 : 0.0);
  }

  TechniqueParams inner = params;
  inner.seed = params.seed ^ 0x5ca1ab1eULL;
  Partition assignment = kmeans_cluster(spectral_points, std::min(k, active_count), inner);

  Partition partition = std::move(isolated);
  for (const std::vector<int>& group : assignment) {
    std::vector<int> original;
    original.reserve(group.size());
    for (int local : group) original.push_back(active[local]);
    partition.push_back(std::move(original));
  }
  return partition;
}

}  // namespace hgen
