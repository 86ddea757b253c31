#include "hgen/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace hgen {
namespace {

std::vector<double> norms_of(std::span<const Embedding> items) {
  std::vector<double> norms(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    double sum_sq = 0.0;
    for (double value : items[i].values) sum_sq += value * value;
    if (sum_sq == 0.0) throw ArgumentError("cosine kernel: zero vector");
    norms[i] = std::sqrt(sum_sq);
  }
  return norms;
}

inline double dot_of(const Embedding& a, const Embedding& b) {
  double dot = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    dot += a.values[k] * b.values[k];
  return dot;
}

void check_dims(std::span<const Embedding> items) {
  for (const Embedding& item : items)
    if (item.dim() != items.front().dim())
      throw ArgumentError("cosine kernel: mixed dimensions");
}

}  // namespace

namespace serial {

ScoreMatrix cosine_matrix(std::span<const Embedding> rows,
                          std::span<const Embedding> cols) {
  ScoreMatrix matrix{rows.size(), cols.size(), {}};
  matrix.data.resize(rows.size() * cols.size());
  if (rows.empty() || cols.empty()) return matrix;
  if (rows.front().dim() != cols.front().dim())
    throw ArgumentError("cosine kernel: dimension mismatch");
  check_dims(rows);
  check_dims(cols);
  std::vector<double> row_norms = norms_of(rows);
  std::vector<double> col_norms = norms_of(cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      matrix.at(i, j) = dot_of(rows[i], cols[j]) / (row_norms[i] * col_norms[j]);
  return matrix;
}

ScoreMatrix pairwise_cosine_matrix(std::span<const Embedding> items) {
  ScoreMatrix matrix{items.size(), items.size(), {}};
  matrix.data.resize(items.size() * items.size());
  if (items.empty()) return matrix;
  check_dims(items);
  std::vector<double> norms = norms_of(items);
  for (std::size_t i = 0; i < items.size(); ++i) {
    matrix.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      double value = dot_of(items[i], items[j]) / (norms[i] * norms[j]);
      matrix.at(i, j) = value;
      matrix.at(j, i) = value;
    }
  }
  return matrix;
}

double pairwise_mean_cosine(std::span<const Embedding> items) {
  if (items.size() < 2)
    throw ArgumentError("pairwise mean cosine needs >= 2 members");
  check_dims(items);
  std::vector<double> norms = norms_of(items);
  double sum = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      sum += dot_of(items[i], items[j]) / (norms[i] * norms[j]);
  double pairs = 0.5 * static_cast<double>(items.size()) *
                 static_cast<double>(items.size() - 1);
  return sum / pairs;
}

double mean_cosine_to(const Embedding& probe, std::span<const Embedding> items) {
  if (items.empty()) throw ArgumentError("mean cosine to empty set");
  double sum = 0.0;
  for (const Embedding& item : items) sum += cosine_similarity(probe, item);
  return sum / static_cast<double>(items.size());
}

std::vector<double> member_mean_cosines(std::span<const Embedding> items) {
  if (items.size() < 2)
    throw ArgumentError("member mean cosines need >= 2 members");
  ScoreMatrix matrix = pairwise_cosine_matrix(items);
  std::vector<double> means(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < items.size(); ++j)
      if (j != i) sum += matrix.at(i, j);
    means[i] = sum / static_cast<double>(items.size() - 1);
  }
  return means;
}

}  // namespace serial

namespace par {

ScoreMatrix cosine_matrix(std::span<const Embedding> rows,
                          std::span<const Embedding> cols) {
  ScoreMatrix matrix{rows.size(), cols.size(), {}};
  matrix.data.resize(rows.size() * cols.size());
  if (rows.empty() || cols.empty()) return matrix;
  if (rows.front().dim() != cols.front().dim())
    throw ArgumentError("cosine kernel: dimension mismatch");
  check_dims(rows);
  check_dims(cols);
  std::vector<double> row_norms = norms_of(rows);
  std::vector<double> col_norms = norms_of(cols);
  const std::int64_t row_count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < row_count; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      matrix.at(static_cast<std::size_t>(i), j) =
          dot_of(rows[static_cast<std::size_t>(i)], cols[j]) /
          (row_norms[static_cast<std::size_t>(i)] * col_norms[j]);
  }
  return matrix;
}

ScoreMatrix pairwise_cosine_matrix(std::span<const Embedding> items) {
  ScoreMatrix matrix{items.size(), items.size(), {}};
  matrix.data.resize(items.size() * items.size());
  if (items.empty()) return matrix;
  check_dims(items);
  std::vector<double> norms = norms_of(items);
  const std::int64_t count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    std::size_t row = static_cast<std::size_t>(i);
    matrix.at(row, row) = 1.0;
    for (std::size_t j = row + 1; j < items.size(); ++j)
      matrix.at(row, j) = dot_of(items[row], items[j]) / (norms[row] * norms[j]);
  }
  // Mirror in a second pass; writes above touch only j > i.
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      matrix.at(j, i) = matrix.at(i, j);
  return matrix;
}

double pairwise_mean_cosine(std::span<const Embedding> items) {
  if (items.size() < 2)
    throw ArgumentError("pairwise mean cosine needs >= 2 members");
  check_dims(items);
  std::vector<double> norms = norms_of(items);
  std::vector<double> row_sums(items.size(), 0.0);
  const std::int64_t count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    std::size_t row = static_cast<std::size_t>(i);
    double sum = 0.0;
    for (std::size_t j = row + 1; j < items.size(); ++j)
      sum += dot_of(items[row], items[j]) / (norms[row] * norms[j]);
    row_sums[row] = sum;
  }
  // Serial final reduction keeps the result independent of thread count.
  double total = 0.0;
  for (double row_sum : row_sums) total += row_sum;
  double pairs = 0.5 * static_cast<double>(items.size()) *
                 static_cast<double>(items.size() - 1);
  return total / pairs;
}

std::vector<double> member_mean_cosines(std::span<const Embedding> items) {
  if (items.size() < 2)
    throw ArgumentError("member mean cosines need >= 2 members");
  ScoreMatrix matrix = pairwise_cosine_matrix(items);
  std::vector<double> means(items.size());
  const std::int64_t count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    std::size_t row = static_cast<std::size_t>(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < items.size(); ++j)
      if (j != row) sum += matrix.at(row, j);
    means[row] = sum / static_cast<double>(items.size() - 1);
  }
  return means;
}

}  // namespace par
}  // namespace hgen
