#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hgen/embedding.hpp"

namespace hgen {

// Dense row-major matrix of similarity scores.
struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t row, std::size_t col) const {
    return data[row * cols + col];
  }
  double& at(std::size_t row, std::size_t col) { return data[row * cols + col]; }
};

// Pairwise-cosine kernels. `serial` is the reference implementation kept
// for testing; `par` distributes rows with OpenMP. Each output slot is
// computed by the same serial summation in both, so results are identical
// for any thread count and parallel runs stay reproducible.
namespace serial {

// rows x cols cosine matrix between two embedding sets.
ScoreMatrix cosine_matrix(std::span<const Embedding> rows,
                          std::span<const Embedding> cols);

// Symmetric all-pairs cosine matrix with unit diagonal.
ScoreMatrix pairwise_cosine_matrix(std::span<const Embedding> items);

// Mean cosine over unordered pairs; requires >= 2 items.
double pairwise_mean_cosine(std::span<const Embedding> items);

// Mean cosine of `probe` against every item.
double mean_cosine_to(const Embedding& probe, std::span<const Embedding> items);

// For each member, the mean cosine to the other members; requires >= 2.
std::vector<double> member_mean_cosines(std::span<const Embedding> items);

}  // namespace serial

namespace par {

ScoreMatrix cosine_matrix(std::span<const Embedding> rows,
                          std::span<const Embedding> cols);
ScoreMatrix pairwise_cosine_matrix(std::span<const Embedding> items);
double pairwise_mean_cosine(std::span<const Embedding> items);
std::vector<double> member_mean_cosines(std::span<const Embedding> items);

}  // namespace par

}  // namespace hgen
