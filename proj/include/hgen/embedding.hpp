#pragma once

#include <cstddef>
#include <vector>

#include "hgen/errors.hpp"

namespace hgen {

// Fixed-dimension real vector representing an artifact's text. All
// embeddings produced by one provider instance share the same dimension and
// contain only finite entries.
struct Embedding {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const Embedding&) const = default;
};

// Standard cosine similarity in [-1, 1]. Throws ArgumentError on a
// dimension mismatch or an all-zero vector.
double cosine_similarity(const Embedding& a, const Embedding& b);

}  // namespace hgen
