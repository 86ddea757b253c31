#include "hgen/embedding.hpp"

#include <cmath>

namespace hgen {

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim())
    throw ArgumentError("cosine: dimension mismatch (" +
                        std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
  if (a.dim() == 0) throw ArgumentError("cosine: empty vectors");
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    norm_a += a.values[i] * a.values[i];
    norm_b += b.values[i] * b.values[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0)
    throw ArgumentError("cosine: zero vector");
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

}  // namespace hgen
