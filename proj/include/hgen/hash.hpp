#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hgen {

// FNV-1a 64-bit. Stable across platforms; used for token bucketing and
// deterministic tie-break perturbations, never for security.
constexpr std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Hex-encoded SHA-256 of `data` (64 chars, lowercase).
std::string sha256_hex(std::string_view data);

// Content-derived artifact id: SHA-256 of the identity fields, truncated to
// 16 hex chars so repeated deterministic runs produce identical trees.
std::string artifact_id(int layer_index, std::string_view artifact_type,
                        std::string_view title, std::string_view body);

}  // namespace hgen
