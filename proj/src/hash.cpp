#include "hgen/hash.hpp"

#include <openssl/sha.h>

#include <array>
#include <cstring>

namespace hgen {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
         digest.data());
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (unsigned char byte : digest) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0x0f]);
  }
  return out;
}

std::string artifact_id(int layer_index, std::string_view artifact_type,
                        std::string_view title, std::string_view body) {
  std::string material;
  material.reserve(artifact_type.size() + title.size() + body.size() + 16);
  material += std::to_string(layer_index);
  material += '\x1f';
  material += artifact_type;
  material += '\x1f';
  material += title;
  material += '\x1f';
  material += body;
  return sha256_hex(material).substr(0, 16);
}

}  // namespace hgen
