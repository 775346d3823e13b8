#pragma once

#include <cstdint>
#include <string>

namespace bolab {

// FNV-1a 64-bit, used for config and output-file content hashes.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

inline std::string hex64(uint64_t h) {
  static const char* d = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) { out[i] = d[h & 0xf]; h >>= 4; }
  return out;
}

}  // namespace bolab
