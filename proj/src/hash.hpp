#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace aaudit {

// FNV-1a 64-bit; used for content fingerprints in reports and manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t size) noexcept {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline std::string hash_hex(std::uint64_t hash) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

// Canonical fingerprint of a double sequence (exact IEEE bytes).
inline std::string hash_doubles_hex(const std::vector<double>& values) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            hash ^= (bits >> (8 * b)) & 0xffu;
            hash *= 0x100000001b3ULL;
        }
    }
    return hash_hex(hash);
}

} // namespace aaudit
