#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace james {

/// FNV-1a 64-bit. Content fingerprint for artifact and report files;
/// not a cryptographic hash.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::string hash_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace james
