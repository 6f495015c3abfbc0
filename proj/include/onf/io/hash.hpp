#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace onf::io {

// 64-bit FNV-1a. Used for cache keys, config fingerprints and cache checksums.
class Fnv1a {
public:
    void add_bytes(const void* data, std::size_t size)
    {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
    }
    void add(std::string_view s) { add_bytes(s.data(), s.size()); }
    void add(double x)
    {
        if (x == 0.0)
            x = 0.0; // fold -0.0
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        add_bytes(&bits, sizeof bits);
    }
    void add(int x) { add_bytes(&x, sizeof x); }
    void add(std::uint64_t x) { add_bytes(&x, sizeof x); }

    std::uint64_t value() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a(std::string_view bytes);
std::string to_hex(std::uint64_t value);

} // namespace onf::io
