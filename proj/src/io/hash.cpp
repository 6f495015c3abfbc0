#include "onf/io/hash.hpp"

#include <cstdio>

namespace onf::io {

std::uint64_t fnv1a(std::string_view bytes)
{
    Fnv1a h;
    h.add(bytes);
    return h.value();
}

std::string to_hex(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace onf::io
