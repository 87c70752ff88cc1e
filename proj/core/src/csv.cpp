#include "sense_or_send/csv.hpp"

#include <array>
#include <charconv>

namespace sos {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), result.ptr);
}

}  // namespace sos
