#include "cli/format.hpp"

#include <array>
#include <charconv>

namespace cavlink::cli {
namespace {

std::string strip_negative_zero(std::string s) {
    if (!s.empty() && s.front() == '-' && s.find_first_of("123456789") == std::string::npos) s.erase(0, 1);
    return s;
}

}  // namespace

std::string format_fixed(double x) {
    std::array<char, 512> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 8);
    return strip_negative_zero(std::string(buf.data(), res.ptr));
}

std::string format_general(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 9);
    return strip_negative_zero(std::string(buf.data(), res.ptr));
}

}  // namespace cavlink::cli
