#include "fuzzyrel/value.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace fuzzyrel {

std::string to_string(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::get<double>(v));
    return std::string(buf.data(), end);
}

std::string to_string(const ValueSet& s) {
    if (s.size() == 1) return to_string(*s.begin());
    std::string out = "{";
    bool first = true;
    for (const auto& v : s) {
        if (!first) out += ", ";
        out += to_string(v);
        first = false;
    }
    return out + "}";
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

bool ILess::operator()(const std::string& a, const std::string& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](unsigned char x, unsigned char y) {
                                            return std::tolower(x) < std::tolower(y);
                                        });
}

std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return std::string(s);
}

}  // namespace fuzzyrel
