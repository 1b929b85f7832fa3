#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace fuzzyrel {

/// A domain element: numbers for linear domains, labels for everything else.
/// std::variant ordering puts all numbers before all labels, numbers ascending.
using Value = std::variant<double, std::string>;
using ValueSet = std::set<Value>;

std::string to_string(const Value& v);

/// Renders {a, b, c}; a singleton renders without braces.
std::string to_string(const ValueSet& s);

inline bool is_number(const Value& v) { return std::holds_alternative<double>(v); }

/// ASCII case-insensitive comparison used for relation and attribute names.
bool iequals(std::string_view a, std::string_view b);

struct ILess {
    bool operator()(const std::string& a, const std::string& b) const;
};

std::string trim(std::string_view s);

}  // namespace fuzzyrel
