#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrel/proximity.hpp"
#include "fuzzyrel/value.hpp"

namespace fuzzyrel {

/// How equivalence classes are formed on an attribute.
enum class Method { threshold, interval, equalized, grid, closure };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

struct AttributeSpec {
    std::string name;
    ProximitySpec proximity;
    Method default_method = Method::threshold;

    /// Throws DomainError when the method cannot be used with the proximity
    /// kind (grid needs planar, interval/equalized need a linear order).
    AttributeSpec(std::string name, ProximitySpec proximity, Method default_method = Method::threshold);

    bool operator==(const AttributeSpec&) const = default;
};

using Schema = std::vector<AttributeSpec>;

/// Parses cell text into a domain value: numbers for linear domains,
/// labels otherwise.
Value parse_value(const AttributeSpec& attr, std::string_view text);

/// Components aligned with the owning relation's schema.
struct FuzzyTuple {
    std::vector<ValueSet> components;

    FuzzyTuple() = default;
    explicit FuzzyTuple(std::vector<ValueSet> c) : components(std::move(c)) {}

    std::size_t arity() const noexcept { return components.size(); }
    const ValueSet& operator[](std::size_t i) const { return components[i]; }

    auto operator<=>(const FuzzyTuple&) const = default;
};

class FuzzyRelation {
public:
    FuzzyRelation() = default;
    /// Validates arity, non-empty components and domain membership.
    FuzzyRelation(Schema schema, std::vector<FuzzyTuple> tuples);

    const Schema& schema() const noexcept { return schema_; }
    const std::vector<FuzzyTuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }

    /// Case-insensitive attribute lookup; throws UnknownAttributeError.
    std::size_t index_of(std::string_view attr) const;
    std::optional<std::size_t> find(std::string_view attr) const;
    const AttributeSpec& attribute(std::string_view attr) const { return schema_[index_of(attr)]; }

private:
    Schema schema_;
    std::vector<FuzzyTuple> tuples_;
};

/// Set equality of tuple lists (order and multiplicity ignored).
bool same_tuples(const std::vector<FuzzyTuple>& a, const std::vector<FuzzyTuple>& b);

/// Per-attribute merge thresholds with optional method overrides.
/// Attributes not mentioned get level 1.
class LevelMap {
public:
    struct Entry {
        double level = 1.0;
        std::optional<Method> method;
    };

    LevelMap() = default;
    LevelMap(std::initializer_list<std::pair<const std::string, double>> levels);

    LevelMap& set(const std::string& attr, double level);
    LevelMap& set_method(const std::string& attr, Method m);
    /// Method applied to every attribute without its own override.
    LevelMap& set_default_method(Method m);

    double level(const std::string& attr) const;
    std::optional<Method> method(const std::string& attr) const;
    const std::map<std::string, Entry, ILess>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Entry, ILess> entries_;
    std::optional<Method> default_method_;
};

}  // namespace fuzzyrel
