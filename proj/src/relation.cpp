#include "fuzzyrel/relation.hpp"

#include <algorithm>
#include <charconv>

#include "fuzzyrel/errors.hpp"

namespace fuzzyrel {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::threshold: return "threshold";
        case Method::interval: return "interval";
        case Method::equalized: return "equalized";
        case Method::grid: return "grid";
        case Method::closure: return "closure";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text) {
    for (auto m : {Method::threshold, Method::interval, Method::equalized, Method::grid, Method::closure})
        if (iequals(text, to_string(m))) return m;
    return std::nullopt;
}

AttributeSpec::AttributeSpec(std::string n, ProximitySpec p, Method m)
    : name(std::move(n)), proximity(std::move(p)), default_method(m) {
    if (m == Method::grid && !proximity.supports_grid())
        throw DomainError("attribute '" + name + "': grid method needs a planar domain");
    if ((m == Method::interval || m == Method::equalized) && !proximity.supports_interval())
        throw DomainError("attribute '" + name + "': interval methods need a linearly ordered domain");
}

Value parse_value(const AttributeSpec& attr, std::string_view text) {
    const std::string t = trim(text);
    if (attr.proximity.get_if<Linear>()) {
        double d = 0.0;
        const auto* first = t.data();
        const auto* last = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(first, last, d);
        if (t.empty() || ec != std::errc{} || ptr != last)
            throw DomainError("attribute '" + attr.name + "': '" + t + "' is not a number");
        return d;
    }
    return t;
}

FuzzyRelation::FuzzyRelation(Schema schema, std::vector<FuzzyTuple> tuples)
    : schema_(std::move(schema)), tuples_(std::move(tuples)) {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        for (std::size_t j = i + 1; j < schema_.size(); ++j)
            if (iequals(schema_[i].name, schema_[j].name))
                throw SchemaMismatchError("duplicate attribute '" + schema_[i].name + "'");
    for (const auto& t : tuples_) {
        if (t.arity() != schema_.size()) throw SchemaMismatchError("tuple arity does not match schema");
        for (std::size_t i = 0; i < schema_.size(); ++i) {
            if (t[i].empty())
                throw DomainError("empty component for attribute '" + schema_[i].name + "'");
            for (const auto& v : t[i]) validate_value(schema_[i].proximity, v);
        }
    }
}

std::optional<std::size_t> FuzzyRelation::find(std::string_view attr) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (iequals(schema_[i].name, attr)) return i;
    return std::nullopt;
}

std::size_t FuzzyRelation::index_of(std::string_view attr) const {
    if (auto i = find(attr)) return *i;
    throw UnknownAttributeError("unknown attribute '" + std::string(attr) + "'");
}

bool same_tuples(const std::vector<FuzzyTuple>& a, const std::vector<FuzzyTuple>& b) {
    auto sa = a;
    auto sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    return sa == sb;
}

LevelMap::LevelMap(std::initializer_list<std::pair<const std::string, double>> levels) {
    for (const auto& [attr, level] : levels) set(attr, level);
}

LevelMap& LevelMap::set(const std::string& attr, double level) {
    if (!(level >= 0.0 && level <= 1.0))
        throw DomainError("level for '" + attr + "' outside [0,1]");
    entries_[attr].level = level;
    return *this;
}

LevelMap& LevelMap::set_method(const std::string& attr, Method m) {
    entries_[attr].method = m;
    return *this;
}

LevelMap& LevelMap::set_default_method(Method m) {
    default_method_ = m;
    return *this;
}

double LevelMap::level(const std::string& attr) const {
    const auto it = entries_.find(attr);
    return it == entries_.end() ? 1.0 : it->second.level;
}

std::optional<Method> LevelMap::method(const std::string& attr) const {
    const auto it = entries_.find(attr);
    if (it != entries_.end() && it->second.method) return it->second.method;
    return default_method_;
}

}  // namespace fuzzyrel
