#include "fuzzyrel/algebra.hpp"

#include <algorithm>
#include <set>

#include "fuzzyrel/closure.hpp"
#include "fuzzyrel/errors.hpp"

namespace fuzzyrel {

std::vector<FuzzyTuple> interpretations(const FuzzyTuple& t) {
    std::vector<FuzzyTuple> out{FuzzyTuple{}};
    for (const auto& component : t.components) {
        std::vector<FuzzyTuple> next;
        next.reserve(out.size() * component.size());
        for (const auto& prefix : out)
            for (const auto& v : component) {
                FuzzyTuple ext = prefix;
                ext.components.push_back(ValueSet{v});
                next.push_back(std::move(ext));
            }
        out = std::move(next);
    }
    return out;
}

double min_pairwise_degree(const ProximitySpec& spec, const ValueSet& values) {
    double lowest = 1.0;
    for (auto i = values.begin(); i != values.end(); ++i)
        for (auto j = std::next(i); j != values.end(); ++j)
            lowest = std::min(lowest, degree_of(spec, *i, *j).value());
    return lowest;
}

Degree thres(const FuzzyRelation& r, std::string_view attr) {
    const std::size_t col = r.index_of(attr);
    double lowest = 1.0;
    for (const auto& t : r.tuples())
        lowest = std::min(lowest, min_pairwise_degree(r.schema()[col].proximity, t[col]));
    return Degree(lowest);
}

bool valid_tuple(const Schema& schema, const FuzzyTuple& t, const LevelMap& levels) {
    if (t.arity() != schema.size()) throw SchemaMismatchError("tuple arity does not match schema");
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (!meets(min_pairwise_degree(schema[i].proximity, t[i]), levels.level(schema[i].name))) return false;
    return true;
}

Method effective_method(const AttributeSpec& attr, std::optional<Method> requested) {
    const Method m = requested.value_or(attr.default_method);
    if (m == Method::threshold || m == Method::closure) return m;
    if (attr.proximity.supports_grid()) return Method::grid;
    if (attr.proximity.supports_interval()) return m == Method::grid ? Method::interval : m;
    return Method::threshold;
}

Grouping form_classes(const AttributeSpec& attr, Method method, Alpha alpha, const ValueSet& values) {
    const auto& spec = attr.proximity;
    switch (method) {
        case Method::interval:
        case Method::equalized: {
            const auto mode = method == Method::interval ? PartitionMode::standard : PartitionMode::equalized;
            const auto p = partition_line(line_length(spec), alpha, mode);
            return classes_over(values, p, [&](const Value& v) { return line_coordinate(spec, v); });
        }
        case Method::grid: {
            const auto* planar = spec.get_if<Planar>();
            if (!planar) throw DomainError("attribute '" + attr.name + "' is not planar");
            const auto g = partition_plane(planar->side, alpha);
            return classes_over(values, g, [&](const Value& v) { return plane_coordinate(spec, v); });
        }
        case Method::closure:
            return closure_classes(values, spec, alpha);
        case Method::threshold:
            break;
    }
    throw DomainError("the threshold method does not form a partition");
}

RedundancyTest::RedundancyTest(const Schema& schema, const LevelMap& levels, MergeMode mode,
                               const std::vector<ValueSet>& domains) {
    if (domains.size() != schema.size()) throw SchemaMismatchError("one value set per attribute expected");
    columns_.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        Column c;
        c.proximity = schema[i].proximity;
        c.level = levels.level(schema[i].name);
        // Level 0 marks a query-irrelevant attribute.
        c.ignored = c.level <= 0.0;
        if (!c.ignored && mode == MergeMode::classes) {
            const Method m = effective_method(schema[i], levels.method(schema[i].name));
            if (m != Method::threshold) c.classes = form_classes(schema[i], m, Alpha(c.level), domains[i]);
        }
        columns_.push_back(std::move(c));
    }
}

bool RedundancyTest::component_ok(std::size_t col, const ValueSet& values) const {
    const Column& c = columns_.at(col);
    if (c.ignored) return true;
    if (c.classes) {
        const Value& first = *values.begin();
        return std::all_of(values.begin(), values.end(),
                           [&](const Value& v) { return c.classes->same_class(first, v); });
    }
    return meets(min_pairwise_degree(c.proximity, values), c.level);
}

bool RedundancyTest::operator()(const FuzzyTuple& a, const FuzzyTuple& b) const {
    if (a.arity() != columns_.size() || b.arity() != columns_.size())
        throw SchemaMismatchError("tuple arity does not match schema");
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        ValueSet u = a[i];
        u.insert(b[i].begin(), b[i].end());
        if (!component_ok(i, u)) return false;
    }
    return true;
}

bool redundant(const Schema& schema, const FuzzyTuple& t1, const FuzzyTuple& t2, const LevelMap& levels,
               MergeMode mode) {
    if (t1.arity() != schema.size() || t2.arity() != schema.size())
        throw SchemaMismatchError("tuple arity does not match schema");
    std::vector<ValueSet> domains;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        ValueSet u = t1[i];
        u.insert(t2[i].begin(), t2[i].end());
        domains.push_back(std::move(u));
    }
    return RedundancyTest(schema, levels, mode, domains)(t1, t2);
}

FuzzyTuple merge_tuples(const FuzzyTuple& t1, const FuzzyTuple& t2) {
    if (t1.arity() != t2.arity()) throw SchemaMismatchError("cannot merge tuples of different arity");
    FuzzyTuple out = t1;
    for (std::size_t i = 0; i < out.arity(); ++i) out.components[i].insert(t2[i].begin(), t2[i].end());
    return out;
}

namespace {

void dedupe(std::vector<FuzzyTuple>& tuples) {
    std::set<FuzzyTuple> seen;
    std::erase_if(tuples, [&](const FuzzyTuple& t) { return !seen.insert(t).second; });
}

std::vector<ValueSet> column_domains(const FuzzyRelation& r) {
    std::vector<ValueSet> out(r.schema().size());
    for (const auto& t : r.tuples())
        for (std::size_t i = 0; i < out.size(); ++i) out[i].insert(t[i].begin(), t[i].end());
    return out;
}

}  // namespace

FuzzyRelation merge_relation(const FuzzyRelation& r, const LevelMap& levels, MergeMode mode) {
    const RedundancyTest is_redundant(r.schema(), levels, mode, column_domains(r));
    std::vector<FuzzyTuple> tuples = r.tuples();
    dedupe(tuples);

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < tuples.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < tuples.size(); ++j) {
                if (!is_redundant(tuples[i], tuples[j])) continue;
                tuples[i] = merge_tuples(tuples[i], tuples[j]);
                tuples.erase(tuples.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
                break;
            }
    }
    dedupe(tuples);
    return FuzzyRelation(r.schema(), std::move(tuples));
}

FuzzyRelation select(const FuzzyRelation& r, const std::vector<Condition>& conds, const LevelMap& levels) {
    struct Bound {
        std::size_t col;
        Value constant;
        double level;
    };
    std::vector<Bound> bound;
    for (const auto& c : conds) {
        const std::size_t col = r.index_of(c.attribute);
        const AttributeSpec& attr = r.schema()[col];
        Value constant = c.constant;
        if (attr.proximity.get_if<Linear>()) {
            if (const auto* s = std::get_if<std::string>(&constant)) constant = parse_value(attr, *s);
        } else if (is_number(constant)) {
            constant = to_string(constant);
        }
        validate_value(attr.proximity, constant);
        bound.push_back({col, std::move(constant), levels.level(attr.name)});
    }

    std::vector<FuzzyTuple> kept;
    for (const auto& t : r.tuples()) {
        const bool keep = std::all_of(bound.begin(), bound.end(), [&](const Bound& b) {
            const auto& spec = r.schema()[b.col].proximity;
            return std::all_of(t[b.col].begin(), t[b.col].end(), [&](const Value& v) {
                return meets(degree_of(spec, v, b.constant), b.level);
            });
        });
        if (keep) kept.push_back(t);
    }
    return FuzzyRelation(r.schema(), std::move(kept));
}

FuzzyRelation project(const FuzzyRelation& r, const std::vector<std::string>& attrs, const LevelMap& levels,
                      MergeMode mode) {
    std::vector<std::size_t> cols;
    Schema schema;
    for (const auto& a : attrs) {
        const std::size_t col = r.index_of(a);
        if (std::find(cols.begin(), cols.end(), col) != cols.end())
            throw SchemaMismatchError("attribute '" + a + "' projected twice");
        cols.push_back(col);
        schema.push_back(r.schema()[col]);
    }
    std::vector<FuzzyTuple> tuples;
    tuples.reserve(r.size());
    for (const auto& t : r.tuples()) {
        FuzzyTuple p;
        for (const auto col : cols) p.components.push_back(t[col]);
        tuples.push_back(std::move(p));
    }
    return merge_relation(FuzzyRelation(std::move(schema), std::move(tuples)), levels, mode);
}

FuzzyRelation join(const FuzzyRelation& r1, const FuzzyRelation& r2, const std::vector<std::string>& on,
                   const LevelMap& levels, MergeMode mode) {
    if (on.empty()) throw SchemaMismatchError("join needs at least one attribute");
    std::vector<std::size_t> left_cols;
    std::vector<std::size_t> right_cols;
    Schema join_schema;
    for (const auto& a : on) {
        const auto l = r1.find(a);
        const auto r = r2.find(a);
        if (!l || !r) throw SchemaMismatchError("join attribute '" + a + "' missing from one side");
        const AttributeSpec& la = r1.schema()[*l];
        const AttributeSpec& ra = r2.schema()[*r];
        if (!(la.proximity == ra.proximity) || la.default_method != ra.default_method)
            throw SchemaMismatchError("join attribute '" + a + "' has different domains on each side");
        if (std::find(left_cols.begin(), left_cols.end(), *l) != left_cols.end())
            throw SchemaMismatchError("join attribute '" + a + "' listed twice");
        left_cols.push_back(*l);
        right_cols.push_back(*r);
        join_schema.push_back(la);
    }

    // Output: left columns in order, then right columns that are not join
    // columns, renamed when they clash.
    Schema schema = r1.schema();
    std::vector<std::size_t> right_rest;
    for (std::size_t i = 0; i < r2.schema().size(); ++i) {
        if (std::find(right_cols.begin(), right_cols.end(), i) != right_cols.end()) continue;
        AttributeSpec attr = r2.schema()[i];
        const auto clashes = [&](const std::string& name) {
            return std::any_of(schema.begin(), schema.end(),
                               [&](const AttributeSpec& s) { return iequals(s.name, name); });
        };
        if (clashes(attr.name)) {
            std::string renamed = attr.name + "_2";
            for (int k = 3; clashes(renamed); ++k) renamed = attr.name + "_" + std::to_string(k);
            attr.name = std::move(renamed);
        }
        schema.push_back(std::move(attr));
        right_rest.push_back(i);
    }

    std::vector<ValueSet> domains(on.size());
    for (std::size_t k = 0; k < on.size(); ++k) {
        for (const auto& t : r1.tuples()) domains[k].insert(t[left_cols[k]].begin(), t[left_cols[k]].end());
        for (const auto& t : r2.tuples()) domains[k].insert(t[right_cols[k]].begin(), t[right_cols[k]].end());
    }
    const RedundancyTest test(join_schema, levels, mode, domains);

    std::vector<FuzzyTuple> out;
    for (const auto& a : r1.tuples())
        for (const auto& b : r2.tuples()) {
            std::vector<ValueSet> unions;
            bool ok = true;
            for (std::size_t k = 0; k < on.size() && ok; ++k) {
                ValueSet u = a[left_cols[k]];
                u.insert(b[right_cols[k]].begin(), b[right_cols[k]].end());
                ok = test.component_ok(k, u);
                unions.push_back(std::move(u));
            }
            if (!ok) continue;
            FuzzyTuple t = a;
            for (std::size_t k = 0; k < on.size(); ++k) t.components[left_cols[k]] = std::move(unions[k]);
            for (const auto i : right_rest) t.components.push_back(b[i]);
            out.push_back(std::move(t));
        }
    return merge_relation(FuzzyRelation(std::move(schema), std::move(out)), levels, mode);
}

}  // namespace fuzzyrel
