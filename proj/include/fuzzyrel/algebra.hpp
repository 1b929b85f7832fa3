#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrel/partition.hpp"
#include "fuzzyrel/relation.hpp"

namespace fuzzyrel {

/// threshold: redundancy by the minimum pairwise degree of the union.
/// classes: redundancy by sharing one equivalence class per attribute, the
/// class method chosen per attribute (see effective_method).
enum class MergeMode { threshold, classes };

struct Condition {
    std::string attribute;
    Value constant;
};

/// Crisp tuples obtained by picking one element from every component.
std::vector<FuzzyTuple> interpretations(const FuzzyTuple& t);

/// Minimum degree over all pairs in `values`; 1 for singletons.
double min_pairwise_degree(const ProximitySpec& spec, const ValueSet& values);

/// Minimum over tuples of the intra-component minimum degree. 1 for an
/// empty relation or all-singleton components.
Degree thres(const FuzzyRelation& r, std::string_view attr);

/// Every component's elements are pairwise at least its level apart.
bool valid_tuple(const Schema& schema, const FuzzyTuple& t, const LevelMap& levels);

/// Method actually used for an attribute in class mode. Interval-type
/// requests adapt to the domain: planar -> grid, linear/ordinal ->
/// interval or equalized, anything else -> threshold.
Method effective_method(const AttributeSpec& attr, std::optional<Method> requested);

/// Equivalence classes of `values` under one method at one alpha.
/// Throws DomainError for the threshold method (it forms no partition).
Grouping form_classes(const AttributeSpec& attr, Method method, Alpha alpha, const ValueSet& values);

/// Pairwise redundancy decision for one relation state. Class mode
/// groupings are formed once, over the supplied per-attribute value sets.
class RedundancyTest {
public:
    RedundancyTest(const Schema& schema, const LevelMap& levels, MergeMode mode,
                   const std::vector<ValueSet>& domains);

    /// Whether a (union) component may stand for attribute `col`.
    bool component_ok(std::size_t col, const ValueSet& values) const;
    bool operator()(const FuzzyTuple& a, const FuzzyTuple& b) const;

private:
    struct Column {
        ProximitySpec proximity;
        double level = 1.0;
        bool ignored = false;
        std::optional<Grouping> classes;  ///< set when a class method applies
    };
    std::vector<Column> columns_;
};

bool redundant(const Schema& schema, const FuzzyTuple& t1, const FuzzyTuple& t2,
               const LevelMap& levels, MergeMode mode);

/// Componentwise union. Throws SchemaMismatchError on arity mismatch.
FuzzyTuple merge_tuples(const FuzzyTuple& t1, const FuzzyTuple& t2);

/// Merges redundant pairs until none remain.
FuzzyRelation merge_relation(const FuzzyRelation& r, const LevelMap& levels, MergeMode mode);

/// Keeps tuples whose every component element is within the attribute's
/// level of the condition constant. Does not merge.
FuzzyRelation select(const FuzzyRelation& r, const std::vector<Condition>& conds, const LevelMap& levels);

/// Drops the other columns, then merges.
FuzzyRelation project(const FuzzyRelation& r, const std::vector<std::string>& attrs,
                      const LevelMap& levels, MergeMode mode);

/// Pairs tuples whose join components pass the redundancy test, keeps the
/// union on join columns, appends right-hand columns (duplicates get "_2"),
/// then merges.
FuzzyRelation join(const FuzzyRelation& r1, const FuzzyRelation& r2, const std::vector<std::string>& on,
                   const LevelMap& levels, MergeMode mode);

}  // namespace fuzzyrel
