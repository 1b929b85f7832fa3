#pragma once

#include <string_view>

#include "fuzzyrel/partition.hpp"
#include "fuzzyrel/relation.hpp"

namespace fuzzyrel {

/// Union of one attribute's component sets over all tuples of r.
ValueSet temporal_domain(const FuzzyRelation& r, std::string_view attr);

/// Connected components of the graph joining values with degree >= alpha,
/// i.e. the transitive closure of alpha-similarity over `values`.
/// Classes are ordered by their smallest member.
Grouping closure_classes(const ValueSet& values, const ProximitySpec& spec, Alpha alpha);

}  // namespace fuzzyrel
