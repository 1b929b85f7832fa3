#include "fuzzyrel/closure.hpp"

#include <numeric>
#include <vector>

namespace fuzzyrel {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

}  // namespace

ValueSet temporal_domain(const FuzzyRelation& r, std::string_view attr) {
    const std::size_t col = r.index_of(attr);
    ValueSet out;
    for (const auto& t : r.tuples()) out.insert(t[col].begin(), t[col].end());
    return out;
}

Grouping closure_classes(const ValueSet& values, const ProximitySpec& spec, Alpha alpha) {
    const std::vector<Value> nodes(values.begin(), values.end());
    for (const auto& v : nodes) validate_value(spec, v);

    DisjointSets sets(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (meets(degree_of(spec, nodes[i], nodes[j]), alpha.value())) sets.unite(i, j);

    // Nodes are visited in ascending order, so classes come out ordered by
    // their smallest member.
    std::vector<ValueSet> classes;
    std::vector<std::size_t> slot(nodes.size(), nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::size_t root = sets.find(i);
        if (slot[root] == nodes.size()) {
            slot[root] = classes.size();
            classes.emplace_back();
        }
        classes[slot[root]].insert(nodes[i]);
    }
    return make_grouping(std::move(classes));
}

}  // namespace fuzzyrel
