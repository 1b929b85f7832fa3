#include "fuzzyrel/query.hpp"

namespace fuzzyrel::query {

void Database::put(std::string name, FuzzyRelation r) { relations_.insert_or_assign(std::move(name), std::move(r)); }

const FuzzyRelation& Database::get(std::string_view name) const {
    const auto it = relations_.find(std::string(name));
    if (it == relations_.end()) throw UnknownRelationError("unknown relation '" + std::string(name) + "'");
    return it->second;
}

bool Database::contains(std::string_view name) const { return relations_.count(std::string(name)) > 0; }

std::vector<std::string> Database::names() const {
    std::vector<std::string> out;
    for (const auto& [name, r] : relations_) out.push_back(name);
    return out;
}

namespace {

LevelMap levels_for(const Node& n, std::initializer_list<const FuzzyRelation*> inputs, const EvalOptions& opts) {
    LevelMap levels;
    if (opts.method) levels.set_default_method(*opts.method);
    for (const auto& c : n.levels) {
        bool known = false;
        for (const auto* r : inputs) known = known || r->find(c.attribute).has_value();
        if (!known) throw UnknownAttributeError("unknown attribute '" + c.attribute + "' in level clause");
        levels.set(c.attribute, c.value);
    }
    return levels;
}

}  // namespace

FuzzyRelation evaluate(const Node& n, const Database& db, const EvalOptions& opts) {
    switch (n.kind) {
        case NodeKind::relation: return db.get(n.name);
        case NodeKind::select: {
            const FuzzyRelation r = evaluate(n.children.at(0), db, opts);
            std::vector<Condition> conds;
            for (const auto& c : n.conditions) conds.push_back({c.attribute, c.literal});
            return select(r, conds, levels_for(n, {&r}, opts));
        }
        case NodeKind::project: {
            const FuzzyRelation r = evaluate(n.children.at(0), db, opts);
            std::vector<std::string> attrs = n.attributes;
            if (attrs.empty())
                for (const auto& a : r.schema()) attrs.push_back(a.name);
            return project(r, attrs, levels_for(n, {&r}, opts), opts.mode);
        }
        case NodeKind::join: {
            const FuzzyRelation l = evaluate(n.children.at(0), db, opts);
            const FuzzyRelation r = evaluate(n.children.at(1), db, opts);
            return join(l, r, n.attributes, levels_for(n, {&l, &r}, opts), opts.mode);
        }
    }
    throw Error("unreachable");
}

FuzzyRelation run_script(const std::vector<Node>& script, const Database& db, const EvalOptions& opts) {
    Database scope = db;
    FuzzyRelation last;
    for (const auto& n : script) {
        last = evaluate(n, scope, opts);
        if (n.giving) scope.put(*n.giving, last);
    }
    return last;
}

}  // namespace fuzzyrel::query
