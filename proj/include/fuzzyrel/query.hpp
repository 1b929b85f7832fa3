#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrel/algebra.hpp"
#include "fuzzyrel/errors.hpp"
#include "fuzzyrel/relation.hpp"

namespace fuzzyrel {

/// Malformed query text. Line and column are 1-based.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string expected_;
};

namespace query {

enum class LevelKeyword { level, thres };
enum class Comparator { eq, ge, gt };

struct LevelClause {
    LevelKeyword keyword = LevelKeyword::level;
    std::string attribute;
    Comparator comparator = Comparator::eq;
    double value = 1.0;
    bool operator==(const LevelClause&) const = default;
};

struct CondClause {
    std::string attribute;
    Value literal;
    bool operator==(const CondClause&) const = default;
};

enum class NodeKind { relation, select, project, join };

struct Node {
    NodeKind kind = NodeKind::relation;
    std::string name;                      ///< relation name
    std::vector<Node> children;            ///< one for select/project, two for join
    std::vector<CondClause> conditions;    ///< select
    std::vector<std::string> attributes;   ///< project list (empty: all) or join keys
    std::vector<LevelClause> levels;
    std::optional<std::string> giving;
    bool operator==(const Node&) const = default;
};

Node parse(std::string_view text);
/// Statements separated by ';'. An empty script is a ParseError.
std::vector<Node> parse_script(std::string_view text);

/// Canonical single-line text; parse(render(n)) == n.
std::string render(const Node& n);

/// Named relations. Lookup is case-insensitive.
class Database {
public:
    void put(std::string name, FuzzyRelation r);
    /// Throws UnknownRelationError.
    const FuzzyRelation& get(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, FuzzyRelation, ILess> relations_;
};

struct EvalOptions {
    MergeMode mode = MergeMode::threshold;
    /// Class method applied to every attribute in class mode.
    std::optional<Method> method;
};

FuzzyRelation evaluate(const Node& n, const Database& db, const EvalOptions& opts = {});

/// Evaluates statements in order on a copy of `db`; each `giving` name is
/// bound for the statements after it. Returns the last result.
FuzzyRelation run_script(const std::vector<Node>& script, const Database& db, const EvalOptions& opts = {});

}  // namespace query
}  // namespace fuzzyrel
