#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrel/query.hpp"
#include "fuzzyrel/relation.hpp"

namespace fuzzyrel::io {

struct CsvRow {
    std::size_t line = 0;  ///< line the record starts on
    std::vector<std::string> cells;
};

/// RFC 4180 style: comma separated, double quotes, "" inside quotes.
/// Blank lines are skipped. Unquoted cells are trimmed.
std::vector<CsvRow> parse_csv(std::string_view text);
std::string csv_cell(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Set-valued cells use "|" between members; "\|" and "\\" escape.
std::vector<std::string> split_set_cell(std::string_view cell);
std::string join_set_cell(const ValueSet& values);

/// Header must list the schema's attributes in order (case-insensitive).
FuzzyRelation parse_relation(std::string_view csv, const Schema& schema);
FuzzyRelation load_relation(const std::filesystem::path& path, const Schema& schema);

/// Header row and first column carry the labels, in the same order.
ProximityMatrix parse_matrix(std::string_view csv);
ProximityMatrix load_matrix(const std::filesystem::path& path);

/// Label in the first column; coordinates in the columns headed X and Y.
std::map<std::string, Point> parse_locations(std::string_view csv);
std::map<std::string, Point> load_locations(const std::filesystem::path& path);

enum class AttributeKind { crisp, numeric, ordinal, planar, matrix };

struct AttributeConfig {
    std::string name;
    AttributeKind kind = AttributeKind::crisp;
    std::optional<double> length;                ///< numeric, planar
    std::vector<std::string> labels;             ///< ordinal
    std::optional<std::filesystem::path> matrix; ///< ordinal (optional), matrix
    std::optional<std::filesystem::path> locations;
    std::optional<Method> method;
    std::optional<double> alpha;
};

struct RelationConfig {
    std::string name;
    std::filesystem::path file;
    std::vector<AttributeConfig> attributes;
};

/// INI file: a [NAME] section with file = ... per relation and a
/// [NAME.ATTRIBUTE] section per non-crisp attribute. Paths are resolved
/// against `base`.
std::vector<RelationConfig> parse_schema_config(std::string_view text, const std::filesystem::path& base);

AttributeSpec build_attribute(const AttributeConfig& c);

struct LoadedDatabase {
    query::Database db;
    std::vector<RelationConfig> config;

    /// Config entry for `relation.attribute`, or nullptr.
    const AttributeConfig* attribute(std::string_view relation, std::string_view attr) const;
};

/// Reads dir/schema.ini and every relation it names. Attributes present in
/// a relation file but absent from the config are crisp.
LoadedDatabase load_database(const std::filesystem::path& dir);

/// Boxed text grid; every row has header.size() cells.
std::string format_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);
/// Boxed text table with set cells as {a, b}, followed by a tuple count.
std::string format_table(const FuzzyRelation& r);
/// CSV that parse_relation reads back to an equal relation.
std::string to_csv(const FuzzyRelation& r);

}  // namespace fuzzyrel::io
