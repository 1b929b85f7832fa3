#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrel/io.hpp"
#include "fuzzyrel/query.hpp"

namespace fuzzyrel::cmd {

/// Bad command-line input that is not a data problem.
struct UsageError : Error {
    using Error::Error;
};

struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct TableReport {
    std::vector<Table> tables;
    /// Set when the report is a relation; csv() then exports it.
    std::optional<FuzzyRelation> relation;

    std::string text() const;
    std::string csv() const;
};

/// The error message, the offending line and a caret under the column.
std::string caret_message(std::string_view text, const ParseError& e);

/// Values the classes of an attribute are formed over: the declared
/// labels or locations when the domain is finite, else the values present.
ValueSet class_domain(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                      bool present_only = false);

/// Alpha from the argument, else the attribute's configured alpha.
double resolve_alpha(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                     std::optional<double> alpha);

TableReport cmd_classes(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                        std::optional<double> alpha, std::optional<Method> method, bool present_only = false);

/// Interval/grid against closure for every alpha, then the degree matrix.
TableReport cmd_compare(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                        const std::vector<double>& alphas, bool present_only = false);

TableReport cmd_query(const io::LoadedDatabase& db, std::string_view text, const query::EvalOptions& opts);

/// Merges a stored relation. Levels: `alpha` for every attribute, else the
/// configured alpha, else 1; explicit `levels` entries win.
TableReport cmd_merge(const io::LoadedDatabase& db, std::string_view relation, std::optional<double> alpha,
                      const std::vector<std::pair<std::string, double>>& levels, const query::EvalOptions& opts);

TableReport cmd_check_matrix(const std::filesystem::path& path);

/// Degrees to three decimals, as in printed similarity tables.
std::string format_degree(double d);

/// --method handling shared by query and merge: threshold mode unless a
/// class method is named.
query::EvalOptions eval_options(std::optional<Method> method);

}  // namespace fuzzyrel::cmd
