#include <iostream>

#include <CLI11.hpp>

#include "fuzzyrel/commands.hpp"

using namespace fuzzyrel;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kDataError = 3;

std::optional<Method> method_from(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_method(text);
}

std::vector<std::pair<std::string, double>> parse_levels(const std::vector<std::string>& specs) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& s : specs) {
        const auto eq = s.rfind('=');
        if (eq == std::string::npos) throw cmd::UsageError("--level expects ATTRIBUTE=VALUE, got '" + s + "'");
        try {
            std::size_t used = 0;
            const std::string number = trim(s.substr(eq + 1));
            const double v = std::stod(number, &used);
            if (used != number.size()) throw std::invalid_argument(s);
            out.emplace_back(trim(s.substr(0, eq)), v);
        } catch (const std::logic_error&) {
            throw cmd::UsageError("--level expects ATTRIBUTE=VALUE, got '" + s + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy relational database: equivalence classes, merging and queries"};
    app.require_subcommand(1);

    std::string db_dir = "data";
    std::string emit = "text";
    std::string method_text;
    app.add_option("--db", db_dir, "Directory with schema.ini and the relation files")->capture_default_str();

    const auto add_emit = [&](CLI::App* sub) {
        sub->add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
    };
    const auto add_method = [&](CLI::App* sub, const std::string& help) {
        sub->add_option("--method", method_text, help)
            ->check(CLI::IsMember({"interval", "equalized", "grid", "closure", "threshold"}, CLI::ignore_case));
    };

    std::string relation, attribute;
    std::vector<double> alphas;
    bool present = false;

    auto* classes = app.add_subcommand("classes", "Equivalence classes of one attribute");
    classes->add_option("relation", relation, "Relation name")->required();
    classes->add_option("attribute", attribute, "Attribute name")->required();
    classes->add_option("--alpha", alphas, "Proximity threshold (default: configured alpha)")
        ->expected(1)
        ->check(CLI::Range(0.0, 1.0));
    add_method(classes, "Class method (default: the attribute's method)");
    classes->add_flag("--present", present, "Use only the values present in the relation");
    add_emit(classes);

    auto* compare = app.add_subcommand("compare", "Interval/grid classes against closure classes");
    compare->add_option("relation", relation, "Relation name")->required();
    compare->add_option("attribute", attribute, "Attribute name")->required();
    compare->add_option("--alpha", alphas, "Thresholds, repeated or comma separated")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    compare->add_flag("--present", present, "Use only the values present in the relation");
    add_emit(compare);

    std::string query_text, query_file;
    auto* query = app.add_subcommand("query", "Evaluate a query or a ';' separated script");
    auto* text_opt = query->add_option("text", query_text, "Query text");
    auto* file_opt = query->add_option("--file", query_file, "Read the query from a file")->check(CLI::ExistingFile);
    text_opt->excludes(file_opt);
    add_method(query, "threshold (default) or a class method for class-mode merging");
    add_emit(query);

    std::vector<std::string> level_specs;
    auto* merge = app.add_subcommand("merge", "Merge the redundant tuples of a stored relation");
    merge->add_option("relation", relation, "Relation name")->required();
    merge->add_option("--alpha", alphas, "Level for every non-crisp attribute")->expected(1)->check(CLI::Range(0.0, 1.0));
    merge->add_option("--level", level_specs, "Level for one attribute, ATTRIBUTE=VALUE (repeatable)");
    add_method(merge, "threshold (default) or a class method for class-mode merging");
    add_emit(merge);

    std::string matrix_path;
    auto* check = app.add_subcommand("check-matrix", "Validate a proximity matrix and test max-min transitivity");
    check->add_option("file", matrix_path, "Matrix CSV")->required();
    add_emit(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const std::optional<Method> method = method_from(method_text);
        const std::optional<double> alpha = alphas.empty() ? std::nullopt : std::optional<double>(alphas.front());
        cmd::TableReport report;
        if (*check) {
            report = cmd::cmd_check_matrix(matrix_path);
        } else {
            const auto db = io::load_database(db_dir);
            if (*classes) {
                report = cmd::cmd_classes(db, relation, attribute, alpha, method, present);
            } else if (*compare) {
                report = cmd::cmd_compare(db, relation, attribute, alphas, present);
            } else if (*query) {
                if (!*file_opt && !*text_opt) throw cmd::UsageError("query needs text or --file");
                const std::string text = *file_opt ? io::read_file(query_file) : query_text;
                try {
                    report = cmd::cmd_query(db, text, cmd::eval_options(method));
                } catch (const ParseError& e) {
                    std::cerr << "error: " << cmd::caret_message(text, e) << "\n";
                    return kInputError;
                }
            } else {
                report = cmd::cmd_merge(db, relation, alpha, parse_levels(level_specs), cmd::eval_options(method));
            }
        }
        std::cout << (emit == "csv" ? report.csv() : report.text());
        return kOk;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const cmd::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
}
