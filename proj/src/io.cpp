#include "fuzzyrel/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fuzzyrel/errors.hpp"

namespace fuzzyrel::io {
namespace {

std::string with_line(const char* what, std::size_t line) {
    return std::string(what) + " (line " + std::to_string(line) + ")";
}

// Re-raises library errors from `f` with the offending line attached.
template <class F>
auto at_line(std::size_t line, F&& f) {
    try {
        return f();
    } catch (const UnknownValueError& e) {
        throw UnknownValueError(with_line(e.what(), line));
    } catch (const DomainError& e) {
        throw DomainError(with_line(e.what(), line));
    }
}

double parse_number(std::string_view text, std::size_t line, const std::string& what) {
    double v = 0.0;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, v);
    if (text.empty() || ec != std::errc() || ptr != last)
        throw FormatError(what + ": '" + std::string(text) + "' is not a number", line);
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(trim(part));
    return out;
}

}  // namespace

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        CsvRow row;
        row.line = line;
        bool end_of_record = false;
        while (!end_of_record) {
            std::string cell;
            bool quoted = false;
            std::size_t j = i;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
            if (j < text.size() && text[j] == '"') {
                quoted = true;
                const std::size_t opened = line;
                for (i = j + 1;; ++i) {
                    if (i >= text.size()) throw FormatError("unterminated quoted field", opened);
                    if (text[i] == '"') {
                        if (i + 1 < text.size() && text[i + 1] == '"') {
                            cell += '"';
                            ++i;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    if (text[i] == '\n') ++line;
                    cell += text[i];
                }
                while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
                if (i < text.size() && text[i] != ',' && text[i] != '\n')
                    throw FormatError("unexpected text after closing quote", line);
            } else {
                while (i < text.size() && text[i] != ',' && text[i] != '\n') cell += text[i++];
                if (cell.find('"') != std::string::npos) throw FormatError("quote inside unquoted field", line);
            }
            row.cells.push_back(quoted ? cell : trim(cell));
            if (i < text.size() && text[i] == ',') {
                ++i;
            } else {
                end_of_record = true;
                if (i < text.size()) {
                    ++i;
                    ++line;
                }
            }
        }
        const bool blank = row.cells.size() == 1 && row.cells[0].empty();
        if (!blank) rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_cell(std::string_view text) {
    const bool needs_quotes = text.find_first_of(",\"\n\r") != std::string_view::npos ||
                              (!text.empty() && (text.front() == ' ' || text.back() == ' '));
    if (!needs_quotes) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_set_cell(std::string_view cell) {
    std::vector<std::string> out(1);
    for (std::size_t i = 0; i < cell.size(); ++i) {
        if (cell[i] == '\\' && i + 1 < cell.size() && (cell[i + 1] == '|' || cell[i + 1] == '\\')) {
            out.back() += cell[++i];
        } else if (cell[i] == '|') {
            out.emplace_back();
        } else {
            out.back() += cell[i];
        }
    }
    for (auto& s : out) s = trim(s);
    return out;
}

std::string join_set_cell(const ValueSet& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += '|';
        for (char c : to_string(v)) {
            if (c == '|' || c == '\\') out += '\\';
            out += c;
        }
    }
    return out;
}

FuzzyRelation parse_relation(std::string_view csv, const Schema& schema) {
    const auto rows = parse_csv(csv);
    if (rows.empty()) throw FormatError("missing header row", 1);
    const auto& header = rows.front();
    bool header_ok = header.cells.size() == schema.size();
    for (std::size_t i = 0; header_ok && i < schema.size(); ++i) header_ok = iequals(header.cells[i], schema[i].name);
    if (!header_ok) {
        std::string expected;
        for (const auto& a : schema) expected += (expected.empty() ? "" : ",") + a.name;
        throw FormatError("header does not match schema (expected " + expected + ")", header.line);
    }

    std::vector<FuzzyTuple> tuples;
    std::set<FuzzyTuple> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.cells.size() != schema.size())
            throw FormatError("expected " + std::to_string(schema.size()) + " cells, found " +
                                  std::to_string(row.cells.size()),
                              row.line);
        FuzzyTuple t;
        for (std::size_t c = 0; c < schema.size(); ++c) {
            ValueSet members;
            for (const auto& text : split_set_cell(row.cells[c])) {
                if (text.empty()) throw FormatError("empty value in column '" + schema[c].name + "'", row.line);
                Value v;
                try {
                    v = parse_value(schema[c], text);
                } catch (const DomainError& e) {
                    throw FormatError(e.what(), row.line);
                }
                at_line(row.line, [&] {
                    validate_value(schema[c].proximity, v);
                    return 0;
                });
                members.insert(std::move(v));
            }
            t.components.push_back(std::move(members));
        }
        if (!seen.insert(t).second) throw FormatError("duplicate tuple", row.line);
        tuples.push_back(std::move(t));
    }
    return FuzzyRelation(schema, std::move(tuples));
}

FuzzyRelation load_relation(const std::filesystem::path& path, const Schema& schema) {
    try {
        return parse_relation(read_file(path), schema);
    } catch (const FormatError& e) {
        throw FormatError(path.filename().string() + ": " + e.what(), 0);
    }
}

ProximityMatrix parse_matrix(std::string_view csv) {
    const auto rows = parse_csv(csv);
    if (rows.empty()) throw FormatError("empty matrix file", 1);
    const std::vector<std::string> labels(rows[0].cells.begin() + 1, rows[0].cells.end());
    if (labels.empty()) throw FormatError("header lists no labels", rows[0].line);
    if (rows.size() - 1 != labels.size())
        throw FormatError("expected " + std::to_string(labels.size()) + " matrix rows, found " +
                              std::to_string(rows.size() - 1),
                          rows.back().line);
    std::vector<std::vector<double>> degrees;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.cells.size() != labels.size() + 1)
            throw FormatError("expected " + std::to_string(labels.size() + 1) + " cells, found " +
                                  std::to_string(row.cells.size()),
                              row.line);
        if (row.cells[0] != labels[r - 1])
            throw FormatError("row label '" + row.cells[0] + "' does not match column '" + labels[r - 1] + "'",
                              row.line);
        std::vector<double> values;
        for (std::size_t c = 1; c < row.cells.size(); ++c)
            values.push_back(parse_number(row.cells[c], row.line, "degree"));
        degrees.push_back(std::move(values));
    }
    return ProximityMatrix(labels, std::move(degrees));
}

ProximityMatrix load_matrix(const std::filesystem::path& path) {
    try {
        return parse_matrix(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.filename().string() + ": " + e.what(), 0);
    } catch (const ValidationError& e) {
        throw ValidationError(path.filename().string() + ": " + e.what());
    }
}

std::map<std::string, Point> parse_locations(std::string_view csv) {
    const auto rows = parse_csv(csv);
    if (rows.empty()) throw FormatError("empty locations file", 1);
    const auto& header = rows[0].cells;
    const auto column = [&](std::string_view name) {
        for (std::size_t i = 1; i < header.size(); ++i)
            if (iequals(header[i], name)) return i;
        throw FormatError("no '" + std::string(name) + "' column", rows[0].line);
    };
    const std::size_t cx = column("X"), cy = column("Y");
    std::map<std::string, Point> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.cells.size() != header.size())
            throw FormatError("expected " + std::to_string(header.size()) + " cells, found " +
                                  std::to_string(row.cells.size()),
                              row.line);
        const Point p{parse_number(row.cells[cx], row.line, "X"), parse_number(row.cells[cy], row.line, "Y")};
        if (!out.emplace(row.cells[0], p).second)
            throw FormatError("duplicate location '" + row.cells[0] + "'", row.line);
    }
    return out;
}

std::map<std::string, Point> load_locations(const std::filesystem::path& path) {
    try {
        return parse_locations(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.filename().string() + ": " + e.what(), 0);
    }
}

std::vector<RelationConfig> parse_schema_config(std::string_view text, const std::filesystem::path& base) {
    // '#' comment lines are blanked so line numbers stay put.
    std::string cleaned;
    std::istringstream lines{std::string(text)};
    for (std::string line; std::getline(lines, line);) {
        const auto first = line.find_first_not_of(" \t");
        cleaned += (first != std::string::npos && line[first] == '#') ? "" : line;
        cleaned += '\n';
    }

    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(cleaned);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw FormatError("schema config: " + e.message(), e.line());
    }

    std::vector<RelationConfig> relations;
    const auto find_relation = [&](std::string_view name) -> RelationConfig* {
        for (auto& r : relations)
            if (iequals(r.name, name)) return &r;
        return nullptr;
    };

    // Relation sections first, so attribute sections can refer to any of them.
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw FormatError("schema config: key '" + section + "' outside a section", 0);
        if (section.find('.') != std::string::npos) continue;
        RelationConfig r;
        r.name = section;
        for (const auto& [key, value] : body) {
            if (lower(key) != "file")
                throw FormatError("schema config [" + section + "]: unknown key '" + key + "'", 0);
            if (!trim(value.data()).empty()) r.file = base / trim(value.data());
        }
        if (r.file.empty()) throw FormatError("schema config [" + section + "]: missing 'file'", 0);
        relations.push_back(std::move(r));
    }

    if (relations.empty()) throw FormatError("schema config: no relations configured", 0);

    for (const auto& [section, body] : tree) {
        const auto dot = section.find('.');
        if (dot == std::string::npos) continue;
        const std::string where = "schema config [" + section + "]: ";
        RelationConfig* rel = find_relation(section.substr(0, dot));
        if (!rel) throw FormatError(where + "no section for relation '" + section.substr(0, dot) + "'", 0);
        AttributeConfig a;
        a.name = trim(section.substr(dot + 1));
        std::optional<std::string> kind;
        for (const auto& [raw_key, node] : body) {
            const std::string key = lower(raw_key);
            const std::string value = trim(node.data());
            if (key == "kind") {
                kind = lower(value);
            } else if (key == "l" || key == "length") {
                a.length = parse_number(value, 0, where + "L");
            } else if (key == "labels") {
                a.labels = split_list(value);
            } else if (key == "matrix") {
                a.matrix = base / value;
            } else if (key == "locations") {
                a.locations = base / value;
            } else if (key == "method") {
                a.method = parse_method(value);
                if (!a.method) throw FormatError(where + "unknown method '" + value + "'", 0);
            } else if (key == "alpha") {
                a.alpha = parse_number(value, 0, where + "alpha");
                if (*a.alpha < 0 || *a.alpha > 1) throw FormatError(where + "alpha outside [0, 1]", 0);
            } else {
                throw FormatError(where + "unknown key '" + raw_key + "'", 0);
            }
        }
        if (!kind) throw FormatError(where + "missing 'kind'", 0);
        static const std::map<std::string, AttributeKind> kinds{{"crisp", AttributeKind::crisp},
                                                                {"numeric", AttributeKind::numeric},
                                                                {"ordinal", AttributeKind::ordinal},
                                                                {"planar", AttributeKind::planar},
                                                                {"matrix", AttributeKind::matrix}};
        const auto k = kinds.find(*kind);
        if (k == kinds.end()) throw FormatError(where + "unknown kind '" + *kind + "'", 0);
        a.kind = k->second;

        const bool lengthy = a.kind == AttributeKind::numeric || a.kind == AttributeKind::planar;
        if (lengthy && !(a.length && *a.length > 0)) throw FormatError(where + "needs L > 0", 0);
        if (!lengthy && a.length) throw FormatError(where + "L only applies to numeric and planar", 0);
        if (a.kind == AttributeKind::ordinal && a.labels.size() < 2)
            throw FormatError(where + "ordinal needs at least two labels", 0);
        if (a.kind != AttributeKind::ordinal && !a.labels.empty())
            throw FormatError(where + "labels only apply to ordinal", 0);
        if (a.kind == AttributeKind::matrix && !a.matrix) throw FormatError(where + "needs a matrix file", 0);
        if (a.kind != AttributeKind::matrix && a.kind != AttributeKind::ordinal && a.matrix)
            throw FormatError(where + "matrix only applies to matrix and ordinal", 0);
        if ((a.kind == AttributeKind::planar) != a.locations.has_value())
            throw FormatError(where + "locations are required for planar and only allowed there", 0);
        for (const auto& other : rel->attributes)
            if (iequals(other.name, a.name)) throw FormatError(where + "attribute configured twice", 0);
        rel->attributes.push_back(std::move(a));
    }
    return relations;
}

AttributeSpec build_attribute(const AttributeConfig& c) {
    switch (c.kind) {
        case AttributeKind::crisp:
            return AttributeSpec(c.name, ProximitySpec::crisp(), c.method.value_or(Method::threshold));
        case AttributeKind::numeric:
            return AttributeSpec(c.name, ProximitySpec::linear(*c.length), c.method.value_or(Method::interval));
        case AttributeKind::planar:
            return AttributeSpec(c.name, ProximitySpec::planar(*c.length, load_locations(*c.locations)),
                                 c.method.value_or(Method::grid));
        case AttributeKind::matrix:
            return AttributeSpec(c.name, ProximitySpec::matrix(load_matrix(*c.matrix)),
                                 c.method.value_or(Method::threshold));
        case AttributeKind::ordinal: {
            if (!c.matrix)
                return AttributeSpec(c.name, ProximitySpec::matrix(build_ordinal_matrix(c.labels)),
                                     c.method.value_or(Method::interval));
            // A supplied table keeps its degrees; the label list fixes the order.
            const ProximityMatrix given = load_matrix(*c.matrix);
            if (given.size() != c.labels.size())
                throw ValidationError("attribute '" + c.name + "': labels and matrix differ in size");
            std::vector<std::vector<double>> rows;
            for (const auto& a : c.labels) {
                std::vector<double> row;
                for (const auto& b : c.labels) row.push_back(given.at(a, b));
                rows.push_back(std::move(row));
            }
            return AttributeSpec(c.name, ProximitySpec::matrix(ProximityMatrix::ordinal(c.labels, std::move(rows))),
                                 c.method.value_or(Method::interval));
        }
    }
    throw Error("unreachable");
}

const AttributeConfig* LoadedDatabase::attribute(std::string_view relation, std::string_view attr) const {
    for (const auto& r : config) {
        if (!iequals(r.name, relation)) continue;
        for (const auto& a : r.attributes)
            if (iequals(a.name, attr)) return &a;
    }
    return nullptr;
}

LoadedDatabase load_database(const std::filesystem::path& dir) {
    LoadedDatabase out;
    const auto ini = dir / "schema.ini";
    out.config = parse_schema_config(read_file(ini), dir);
    for (const auto& rel : out.config) {
        const std::string text = read_file(rel.file);
        const auto rows = parse_csv(text);
        if (rows.empty()) throw FormatError(rel.file.filename().string() + ": missing header row", 1);
        Schema schema;
        for (const auto& name : rows[0].cells) {
            const auto it = std::find_if(rel.attributes.begin(), rel.attributes.end(),
                                         [&](const AttributeConfig& a) { return iequals(a.name, name); });
            AttributeConfig c;
            c.name = name;
            if (it != rel.attributes.end()) c = *it, c.name = name;
            try {
                schema.push_back(build_attribute(c));
            } catch (const DomainError& e) {
                throw FormatError("schema config [" + rel.name + "." + name + "]: " + e.what(), 0);
            }
        }
        for (const auto& a : rel.attributes)
            if (std::none_of(schema.begin(), schema.end(), [&](const AttributeSpec& s) { return iequals(s.name, a.name); }))
                throw FormatError("schema config [" + rel.name + "." + a.name + "]: no such column in " +
                                      rel.file.filename().string(),
                                  0);
        try {
            out.db.put(rel.name, parse_relation(text, schema));
        } catch (const FormatError& e) {
            throw FormatError(rel.file.filename().string() + ": " + e.what(), 0);
        }
    }
    return out;
}

std::string format_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    const std::size_t n = header.size();
    std::vector<std::size_t> width(n, 0);
    for (std::size_t i = 0; i < n; ++i) width[i] = header[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < n; ++i) width[i] = std::max(width[i], row.at(i).size());

    std::string rule = "+";
    for (auto w : width) rule += std::string(w + 2, '-') + "+";
    rule += "\n";
    const auto line = [&](const std::vector<std::string>& row) {
        std::string s = "|";
        for (std::size_t i = 0; i < n; ++i) s += " " + row[i] + std::string(width[i] - row[i].size(), ' ') + " |";
        return s + "\n";
    };
    std::string out = rule + line(header) + rule;
    for (const auto& row : rows) out += line(row);
    return out + rule;
}

std::string format_table(const FuzzyRelation& r) {
    std::vector<std::string> header;
    for (const auto& a : r.schema()) header.push_back(a.name);
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : r.tuples()) {
        rows.emplace_back();
        for (const auto& c : t.components) rows.back().push_back(to_string(c));
    }
    return format_grid(header, rows) + std::to_string(r.size()) + (r.size() == 1 ? " tuple\n" : " tuples\n");
}

std::string to_csv(const FuzzyRelation& r) {
    std::string out;
    for (std::size_t i = 0; i < r.schema().size(); ++i) out += (i ? "," : "") + csv_cell(r.schema()[i].name);
    out += "\n";
    for (const auto& t : r.tuples()) {
        for (std::size_t i = 0; i < t.components.size(); ++i) out += (i ? "," : "") + csv_cell(join_set_cell(t[i]));
        out += "\n";
    }
    return out;
}

}  // namespace fuzzyrel::io
