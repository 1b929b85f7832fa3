#include "fuzzyrel/commands.hpp"

#include <algorithm>
#include <cstdio>

#include "fuzzyrel/closure.hpp"

namespace fuzzyrel::cmd {
namespace {

std::string braces(const ValueSet& s) {
    std::string out = "{";
    for (const auto& v : s) out += (out.size() > 1 ? ", " : "") + to_string(v);
    return out + "}";
}

std::string number(double d) { return to_string(Value(d)); }

std::string approx(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", d);
    return buf;
}

std::vector<ValueSet> sorted_classes(const Grouping& g) {
    auto classes = g.classes;
    std::sort(classes.begin(), classes.end(),
              [](const ValueSet& a, const ValueSet& b) { return *a.begin() < *b.begin(); });
    return classes;
}

const AttributeSpec& attribute_of(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr) {
    return db.db.get(relation).attribute(attr);
}

std::string describe_partition(const AttributeSpec& a, Method m, double alpha) {
    const auto& spec = a.proximity;
    if (alpha >= 1.0 && m != Method::closure) return "every value on its own";
    switch (m) {
        case Method::interval:
        case Method::equalized: {
            const auto p = partition_line(line_length(spec), Alpha(alpha),
                                          m == Method::interval ? PartitionMode::standard : PartitionMode::equalized);
            return "m = " + approx(p.width()) + ", " + std::to_string(p.cell_count()) + " intervals";
        }
        case Method::grid: {
            const auto g = partition_plane(spec.get_if<Planar>()->side, Alpha(alpha));
            return "m = " + approx(g.axis().width()) + ", " + std::to_string(g.axis().cell_count()) + "x" +
                   std::to_string(g.axis().cell_count()) + " cells";
        }
        default: return "connected components of the alpha-cut";
    }
}

Method partition_method(const AttributeSpec& a) {
    const Method m = effective_method(a, Method::interval);
    if (m == Method::threshold)
        throw UsageError("attribute '" + a.name + "' has no interval or grid partition; use a numeric, ordinal or "
                         "planar attribute");
    return m;
}

std::vector<std::vector<std::string>> class_rows(const Grouping& g) {
    std::vector<std::vector<std::string>> rows;
    const auto classes = sorted_classes(g);
    for (std::size_t k = 0; k < classes.size(); ++k)
        rows.push_back({"K" + std::to_string(k + 1), braces(classes[k])});
    return rows;
}

}  // namespace

std::string TableReport::text() const {
    std::string out;
    for (const auto& t : tables) {
        if (!out.empty()) out += "\n";
        if (!t.title.empty()) out += t.title + "\n";
        if (relation && &t == &tables.front())
            out += io::format_table(*relation);
        else
            out += io::format_grid(t.header, t.rows);
    }
    return out;
}

std::string TableReport::csv() const {
    if (relation) return io::to_csv(*relation);
    std::string out;
    for (const auto& t : tables) {
        if (!out.empty()) out += "\n";
        for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + io::csv_cell(t.header[i]);
        out += "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + io::csv_cell(r[i]);
            out += "\n";
        }
    }
    return out;
}

std::string caret_message(std::string_view text, const ParseError& e) {
    std::size_t line = 1, start = 0;
    for (std::size_t i = 0; i < text.size() && line < e.line(); ++i)
        if (text[i] == '\n') ++line, start = i + 1;
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string out = std::string(e.what()) + "\n  " + std::string(text.substr(start, end - start)) + "\n  ";
    out += std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') + "^";
    return out;
}

ValueSet class_domain(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                      bool present_only) {
    const FuzzyRelation& r = db.db.get(relation);
    const AttributeSpec& a = r.attribute(attr);
    if (!present_only) {
        if (const auto* m = a.proximity.get_if<ExplicitMatrix>())
            return ValueSet(m->matrix.labels().begin(), m->matrix.labels().end());
        if (const auto* p = a.proximity.get_if<Planar>()) {
            ValueSet out;
            for (const auto& [label, pt] : p->locations) out.insert(label);
            return out;
        }
    }
    return temporal_domain(r, attr);
}

double resolve_alpha(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                     std::optional<double> alpha) {
    if (alpha) return *alpha;
    if (const auto* c = db.attribute(relation, attr); c && c->alpha) return *c->alpha;
    throw UsageError("no --alpha given and none configured for " + std::string(relation) + "." + std::string(attr));
}

TableReport cmd_classes(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                        std::optional<double> alpha, std::optional<Method> method, bool present_only) {
    const AttributeSpec& a = attribute_of(db, relation, attr);
    const double level = resolve_alpha(db, relation, attr, alpha);
    const Method m = effective_method(a, method);
    if (m == Method::threshold)
        throw UsageError("the threshold method forms no classes; use closure, or interval/grid on a "
                         "numeric, ordinal or planar attribute");
    const auto g = form_classes(a, m, Alpha(level), class_domain(db, relation, attr, present_only));
    Table t;
    t.title = a.name + ", " + std::string(to_string(m)) + " method, alpha " + number(level) + " (" +
              describe_partition(a, m, level) + "): " + std::to_string(g.size()) + " classes";
    t.header = {"Class", "Members"};
    t.rows = class_rows(g);
    return {{std::move(t)}, std::nullopt};
}

std::string format_degree(double d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.3f", d);
    return buf;
}

TableReport cmd_compare(const io::LoadedDatabase& db, std::string_view relation, std::string_view attr,
                        const std::vector<double>& alphas, bool present_only) {
    const AttributeSpec& a = attribute_of(db, relation, attr);
    const Method pm = partition_method(a);
    const ValueSet domain = class_domain(db, relation, attr, present_only);
    const std::string pname(to_string(pm));

    TableReport report;
    Table counts{"Class counts for " + a.name, {"alpha", pname, "closure"}, {}};
    std::vector<Table> detail;
    for (const double alpha : alphas) {
        const auto part = form_classes(a, pm, Alpha(alpha), domain);
        const auto clos = form_classes(a, Method::closure, Alpha(alpha), domain);
        counts.rows.push_back({number(alpha), std::to_string(part.size()), std::to_string(clos.size())});
        Table t{"alpha " + number(alpha) + " (" + describe_partition(a, pm, alpha) + ")", {"Method", "Class", "Members"}, {}};
        for (const auto& [name, g] : {std::pair{pname, &part}, std::pair{std::string("closure"), &clos}})
            for (auto row : class_rows(*g)) t.rows.push_back({name, row[0], row[1]});
        detail.push_back(std::move(t));
    }
    report.tables.push_back(std::move(counts));
    for (auto& t : detail) report.tables.push_back(std::move(t));

    Table matrix{"Degrees", {""}, {}};
    for (const auto& v : domain) matrix.header.push_back(to_string(v));
    for (const auto& x : domain) {
        std::vector<std::string> row{to_string(x)};
        for (const auto& y : domain) row.push_back(format_degree(degree_of(a.proximity, x, y).value()));
        matrix.rows.push_back(std::move(row));
    }
    report.tables.push_back(std::move(matrix));
    return report;
}

query::EvalOptions eval_options(std::optional<Method> method) {
    if (!method || *method == Method::threshold) return {MergeMode::threshold, std::nullopt};
    return {MergeMode::classes, method};
}

TableReport cmd_query(const io::LoadedDatabase& db, std::string_view text, const query::EvalOptions& opts) {
    const auto script = query::parse_script(text);
    FuzzyRelation result = query::run_script(script, db.db, opts);
    const auto& last = script.back();
    TableReport report;
    report.tables.push_back({last.giving.value_or(""), {}, {}});
    report.relation = std::move(result);
    return report;
}

TableReport cmd_merge(const io::LoadedDatabase& db, std::string_view relation, std::optional<double> alpha,
                      const std::vector<std::pair<std::string, double>>& levels, const query::EvalOptions& opts) {
    const FuzzyRelation& r = db.db.get(relation);
    LevelMap map;
    if (opts.method) map.set_default_method(*opts.method);
    for (const auto& a : r.schema()) {
        const auto* c = db.attribute(relation, a.name);
        if (alpha && !a.proximity.get_if<CrispIdentity>())
            map.set(a.name, *alpha);
        else if (c && c->alpha)
            map.set(a.name, *c->alpha);
    }
    for (const auto& [name, level] : levels) {
        r.index_of(name);
        if (level < 0 || level > 1) throw UsageError("level for '" + name + "' outside [0, 1]");
        map.set(name, level);
    }
    TableReport report;
    std::string title = std::string(relation) + " merged (" +
                        (opts.mode == MergeMode::threshold ? std::string("threshold") : "classes") + "; levels";
    for (const auto& a : r.schema()) title += " " + a.name + "=" + number(map.level(a.name));
    report.tables.push_back({title + ")", {}, {}});
    report.relation = merge_relation(r, map, opts.mode);
    return report;
}

TableReport cmd_check_matrix(const std::filesystem::path& path) {
    const ProximityMatrix m = io::load_matrix(path);
    const PropertyReport p = relation_properties(m);
    const auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
    Table t{path.filename().string() + ": " + std::to_string(m.size()) + " labels", {"Property", "Holds"}, {}};
    t.rows.push_back({"reflexive", yes(p.reflexive)});
    t.rows.push_back({"symmetric", yes(p.symmetric)});
    t.rows.push_back({"max-min transitive", yes(p.max_min_transitive)});
    if (p.first_violation) {
        const auto& [x, y, z] = *p.first_violation;
        t.rows.push_back({"first violation", "s(" + x + ", " + z + ") = " + format_degree(m.at(x, z)) +
                                                 " < min(s(" + x + ", " + y + "), s(" + y + ", " + z +
                                                 ")) = " + format_degree(std::min(m.at(x, y), m.at(y, z)))});
    }
    return {{std::move(t)}, std::nullopt};
}

}  // namespace fuzzyrel::cmd
