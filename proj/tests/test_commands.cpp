#include <gtest/gtest.h>

#include "fuzzyrel/commands.hpp"
#include "support/example_data.hpp"

using namespace fuzzyrel;
using namespace fuzzyrel::cmd;
namespace td = fuzzyrel::testdata;

namespace {

const io::LoadedDatabase& shipped() {
    static const io::LoadedDatabase db = io::load_database(FUZZYREL_DATA_DIR);
    return db;
}

std::vector<std::string> members(const Table& t) {
    std::vector<std::string> out;
    for (const auto& r : t.rows) out.push_back(r.back());
    return out;
}

}  // namespace

TEST(Classes, StatusAtPointEight) {
    const auto r = cmd_classes(shipped(), "SUPPLIERS", "STATUS", 0.8, Method::interval);
    ASSERT_EQ(r.tables.size(), 1u);
    EXPECT_EQ(members(r.tables[0]), (std::vector<std::string>{"{10}", "{20, 25, 30, 35}", "{40, 45, 50, 55}",
                                                              "{60, 65, 75}", "{80, 90}"}));
    EXPECT_EQ(r.tables[0].rows[0][0], "K1");
}

TEST(Classes, GbCities) {
    EXPECT_EQ(cmd_classes(shipped(), "GB CITIES", "City", 0.8, Method::closure).tables[0].rows.size(), 1u);
    const auto singles = cmd_classes(shipped(), "GB CITIES", "City", 0.95, Method::interval);
    EXPECT_EQ(singles.tables[0].rows.size(), 23u);
    EXPECT_NE(singles.tables[0].title.find("grid"), std::string::npos);
}

TEST(Classes, ConfiguredAlphaAndErrors) {
    const auto r = cmd_classes(shipped(), "SUPPLIERS", "CITY", std::nullopt, std::nullopt);
    EXPECT_EQ(r.tables[0].rows.size(), 5u);
    EXPECT_THROW(cmd_classes(shipped(), "SUPPLIERS", "SNAME", std::nullopt, std::nullopt), UsageError);
    EXPECT_THROW(cmd_classes(shipped(), "SURVEY", "Type", 0.5, std::nullopt), UsageError);
    EXPECT_THROW(cmd_classes(shipped(), "SUPPLIERS", "ZIP", 0.5, std::nullopt), UnknownAttributeError);
    EXPECT_THROW(cmd_classes(shipped(), "PARTS", "P", 0.5, std::nullopt), UnknownRelationError);
}

TEST(Classes, PresentValuesOnly) {
    // Light brown is in the hair domain but nobody in the relation has it.
    const auto all = cmd_classes(shipped(), "PHYSICAL CHARACTERISTICS", "Hair Color", 0.8, Method::interval);
    const auto present = cmd_classes(shipped(), "PHYSICAL CHARACTERISTICS", "Hair Color", 0.8, Method::interval, true);
    EXPECT_EQ(all.tables[0].rows.size(), 5u);
    EXPECT_EQ(present.tables[0].rows.size(), 4u);
}

TEST(Compare, GbCities) {
    const auto r = cmd_compare(shipped(), "GB CITIES", "City", {0.4, 0.6, 0.8, 0.95});
    const Table& counts = r.tables.front();
    EXPECT_EQ(counts.header, (std::vector<std::string>{"alpha", "grid", "closure"}));
    EXPECT_EQ(counts.rows, (std::vector<std::vector<std::string>>{
                               {"0.4", "4", "1"}, {"0.6", "8", "1"}, {"0.8", "14", "1"}, {"0.95", "23", "20"}}));
    const Table& matrix = r.tables.back();
    EXPECT_EQ(matrix.rows.size(), 23u);
    // Rows and columns are in name order.
    const auto col = [&](const std::string& name) {
        return std::find(matrix.header.begin(), matrix.header.end(), name) - matrix.header.begin();
    };
    const auto row = [&](const std::string& name) {
        for (const auto& r : matrix.rows)
            if (r[0] == name) return r;
        return std::vector<std::string>{};
    };
    EXPECT_EQ(row("Peterborough")[col("Solihull")], "0.457");
    EXPECT_EQ(row("London")[col("Borehamwood")], "0.924");
    EXPECT_EQ(row("Esher")[col("Epsom")], "0.963");
    EXPECT_EQ(row("Esher")[col("Esher")], "1.000");
}

TEST(Compare, SingletonDomain) {
    io::LoadedDatabase db;
    const Schema s{{"x", ProximitySpec::linear(10)}};
    db.db.put("ONE", FuzzyRelation(s, {td::tuple_of(s, {"4"})}));
    for (double alpha : {0.0, 0.5, 0.9, 1.0}) {
        const auto r = cmd_compare(db, "ONE", "x", {alpha});
        EXPECT_EQ(r.tables.front().rows[0][1], "1");
        EXPECT_EQ(r.tables.front().rows[0][2], "1");
    }
    EXPECT_THROW(cmd_compare(shipped(), "SURVEY", "Effect", {0.5}), UsageError);
}

TEST(Query, ExpertsResidentsJoin) {
    const auto r = cmd_query(shipped(),
                             "project (select (SURVEY) where Type = Expert) over Pollutant, Name, Effect\n"
                             "  with thres(Effect) > 0.85, thres(Name) >= 0 giving R1;\n"
                             "project (select (SURVEY) where Type = Resident) over Pollutant, Name, Effect\n"
                             "  with thres(Effect) > 0.85, thres(Name) >= 0 giving R2;\n"
                             "join (R1, R2) on Pollutant, Effect with thres(Effect) > 0.85, thres(Name) >= 0 giving R3",
                             eval_options(std::nullopt));
    ASSERT_TRUE(r.relation);
    EXPECT_EQ(r.relation->size(), 4u);
    EXPECT_EQ(r.tables[0].title, "R3");
    EXPECT_EQ(r.text(), r.text());
    EXPECT_EQ(io::parse_relation(r.csv(), r.relation->schema()).tuples(), r.relation->tuples());
}

TEST(Query, ParseErrorWithCaret) {
    try {
        cmd_query(shipped(), "select (SURVEY)\nwhere Type ~ Expert", eval_options(std::nullopt));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(caret_message("select (SURVEY)\nwhere Type ~ Expert", e),
                  std::string(e.what()) + "\n  where Type ~ Expert\n             ^");
    }
}

TEST(Merge, SuppliersClassMode) {
    const auto r = cmd_merge(shipped(), "SUPPLIERS", std::nullopt, {}, eval_options(Method::interval));
    EXPECT_EQ(r.relation->size(), 8u);
    const auto widened = cmd_merge(shipped(), "SUPPLIERS", 0.0, {}, eval_options(Method::interval));
    EXPECT_EQ(widened.relation->size(), 1u);
    const auto strict = cmd_merge(shipped(), "SUPPLIERS", std::nullopt, {{"SNAME", 1.0}}, eval_options(Method::interval));
    EXPECT_EQ(strict.relation->size(), 18u);
    EXPECT_THROW(cmd_merge(shipped(), "SUPPLIERS", std::nullopt, {{"ZIP", 1.0}}, eval_options(std::nullopt)),
                 UnknownAttributeError);
}

TEST(CheckMatrix, ReportsViolation) {
    const auto hair = cmd_check_matrix(std::filesystem::path(FUZZYREL_DATA_DIR) / "hair_shenoi.csv");
    ASSERT_EQ(hair.tables[0].rows.size(), 4u);
    EXPECT_EQ(hair.tables[0].rows[2][1], "no");
    const auto effect = cmd_check_matrix(std::filesystem::path(FUZZYREL_DATA_DIR) / "effect.csv");
    EXPECT_EQ(effect.tables[0].rows[2][1], "yes");
}

TEST(FormatDegree, ThreeDecimals) {
    EXPECT_EQ(format_degree(0.45699), "0.457");
    EXPECT_EQ(format_degree(1.0), "1.000");
    EXPECT_EQ(format_degree(0.0), "0.000");
}
