#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fuzzyrel/errors.hpp"
#include "fuzzyrel/proximity.hpp"
#include "support/oracles.hpp"
#include "support/example_data.hpp"

using namespace fuzzyrel;
namespace td = fuzzyrel::testdata;

TEST(ProximityLinear, ReflexiveAndEndpoints) {
    EXPECT_DOUBLE_EQ(proximity_linear(37.5, 37.5, 100).value(), 1.0);
    EXPECT_DOUBLE_EQ(proximity_linear(0, 100, 100).value(), 0.0);
    EXPECT_NEAR(proximity_linear(20, 30, 100).value(), 0.9, 1e-12);
    EXPECT_DOUBLE_EQ(proximity_linear(30, 20, 100).value(), proximity_linear(20, 30, 100).value());
}

TEST(ProximityLinear, RejectsOutOfRange) {
    EXPECT_THROW(proximity_linear(-1, 3, 10), DomainError);
    EXPECT_THROW(proximity_linear(1, 11, 10), DomainError);
    EXPECT_THROW(proximity_linear(0, 0, 0), DomainError);
    EXPECT_THROW(proximity_linear(0, 0, -2), DomainError);
}

TEST(ProximityPlanar, CornersAndPrintedValue) {
    EXPECT_DOUBLE_EQ(proximity_planar({3, 4}, {3, 4}, 10).value(), 1.0);
    EXPECT_NEAR(proximity_planar({0, 0}, {7, 7}, 7).value(), 0.0, 1e-12);
    // Peterborough vs Solihull on the 2x2 map.
    EXPECT_NEAR(proximity_planar({1.7492, 1.5739}, {0.2218, 1.4128}, 2).value(), 0.457, 0.001);
    EXPECT_THROW(proximity_planar({0, 0}, {2.5, 1}, 2), DomainError);
}

TEST(ProximityInvariants, ThresholdRestatements) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 2000; ++i) {
        const double L = 1 + 99 * u(rng);
        const double a = L * u(rng), b = L * u(rng), alpha = u(rng);
        const double d = proximity_linear(a, b, L).value();
        // Skip knife-edge cases where rounding decides the comparison.
        if (std::abs(std::abs(a - b) - (1 - alpha) * L) < 1e-9 * L) continue;
        EXPECT_EQ(d >= alpha, std::abs(a - b) <= (1 - alpha) * L);

        const Point p{L * u(rng), L * u(rng)}, q{L * u(rng), L * u(rng)};
        const double dist = std::hypot(p.x - q.x, p.y - q.y);
        if (std::abs(dist - (1 - alpha) * std::sqrt(2.0) * L) < 1e-9 * L) continue;
        EXPECT_EQ(proximity_planar(p, q, L).value() >= alpha, dist <= (1 - alpha) * std::sqrt(2.0) * L);
    }
}

TEST(OrdinalMatrix, BuildTable) {
    const auto m = build_ordinal_matrix(td::kBuildOrder);
    EXPECT_TRUE(m.is_ordinal());
    EXPECT_DOUBLE_EQ(m.at("Very large", "Large"), 0.75);
    EXPECT_DOUBLE_EQ(m.at("Very large", "Average"), 0.5);
    EXPECT_DOUBLE_EQ(m.at("Very large", "Small"), 0.25);
    EXPECT_DOUBLE_EQ(m.at("Very large", "Very small"), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_DOUBLE_EQ(m.at(i, i), 1.0);
}

TEST(OrdinalMatrix, HairTableWithinRounding) {
    const auto m = build_ordinal_matrix(td::kHairOrder);
    EXPECT_NEAR(m.at("Black", "Dark brown"), 0.83, 0.01);
    EXPECT_NEAR(m.at("Black", "Blond"), 0.16, 0.01);
    EXPECT_DOUBLE_EQ(m.at("Black", "Bleached"), 0.0);
    const auto report = relation_properties(m);
    EXPECT_TRUE(report.reflexive);
    EXPECT_TRUE(report.symmetric);
}

TEST(OrdinalMatrix, Rejections) {
    EXPECT_THROW(build_ordinal_matrix({"only"}), DomainError);
    EXPECT_THROW(build_ordinal_matrix({"a", "b", "a"}), DomainError);
}

TEST(MatrixConstruction, RejectsBrokenInput) {
    EXPECT_THROW(ProximityMatrix({"a", "b"}, {{1, 0.5}, {0.4, 1}}), ValidationError);
    EXPECT_THROW(ProximityMatrix({"a", "b"}, {{0.9, 0.5}, {0.5, 1}}), ValidationError);
    EXPECT_THROW(ProximityMatrix({"a", "b"}, {{1, 1.5}, {1.5, 1}}), ValidationError);
    EXPECT_THROW(ProximityMatrix({"a", "b"}, {{1, 0.5}}), ValidationError);
    EXPECT_THROW(ProximityMatrix({"a", "a"}, {{1, 0.5}, {0.5, 1}}), ValidationError);
}

TEST(RelationProperties, IdentityIsSimilarity) {
    const ProximityMatrix id({"x", "y", "z"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto r = relation_properties(id);
    EXPECT_TRUE(r.reflexive && r.symmetric && r.max_min_transitive);
    EXPECT_FALSE(r.first_violation);
}

TEST(RelationProperties, EffectTableAgreesWithCompositionOracle) {
    const auto m = td::effect_matrix();
    oracle::Matrix raw(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) raw[i][j] = m.at(i, j);
    ASSERT_TRUE(oracle::max_min_transitive_by_composition(raw));
    EXPECT_TRUE(relation_properties(m).max_min_transitive);
}

TEST(RelationProperties, HairTableIsOnlyProximity) {
    const auto r = relation_properties(td::hair_matrix());
    EXPECT_TRUE(r.reflexive);
    EXPECT_TRUE(r.symmetric);
    ASSERT_FALSE(r.max_min_transitive);
    ASSERT_TRUE(r.first_violation);
    const auto& [x, y, z] = *r.first_violation;
    const auto m = td::hair_matrix();
    EXPECT_LT(m.at(x, z), std::min(m.at(x, y), m.at(y, z)));
    // The classic witness.
    EXPECT_LT(m.at("Black", "Auburn"), std::min(m.at("Black", "Dark brown"), m.at("Dark brown", "Auburn")));
}

TEST(RelationProperties, RandomMatricesMatchCompositionOracle) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 6;
        auto raw = oracle::random_proximity(rng, n);
        if (trial % 2) raw = oracle::max_min_closure(raw);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
        const ProximityMatrix m(labels, raw);
        EXPECT_EQ(relation_properties(m).max_min_transitive, oracle::max_min_transitive_by_composition(raw));
    }
}

TEST(DegreeOf, DispatchesOverKinds) {
    const auto crisp = ProximitySpec::crisp();
    EXPECT_DOUBLE_EQ(degree_of(crisp, std::string("Expert"), std::string("Expert")).value(), 1.0);
    EXPECT_DOUBLE_EQ(degree_of(crisp, std::string("Expert"), std::string("Resident")).value(), 0.0);

    const auto effect = ProximitySpec::matrix(td::effect_matrix());
    EXPECT_DOUBLE_EQ(degree_of(effect, std::string("Severe"), std::string("Major")).value(), 0.80);
    EXPECT_THROW(degree_of(effect, std::string("Severe"), std::string("Awful")), UnknownValueError);

    const auto lin = ProximitySpec::linear(100);
    EXPECT_NEAR(degree_of(lin, 20.0, 30.0).value(), 0.9, 1e-12);
    EXPECT_THROW(degree_of(lin, 20.0, 130.0), DomainError);

    const auto planar = ProximitySpec::planar(2, td::gb_locations());
    EXPECT_NEAR(degree_of(planar, std::string("Peterborough"), std::string("Solihull")).value(), 0.457, 0.001);
    EXPECT_THROW(degree_of(planar, std::string("Paris"), std::string("Solihull")), UnknownValueError);
}

TEST(DegreeOf, SymmetricAndReflexiveEverywhere) {
    const std::vector<ProximitySpec> specs{ProximitySpec::matrix(td::hair_matrix()),
                                           ProximitySpec::matrix(build_ordinal_matrix(td::kHairOrder)),
                                           ProximitySpec::planar(100, td::fantasy_cities())};
    for (const auto& spec : specs) {
        std::vector<Value> domain;
        if (const auto* m = spec.get_if<ExplicitMatrix>())
            for (const auto& l : m->matrix.labels()) domain.emplace_back(l);
        if (const auto* p = spec.get_if<Planar>())
            for (const auto& [l, pt] : p->locations) domain.emplace_back(l);
        for (const auto& x : domain) {
            EXPECT_DOUBLE_EQ(degree_of(spec, x, x).value(), 1.0);
            for (const auto& y : domain) EXPECT_DOUBLE_EQ(degree_of(spec, x, y).value(), degree_of(spec, y, x).value());
        }
    }
}

TEST(ProximitySpecConstruction, ValidatesLengthsAndLocations) {
    EXPECT_THROW(ProximitySpec::linear(0), DomainError);
    EXPECT_THROW(ProximitySpec::planar(-1, {}), DomainError);
    EXPECT_THROW(ProximitySpec::planar(10, {{"out", {11, 2}}}), DomainError);
    EXPECT_THROW(Degree(1.2), DomainError);
    EXPECT_THROW(Degree(-0.1), DomainError);
}
