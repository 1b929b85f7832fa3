#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "fuzzyrel/value.hpp"

namespace fuzzyrel {

/// Absolute slack applied to every "degree >= level" comparison.
inline constexpr double kDegreeTolerance = 1e-9;

/// A closeness degree in [0,1].
class Degree {
public:
    constexpr Degree() = default;
    explicit Degree(double value);

    constexpr double value() const noexcept { return value_; }
    auto operator<=>(const Degree&) const = default;

private:
    double value_ = 1.0;
};

/// Non-strict threshold test with kDegreeTolerance slack.
inline bool meets(double degree, double level) { return degree + kDegreeTolerance >= level; }
inline bool meets(Degree degree, double level) { return meets(degree.value(), level); }

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Square matrix of degrees over an ordered label list. Construction
/// rejects anything that is not reflexive, symmetric and inside [0,1].
class ProximityMatrix {
public:
    ProximityMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> rows);

    /// Matrix whose labels are a linear order embedded at 0, 1, ..., n-1.
    static ProximityMatrix ordinal(std::vector<std::string> labels,
                                   std::vector<std::vector<double>> rows);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool is_ordinal() const noexcept { return ordinal_; }

    std::optional<std::size_t> index_of(const std::string& label) const;
    double at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    /// Throws UnknownValueError for labels outside the matrix.
    double at(const std::string& a, const std::string& b) const;

    bool operator==(const ProximityMatrix&) const = default;

private:
    std::vector<std::string> labels_;
    std::vector<double> entries_;
    bool ordinal_ = false;
};

struct ExplicitMatrix {
    ProximityMatrix matrix;
    bool operator==(const ExplicitMatrix&) const = default;
};

/// p(a,b) = 1 - |a-b| / length over numbers in [0, length].
struct Linear {
    double length = 1.0;
    bool operator==(const Linear&) const = default;
};

/// Labels placed in the square [0,side]^2; p = 1 - d / (sqrt(2) side).
struct Planar {
    double side = 1.0;
    std::map<std::string, Point> locations;
    bool operator==(const Planar&) const = default;
};

/// 1 for equal values, 0 otherwise.
struct CrispIdentity {
    bool operator==(const CrispIdentity&) const = default;
};

/// How closeness is computed for one attribute domain.
class ProximitySpec {
public:
    using Kind = std::variant<ExplicitMatrix, Linear, Planar, CrispIdentity>;

    ProximitySpec() : kind_(CrispIdentity{}) {}

    static ProximitySpec matrix(ProximityMatrix m);
    static ProximitySpec linear(double length);
    static ProximitySpec planar(double side, std::map<std::string, Point> locations);
    static ProximitySpec crisp();

    const Kind& kind() const noexcept { return kind_; }

    template <typename T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&kind_);
    }

    /// Linear domains and ordinal matrices can be cut into intervals.
    bool supports_interval() const noexcept;
    bool supports_grid() const noexcept { return get_if<Planar>() != nullptr; }

    bool operator==(const ProximitySpec&) const = default;

private:
    explicit ProximitySpec(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

/// Result of checking the three similarity-relation properties.
struct PropertyReport {
    bool reflexive = true;
    bool symmetric = true;
    bool max_min_transitive = true;
    /// (x, y, z) with s(x,z) < min(s(x,y), s(y,z)).
    std::optional<std::tuple<std::string, std::string, std::string>> first_violation;
};

Degree proximity_linear(double a, double b, double length);
Degree proximity_planar(Point p1, Point p2, double side);

/// Embeds label i at i on [0, n-1] and applies the linear formula.
ProximityMatrix build_ordinal_matrix(const std::vector<std::string>& labels);

PropertyReport relation_properties(const ProximityMatrix& m);

/// Uniform degree lookup. Throws UnknownValueError for labels the spec
/// cannot resolve, DomainError for numbers outside [0, L].
Degree degree_of(const ProximitySpec& spec, const Value& x, const Value& y);

/// Position of a value on the line used for interval partitioning.
double line_coordinate(const ProximitySpec& spec, const Value& v);
/// Length L of that line (the Linear length, or n-1 for ordinal matrices).
double line_length(const ProximitySpec& spec);
Point plane_coordinate(const ProximitySpec& spec, const Value& v);

/// Checks that a value belongs to the domain described by spec.
void validate_value(const ProximitySpec& spec, const Value& v);

}  // namespace fuzzyrel
