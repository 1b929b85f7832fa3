#include "fuzzyrel/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fuzzyrel/errors.hpp"

namespace fuzzyrel {

namespace {

constexpr double kMatrixSlack = 1e-12;

void require_length(double length, const char* what) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw DomainError(std::string(what) + " must be a positive finite number");
}

void require_on_line(double v, double length) {
    if (!(v >= 0.0 && v <= length))
        throw DomainError("value " + to_string(Value{v}) + " outside [0, " +
                          to_string(Value{length}) + "]");
}

void require_in_square(Point p, double side) {
    if (!(p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side))
        throw DomainError("point (" + to_string(Value{p.x}) + ", " + to_string(Value{p.y}) +
                          ") outside the square of side " + to_string(Value{side}));
}

std::string label_of(const Value& v) { return to_string(v); }

double number_of(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    throw DomainError("expected a number, got '" + std::get<std::string>(v) + "'");
}

}  // namespace

Degree::Degree(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError("degree " + to_string(Value{value}) + " outside [0,1]");
}

ProximityMatrix::ProximityMatrix(std::vector<std::string> labels,
                                 std::vector<std::vector<double>> rows)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw ValidationError("proximity matrix needs at least one label");
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw ValidationError("duplicate label '" + l + "'");
    if (rows.size() != n) throw ValidationError("proximity matrix is not square");
    entries_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw ValidationError("row '" + labels_[i] + "' has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            const double d = rows[i][j];
            if (!(d >= 0.0 && d <= 1.0))
                throw ValidationError("degree out of [0,1] at (" + labels_[i] + ", " + labels_[j] + ")");
            entries_.push_back(d);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(at(i, i) - 1.0) > kMatrixSlack)
            throw ValidationError("not reflexive: s(" + labels_[i] + ", " + labels_[i] + ") != 1");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(at(i, j) - at(j, i)) > kMatrixSlack)
                throw ValidationError("not symmetric: s(" + labels_[i] + ", " + labels_[j] +
                                      ") != s(" + labels_[j] + ", " + labels_[i] + ")");
    }
}

ProximityMatrix ProximityMatrix::ordinal(std::vector<std::string> labels,
                                         std::vector<std::vector<double>> rows) {
    ProximityMatrix m(std::move(labels), std::move(rows));
    m.ordinal_ = true;
    return m;
}

std::optional<std::size_t> ProximityMatrix::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

double ProximityMatrix::at(const std::string& a, const std::string& b) const {
    const auto i = index_of(a);
    if (!i) throw UnknownValueError("unknown label '" + a + "'");
    const auto j = index_of(b);
    if (!j) throw UnknownValueError("unknown label '" + b + "'");
    return at(*i, *j);
}

ProximitySpec ProximitySpec::matrix(ProximityMatrix m) { return ProximitySpec(ExplicitMatrix{std::move(m)}); }

ProximitySpec ProximitySpec::linear(double length) {
    require_length(length, "linear domain length");
    return ProximitySpec(Linear{length});
}

ProximitySpec ProximitySpec::planar(double side, std::map<std::string, Point> locations) {
    require_length(side, "planar domain side");
    for (const auto& [label, p] : locations) {
        try {
            require_in_square(p, side);
        } catch (const DomainError& e) {
            throw DomainError("location of '" + label + "': " + e.what());
        }
    }
    return ProximitySpec(Planar{side, std::move(locations)});
}

ProximitySpec ProximitySpec::crisp() { return ProximitySpec(CrispIdentity{}); }

bool ProximitySpec::supports_interval() const noexcept {
    if (get_if<Linear>()) return true;
    const auto* m = get_if<ExplicitMatrix>();
    return m && m->matrix.is_ordinal() && m->matrix.size() >= 2;
}

Degree proximity_linear(double a, double b, double length) {
    require_length(length, "L");
    require_on_line(a, length);
    require_on_line(b, length);
    return Degree(std::clamp(1.0 - std::abs(b - a) / length, 0.0, 1.0));
}

Degree proximity_planar(Point p1, Point p2, double side) {
    require_length(side, "L");
    require_in_square(p1, side);
    require_in_square(p2, side);
    const double d = std::hypot(p2.x - p1.x, p2.y - p1.y);
    return Degree(std::clamp(1.0 - d / (std::sqrt(2.0) * side), 0.0, 1.0));
}

ProximityMatrix build_ordinal_matrix(const std::vector<std::string>& labels) {
    const std::size_t n = labels.size();
    if (n < 2) throw DomainError("ordinal domain needs at least two labels");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != n)
        throw DomainError("ordinal labels must be distinct");
    const double length = static_cast<double>(n - 1);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows[i][j] = proximity_linear(static_cast<double>(i), static_cast<double>(j), length).value();
    return ProximityMatrix::ordinal(labels, std::move(rows));
}

PropertyReport relation_properties(const ProximityMatrix& m) {
    PropertyReport report;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) != 1.0) report.reflexive = false;
        for (std::size_t j = 0; j < n; ++j)
            if (m.at(i, j) != m.at(j, i)) report.symmetric = false;
    }
    for (std::size_t x = 0; x < n && report.max_min_transitive; ++x)
        for (std::size_t y = 0; y < n && report.max_min_transitive; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (!meets(m.at(x, z), std::min(m.at(x, y), m.at(y, z)))) {
                    report.max_min_transitive = false;
                    report.first_violation = {m.labels()[x], m.labels()[y], m.labels()[z]};
                    break;
                }
            }
    return report;
}

Degree degree_of(const ProximitySpec& spec, const Value& x, const Value& y) {
    return std::visit(
        [&](const auto& k) -> Degree {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExplicitMatrix>) {
                return Degree(k.matrix.at(label_of(x), label_of(y)));
            } else if constexpr (std::is_same_v<K, Linear>) {
                return proximity_linear(number_of(x), number_of(y), k.length);
            } else if constexpr (std::is_same_v<K, Planar>) {
                return proximity_planar(plane_coordinate(spec, x), plane_coordinate(spec, y), k.side);
            } else {
                return Degree(x == y ? 1.0 : 0.0);
            }
        },
        spec.kind());
}

double line_coordinate(const ProximitySpec& spec, const Value& v) {
    if (const auto* lin = spec.get_if<Linear>()) {
        const double x = number_of(v);
        require_on_line(x, lin->length);
        return x;
    }
    if (const auto* m = spec.get_if<ExplicitMatrix>(); m && m->matrix.is_ordinal()) {
        const auto i = m->matrix.index_of(label_of(v));
        if (!i) throw UnknownValueError("unknown label '" + label_of(v) + "'");
        return static_cast<double>(*i);
    }
    throw DomainError("attribute domain is not linearly ordered");
}

double line_length(const ProximitySpec& spec) {
    if (const auto* lin = spec.get_if<Linear>()) return lin->length;
    if (const auto* m = spec.get_if<ExplicitMatrix>(); m && m->matrix.is_ordinal() && m->matrix.size() >= 2)
        return static_cast<double>(m->matrix.size() - 1);
    throw DomainError("attribute domain is not linearly ordered");
}

Point plane_coordinate(const ProximitySpec& spec, const Value& v) {
    const auto* pl = spec.get_if<Planar>();
    if (!pl) throw DomainError("attribute domain is not planar");
    const auto it = pl->locations.find(label_of(v));
    if (it == pl->locations.end()) throw UnknownValueError("no location for '" + label_of(v) + "'");
    return it->second;
}

void validate_value(const ProximitySpec& spec, const Value& v) {
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExplicitMatrix>) {
                if (!k.matrix.index_of(label_of(v)))
                    throw UnknownValueError("unknown label '" + label_of(v) + "'");
            } else if constexpr (std::is_same_v<K, Linear>) {
                require_on_line(number_of(v), k.length);
            } else if constexpr (std::is_same_v<K, Planar>) {
                plane_coordinate(spec, v);
            }
        },
        spec.kind());
}

}  // namespace fuzzyrel
