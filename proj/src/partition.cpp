#include "fuzzyrel/partition.hpp"

#include <cmath>
#include <string>

#include "fuzzyrel/errors.hpp"

namespace fuzzyrel {

namespace {

constexpr double kIndexSlack = 1e-9;

/// floor(r), or r itself when r is an integer up to rounding noise.
double robust_floor(double r) {
    const double nearest = std::round(r);
    if (std::abs(r - nearest) <= kIndexSlack * std::max(1.0, std::abs(r))) return nearest;
    return std::floor(r);
}

bool near_integer(double r) {
    return std::abs(r - std::round(r)) <= kIndexSlack * std::max(1.0, std::abs(r));
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError("alpha " + to_string(Value{value}) + " outside [0,1]");
}

bool Grouping::same_class(const Value& a, const Value& b) const {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    return ia != index.end() && ib != index.end() && ia->second == ib->second;
}

Interval Partition1D::interval(std::size_t k) const {
    if (k < 1 || k > cell_count_) throw DomainError("interval index out of range");
    const double lo = static_cast<double>(k - 1) * width_;
    if (k == cell_count_) return {lo, length_, true};
    return {lo, static_cast<double>(k) * width_, false};
}

std::vector<Interval> Partition1D::intervals() const {
    std::vector<Interval> out;
    out.reserve(cell_count_);
    for (std::size_t k = 1; k <= cell_count_; ++k) out.push_back(interval(k));
    return out;
}

Partition1D partition_line(double length, Alpha alpha, PartitionMode mode) {
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("L must be positive");
    Partition1D p;
    p.length_ = length;
    p.alpha_ = alpha;
    p.mode_ = mode;
    const double a = alpha.value();
    if (a >= 1.0) return p;  // singleton partition

    const double ratio = 1.0 / (1.0 - a);
    if (mode == PartitionMode::standard) {
        const double n = robust_floor(ratio);
        p.cell_count_ = static_cast<std::size_t>(near_integer(ratio) ? n : n + 1);
        p.width_ = (1.0 - a) * length;
    } else {
        p.cell_count_ = static_cast<std::size_t>(near_integer(ratio) ? std::round(ratio) : std::ceil(ratio));
        p.width_ = length / static_cast<double>(p.cell_count_);
    }
    return p;
}

std::size_t class_of(double x, const Partition1D& p) {
    if (!(x >= 0.0 && x <= p.length()))
        throw DomainError("value " + to_string(Value{x}) + " outside [0, " + to_string(Value{p.length()}) + "]");
    if (p.singleton()) throw DomainError("singleton partition has no class index");
    const double k = std::floor(x / p.width() + kIndexSlack);
    const auto last = static_cast<double>(p.cell_count() - 1);
    return static_cast<std::size_t>(std::min(k, last)) + 1;
}

Partition2D partition_plane(double side, Alpha alpha) {
    return Partition2D(partition_line(side, alpha, PartitionMode::standard));
}

Cell cell_of(Point pt, const Partition2D& g) {
    const double side = g.side();
    if (!(pt.x >= 0.0 && pt.x <= side && pt.y >= 0.0 && pt.y <= side))
        throw DomainError("point outside the square");
    return {class_of(pt.x, g.axis()), class_of(pt.y, g.axis())};
}

Grouping make_grouping(std::vector<ValueSet> classes) {
    Grouping g;
    g.classes = std::move(classes);
    for (std::size_t i = 0; i < g.classes.size(); ++i)
        for (const auto& v : g.classes[i]) g.index.emplace(v, i);
    return g;
}

namespace {

template <typename Key, typename KeyFn>
Grouping group_by(const ValueSet& values, KeyFn key) {
    std::map<Key, ValueSet> cells;
    for (const auto& v : values) cells[key(v)].insert(v);
    std::vector<ValueSet> classes;
    classes.reserve(cells.size());
    for (auto& [k, members] : cells) classes.push_back(std::move(members));
    return make_grouping(std::move(classes));
}

}  // namespace

Grouping classes_over(const ValueSet& values, const Partition1D& p, const LineResolver& resolve) {
    if (p.singleton()) {
        // Distinct values may still share a coordinate; those stay together.
        return group_by<double>(values, [&](const Value& v) {
            const double x = resolve(v);
            if (!(x >= 0.0 && x <= p.length())) throw DomainError("value outside [0, L]");
            return x;
        });
    }
    return group_by<std::size_t>(values, [&](const Value& v) { return class_of(resolve(v), p); });
}

Grouping classes_over(const ValueSet& values, const Partition2D& g, const PlaneResolver& resolve) {
    if (g.singleton()) {
        return group_by<std::pair<double, double>>(values, [&](const Value& v) {
            const Point pt = resolve(v);
            if (!(pt.x >= 0.0 && pt.x <= g.side() && pt.y >= 0.0 && pt.y <= g.side()))
                throw DomainError("point outside the square");
            return std::pair{pt.x, pt.y};
        });
    }
    return group_by<Cell>(values, [&](const Value& v) { return cell_of(resolve(v), g); });
}

}  // namespace fuzzyrel
