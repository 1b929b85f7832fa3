#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "fuzzyrel/proximity.hpp"
#include "fuzzyrel/value.hpp"

namespace fuzzyrel {

/// A proximity threshold in [0,1].
class Alpha {
public:
    constexpr Alpha() = default;
    explicit Alpha(double value);

    constexpr double value() const noexcept { return value_; }
    auto operator<=>(const Alpha&) const = default;

private:
    double value_ = 1.0;
};

enum class PartitionMode { standard, equalized };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool closed_hi = false;  ///< only the last interval includes its upper end
    bool contains(double x) const { return x >= lo && (closed_hi ? x <= hi : x < hi); }
};

/// Decomposition of [0,L] into cells whose members are pairwise
/// alpha-proximate under the linear formula.
///
/// Standard mode uses width (1-alpha)L and a possibly shorter last cell;
/// equalized mode uses ceil(1/(1-alpha)) cells of equal width. alpha = 1 is
/// the singleton partition: every value is its own class.
class Partition1D {
public:
    double length() const noexcept { return length_; }
    Alpha alpha() const noexcept { return alpha_; }
    PartitionMode mode() const noexcept { return mode_; }
    double width() const noexcept { return width_; }
    std::size_t cell_count() const noexcept { return cell_count_; }
    bool singleton() const noexcept { return cell_count_ == 0; }
    /// 1-based; the last interval is closed at L.
    Interval interval(std::size_t k) const;
    std::vector<Interval> intervals() const;

private:
    friend Partition1D partition_line(double, Alpha, PartitionMode);
    double length_ = 1.0;
    Alpha alpha_;
    PartitionMode mode_ = PartitionMode::standard;
    double width_ = 0.0;
    std::size_t cell_count_ = 0;
};

/// Grid over [0,L]^2: the standard axis partition crossed with itself.
class Partition2D {
public:
    explicit Partition2D(Partition1D axis) : axis_(std::move(axis)) {}
    const Partition1D& axis() const noexcept { return axis_; }
    double side() const noexcept { return axis_.length(); }
    Alpha alpha() const noexcept { return axis_.alpha(); }
    std::size_t cell_count() const noexcept { return axis_.cell_count() * axis_.cell_count(); }
    bool singleton() const noexcept { return axis_.singleton(); }

private:
    Partition1D axis_;
};

using Cell = std::pair<std::size_t, std::size_t>;

/// Values split into disjoint non-empty classes.
struct Grouping {
    std::vector<ValueSet> classes;
    std::map<Value, std::size_t> index;  ///< value -> position in classes

    std::size_t size() const noexcept { return classes.size(); }
    bool same_class(const Value& a, const Value& b) const;
};

Partition1D partition_line(double length, Alpha alpha, PartitionMode mode = PartitionMode::standard);

/// 1-based class index of x. x = L falls in the last interval.
std::size_t class_of(double x, const Partition1D& p);

Partition2D partition_plane(double side, Alpha alpha);

/// 1-based (column, row) cell of a point.
Cell cell_of(Point pt, const Partition2D& g);

using LineResolver = std::function<double(const Value&)>;
using PlaneResolver = std::function<Point(const Value&)>;

/// Groups values by cell. Classes are ordered by cell index; only
/// non-empty cells appear.
Grouping classes_over(const ValueSet& values, const Partition1D& p, const LineResolver& resolve);
Grouping classes_over(const ValueSet& values, const Partition2D& g, const PlaneResolver& resolve);

/// Builds a Grouping from arbitrary class sets.
Grouping make_grouping(std::vector<ValueSet> classes);

}  // namespace fuzzyrel
