#ifndef COARSE_GROUND_SET_HPP
#define COARSE_GROUND_SET_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

using Point = std::size_t;

// A finite set {0, ..., size-1}. A ground set may remember that it is the
// product of two factors; points of a product are encoded as
// index(x, y) = x * right.size() + y.
class GroundSet {
public:
    explicit GroundSet(std::size_t size);

    static GroundSet product(const GroundSet& left, const GroundSet& right);

    std::size_t size() const noexcept { return size_; }
    bool is_product() const noexcept { return factors_ != nullptr; }

    // Precondition: is_product(). Throws std::logic_error otherwise.
    const GroundSet& left() const;
    const GroundSet& right() const;

    Point pair_index(Point x, Point y) const;
    std::pair<Point, Point> split(Point p) const;

    bool contains(Point p) const noexcept { return p < size_; }

    std::string describe() const;

    friend bool operator==(const GroundSet& a, const GroundSet& b);

private:
    struct Factors;
    GroundSet(std::size_t size, std::shared_ptr<const Factors> factors)
        : size_(size), factors_(std::move(factors)) {}

    std::size_t size_;
    std::shared_ptr<const Factors> factors_;
};

struct GroundSet::Factors {
    GroundSet left;
    GroundSet right;
};

// Throws GroundMismatch with `context` when the two ground sets differ.
void require_same_ground(const GroundSet& a, const GroundSet& b, const char* context);

// Sorted, duplicate-free set of points.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::initializer_list<Point> points);
    explicit PointSet(std::vector<Point> points);

    static PointSet all(const GroundSet& ground);

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    bool contains(Point p) const;
    bool is_subset_of(const PointSet& other) const;
    bool intersects(const PointSet& other) const;

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    friend PointSet operator|(const PointSet& a, const PointSet& b);
    friend PointSet operator&(const PointSet& a, const PointSet& b);
    friend PointSet operator-(const PointSet& a, const PointSet& b);

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet&, const PointSet&) = default;

private:
    std::vector<Point> points_;
};

// {index(x, y) : x in u, y in v} on a product ground set.
PointSet product_set(const GroundSet& product, const PointSet& u, const PointSet& v);

}  // namespace coarse

#endif  // COARSE_GROUND_SET_HPP
