#include "coarse/ground_set.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

GroundSet::GroundSet(std::size_t size) : size_(size) {
    if (size == 0) throw std::invalid_argument("ground set must have at least one point");
}

GroundSet GroundSet::product(const GroundSet& left, const GroundSet& right) {
    auto factors = std::make_shared<const Factors>(Factors{left, right});
    return GroundSet(left.size() * right.size(), std::move(factors));
}

const GroundSet& GroundSet::left() const {
    if (!factors_) throw std::logic_error("ground set is not a product");
    return factors_->left;
}

const GroundSet& GroundSet::right() const {
    if (!factors_) throw std::logic_error("ground set is not a product");
    return factors_->right;
}

Point GroundSet::pair_index(Point x, Point y) const {
    const auto& l = left();
    const auto& r = right();
    if (x >= l.size() || y >= r.size()) throw std::out_of_range("pair_index: coordinate out of range");
    return x * r.size() + y;
}

std::pair<Point, Point> GroundSet::split(Point p) const {
    const auto& r = right();
    if (p >= size_) throw std::out_of_range("split: point out of range");
    return {p / r.size(), p % r.size()};
}

std::string GroundSet::describe() const {
    if (!factors_) return std::to_string(size_);
    return "(" + factors_->left.describe() + "x" + factors_->right.describe() + ")";
}

bool operator==(const GroundSet& a, const GroundSet& b) {
    if (a.size_ != b.size_ || a.is_product() != b.is_product()) return false;
    if (!a.is_product() || a.factors_ == b.factors_) return true;
    return a.factors_->left == b.factors_->left && a.factors_->right == b.factors_->right;
}

void require_same_ground(const GroundSet& a, const GroundSet& b, const char* context) {
    if (!(a == b)) throw GroundMismatch(std::string(context) + " (" + a.describe() + " vs " + b.describe() + ")");
}

PointSet::PointSet(std::initializer_list<Point> points) : PointSet(std::vector<Point>(points)) {}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

PointSet PointSet::all(const GroundSet& ground) {
    std::vector<Point> pts(ground.size());
    for (Point p = 0; p < ground.size(); ++p) pts[p] = p;
    return PointSet(std::move(pts));
}

bool PointSet::contains(Point p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
}

bool PointSet::is_subset_of(const PointSet& other) const {
    return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

bool PointSet::intersects(const PointSet& other) const {
    auto a = points_.begin();
    auto b = other.points_.begin();
    while (a != points_.end() && b != other.points_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

PointSet operator|(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet(std::move(out));
}

PointSet operator&(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet(std::move(out));
}

PointSet operator-(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet(std::move(out));
}

PointSet product_set(const GroundSet& product, const PointSet& u, const PointSet& v) {
    std::vector<Point> out;
    out.reserve(u.size() * v.size());
    for (Point x : u)
        for (Point y : v) out.push_back(product.pair_index(x, y));
    return PointSet(std::move(out));
}

}  // namespace coarse
