#ifndef COARSE_RELATION_HPP
#define COARSE_RELATION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "coarse/ground_set.hpp"

namespace coarse {

using PointPair = std::pair<Point, Point>;

// A binary relation R subset of X x X, stored as a dense bit matrix with one
// row of 64-bit words per point. Equality is structural.
class Relation {
public:
    explicit Relation(GroundSet ground);

    static Relation empty(const GroundSet& ground) { return Relation(ground); }
    static Relation diagonal(const GroundSet& ground);
    static Relation full(const GroundSet& ground);
    // Throws std::out_of_range if a pair leaves ground x ground.
    static Relation from_pairs(const GroundSet& ground, std::span<const PointPair> pairs);
    static Relation from_pairs(const GroundSet& ground, std::initializer_list<PointPair> pairs);
    static Relation from_predicate(const GroundSet& ground, const std::function<bool(Point, Point)>& pred);

    const GroundSet& ground() const noexcept { return ground_; }
    std::size_t points() const noexcept { return ground_.size(); }

    bool contains(Point a, Point b) const;
    void insert(Point a, Point b);

    // Number of pairs.
    std::size_t count() const;
    bool is_empty() const;
    // Pairs in lexicographic order.
    std::vector<PointPair> pairs() const;
    // {b : (a, b) in R}
    PointSet row(Point a) const;

    bool is_reflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;

    friend bool operator==(const Relation& a, const Relation& b);

    // Raw row access for the set algebra.
    std::size_t words_per_row() const noexcept { return words_; }
    std::span<const std::uint64_t> row_words(Point a) const {
        return {bits_.data() + a * words_, words_};
    }

private:
    std::span<std::uint64_t> mutable_row(Point a) { return {bits_.data() + a * words_, words_}; }

    friend Relation compose(const Relation&, const Relation&);
    friend Relation unite(const Relation&, const Relation&);
    friend Relation intersect(const Relation&, const Relation&);
    friend void add_square(Relation&, const PointSet&);

    GroundSet ground_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// {(a, c) : exists b, (a, b) in r and (b, c) in s}
Relation compose(const Relation& r, const Relation& s);
Relation inverse(const Relation& r);
Relation unite(const Relation& r, const Relation& s);
Relation intersect(const Relation& r, const Relation& s);
bool is_subset(const Relation& r, const Relation& s);

// Smallest equivalence relation containing r. Computed by iterating
// R <- R u R.R from diag u r u r^-1 until it stops changing.
Relation equivalence_closure(const Relation& r);

// Classes of an equivalence relation, ordered by smallest element.
// Precondition: r is an equivalence relation (std::invalid_argument otherwise).
std::vector<PointSet> equivalence_classes(const Relation& r);

// {((x1,y1),(x2,y2)) : (x1,x2) in k, (y1,y2) in l} on the product ground set.
Relation product_relation(const Relation& k, const Relation& l);

enum class Axis { Left = 1, Right = 2 };

// Image of e under p x p where p is the projection onto `axis`.
// Throws std::invalid_argument when e is not on a product ground set.
Relation project(const Relation& e, Axis axis);

// U x U, optionally accumulated into an existing relation.
Relation square(const GroundSet& ground, const PointSet& u);
void add_square(Relation& into, const PointSet& u);

}  // namespace coarse

#endif  // COARSE_RELATION_HPP
