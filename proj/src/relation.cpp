#include "coarse/relation.hpp"

#include <bit>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_of(Point b) { return b / kWordBits; }
std::uint64_t bit_of(Point b) { return std::uint64_t{1} << (b % kWordBits); }

template <typename F>
void for_each_bit(std::span<const std::uint64_t> row, F&& f) {
    for (std::size_t w = 0; w < row.size(); ++w) {
        std::uint64_t word = row[w];
        while (word != 0) {
            const int bit = std::countr_zero(word);
            f(w * kWordBits + static_cast<std::size_t>(bit));
            word &= word - 1;
        }
    }
}

}  // namespace

Relation::Relation(GroundSet ground)
    : ground_(std::move(ground)),
      words_((ground_.size() + kWordBits - 1) / kWordBits),
      bits_(ground_.size() * words_, 0) {}

Relation Relation::diagonal(const GroundSet& ground) {
    Relation r(ground);
    for (Point a = 0; a < ground.size(); ++a) r.insert(a, a);
    return r;
}

Relation Relation::full(const GroundSet& ground) {
    Relation r(ground);
    for (Point a = 0; a < ground.size(); ++a)
        for (Point b = 0; b < ground.size(); ++b) r.insert(a, b);
    return r;
}

Relation Relation::from_pairs(const GroundSet& ground, std::span<const PointPair> pairs) {
    Relation r(ground);
    for (const auto& [a, b] : pairs) {
        if (a >= ground.size() || b >= ground.size())
            throw std::out_of_range("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") outside ground set of size " + std::to_string(ground.size()));
        r.insert(a, b);
    }
    return r;
}

Relation Relation::from_pairs(const GroundSet& ground, std::initializer_list<PointPair> pairs) {
    return from_pairs(ground, std::span<const PointPair>(pairs.begin(), pairs.size()));
}

Relation Relation::from_predicate(const GroundSet& ground, const std::function<bool(Point, Point)>& pred) {
    Relation r(ground);
    for (Point a = 0; a < ground.size(); ++a)
        for (Point b = 0; b < ground.size(); ++b)
            if (pred(a, b)) r.insert(a, b);
    return r;
}

bool Relation::contains(Point a, Point b) const {
    if (a >= points() || b >= points()) return false;
    return (bits_[a * words_ + word_of(b)] & bit_of(b)) != 0;
}

void Relation::insert(Point a, Point b) {
    if (a >= points() || b >= points()) throw std::out_of_range("Relation::insert: point out of range");
    bits_[a * words_ + word_of(b)] |= bit_of(b);
}

std::size_t Relation::count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool Relation::is_empty() const {
    for (auto w : bits_)
        if (w != 0) return false;
    return true;
}

std::vector<PointPair> Relation::pairs() const {
    std::vector<PointPair> out;
    for (Point a = 0; a < points(); ++a)
        for_each_bit(row_words(a), [&](Point b) { out.emplace_back(a, b); });
    return out;
}

PointSet Relation::row(Point a) const {
    std::vector<Point> out;
    for_each_bit(row_words(a), [&](Point b) { out.push_back(b); });
    return PointSet(std::move(out));
}

bool Relation::is_reflexive() const {
    for (Point a = 0; a < points(); ++a)
        if (!contains(a, a)) return false;
    return true;
}

bool Relation::is_symmetric() const {
    for (Point a = 0; a < points(); ++a) {
        bool ok = true;
        for_each_bit(row_words(a), [&](Point b) { ok = ok && contains(b, a); });
        if (!ok) return false;
    }
    return true;
}

bool Relation::is_transitive() const { return is_subset(compose(*this, *this), *this); }

bool operator==(const Relation& a, const Relation& b) {
    return a.ground_ == b.ground_ && a.bits_ == b.bits_;
}

Relation compose(const Relation& r, const Relation& s) {
    require_same_ground(r.ground(), s.ground(), "compose");
    Relation out(r.ground());
    for (Point a = 0; a < r.points(); ++a) {
        auto dst = out.mutable_row(a);
        for_each_bit(r.row_words(a), [&](Point b) {
            auto src = s.row_words(b);
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
        });
    }
    return out;
}

Relation inverse(const Relation& r) {
    Relation out(r.ground());
    for (Point a = 0; a < r.points(); ++a)
        for_each_bit(r.row_words(a), [&](Point b) { out.insert(b, a); });
    return out;
}

Relation unite(const Relation& r, const Relation& s) {
    require_same_ground(r.ground(), s.ground(), "union");
    Relation out = r;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= s.bits_[i];
    return out;
}

Relation intersect(const Relation& r, const Relation& s) {
    require_same_ground(r.ground(), s.ground(), "intersect");
    Relation out = r;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= s.bits_[i];
    return out;
}

bool is_subset(const Relation& r, const Relation& s) {
    require_same_ground(r.ground(), s.ground(), "is_subset");
    for (Point a = 0; a < r.points(); ++a) {
        auto x = r.row_words(a);
        auto y = s.row_words(a);
        for (std::size_t w = 0; w < x.size(); ++w)
            if ((x[w] & ~y[w]) != 0) return false;
    }
    return true;
}

Relation equivalence_closure(const Relation& r) {
    Relation current = unite(unite(r, inverse(r)), Relation::diagonal(r.ground()));
    // Symmetric and reflexive already; squaring until stable adds transitivity.
    for (;;) {
        Relation next = unite(current, compose(current, current));
        if (next == current) return current;
        current = std::move(next);
    }
}

std::vector<PointSet> equivalence_classes(const Relation& r) {
    if (!r.is_reflexive() || !r.is_symmetric() || !r.is_transitive())
        throw std::invalid_argument("equivalence_classes: relation is not an equivalence relation");
    std::vector<PointSet> classes;
    std::vector<bool> seen(r.points(), false);
    for (Point a = 0; a < r.points(); ++a) {
        if (seen[a]) continue;
        PointSet cls = r.row(a);
        for (Point b : cls) seen[b] = true;
        classes.push_back(std::move(cls));
    }
    return classes;
}

Relation product_relation(const Relation& k, const Relation& l) {
    const GroundSet product = GroundSet::product(k.ground(), l.ground());
    Relation out(product);
    const auto k_pairs = k.pairs();
    const auto l_pairs = l.pairs();
    for (const auto& [x1, x2] : k_pairs)
        for (const auto& [y1, y2] : l_pairs) out.insert(product.pair_index(x1, y1), product.pair_index(x2, y2));
    return out;
}

Relation project(const Relation& e, Axis axis) {
    const GroundSet& g = e.ground();
    if (!g.is_product()) throw std::invalid_argument("project: relation is not on a product ground set");
    const GroundSet& target = axis == Axis::Left ? g.left() : g.right();
    Relation out(target);
    for (Point a = 0; a < g.size(); ++a) {
        const auto pa = g.split(a);
        const Point ta = axis == Axis::Left ? pa.first : pa.second;
        for_each_bit(e.row_words(a), [&](Point b) {
            const auto pb = g.split(b);
            out.insert(ta, axis == Axis::Left ? pb.first : pb.second);
        });
    }
    return out;
}

Relation square(const GroundSet& ground, const PointSet& u) {
    Relation out(ground);
    add_square(out, u);
    return out;
}

void add_square(Relation& into, const PointSet& u) {
    if (u.empty()) return;
    if (u.points().back() >= into.points()) throw std::out_of_range("square: point outside ground set");
    std::vector<std::uint64_t> mask(into.words_per_row(), 0);
    for (Point b : u) mask[word_of(b)] |= bit_of(b);
    for (Point a : u) {
        auto row = into.mutable_row(a);
        for (std::size_t w = 0; w < row.size(); ++w) row[w] |= mask[w];
    }
}

}  // namespace coarse
