#ifndef COARSE_COARSE_STRUCTURE_HPP
#define COARSE_COARSE_STRUCTURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "coarse/relation.hpp"

namespace coarse {

// Compare only against other Rationals: with Boost 1.74 under C++20 a mixed
// rational/int comparison recurses forever.
using Rational = boost::rational<std::int64_t>;

// Parses "p/q" or "p"; throws std::invalid_argument on malformed text or q == 0.
Rational parse_rational(const std::string& text);
// Always "p/q" in lowest terms with q > 0.
std::string format_rational(const Rational& r);

// A finitely generated coarse structure on a finite ground set.
//
// On a finite set the closure of the generators under the coarse axioms has
// a largest element, the maximal entourage, and it is an equivalence
// relation. The structure is therefore stored as that relation alone:
// E is an entourage iff E is contained in emax().
class CoarseStructure {
public:
    CoarseStructure(GroundSet ground, std::vector<Relation> generators);

    const GroundSet& ground() const noexcept { return emax_.ground(); }
    const std::vector<Relation>& generators() const noexcept { return generators_; }
    const Relation& emax() const noexcept { return emax_; }
    const std::vector<PointSet>& classes() const noexcept { return classes_; }

    bool contains(const Relation& e) const;

private:
    std::vector<Relation> generators_;
    Relation emax_;
    std::vector<PointSet> classes_;
};

CoarseStructure generate(const GroundSet& ground, std::vector<Relation> generators);

// Entourages are the E with p1(E) and p2(E) entourages of the factors.
CoarseStructure product_structure(const CoarseStructure& s1, const CoarseStructure& s2);

// Symmetric matrix of nonnegative rationals with zero diagonal satisfying the
// triangle inequality. All three are checked on construction.
class FiniteMetric {
public:
    FiniteMetric(GroundSet ground, std::vector<Rational> row_major);

    const GroundSet& ground() const noexcept { return ground_; }
    const Rational& operator()(Point a, Point b) const { return dist_[a * ground_.size() + b]; }
    Rational diameter() const;
    // Sorted distinct distance values, including 0.
    std::vector<Rational> distances() const;

private:
    GroundSet ground_;
    std::vector<Rational> dist_;
};

// {(a, b) : d(a, b) <= r}. Throws std::invalid_argument for r < 0.
Relation metric_entourage(const FiniteMetric& m, const Rational& r);

// Structure generated by the metric entourages at the given scales.
CoarseStructure metric_structure(const FiniteMetric& m, const std::vector<Rational>& scales);

// d((x1,y1),(x2,y2)) = max(d1(x1,x2), d2(y1,y2)) on the product ground set.
FiniteMetric max_metric_product(const FiniteMetric& m1, const FiniteMetric& m2);

}  // namespace coarse

#endif  // COARSE_COARSE_STRUCTURE_HPP
