#include "coarse/coarse_structure.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw std::invalid_argument("malformed rational \"" + whole + "\"");
    return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text, text));
    const std::string_view view(text);
    const auto num = parse_int(view.substr(0, slash), text);
    const auto den = parse_int(view.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in rational \"" + text + "\"");
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

CoarseStructure::CoarseStructure(GroundSet ground, std::vector<Relation> generators)
    : generators_(std::move(generators)), emax_(ground) {
    Relation acc = Relation::diagonal(ground);
    for (const auto& g : generators_) {
        require_same_ground(ground, g.ground(), "generate");
        acc = unite(acc, g);
    }
    emax_ = equivalence_closure(acc);
    classes_ = equivalence_classes(emax_);
}

bool CoarseStructure::contains(const Relation& e) const {
    require_same_ground(ground(), e.ground(), "contains");
    return is_subset(e, emax_);
}

CoarseStructure generate(const GroundSet& ground, std::vector<Relation> generators) {
    return CoarseStructure(ground, std::move(generators));
}

CoarseStructure product_structure(const CoarseStructure& s1, const CoarseStructure& s2) {
    Relation box = product_relation(s1.emax(), s2.emax());
    GroundSet ground = box.ground();
    std::vector<Relation> gens;
    gens.push_back(std::move(box));
    return CoarseStructure(std::move(ground), std::move(gens));
}

FiniteMetric::FiniteMetric(GroundSet ground, std::vector<Rational> row_major)
    : ground_(std::move(ground)), dist_(std::move(row_major)) {
    const std::size_t n = ground_.size();
    if (dist_.size() != n * n)
        throw std::invalid_argument("metric: expected " + std::to_string(n * n) + " entries, got " +
                                    std::to_string(dist_.size()));
    auto at = [&](Point a, Point b) -> const Rational& { return dist_[a * n + b]; };
    auto where = [](Point a, Point b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
    for (Point a = 0; a < n; ++a) {
        if (at(a, a) != Rational(0)) throw std::invalid_argument("metric: nonzero diagonal at " + where(a, a));
        for (Point b = 0; b < n; ++b) {
            if (at(a, b) < Rational(0)) throw std::invalid_argument("metric: negative distance at " + where(a, b));
            if (at(a, b) != at(b, a)) throw std::invalid_argument("metric: asymmetric at " + where(a, b));
        }
    }
    for (Point a = 0; a < n; ++a)
        for (Point b = 0; b < n; ++b)
            for (Point c = 0; c < n; ++c)
                if (at(a, c) > at(a, b) + at(b, c))
                    throw std::invalid_argument("metric: triangle inequality fails for " + where(a, c) +
                                                " via " + std::to_string(b));
}

Rational FiniteMetric::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

std::vector<Rational> FiniteMetric::distances() const {
    std::vector<Rational> out = dist_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Relation metric_entourage(const FiniteMetric& m, const Rational& r) {
    if (r < Rational(0)) throw std::invalid_argument("metric_entourage: negative radius " + format_rational(r));
    return Relation::from_predicate(m.ground(), [&](Point a, Point b) { return m(a, b) <= r; });
}

CoarseStructure metric_structure(const FiniteMetric& m, const std::vector<Rational>& scales) {
    std::vector<Relation> gens;
    gens.reserve(scales.size());
    for (const auto& r : scales) gens.push_back(metric_entourage(m, r));
    return CoarseStructure(m.ground(), std::move(gens));
}

FiniteMetric max_metric_product(const FiniteMetric& m1, const FiniteMetric& m2) {
    const GroundSet product = GroundSet::product(m1.ground(), m2.ground());
    const std::size_t n = product.size();
    std::vector<Rational> dist(n * n);
    for (Point a = 0; a < n; ++a) {
        const auto [x1, y1] = product.split(a);
        for (Point b = 0; b < n; ++b) {
            const auto [x2, y2] = product.split(b);
            dist[a * n + b] = std::max(m1(x1, x2), m2(y1, y2));
        }
    }
    return FiniteMetric(product, std::move(dist));
}

}  // namespace coarse
