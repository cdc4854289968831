#include "coarse/property_c.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

Family::Family(GroundSet ground, std::vector<PointSet> members)
    : ground_(std::move(ground)), members_(std::move(members)) {
    std::set<PointSet> seen;
    for (const auto& u : members_) {
        if (u.empty()) throw std::invalid_argument("family members must be nonempty");
        if (u.points().back() >= ground_.size()) throw std::out_of_range("family member outside ground set");
        if (!seen.insert(u).second) throw std::invalid_argument("family has a duplicate member");
    }
}

bool Family::has_member(const PointSet& u) const {
    return std::find(members_.begin(), members_.end(), u) != members_.end();
}

PointSet Family::support() const {
    PointSet out;
    for (const auto& u : members_) out = out | u;
    return out;
}

EntourageSequence::EntourageSequence(GroundSet ground, std::vector<Relation> items)
    : ground_(std::move(ground)), items_(std::move(items)) {
    if (items_.empty()) throw std::invalid_argument("entourage sequence must be nonempty");
    for (std::size_t k = 0; k < items_.size(); ++k) {
        require_same_ground(ground_, items_[k].ground(), "entourage sequence");
        if (k > 0 && !is_subset(items_[k - 1], items_[k]))
            throw std::invalid_argument("entourage sequence is not nondecreasing at index " + std::to_string(k));
    }
}

const Relation& EntourageSequence::operator[](std::size_t k) const {
    return items_[std::min(k, items_.size() - 1)];
}

std::optional<DisjointnessViolation> find_disjointness_violation(const Family& f, const Relation& e) {
    require_same_ground(f.ground(), e.ground(), "is_disjoint");
    const auto& m = f.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (Point a : m[i]) {
            const PointSet reach = e.row(a);
            if (reach.empty()) continue;
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (i == j) continue;
                const PointSet hit = reach & m[j];
                if (!hit.empty()) return DisjointnessViolation{i, j, {a, *hit.begin()}};
            }
        }
    }
    return std::nullopt;
}

bool is_disjoint(const Family& f, const Relation& e) { return !find_disjointness_violation(f, e); }

std::optional<PointPair> find_boundedness_violation(const Family& f, const CoarseStructure& s) {
    require_same_ground(f.ground(), s.ground(), "is_uniformly_bounded");
    for (const auto& u : f.members())
        for (Point a : u)
            for (Point b : u)
                if (!s.emax().contains(a, b)) return PointPair{a, b};
    return std::nullopt;
}

bool is_uniformly_bounded(const Family& f, const CoarseStructure& s) { return !find_boundedness_violation(f, s); }

WitnessReport check_witness(const CoarseStructure& s, const EntourageSequence& seq, const PropertyCWitness& w) {
    require_same_ground(s.ground(), seq.ground(), "check_witness");
    WitnessReport report;
    std::vector<bool> covered(s.ground().size(), false);
    for (std::size_t i = 0; i < w.families.size(); ++i) {
        const Family& f = w.families[i];
        require_same_ground(s.ground(), f.ground(), "check_witness");
        for (const auto& u : f.members())
            for (Point p : u) covered[p] = true;
        if (report.disjoint) {
            if (auto v = find_disjointness_violation(f, seq[i])) {
                report.disjoint = false;
                report.disjointness_family = i;
                report.disjointness = *v;
            }
        }
        if (report.bounded) {
            if (auto v = find_boundedness_violation(f, s)) {
                report.bounded = false;
                report.boundedness_family = i;
                report.boundedness_pair = *v;
            }
        }
    }
    for (Point p = 0; p < covered.size(); ++p) {
        if (!covered[p]) {
            report.covers = false;
            report.uncovered_point = p;
            break;
        }
    }
    return report;
}

PropertyCWitness components_witness(const CoarseStructure& s, const EntourageSequence& seq) {
    require_same_ground(s.ground(), seq.ground(), "components_witness");
    for (std::size_t k = 0; k < seq.size(); ++k)
        if (!s.contains(seq.items()[k]))
            throw std::invalid_argument("sequence item " + std::to_string(k) + " is not an entourage");
    return PropertyCWitness{{Family(s.ground(), s.classes())}};
}

namespace {

// Depth-first enumeration of point -> (family, member) assignments. Within a
// family, member labels follow restricted growth so each partition of a
// family's points is produced once.
class WitnessSearch {
public:
    WitnessSearch(const CoarseStructure& s, const EntourageSequence& seq, std::size_t families,
                  std::vector<Point> order)
        : s_(s), seq_(seq), families_(families), order_(std::move(order)),
          slot_(order_.size()), members_used_(families, 0) {}

    std::optional<PropertyCWitness> run() {
        if (descend(0)) return build();
        return std::nullopt;
    }

private:
    bool descend(std::size_t depth) {
        if (depth == order_.size()) return check_witness(s_, seq_, build()).passed();
        const Point p = order_[depth];
        for (std::size_t f = 0; f < families_; ++f) {
            const std::size_t used = members_used_[f];
            for (std::size_t m = 0; m <= used; ++m) {
                if (!compatible(depth, p, f, m)) continue;
                slot_[depth] = {f, m};
                if (m == used) ++members_used_[f];
                if (descend(depth + 1)) return true;
                if (m == used) --members_used_[f];
            }
        }
        return false;
    }

    // Prune partial assignments that already violate boundedness or
    // disjointness; both properties are determined pairwise.
    bool compatible(std::size_t depth, Point p, std::size_t f, std::size_t m) const {
        const Relation& e = seq_[f];
        for (std::size_t d = 0; d < depth; ++d) {
            const auto [g, n] = slot_[d];
            if (g != f) continue;
            const Point q = order_[d];
            if (n == m) {
                if (!s_.emax().contains(p, q)) return false;
            } else if (e.contains(p, q) || e.contains(q, p)) {
                return false;
            }
        }
        return true;
    }

    PropertyCWitness build() const {
        std::vector<std::vector<std::vector<Point>>> buckets(families_);
        for (std::size_t d = 0; d < order_.size(); ++d) {
            const auto [f, m] = slot_[d];
            if (buckets[f].size() <= m) buckets[f].resize(m + 1);
            buckets[f][m].push_back(order_[d]);
        }
        PropertyCWitness w;
        for (auto& fam : buckets) {
            std::vector<PointSet> members;
            for (auto& pts : fam)
                if (!pts.empty()) members.emplace_back(std::move(pts));
            std::sort(members.begin(), members.end());
            w.families.emplace_back(s_.ground(), std::move(members));
        }
        return w;
    }

    const CoarseStructure& s_;
    const EntourageSequence& seq_;
    std::size_t families_;
    std::vector<Point> order_;
    std::vector<std::pair<std::size_t, std::size_t>> slot_;
    std::vector<std::size_t> members_used_;
};

}  // namespace

std::optional<PropertyCWitness> brute_force_witness(const CoarseStructure& s, const EntourageSequence& seq,
                                                    std::size_t max_n, std::optional<std::uint64_t> seed) {
    require_same_ground(s.ground(), seq.ground(), "brute_force_witness");
    const std::size_t n = s.ground().size();
    if (n > BruteForceLimits::kMaxPoints)
        throw GuardViolation("brute_force_witness: ground set of size " + std::to_string(n) + " exceeds " +
                             std::to_string(BruteForceLimits::kMaxPoints));
    if (max_n == 0 || max_n > BruteForceLimits::kMaxFamilies)
        throw GuardViolation("brute_force_witness: max_n must be in 1.." +
                             std::to_string(BruteForceLimits::kMaxFamilies));

    std::vector<Point> order(n);
    std::iota(order.begin(), order.end(), Point{0});
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    for (std::size_t families = 1; families <= max_n; ++families) {
        WitnessSearch search(s, seq, families, order);
        if (auto w = search.run()) return w;
    }
    return std::nullopt;
}

WitnessProvider components_provider() { return components_witness; }

WitnessProvider brute_force_provider(std::size_t max_n) {
    return [max_n](const CoarseStructure& s, const EntourageSequence& seq) {
        auto w = brute_force_witness(s, seq, max_n);
        if (!w) throw ProviderError("brute_force_witness found no witness within max_n=" + std::to_string(max_n));
        return *w;
    };
}

}  // namespace coarse
