#ifndef COARSE_PROPERTY_C_HPP
#define COARSE_PROPERTY_C_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse/coarse_structure.hpp"

namespace coarse {

// A list of distinct, nonempty point subsets. Members may overlap as point
// sets; disjointness is always relative to an entourage.
class Family {
public:
    explicit Family(GroundSet ground, std::vector<PointSet> members = {});

    const GroundSet& ground() const noexcept { return ground_; }
    const std::vector<PointSet>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const PointSet& operator[](std::size_t i) const { return members_[i]; }

    bool has_member(const PointSet& u) const;
    PointSet support() const;

    friend bool operator==(const Family&, const Family&) = default;

private:
    GroundSet ground_;
    std::vector<PointSet> members_;
};

// A nondecreasing list E_1 <= E_2 <= ... of relations. Finite inputs stand
// for infinite sequences by repeating the last term: operator[](k) with
// k >= size() returns the last item. Indices are zero-based.
class EntourageSequence {
public:
    EntourageSequence(GroundSet ground, std::vector<Relation> items);

    const GroundSet& ground() const noexcept { return ground_; }
    const std::vector<Relation>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    const Relation& operator[](std::size_t k) const;
    const Relation& last() const { return items_.back(); }

private:
    GroundSet ground_;
    std::vector<Relation> items_;
};

struct PropertyCWitness {
    std::vector<Family> families;
};

struct DisjointnessViolation {
    std::size_t first_member;
    std::size_t second_member;
    PointPair pair;
};

// First (U, V, (a, b)) with U != V, a in U, b in V, (a, b) in e.
std::optional<DisjointnessViolation> find_disjointness_violation(const Family& f, const Relation& e);
bool is_disjoint(const Family& f, const Relation& e);

// First pair of the union of U x U (U in f) that is not in emax.
std::optional<PointPair> find_boundedness_violation(const Family& f, const CoarseStructure& s);
bool is_uniformly_bounded(const Family& f, const CoarseStructure& s);

struct WitnessReport {
    bool covers = true;
    bool disjoint = true;
    bool bounded = true;

    std::optional<Point> uncovered_point;
    // Family index and violation for the first non-disjoint family.
    std::optional<std::size_t> disjointness_family;
    std::optional<DisjointnessViolation> disjointness;
    std::optional<std::size_t> boundedness_family;
    std::optional<PointPair> boundedness_pair;

    bool passed() const noexcept { return covers && disjoint && bounded; }
};

// Family i must be seq[i]-disjoint (extend-by-last), every family uniformly
// bounded in s, and the union of all families must cover the ground set.
// Empty families are vacuously fine.
WitnessReport check_witness(const CoarseStructure& s, const EntourageSequence& seq, const PropertyCWitness& w);

using WitnessProvider = std::function<PropertyCWitness(const CoarseStructure&, const EntourageSequence&)>;

// One family: the classes of emax. Throws std::invalid_argument when some
// sequence item is not an entourage of s.
PropertyCWitness components_witness(const CoarseStructure& s, const EntourageSequence& seq);

struct BruteForceLimits {
    static constexpr std::size_t kMaxPoints = 6;
    static constexpr std::size_t kMaxFamilies = 3;
};

// Exhaustive search over assignments of every point to a (family, member)
// slot with 1..max_n families. Returns the first assignment passing
// check_witness. `seed`, when set, shuffles the point visiting order.
// Throws GuardViolation outside BruteForceLimits.
std::optional<PropertyCWitness> brute_force_witness(const CoarseStructure& s, const EntourageSequence& seq,
                                                    std::size_t max_n,
                                                    std::optional<std::uint64_t> seed = std::nullopt);

WitnessProvider components_provider();
// Throws ProviderError when the search comes back empty.
WitnessProvider brute_force_provider(std::size_t max_n);

}  // namespace coarse

#endif  // COARSE_PROPERTY_C_HPP
