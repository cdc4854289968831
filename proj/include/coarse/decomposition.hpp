#ifndef COARSE_DECOMPOSITION_HPP
#define COARSE_DECOMPOSITION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse/property_c.hpp"

namespace coarse {

// Y = Y^1 u ... u Y^n where each Y^i is an E-disjoint union of the members
// listed in parts[i].
struct Decomposition {
    PointSet target;
    std::vector<std::vector<PointSet>> parts;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct DecompositionReport {
    bool part_count_ok = true;
    bool union_ok = true;
    bool disjoint_ok = true;
    bool members_ok = true;

    std::string detail;

    bool passed() const noexcept { return part_count_ok && union_ok && disjoint_ok && members_ok; }
};

// Checks that d decomposes y with at most n parts, members pairwise
// e-disjoint within each part, every member drawn from `over`.
DecompositionReport check_decomposition(const PointSet& y, const Relation& e, std::size_t n,
                                        const Decomposition& d, const Family& over);

struct DecompositionGuard {
    std::size_t max_candidates = 12;
    std::size_t max_parts = 3;
};

// Exact search: members of `over` contained in y are each left out or placed
// in one of n parts. Throws GuardViolation when the candidate count or n is
// over the guard.
std::optional<Decomposition> find_decomposition(const PointSet& y, const Relation& e, std::size_t n,
                                                const Family& over, DecompositionGuard guard = {});

// levels[0] = {X}; each member of levels[i] decomposes over levels[i + 1]
// via decompositions[i][member index]; the last level is uniformly bounded.
struct SfcdcCertificate {
    std::vector<Family> levels;
    std::vector<std::vector<Decomposition>> decompositions;
};

struct HierarchyReport {
    bool root_ok = true;
    bool shape_ok = true;
    bool decompositions_ok = true;
    bool bounded_ok = true;

    std::optional<std::size_t> level;
    std::optional<std::size_t> member;
    std::optional<DecompositionReport> decomposition;
    std::optional<PointPair> boundedness_pair;
    std::string detail;

    bool passed() const noexcept { return root_ok && shape_ok && decompositions_ok && bounded_ok; }
};

// Level i decompositions are checked against l_seq[i] (zero-based,
// extend-by-last) with n = 2 over level i + 1.
HierarchyReport check_sfcdc_certificate(const CoarseStructure& s, const EntourageSequence& l_seq,
                                        const SfcdcCertificate& c);

// Levels with (K_i, n_i)-decompositions, as supplied by a countable
// asymptotic dimension provider.
struct CadData {
    std::vector<Family> levels;
    std::vector<std::vector<Decomposition>> decompositions;
};

struct CadProvider {
    // n_1, n_2, ...; the last value repeats.
    std::vector<std::size_t> dims;
    std::function<CadData(const CoarseStructure&, const EntourageSequence&)> build;

    std::size_t dim(std::size_t level) const;
};

HierarchyReport check_cad_data(const CoarseStructure& s, const EntourageSequence& k_seq,
                               const std::vector<std::size_t>& dims, const CadData& data);

// Assigns each point to the lowest-index member containing it. Throws
// std::invalid_argument when a family does not cover the ground set.
std::vector<Family> refine_to_partition(const std::vector<Family>& families);

// Top-down refinement of a checked hierarchy into partitions: each member P
// of a refined level is split along the decomposition of the member it came
// from, each point going to the first (part, member) containing it. The
// pieces form the next refined level. Decompositions stay valid because
// pieces are subsets of the original members.
CadData refine_hierarchy(const CadData& data);

struct SfcdcConversion {
    // K_j = L at position n_1 + ... + n_j.
    EntourageSequence k_sequence;
    CadData provided;
    CadData refined;
    // certificate.levels[level_offsets[j]] == refined.levels[j].
    std::vector<std::size_t> level_offsets;
    SfcdcCertificate certificate;
};

// Converts countable-asymptotic-dimension data into an sFCDC certificate.
// Each n-part decomposition becomes n binary levels: step t peels the
// pieces of part t off the remainder. Throws ProviderError when the
// provider's data fails its check, std::logic_error if the output does not
// check.
SfcdcConversion convert_cad_to_sfcdc(const CoarseStructure& s, const EntourageSequence& l_seq,
                                     const CadProvider& provider);
SfcdcCertificate cad_to_sfcdc(const CoarseStructure& s, const EntourageSequence& l_seq, const CadProvider& provider);

// Randomized provider: for `depth` levels each member is cut into up to
// three random chunks which are coloured with n_i colours (merging chunks
// that cannot be coloured), then a final level splits along emax classes.
// With `overlap`, some levels also carry an unused union of two chunks, so
// levels need not be partitions.
CadProvider chunking_cad_provider(std::vector<std::size_t> dims, std::size_t depth, std::uint64_t seed,
                                  bool overlap = true);

}  // namespace coarse

#endif  // COARSE_DECOMPOSITION_HPP
