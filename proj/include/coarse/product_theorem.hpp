#ifndef COARSE_PRODUCT_THEOREM_HPP
#define COARSE_PRODUCT_THEOREM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coarse/property_c.hpp"

namespace coarse {

// Anti-diagonal arrangement of the positive integers into columns i >= 1 and
// rows j >= 1: array_index(i, j) = (i+j-2)(i+j-1)/2 + j. Strictly increasing
// along rows (in i) and up columns (in j). Both throw std::invalid_argument
// on nonpositive input.
std::uint64_t array_index(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> array_position(std::uint64_t k);

// Projections of a sequence on X x Y onto each factor. Positions are
// one-based here, matching the array arrangement; terms past the end repeat
// the last one.
class FactorSequences {
public:
    explicit FactorSequences(const EntourageSequence& seq);

    const Relation& left(std::uint64_t position) const;
    const Relation& right(std::uint64_t position) const;
    std::size_t length() const noexcept { return left_.size(); }

private:
    std::vector<Relation> left_;
    std::vector<Relation> right_;
};

FactorSequences factor_sequences(const EntourageSequence& seq);

struct ColumnWitnessRecord {
    std::uint64_t column;
    // K_{i,1}, ..., K_{i,J}; later rows repeat K_{i,J}.
    EntourageSequence column_sequence;
    std::vector<Family> families;

    std::size_t length() const noexcept { return families.size(); }
};

// Runs the provider on column i of the left projections and checks every
// family against its column entry. Throws ProviderError on a bad witness.
ColumnWitnessRecord column_witness(const CoarseStructure& sx, const WitnessProvider& provider_x,
                                   const FactorSequences& factors, std::uint64_t column);

// Replaces term k by the union of terms 0..k.
std::vector<Relation> monotonize(const std::vector<Relation>& terms);

// Everything the construction produced, for inspection.
struct ProductConstruction {
    // Columns 1..stable_column; column c > stable_column reuses the last record.
    std::vector<ColumnWitnessRecord> columns;
    std::uint64_t stable_column;
    // Monotonized L_{i,n_i} for i = 1..stable_column.
    EntourageSequence y_sequence;
    PropertyCWitness y_witness;
    // W_{i,j} keyed by (i, j).
    std::map<std::pair<std::uint64_t, std::uint64_t>, Family> grid;
    PropertyCWitness witness;

    const ColumnWitnessRecord& column(std::uint64_t i) const;
};

// Builds a property-C witness for the product structure from witnesses of
// the factors: W_{i,j} = {U x V : U in U_{i,j}, V in V_i}, placed at
// position array_index(i, j). Positions without a W get an empty family.
// The result is re-checked before returning (std::logic_error on failure).
ProductConstruction build_product_witness(const CoarseStructure& sx, const CoarseStructure& sy,
                                          const EntourageSequence& seq, const WitnessProvider& provider_x,
                                          const WitnessProvider& provider_y);

PropertyCWitness product_witness(const CoarseStructure& sx, const CoarseStructure& sy,
                                 const EntourageSequence& seq, const WitnessProvider& provider_x,
                                 const WitnessProvider& provider_y);

}  // namespace coarse

#endif  // COARSE_PRODUCT_THEOREM_HPP
