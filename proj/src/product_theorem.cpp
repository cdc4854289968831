#include "coarse/product_theorem.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

std::uint64_t array_index(std::uint64_t i, std::uint64_t j) {
    if (i == 0 || j == 0) throw std::invalid_argument("array_index: indices start at 1");
    const std::uint64_t d = i + j - 1;
    return (d - 1) * d / 2 + j;
}

std::pair<std::uint64_t, std::uint64_t> array_position(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("array_position: positions start at 1");
    std::uint64_t d = 1;
    while (d * (d + 1) / 2 < k) ++d;
    const std::uint64_t j = k - (d - 1) * d / 2;
    return {d + 1 - j, j};
}

FactorSequences::FactorSequences(const EntourageSequence& seq) {
    if (!seq.ground().is_product())
        throw std::invalid_argument("factor_sequences: sequence is not on a product ground set");
    for (const auto& e : seq.items()) {
        left_.push_back(project(e, Axis::Left));
        right_.push_back(project(e, Axis::Right));
    }
}

const Relation& FactorSequences::left(std::uint64_t position) const {
    if (position == 0) throw std::invalid_argument("FactorSequences: positions start at 1");
    return left_[std::min<std::uint64_t>(position, left_.size()) - 1];
}

const Relation& FactorSequences::right(std::uint64_t position) const {
    if (position == 0) throw std::invalid_argument("FactorSequences: positions start at 1");
    return right_[std::min<std::uint64_t>(position, right_.size()) - 1];
}

FactorSequences factor_sequences(const EntourageSequence& seq) { return FactorSequences(seq); }

namespace {

// Smallest column whose first entry already sits at or past the last
// explicit position; from there on every column is the constant tail.
std::uint64_t stable_column_for(std::size_t length) {
    std::uint64_t i = 1;
    while (array_index(i, 1) < length) ++i;
    return i;
}

}  // namespace

ColumnWitnessRecord column_witness(const CoarseStructure& sx, const WitnessProvider& provider_x,
                                   const FactorSequences& factors, std::uint64_t column) {
    std::vector<Relation> terms;
    for (std::uint64_t j = 1;; ++j) {
        const std::uint64_t k = array_index(column, j);
        terms.push_back(factors.left(k));
        if (k >= factors.length()) break;
    }
    EntourageSequence column_sequence(sx.ground(), std::move(terms));
    PropertyCWitness w = provider_x(sx, column_sequence);
    const WitnessReport report = check_witness(sx, column_sequence, w);
    if (!report.passed())
        throw ProviderError("left provider returned an invalid witness for column " + std::to_string(column));
    return ColumnWitnessRecord{column, std::move(column_sequence), std::move(w.families)};
}

std::vector<Relation> monotonize(const std::vector<Relation>& terms) {
    std::vector<Relation> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(out.empty() ? t : unite(out.back(), t));
    return out;
}

const ColumnWitnessRecord& ProductConstruction::column(std::uint64_t i) const {
    if (i == 0) throw std::invalid_argument("columns start at 1");
    return columns[std::min<std::uint64_t>(i, stable_column) - 1];
}

ProductConstruction build_product_witness(const CoarseStructure& sx, const CoarseStructure& sy,
                                          const EntourageSequence& seq, const WitnessProvider& provider_x,
                                          const WitnessProvider& provider_y) {
    const CoarseStructure product = product_structure(sx, sy);
    require_same_ground(product.ground(), seq.ground(), "product_witness");
    if (!product.contains(seq.last()))
        throw std::invalid_argument("product_witness: sequence items must be entourages of the product");

    const FactorSequences factors(seq);
    const std::uint64_t stable = stable_column_for(seq.size());

    std::vector<ColumnWitnessRecord> columns;
    std::vector<Relation> l_terms;
    for (std::uint64_t i = 1; i <= stable; ++i) {
        columns.push_back(column_witness(sx, provider_x, factors, i));
        const std::uint64_t n_i = std::max<std::size_t>(columns.back().length(), 1);
        l_terms.push_back(factors.right(array_index(i, n_i)));
    }

    EntourageSequence y_sequence(sy.ground(), monotonize(l_terms));
    PropertyCWitness y_witness = provider_y(sy, y_sequence);
    if (!check_witness(sy, y_sequence, y_witness).passed())
        throw ProviderError("right provider returned an invalid witness");

    ProductConstruction out{std::move(columns), stable, std::move(y_sequence), std::move(y_witness), {}, {}};

    std::uint64_t last_position = seq.size();
    const GroundSet& g = product.ground();
    for (std::uint64_t i = 1; i <= out.y_witness.families.size(); ++i) {
        const Family& vs = out.y_witness.families[i - 1];
        const ColumnWitnessRecord& record = out.column(i);
        for (std::uint64_t j = 1; j <= record.length(); ++j) {
            std::vector<PointSet> members;
            for (const auto& u : record.families[j - 1].members())
                for (const auto& v : vs.members()) members.push_back(product_set(g, u, v));
            out.grid.emplace(std::make_pair(i, j), Family(g, std::move(members)));
            last_position = std::max(last_position, array_index(i, j));
        }
    }

    for (std::uint64_t k = 1; k <= last_position; ++k) {
        auto it = out.grid.find(array_position(k));
        out.witness.families.push_back(it != out.grid.end() ? it->second : Family(g));
    }

    if (!check_witness(product, seq, out.witness).passed())
        throw std::logic_error("product_witness: assembled witness failed its check");
    return out;
}

PropertyCWitness product_witness(const CoarseStructure& sx, const CoarseStructure& sy,
                                 const EntourageSequence& seq, const WitnessProvider& provider_x,
                                 const WitnessProvider& provider_y) {
    return build_product_witness(sx, sy, seq, provider_x, provider_y).witness;
}

}  // namespace coarse
