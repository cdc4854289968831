#ifndef COARSE_IO_HPP
#define COARSE_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/decomposition.hpp"
#include "coarse/product_theorem.hpp"

// JSON documents for spaces, entourage sequences and certificates.
//
// Space:
//   {"kind": "generated", "size": n, "generators": [[[a, b], ...], ...]}
//   {"kind": "metric", "size": n, "dist": [["p/q", ...], ...], "scales": ["p/q", ...]}
// Sequence:
//   {"kind": "scales", "scales": ["p/q", ...]}      metric entourages, needs a metric space
//   {"kind": "pairs", "items": [[[a, b], ...], ...]}
// A finite sequence stands for the infinite one that repeats its last item.
// Certificates carry their sequence under "sequence" and one of
//   "property-c": "families": [[[points], ...], ...]
//   "sfcdc":      "levels", "decompositions": [[{"target": [..], "parts": [[[..], ..], ..]}, ..], ..]
//   "cad":        "dims", "levels", "decompositions"  (input to cad-to-sfcdc)
// Rationals are always written "p/q".
namespace coarse::io {

// Malformed input. `field` is a JSON pointer into the document, or the
// byte offset for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SpaceDocument {
    enum class Kind { Generated, Metric };
    Kind kind = Kind::Generated;
    std::size_t size = 1;
    std::vector<std::vector<PointPair>> generators;
    std::vector<std::vector<Rational>> dist;
    std::vector<Rational> scales;
};

struct Space {
    CoarseStructure structure;
    std::optional<FiniteMetric> metric;
    std::vector<Rational> scales;

    const GroundSet& ground() const { return structure.ground(); }
};

struct SequenceSpec {
    enum class Kind { Scales, Pairs };
    Kind kind = Kind::Pairs;
    std::vector<Rational> scales;
    std::vector<std::vector<PointPair>> items;
};

struct CertificateDocument {
    std::string kind;
    SequenceSpec sequence;
    // property-c families, or sfcdc/cad levels.
    std::vector<std::vector<PointSet>> families;
    std::vector<std::vector<Decomposition>> decompositions;
    std::vector<std::size_t> dims;
};

SpaceDocument parse_space_document(const std::string& text);
std::string emit_space_document(const SpaceDocument& doc);
// Builds the structure; metric axiom violations become ParseError on "/dist".
Space load_space(const SpaceDocument& doc);
Space parse_space(const std::string& text);
// Product structure; the max metric when both factors are metric.
Space product_space(const Space& left, const Space& right);

SequenceSpec parse_sequence_spec(const std::string& text);
std::string emit_sequence_spec(const SequenceSpec& spec);
EntourageSequence materialize(const SequenceSpec& spec, const Space& space);
SequenceSpec pairs_spec(const EntourageSequence& seq);

CertificateDocument parse_certificate(const std::string& text);
std::string emit_certificate(const CertificateDocument& doc);

CertificateDocument witness_document(const SequenceSpec& seq, const PropertyCWitness& w);
PropertyCWitness to_witness(const CertificateDocument& doc, const GroundSet& ground);
CertificateDocument sfcdc_document(const SequenceSpec& seq, const SfcdcCertificate& c);
SfcdcCertificate to_sfcdc(const CertificateDocument& doc, const GroundSet& ground);
CadData to_cad_data(const CertificateDocument& doc, const GroundSet& ground);

std::string report_json(const WitnessReport& r);
std::string report_json(const HierarchyReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace coarse::io

#endif  // COARSE_IO_HPP
