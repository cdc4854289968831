#include "coarse/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json_detail.hpp"

namespace coarse::io {

using detail::Json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
    }
}

const Json& require_key(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(child(path, key), "missing field");
    return *it;
}

const Json& require_array(const Json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path, "expected an array");
    return v;
}

std::string require_string(const Json& v, const std::string& path) {
    if (!v.is_string()) throw ParseError(path, "expected a string");
    return v.get<std::string>();
}

std::size_t require_index(const Json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ParseError(path, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

Rational require_rational(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    try {
        return parse_rational(require_string(v, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
}

std::vector<Rational> rational_list(const Json& v, const std::string& path) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) out.push_back(require_rational(v[i], child(path, i)));
    return out;
}

std::vector<PointPair> pair_list(const Json& v, const std::string& path) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) {
        const std::string p = child(path, i);
        const Json& pr = require_array(v[i], p);
        if (pr.size() != 2) throw ParseError(p, "expected a pair [a, b]");
        out.emplace_back(require_index(pr[0], child(p, 0)), require_index(pr[1], child(p, 1)));
    }
    return out;
}

std::vector<std::vector<PointPair>> relation_list(const Json& v, const std::string& path) {
    std::vector<std::vector<PointPair>> out;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) out.push_back(pair_list(v[i], child(path, i)));
    return out;
}

PointSet point_list(const Json& v, const std::string& path) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) pts.push_back(require_index(v[i], child(path, i)));
    PointSet out(pts);
    if (out.size() != pts.size()) throw ParseError(path, "repeated point");
    return out;
}

std::vector<PointSet> member_list(const Json& v, const std::string& path) {
    std::vector<PointSet> out;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) out.push_back(point_list(v[i], child(path, i)));
    return out;
}

std::vector<std::vector<PointSet>> family_list(const Json& v, const std::string& path) {
    std::vector<std::vector<PointSet>> out;
    for (std::size_t i = 0; i < require_array(v, path).size(); ++i) out.push_back(member_list(v[i], child(path, i)));
    return out;
}

Json pairs_json(const std::vector<PointPair>& pairs) {
    Json out = Json::array();
    for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
    return out;
}

Json rationals_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& r : values) out.push_back(format_rational(r));
    return out;
}

Json sequence_json(const SequenceSpec& spec) {
    Json out = Json::object();
    if (spec.kind == SequenceSpec::Kind::Scales) {
        out["kind"] = "scales";
        out["scales"] = rationals_json(spec.scales);
    } else {
        out["kind"] = "pairs";
        Json items = Json::array();
        for (const auto& item : spec.items) items.push_back(pairs_json(item));
        out["items"] = std::move(items);
    }
    return out;
}

SequenceSpec sequence_from_json(const Json& v, const std::string& path) {
    SequenceSpec spec;
    const std::string kind = require_string(require_key(v, "kind", path), child(path, "kind"));
    if (kind == "scales") {
        spec.kind = SequenceSpec::Kind::Scales;
        spec.scales = rational_list(require_key(v, "scales", path), child(path, "scales"));
        if (spec.scales.empty()) throw ParseError(child(path, "scales"), "sequence must be nonempty");
    } else if (kind == "pairs") {
        spec.kind = SequenceSpec::Kind::Pairs;
        spec.items = relation_list(require_key(v, "items", path), child(path, "items"));
        if (spec.items.empty()) throw ParseError(child(path, "items"), "sequence must be nonempty");
    } else {
        throw ParseError(child(path, "kind"), "unknown sequence kind \"" + kind + "\"");
    }
    return spec;
}

Json decomposition_json(const Decomposition& d) {
    Json parts = Json::array();
    for (const auto& part : d.parts) parts.push_back(detail::to_json(part));
    Json out = Json::object();
    out["target"] = detail::to_json(d.target);
    out["parts"] = std::move(parts);
    return out;
}

Decomposition decomposition_from_json(const Json& v, const std::string& path) {
    Decomposition d;
    d.target = point_list(require_key(v, "target", path), child(path, "target"));
    d.parts = family_list(require_key(v, "parts", path), child(path, "parts"));
    return d;
}

std::vector<Family> families_on(const std::vector<std::vector<PointSet>>& raw, const GroundSet& ground,
                                const std::string& path) {
    std::vector<Family> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
            out.emplace_back(ground, raw[i]);
        } catch (const std::exception& e) {
            throw ParseError(child(path, i), e.what());
        }
    }
    return out;
}

void check_points_in(const std::vector<std::vector<Decomposition>>& decomps, const GroundSet& ground) {
    auto in = [&](const PointSet& s) { return s.empty() || s.points().back() < ground.size(); };
    for (std::size_t i = 0; i < decomps.size(); ++i)
        for (std::size_t v = 0; v < decomps[i].size(); ++v) {
            const auto& d = decomps[i][v];
            bool ok = in(d.target);
            for (const auto& part : d.parts)
                for (const auto& m : part) ok = ok && in(m);
            if (!ok) throw ParseError("/decompositions/" + std::to_string(i) + "/" + std::to_string(v),
                                      "point outside ground set of size " + std::to_string(ground.size()));
        }
}

}  // namespace

namespace detail {

Json to_json(const PointSet& s) {
    Json out = Json::array();
    for (Point p : s) out.push_back(p);
    return out;
}

Json to_json(const std::vector<PointSet>& members) {
    Json out = Json::array();
    for (const auto& m : members) out.push_back(to_json(m));
    return out;
}

Json to_json(const WitnessReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["covers"] = r.covers;
    out["disjoint"] = r.disjoint;
    out["bounded"] = r.bounded;
    if (r.uncovered_point) out["uncovered_point"] = *r.uncovered_point;
    if (r.disjointness) {
        out["disjointness_violation"] = {{"family", *r.disjointness_family},
                                         {"members", {r.disjointness->first_member, r.disjointness->second_member}},
                                         {"pair", {r.disjointness->pair.first, r.disjointness->pair.second}}};
    }
    if (r.boundedness_pair) {
        out["boundedness_violation"] = {{"family", *r.boundedness_family},
                                        {"pair", {r.boundedness_pair->first, r.boundedness_pair->second}}};
    }
    return out;
}

Json to_json(const HierarchyReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["root"] = r.root_ok;
    out["shape"] = r.shape_ok;
    out["decompositions"] = r.decompositions_ok;
    out["bounded"] = r.bounded_ok;
    if (r.level) out["level"] = *r.level;
    if (r.member) out["member"] = *r.member;
    if (r.boundedness_pair) out["boundedness_pair"] = {r.boundedness_pair->first, r.boundedness_pair->second};
    if (!r.detail.empty()) out["detail"] = r.detail;
    return out;
}

std::string emit(const Json& doc) {
    std::string out = "{\n";
    bool first = true;
    for (const auto& [key, value] : doc.items()) {
        if (!first) out += ",\n";
        first = false;
        out += "  " + Json(key).dump() + ": ";
        if (value.is_array() && !value.empty()) {
            out += "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out += "    " + value[i].dump();
                out += i + 1 < value.size() ? ",\n" : "\n";
            }
            out += "  ]";
        } else {
            out += value.dump();
        }
    }
    return out + "\n}\n";
}

}  // namespace detail

SpaceDocument parse_space_document(const std::string& text) {
    const Json root = parse_json(text);
    SpaceDocument doc;
    const std::string kind = require_string(require_key(root, "kind", ""), "/kind");
    const std::size_t size = require_index(require_key(root, "size", ""), "/size");
    if (size == 0) throw ParseError("/size", "size must be positive");
    doc.size = size;
    if (kind == "generated") {
        doc.kind = SpaceDocument::Kind::Generated;
        doc.generators = relation_list(require_key(root, "generators", ""), "/generators");
        for (std::size_t g = 0; g < doc.generators.size(); ++g)
            for (std::size_t k = 0; k < doc.generators[g].size(); ++k) {
                const auto [a, b] = doc.generators[g][k];
                if (a >= size || b >= size)
                    throw ParseError("/generators/" + std::to_string(g) + "/" + std::to_string(k),
                                     "index out of range for size " + std::to_string(size));
            }
    } else if (kind == "metric") {
        doc.kind = SpaceDocument::Kind::Metric;
        const Json& rows = require_array(require_key(root, "dist", ""), "/dist");
        if (rows.size() != size) throw ParseError("/dist", "expected " + std::to_string(size) + " rows");
        for (std::size_t i = 0; i < size; ++i) {
            doc.dist.push_back(rational_list(rows[i], child("/dist", i)));
            if (doc.dist.back().size() != size)
                throw ParseError(child("/dist", i), "expected " + std::to_string(size) + " entries");
        }
        doc.scales = rational_list(require_key(root, "scales", ""), "/scales");
        for (std::size_t i = 0; i < doc.scales.size(); ++i)
            if (doc.scales[i] < Rational(0)) throw ParseError(child("/scales", i), "scale must be nonnegative");
    } else {
        throw ParseError("/kind", "unknown space kind \"" + kind + "\"");
    }
    return doc;
}

std::string emit_space_document(const SpaceDocument& doc) {
    Json out = Json::object();
    out["kind"] = doc.kind == SpaceDocument::Kind::Generated ? "generated" : "metric";
    out["size"] = doc.size;
    if (doc.kind == SpaceDocument::Kind::Generated) {
        Json gens = Json::array();
        for (const auto& g : doc.generators) gens.push_back(pairs_json(g));
        out["generators"] = std::move(gens);
    } else {
        Json rows = Json::array();
        for (const auto& row : doc.dist) rows.push_back(rationals_json(row));
        out["dist"] = std::move(rows);
        out["scales"] = rationals_json(doc.scales);
    }
    return detail::emit(out);
}

Space load_space(const SpaceDocument& doc) {
    const GroundSet ground(doc.size);
    if (doc.kind == SpaceDocument::Kind::Generated) {
        std::vector<Relation> gens;
        for (std::size_t g = 0; g < doc.generators.size(); ++g) {
            try {
                gens.push_back(Relation::from_pairs(ground, doc.generators[g]));
            } catch (const std::out_of_range& e) {
                throw ParseError(child("/generators", g), e.what());
            }
        }
        return Space{generate(ground, std::move(gens)), std::nullopt, {}};
    }
    std::vector<Rational> flat;
    for (const auto& row : doc.dist) flat.insert(flat.end(), row.begin(), row.end());
    try {
        FiniteMetric m(ground, std::move(flat));
        CoarseStructure s = metric_structure(m, doc.scales);
        return Space{std::move(s), std::move(m), doc.scales};
    } catch (const std::invalid_argument& e) {
        throw ParseError("/dist", e.what());
    }
}

Space parse_space(const std::string& text) { return load_space(parse_space_document(text)); }

Space product_space(const Space& left, const Space& right) {
    std::optional<FiniteMetric> metric;
    if (left.metric && right.metric) metric = max_metric_product(*left.metric, *right.metric);
    std::set<Rational> scales(left.scales.begin(), left.scales.end());
    scales.insert(right.scales.begin(), right.scales.end());
    return Space{product_structure(left.structure, right.structure), std::move(metric),
                 std::vector<Rational>(scales.begin(), scales.end())};
}

SequenceSpec parse_sequence_spec(const std::string& text) { return sequence_from_json(parse_json(text), ""); }

std::string emit_sequence_spec(const SequenceSpec& spec) { return detail::emit(sequence_json(spec)); }

EntourageSequence materialize(const SequenceSpec& spec, const Space& space) {
    std::vector<Relation> items;
    if (spec.kind == SequenceSpec::Kind::Scales) {
        if (!space.metric) throw ParseError("/sequence/scales", "scale sequences need a metric space");
        for (std::size_t i = 0; i < spec.scales.size(); ++i) {
            if (spec.scales[i] < Rational(0)) throw ParseError(child("/sequence/scales", i), "scale must be nonnegative");
            items.push_back(metric_entourage(*space.metric, spec.scales[i]));
        }
    } else {
        for (std::size_t i = 0; i < spec.items.size(); ++i) {
            try {
                items.push_back(Relation::from_pairs(space.ground(), spec.items[i]));
            } catch (const std::out_of_range& e) {
                throw ParseError(child("/sequence/items", i), e.what());
            }
        }
    }
    try {
        return EntourageSequence(space.ground(), std::move(items));
    } catch (const std::invalid_argument& e) {
        throw ParseError("/sequence", e.what());
    }
}

SequenceSpec pairs_spec(const EntourageSequence& seq) {
    SequenceSpec spec;
    spec.kind = SequenceSpec::Kind::Pairs;
    for (const auto& r : seq.items()) spec.items.push_back(r.pairs());
    return spec;
}

CertificateDocument parse_certificate(const std::string& text) {
    const Json root = parse_json(text);
    CertificateDocument doc;
    doc.kind = require_string(require_key(root, "kind", ""), "/kind");
    doc.sequence = sequence_from_json(require_key(root, "sequence", ""), "/sequence");
    if (doc.kind == "property-c") {
        doc.families = family_list(require_key(root, "families", ""), "/families");
        if (doc.families.empty()) throw ParseError("/families", "witness needs at least one family");
        return doc;
    }
    if (doc.kind != "sfcdc" && doc.kind != "cad") throw ParseError("/kind", "unknown certificate kind \"" + doc.kind + "\"");
    if (doc.kind == "cad") {
        const Json& dims = require_array(require_key(root, "dims", ""), "/dims");
        for (std::size_t i = 0; i < dims.size(); ++i) {
            doc.dims.push_back(require_index(dims[i], child("/dims", i)));
            if (doc.dims.back() == 0) throw ParseError(child("/dims", i), "dimensions must be positive");
        }
        if (doc.dims.empty()) throw ParseError("/dims", "need at least one dimension");
    }
    doc.families = family_list(require_key(root, "levels", ""), "/levels");
    const Json& decomps = require_array(require_key(root, "decompositions", ""), "/decompositions");
    for (std::size_t i = 0; i < decomps.size(); ++i) {
        const std::string p = child("/decompositions", i);
        std::vector<Decomposition> level;
        for (std::size_t v = 0; v < require_array(decomps[i], p).size(); ++v)
            level.push_back(decomposition_from_json(decomps[i][v], child(p, v)));
        doc.decompositions.push_back(std::move(level));
    }
    return doc;
}

std::string emit_certificate(const CertificateDocument& doc) {
    Json out = Json::object();
    out["kind"] = doc.kind;
    out["sequence"] = sequence_json(doc.sequence);
    if (doc.kind == "property-c") {
        Json fams = Json::array();
        for (const auto& f : doc.families) fams.push_back(detail::to_json(f));
        out["families"] = std::move(fams);
        return detail::emit(out);
    }
    if (doc.kind == "cad") out["dims"] = doc.dims;
    Json levels = Json::array();
    for (const auto& f : doc.families) levels.push_back(detail::to_json(f));
    out["levels"] = std::move(levels);
    Json decomps = Json::array();
    for (const auto& level : doc.decompositions) {
        Json l = Json::array();
        for (const auto& d : level) l.push_back(decomposition_json(d));
        decomps.push_back(std::move(l));
    }
    out["decompositions"] = std::move(decomps);
    return detail::emit(out);
}

CertificateDocument witness_document(const SequenceSpec& seq, const PropertyCWitness& w) {
    CertificateDocument doc;
    doc.kind = "property-c";
    doc.sequence = seq;
    for (const auto& f : w.families) doc.families.push_back(f.members());
    return doc;
}

PropertyCWitness to_witness(const CertificateDocument& doc, const GroundSet& ground) {
    if (doc.kind != "property-c") throw ParseError("/kind", "expected a property-c certificate");
    return PropertyCWitness{families_on(doc.families, ground, "/families")};
}

CertificateDocument sfcdc_document(const SequenceSpec& seq, const SfcdcCertificate& c) {
    CertificateDocument doc;
    doc.kind = "sfcdc";
    doc.sequence = seq;
    for (const auto& f : c.levels) doc.families.push_back(f.members());
    doc.decompositions = c.decompositions;
    return doc;
}

SfcdcCertificate to_sfcdc(const CertificateDocument& doc, const GroundSet& ground) {
    if (doc.kind != "sfcdc") throw ParseError("/kind", "expected an sfcdc certificate");
    check_points_in(doc.decompositions, ground);
    return SfcdcCertificate{families_on(doc.families, ground, "/levels"), doc.decompositions};
}

CadData to_cad_data(const CertificateDocument& doc, const GroundSet& ground) {
    if (doc.kind != "cad") throw ParseError("/kind", "expected a cad document");
    check_points_in(doc.decompositions, ground);
    return CadData{families_on(doc.families, ground, "/levels"), doc.decompositions};
}

std::string report_json(const WitnessReport& r) { return detail::to_json(r).dump(); }
std::string report_json(const HierarchyReport& r) { return detail::to_json(r).dump(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace coarse::io
