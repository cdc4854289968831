#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coarse/cli.hpp"
#include "coarse/decomposition.hpp"
#include "coarse/errors.hpp"
#include "coarse/product_theorem.hpp"

namespace py = pybind11;
using namespace coarse;

namespace {

using Members = std::vector<std::vector<Point>>;

Members to_lists(const std::vector<PointSet>& sets) {
    Members out;
    for (const auto& s : sets) out.push_back(s.points());
    return out;
}

Family to_family(const GroundSet& g, const Members& members) {
    std::vector<PointSet> sets;
    for (const auto& m : members) sets.emplace_back(m);
    return Family(g, std::move(sets));
}

PropertyCWitness to_witness(const GroundSet& g, const std::vector<Members>& families) {
    PropertyCWitness w;
    for (const auto& f : families) w.families.push_back(to_family(g, f));
    return w;
}

std::vector<Members> from_witness(const PropertyCWitness& w) {
    std::vector<Members> out;
    for (const auto& f : w.families) out.push_back(to_lists(f.members()));
    return out;
}

std::vector<Rational> to_rationals(const std::vector<std::string>& texts) {
    std::vector<Rational> out;
    for (const auto& t : texts) out.push_back(parse_rational(t));
    return out;
}

WitnessProvider provider_named(const std::string& name, std::size_t max_n) {
    if (name == "components") return components_provider();
    if (name == "brute_force") return brute_force_provider(max_n);
    throw std::invalid_argument("unknown provider \"" + name + "\"; expected components or brute_force");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite coarse spaces: relations, coarse structures, property C and sFCDC certificates";

    py::register_exception<GroundMismatch>(m, "GroundMismatch", PyExc_ValueError);
    py::register_exception<GuardViolation>(m, "GuardViolation", PyExc_ValueError);
    py::register_exception<ProviderError>(m, "ProviderError", PyExc_RuntimeError);

    py::class_<GroundSet>(m, "GroundSet")
        .def(py::init<std::size_t>(), py::arg("size"))
        .def_static("product", &GroundSet::product)
        .def_property_readonly("size", &GroundSet::size)
        .def_property_readonly("is_product", &GroundSet::is_product)
        .def("pair_index", &GroundSet::pair_index)
        .def("split", &GroundSet::split)
        .def("__len__", &GroundSet::size)
        .def("__repr__", &GroundSet::describe)
        .def(py::self == py::self);

    py::class_<Relation>(m, "Relation")
        .def(py::init<GroundSet>())
        .def_static("diagonal", &Relation::diagonal)
        .def_static("full", &Relation::full)
        .def_static("from_pairs",
                    [](const GroundSet& g, const std::vector<PointPair>& pairs) {
                        return Relation::from_pairs(g, std::span<const PointPair>(pairs));
                    })
        .def_property_readonly("ground", &Relation::ground)
        .def("contains", &Relation::contains)
        .def("pairs", &Relation::pairs)
        .def("__len__", &Relation::count)
        .def("is_reflexive", &Relation::is_reflexive)
        .def("is_symmetric", &Relation::is_symmetric)
        .def("is_transitive", &Relation::is_transitive)
        .def(py::self == py::self)
        .def("__or__", &unite)
        .def("__and__", &intersect)
        .def("__le__", &is_subset);

    m.def("compose", &compose);
    m.def("inverse", &inverse);
    m.def("equivalence_closure", &equivalence_closure);
    m.def("product_relation", &product_relation);
    m.def("project", [](const Relation& e, int axis) {
        if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
        return project(e, axis == 1 ? Axis::Left : Axis::Right);
    });

    py::class_<CoarseStructure>(m, "CoarseStructure")
        .def_property_readonly("ground", &CoarseStructure::ground)
        .def_property_readonly("emax", &CoarseStructure::emax)
        .def_property_readonly("classes", [](const CoarseStructure& s) { return to_lists(s.classes()); })
        .def("contains", &CoarseStructure::contains);
    m.def("generate", &generate, py::arg("ground"), py::arg("generators"));
    m.def("product_structure", &product_structure);

    py::class_<FiniteMetric>(m, "FiniteMetric")
        .def(py::init([](const std::vector<std::vector<std::string>>& rows) {
                 std::vector<Rational> flat;
                 for (const auto& row : rows) {
                     if (row.size() != rows.size()) throw std::invalid_argument("distance matrix must be square");
                     for (const auto& t : row) flat.push_back(parse_rational(t));
                 }
                 return FiniteMetric(GroundSet(rows.size()), std::move(flat));
             }),
             py::arg("distances"))
        .def_property_readonly("ground", &FiniteMetric::ground)
        .def("distance", [](const FiniteMetric& d, Point a, Point b) { return format_rational(d(a, b)); })
        .def("distances", [](const FiniteMetric& d) {
            std::vector<std::string> out;
            for (const auto& r : d.distances()) out.push_back(format_rational(r));
            return out;
        });
    m.def("metric_entourage",
          [](const FiniteMetric& d, const std::string& r) { return metric_entourage(d, parse_rational(r)); });
    m.def("metric_structure", [](const FiniteMetric& d, const std::vector<std::string>& scales) {
        return metric_structure(d, to_rationals(scales));
    });
    m.def("max_metric_product", &max_metric_product);

    py::class_<EntourageSequence>(m, "EntourageSequence")
        .def(py::init<GroundSet, std::vector<Relation>>(), py::arg("ground"), py::arg("items"))
        .def_property_readonly("items", &EntourageSequence::items)
        .def("__len__", &EntourageSequence::size)
        .def("__getitem__", [](const EntourageSequence& s, std::size_t k) { return s[k]; });

    py::class_<WitnessReport>(m, "WitnessReport")
        .def_readonly("covers", &WitnessReport::covers)
        .def_readonly("disjoint", &WitnessReport::disjoint)
        .def_readonly("bounded", &WitnessReport::bounded)
        .def_readonly("uncovered_point", &WitnessReport::uncovered_point)
        .def_readonly("disjointness_family", &WitnessReport::disjointness_family)
        .def_readonly("boundedness_family", &WitnessReport::boundedness_family)
        .def_readonly("boundedness_pair", &WitnessReport::boundedness_pair)
        .def_property_readonly("passed", &WitnessReport::passed);

    py::class_<HierarchyReport>(m, "HierarchyReport")
        .def_readonly("root_ok", &HierarchyReport::root_ok)
        .def_readonly("shape_ok", &HierarchyReport::shape_ok)
        .def_readonly("decompositions_ok", &HierarchyReport::decompositions_ok)
        .def_readonly("bounded_ok", &HierarchyReport::bounded_ok)
        .def_readonly("level", &HierarchyReport::level)
        .def_readonly("member", &HierarchyReport::member)
        .def_readonly("detail", &HierarchyReport::detail)
        .def_property_readonly("passed", &HierarchyReport::passed);

    m.def("is_disjoint", [](const Members& members, const Relation& e) {
        return is_disjoint(to_family(e.ground(), members), e);
    });
    m.def("is_uniformly_bounded", [](const Members& members, const CoarseStructure& s) {
        return is_uniformly_bounded(to_family(s.ground(), members), s);
    });
    m.def("check_witness", [](const CoarseStructure& s, const EntourageSequence& seq,
                              const std::vector<Members>& families) {
        return check_witness(s, seq, to_witness(s.ground(), families));
    });
    m.def("components_witness", [](const CoarseStructure& s, const EntourageSequence& seq) {
        return from_witness(components_witness(s, seq));
    });
    m.def(
        "brute_force_witness",
        [](const CoarseStructure& s, const EntourageSequence& seq, std::size_t max_n,
           std::optional<std::uint64_t> seed) -> std::optional<std::vector<Members>> {
            auto w = brute_force_witness(s, seq, max_n, seed);
            if (!w) return std::nullopt;
            return from_witness(*w);
        },
        py::arg("structure"), py::arg("sequence"), py::arg("max_n") = 1, py::arg("seed") = py::none());

    m.def("array_index", &array_index);
    m.def("array_position", &array_position);
    m.def(
        "product_witness",
        [](const CoarseStructure& sx, const CoarseStructure& sy, const EntourageSequence& seq,
           const std::string& provider, std::size_t max_n) {
            const WitnessProvider p = provider_named(provider, max_n);
            return from_witness(product_witness(sx, sy, seq, p, p));
        },
        py::arg("sx"), py::arg("sy"), py::arg("sequence"), py::arg("provider") = "components",
        py::arg("max_n") = 3);

    m.def(
        "cad_to_sfcdc",
        [](const CoarseStructure& s, const EntourageSequence& seq, const std::vector<std::size_t>& dims,
           std::size_t depth, std::uint64_t seed) {
            const SfcdcConversion c = convert_cad_to_sfcdc(s, seq, chunking_cad_provider(dims, depth, seed));
            std::vector<Members> levels;
            for (const auto& f : c.certificate.levels) levels.push_back(to_lists(f.members()));
            py::dict out;
            out["levels"] = levels;
            out["level_offsets"] = c.level_offsets;
            out["passed"] = check_sfcdc_certificate(s, seq, c.certificate).passed();
            return out;
        },
        py::arg("structure"), py::arg("sequence"), py::arg("dims") = std::vector<std::size_t>{2},
        py::arg("depth") = 2, py::arg("seed") = 0);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "coarsekit");
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
