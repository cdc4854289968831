#include "coarse/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "coarse/errors.hpp"
#include "coarse/io.hpp"
#include "json_detail.hpp"

namespace coarse {

namespace {

using io::detail::Json;

struct Options {
    std::string space;
    std::string space2;
    std::string sequence;
    std::string certificate;
    std::string out;
    std::optional<std::size_t> max_n;
    std::optional<std::uint64_t> seed;
};

// A user-facing failure that maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

io::Space load_space(const Options& o) {
    io::Space first = io::parse_space(io::read_file(o.space));
    if (o.space2.empty()) return first;
    return io::product_space(first, io::parse_space(io::read_file(o.space2)));
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

Json result(const char* command, bool passed) {
    Json out = Json::object();
    out["command"] = command;
    out["passed"] = passed;
    return out;
}

int cmd_info(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    const io::Space space = load_space(o);
    const CoarseStructure& s = space.structure;
    Json j = result("info", true);
    j["size"] = s.ground().size();
    j["product"] = s.ground().is_product();
    j["metric"] = space.metric.has_value();
    j["emax_pairs"] = s.emax().count();
    j["emax_classes"] = s.classes().size();
    j["classes"] = io::detail::to_json(s.classes());
    out << j.dump() << "\n";
    return kExitOk;
}

int cmd_verify_witness(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    require(o.certificate, "--certificate");
    const io::Space space = load_space(o);
    const io::CertificateDocument doc = io::parse_certificate(io::read_file(o.certificate));
    const io::SequenceSpec spec = o.sequence.empty() ? doc.sequence : io::parse_sequence_spec(io::read_file(o.sequence));
    const EntourageSequence seq = io::materialize(spec, space);
    const WitnessReport report = check_witness(space.structure, seq, io::to_witness(doc, space.ground()));
    Json j = result("verify-witness", report.passed());
    j["report"] = io::detail::to_json(report);
    out << j.dump() << "\n";
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_product_witness(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    require(o.space2, "--space2");
    require(o.sequence, "--sequence");
    require(o.out, "--out");
    const io::Space x = io::parse_space(io::read_file(o.space));
    const io::Space y = io::parse_space(io::read_file(o.space2));
    const io::Space xy = io::product_space(x, y);
    const io::SequenceSpec spec = io::parse_sequence_spec(io::read_file(o.sequence));
    const EntourageSequence seq = io::materialize(spec, xy);

    const WitnessProvider provider = o.max_n ? brute_force_provider(*o.max_n) : components_provider();
    const ProductConstruction built = build_product_witness(x.structure, y.structure, seq, provider, provider);
    const WitnessReport report = check_witness(xy.structure, seq, built.witness);
    Json j = result("product-witness", report.passed());
    j["report"] = io::detail::to_json(report);
    j["families"] = built.witness.families.size();
    j["columns"] = built.stable_column;
    if (report.passed()) {
        io::write_file(o.out, io::emit_certificate(io::witness_document(spec, built.witness)));
        j["out"] = o.out;
    }
    out << j.dump() << "\n";
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_check_sfcdc(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    require(o.certificate, "--certificate");
    const io::Space space = load_space(o);
    const io::CertificateDocument doc = io::parse_certificate(io::read_file(o.certificate));
    const io::SequenceSpec spec = o.sequence.empty() ? doc.sequence : io::parse_sequence_spec(io::read_file(o.sequence));
    const EntourageSequence seq = io::materialize(spec, space);
    const HierarchyReport report = check_sfcdc_certificate(space.structure, seq, io::to_sfcdc(doc, space.ground()));
    Json j = result("check-sfcdc", report.passed());
    j["report"] = io::detail::to_json(report);
    out << j.dump() << "\n";
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_cad_to_sfcdc(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    require(o.sequence, "--sequence");
    require(o.out, "--out");
    const io::Space space = load_space(o);
    const io::SequenceSpec spec = io::parse_sequence_spec(io::read_file(o.sequence));
    const EntourageSequence seq = io::materialize(spec, space);

    CadProvider provider;
    if (!o.certificate.empty()) {
        const io::CertificateDocument doc = io::parse_certificate(io::read_file(o.certificate));
        CadData data = io::to_cad_data(doc, space.ground());
        provider.dims = doc.dims;
        provider.build = [data](const CoarseStructure&, const EntourageSequence&) { return data; };
    } else {
        const std::size_t n = o.max_n.value_or(2);
        if (n == 0) throw UsageError("--max-n must be positive");
        provider = chunking_cad_provider({n}, 2, o.seed.value_or(0));
    }

    const SfcdcConversion conversion = convert_cad_to_sfcdc(space.structure, seq, provider);
    const HierarchyReport report = check_sfcdc_certificate(space.structure, seq, conversion.certificate);
    Json j = result("cad-to-sfcdc", report.passed());
    j["report"] = io::detail::to_json(report);
    j["levels"] = conversion.certificate.levels.size();
    j["level_offsets"] = conversion.level_offsets;
    if (report.passed()) {
        io::write_file(o.out, io::emit_certificate(io::sfcdc_document(spec, conversion.certificate)));
        j["out"] = o.out;
    }
    out << j.dump() << "\n";
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_search(const Options& o, std::ostream& out) {
    require(o.space, "--space");
    require(o.sequence, "--sequence");
    const io::Space space = load_space(o);
    const io::SequenceSpec spec = io::parse_sequence_spec(io::read_file(o.sequence));
    const EntourageSequence seq = io::materialize(spec, space);
    const auto w = brute_force_witness(space.structure, seq, o.max_n.value_or(1), o.seed);
    Json j = result("search", w.has_value());
    j["found"] = w.has_value();
    if (w) {
        const WitnessReport report = check_witness(space.structure, seq, *w);
        j["report"] = io::detail::to_json(report);
        Json fams = Json::array();
        for (const auto& f : w->families) fams.push_back(io::detail::to_json(f.members()));
        j["families"] = std::move(fams);
        if (!o.out.empty()) {
            io::write_file(o.out, io::emit_certificate(io::witness_document(spec, *w)));
            j["out"] = o.out;
        }
    }
    out << j.dump() << "\n";
    return w ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certificate checking and construction for finite coarse spaces", "coarsekit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool wants_sequence) {
        sub->add_option("--space", o.space, "space document (JSON)");
        sub->add_option("--space2", o.space2, "second factor; the command then works on the product");
        if (wants_sequence) sub->add_option("--sequence", o.sequence, "entourage sequence document (JSON)");
    };

    auto* info = app.add_subcommand("info", "summarize a space");
    add_common(info, false);

    auto* verify = app.add_subcommand("verify-witness", "check a property-C certificate");
    add_common(verify, true);
    verify->add_option("--certificate", o.certificate, "property-c certificate");

    auto* product = app.add_subcommand("product-witness", "build a property-C certificate for X x Y");
    add_common(product, true);
    product->add_option("--out", o.out, "where to write the certificate");
    product->add_option("--max-n", o.max_n, "use exhaustive search with up to this many families per factor");

    auto* sfcdc = app.add_subcommand("check-sfcdc", "check an sFCDC certificate");
    add_common(sfcdc, true);
    sfcdc->add_option("--certificate", o.certificate, "sfcdc certificate");

    auto* cad = app.add_subcommand("cad-to-sfcdc", "convert countable asymptotic dimension data to sFCDC");
    add_common(cad, true);
    cad->add_option("--certificate", o.certificate, "cad document; default is the built-in chunking provider");
    cad->add_option("--out", o.out, "where to write the certificate");
    cad->add_option("--max-n", o.max_n, "n_i for the built-in provider (default 2)");
    cad->add_option("--seed", o.seed, "seed for the built-in provider");

    auto* search = app.add_subcommand("search", "exhaustive property-C witness search");
    add_common(search, true);
    search->add_option("--max-n", o.max_n, "largest number of families to try (default 1)");
    search->add_option("--seed", o.seed, "shuffle the point order");
    search->add_option("--out", o.out, "write the witness found");

    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(o, out);
        if (verify->parsed()) return cmd_verify_witness(o, out);
        if (product->parsed()) return cmd_product_witness(o, out);
        if (sfcdc->parsed()) return cmd_check_sfcdc(o, out);
        if (cad->parsed()) return cmd_cad_to_sfcdc(o, out);
        if (search->parsed()) return cmd_search(o, out);
    } catch (const ProviderError& e) {
        Json j = Json::object();
        j["passed"] = false;
        j["error"] = e.what();
        out << j.dump() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace coarse
