#include "pq3/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace pq3::cli {

namespace {

int parse_int_arg(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string(what) + " expects an integer, got '" + s + "'");
    }
}

bool is_odd_prime(int q) {
    if (q < 3 || q % 2 == 0) return false;
    for (int f = 3; static_cast<long long>(f) * f <= q; f += 2)
        if (q % f == 0) return false;
    return true;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw io_error("short write to '" + path.string() + "'");
}

std::string spectrum_values(const Spectrum& s) {
    std::string out = "{";
    for (const auto& [value, count] : s) {
        if (out.size() > 1) out += ",";
        out += std::to_string(value);
    }
    return out + "}";
}

ordered_json spectrum_json(const Spectrum& s) {
    ordered_json j = ordered_json::object();
    for (const auto& [value, count] : s) j[std::to_string(value)] = count;
    return j;
}

// Accumulates (basename, digest) pairs for the manifest; outputs are named by
// basename so two runs into different directories produce identical manifests.
struct Artifacts {
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> created;

    explicit Artifacts(const std::string& out_dir) : dir(out_dir.empty() ? "." : out_dir) {
        fs::create_directories(dir);
    }

    fs::path path(const std::string& name) const { return dir / name; }

    void record(const std::string& name) {
        created.emplace_back(name, digest_file((dir / name).string()));
    }
};

void write_manifest(const Artifacts& a, const std::string& command, const ordered_json& parameters) {
    ordered_json m;
    m["command"] = command;
    m["parameters"] = parameters;
    ordered_json files = ordered_json::array();
    for (const auto& [name, digest] : a.created)
        files.push_back(ordered_json{{"file", name}, {"digest", digest}});
    m["created"] = files;
    write_text_file(a.path(command + ".manifest.json"), m.dump(2) + "\n");
}

std::string design_params(const DesignCertificate& cert) {
    return "2-(" + std::to_string(cert.v) + "," + std::to_string(cert.k) + "," +
           std::to_string(cert.lambda) + ")";
}

std::string code_params(const GreyRankinReport& r) {
    return "(" + std::to_string(r.n) + "," + std::to_string(r.words) + "," + std::to_string(r.d) + ")";
}

std::string bound_text(const GreyRankinReport& r) {
    std::string b = std::to_string(r.bound_numerator);
    if (r.bound_denominator != 1) b += "/" + std::to_string(r.bound_denominator);
    return b;
}

// Shared by cmd_construct and cmd_pipeline: assemble, optionally extend the
// certificate with the global triple spectrum, write matrix + certificate.
PseudoQuasi3Design construct_stage(const HadamardMatrix& h, bool full_triples, Artifacts& a) {
    PseudoQuasi3Design p = assemble_p(h);
    if (full_triples) {
        p.certificate.global_triple_spectrum = triple_spectrum(p.incidence);
        // Two global values force every anchored spectrum inside them.
        p.certificate.quasi3 = p.certificate.global_triple_spectrum->size() == 2;
    }
    const std::string stem = "p_u" + std::to_string(p.u);
    save_bit_matrix(a.path(stem + ".txt").string(), p.incidence);
    a.record(stem + ".txt");
    write_text_file(a.path(stem + ".cert.json"), certificate_to_json(p.certificate));
    a.record(stem + ".cert.json");
    return p;
}

struct DeriveStage {
    BitMatrix incidence;
    DesignCertificate certificate;
    bool anchor_is_witness = true;
    std::size_t anchored_values = 0;
};

DeriveStage derive_stage(const BitMatrix& parent, int anchor, const std::string& kind, Artifacts& a) {
    if (kind != "derived" && kind != "residual")
        throw std::invalid_argument("kind must be 'derived' or 'residual', got '" + kind + "'");

    DeriveStage stage;
    const Spectrum anchored = anchored_triple_spectrum(parent, anchor);
    stage.anchored_values = anchored.size();
    stage.anchor_is_witness = anchored.size() <= 2;
    stage.incidence =
        kind == "derived" ? derived_design(parent, anchor) : residual_design(parent, anchor);
    stage.certificate = certify(stage.incidence);

    const std::string stem = kind + "_a" + std::to_string(anchor);
    save_bit_matrix(a.path(stem + ".txt").string(), stage.incidence);
    a.record(stem + ".txt");
    write_text_file(a.path(stem + ".cert.json"), certificate_to_json(stage.certificate));
    a.record(stem + ".cert.json");
    return stage;
}

struct CodeStage {
    BinaryCode code;
    GreyRankinReport grey_rankin;
    QuasiSymmetryReport quasi_symmetry;
};

CodeStage code_stage(const BitMatrix& design, const std::string& stem, Artifacts& a) {
    CodeStage stage{design_to_code(design), {}, {}};
    stage.grey_rankin = certify_grey_rankin_optimal(stage.code);
    stage.quasi_symmetry = quasi_symmetry_check(design);

    save_code(a.path(stem + ".txt").string(), stage.code);
    a.record(stem + ".txt");
    ordered_json report;
    report["grey_rankin"] = ordered_json::parse(grey_rankin_to_json(stage.grey_rankin));
    report["quasi_symmetry"] = ordered_json::parse(quasi_symmetry_to_json(stage.quasi_symmetry));
    write_text_file(a.path(stem + ".report.json"), report.dump(2) + "\n");
    a.record(stem + ".report.json");
    return stage;
}

std::string code_summary(const CodeStage& s) {
    return code_params(s.grey_rankin) + (s.grey_rankin.meets_with_equality
                                             ? " meets bound"
                                             : " does not meet bound " + bound_text(s.grey_rankin));
}

ordered_json code_summary_json(const CodeStage& s) {
    return ordered_json{{"n", s.grey_rankin.n},
                        {"words", s.grey_rankin.words},
                        {"min_distance", s.grey_rankin.d},
                        {"bound", bound_text(s.grey_rankin)},
                        {"meets_bound", s.grey_rankin.meets_with_equality},
                        {"quasi_symmetric_conditions", s.quasi_symmetry.ok()}};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path + "' for digesting");
    std::ostringstream buf;
    buf << f.rdbuf();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf.str())));
    return std::string("fnv1a64:") + hex;
}

HadamardMatrix resolve_hadamard_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument(
            "hadamard source must be sylvester:<k>, paley:<q>, kron:<fileA>,<fileB> or "
            "import:<file>, got '" + spec + "'");
    const std::string head = spec.substr(0, colon);
    const std::string tail = spec.substr(colon + 1);

    if (head == "sylvester") return sylvester(parse_int_arg(tail, "sylvester"));
    if (head == "paley") return paley_i(parse_int_arg(tail, "paley"));
    if (head == "import") return normalize(import_hadamard_file(tail));
    if (head == "kron") {
        const auto comma = tail.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("kron expects two files: kron:<fileA>,<fileB>");
        const HadamardMatrix a = import_hadamard_file(tail.substr(0, comma));
        const HadamardMatrix b = import_hadamard_file(tail.substr(comma + 1));
        return kronecker_hadamard(a, b);
    }
    throw std::invalid_argument("unknown hadamard source '" + head + "'");
}

std::string default_hadamard_spec(int u) {
    if (u >= 1 && (u & (u - 1)) == 0) {
        int k = 0;
        while ((1 << k) < u) ++k;
        return "sylvester:" + std::to_string(k);
    }
    if (u >= 4 && u % 4 == 0 && (u - 1) % 4 == 3 && is_odd_prime(u - 1))
        return "paley:" + std::to_string(u - 1);
    throw std::invalid_argument("no Hadamard matrix source for order " + std::to_string(u) +
                                ": not a power of two and " + std::to_string(u - 1) +
                                " is not a prime congruent to 3 mod 4");
}

void cmd_hadamard(const HadamardArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    const HadamardMatrix h = resolve_hadamard_spec(args.spec);
    const std::string name = "hadamard_o" + std::to_string(h.order()) + ".txt";
    save_sign_matrix(a.path(name).string(), h.matrix());
    a.record(name);

    const ordered_json params{{"hadamard", args.spec}, {"order", h.order()}};
    write_manifest(a, "hadamard", params);
    if (args.json) {
        out << ordered_json{{"order", h.order()}, {"normalised", h.normalised()}, {"file", name}}
                   .dump(2)
            << "\n";
    } else {
        out << "hadamard order " << h.order() << " (" << args.spec << ") -> " << name << "\n";
    }
}

void cmd_construct(const ConstructArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    HadamardMatrix h = HadamardMatrix::checked(load_sign_matrix(args.hadamard_file));
    if (h.order() != args.u)
        throw std::invalid_argument("expected an order-" + std::to_string(args.u) +
                                    " Hadamard matrix, '" + args.hadamard_file + "' holds order " +
                                    std::to_string(h.order()));
    h = normalize(h);
    const PseudoQuasi3Design p = construct_stage(h, args.full_triples, a);

    ordered_json params{{"u", args.u},
                        {"hadamard_file", args.hadamard_file},
                        {"shift", "left"},
                        {"full_triples", args.full_triples}};
    ordered_json cells = ordered_json::array();
    for (const auto& row : cell_map(args.u)) cells.push_back(row);
    params["cell_map"] = cells;
    write_manifest(a, "construct", params);

    const DesignCertificate& cert = p.certificate;
    if (args.json) {
        out << certificate_to_json(cert);
        return;
    }
    out << "P_" << p.u << ": symmetric " << design_params(cert) << "; anchors 0.."
        << p.anchor_count - 1 << " triple values {" << p.triple_low << "," << p.triple_high
        << "}; witnesses " << cert.witnesses.size() << " -> p_u" << p.u << ".txt\n";
    if (cert.quasi3)
        out << "full triple spectrum " << spectrum_values(*cert.global_triple_spectrum)
            << (*cert.quasi3 ? "; quasi-3" : "; not quasi-3") << "\n";
}

void cmd_derive(const DeriveArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    const BitMatrix parent = load_bit_matrix(args.design_file);
    const DesignCertificate parent_cert = verify_2design(parent);
    if (!parent_cert.symmetric)
        throw verification_error("derive requires a symmetric design; input has b=" +
                                 std::to_string(parent_cert.b) + ", v=" +
                                 std::to_string(parent_cert.v));
    if (args.anchor < 0 || args.anchor >= parent.rows())
        throw std::out_of_range("anchor " + std::to_string(args.anchor) + " out of range for " +
                                std::to_string(parent.rows()) + " blocks");

    const DeriveStage stage = derive_stage(parent, args.anchor, args.kind, a);

    const ordered_json params{{"design_file", args.design_file},
                              {"anchor", args.anchor},
                              {"kind", args.kind}};
    write_manifest(a, "derive", params);

    if (!stage.anchor_is_witness)
        out << "warning: block " << args.anchor
            << " is not a pseudo quasi-3 witness (anchored triple spectrum has "
            << stage.anchored_values << " values); certificate reports the actual spectrum\n";
    if (args.json) {
        out << certificate_to_json(stage.certificate);
        return;
    }
    out << args.kind << " of block " << args.anchor << ": " << design_params(stage.certificate)
        << "; pair spectrum " << spectrum_values(stage.certificate.pair_spectrum) << " -> "
        << args.kind << "_a" << args.anchor << ".txt\n";
}

void cmd_code(const CodeArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    const BitMatrix design = load_bit_matrix(args.design_file);
    const std::string stem = "code_" + fs::path(args.design_file).stem().string();
    const CodeStage stage = code_stage(design, stem, a);

    const ordered_json params{{"design_file", args.design_file}};
    write_manifest(a, "code", params);

    if (args.json) {
        out << code_summary_json(stage).dump(2) << "\n";
        return;
    }
    out << "code " << code_summary(stage) << "; Grey-Rankin bound " << bound_text(stage.grey_rankin)
        << "; quasi-symmetric conditions " << (stage.quasi_symmetry.ok() ? "pass" : "fail") << " -> "
        << stem << ".txt\n";
}

void cmd_decode(const DecodeArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    const BinaryCode c = load_code(args.code_file);
    const BitMatrix design = code_to_design(c, args.weight);
    const std::string name = "decoded_w" + std::to_string(args.weight) + ".txt";
    save_bit_matrix(a.path(name).string(), design);
    a.record(name);

    const ordered_json params{{"code_file", args.code_file}, {"weight", args.weight}};
    write_manifest(a, "decode", params);

    if (args.json) {
        out << ordered_json{{"weight", args.weight}, {"words", design.rows()}, {"file", name}}
                   .dump(2)
            << "\n";
        return;
    }
    out << "decoded " << design.rows() << " words of weight " << args.weight << " -> " << name
        << "\n";
}

void cmd_pipeline(const PipelineArgs& args, std::ostream& out) {
    Artifacts a(args.out_dir);
    const std::string spec = args.spec.empty() ? default_hadamard_spec(args.u) : args.spec;
    const HadamardMatrix h = resolve_hadamard_spec(spec);
    if (h.order() != args.u)
        throw std::invalid_argument("hadamard source '" + spec + "' yields order " +
                                    std::to_string(h.order()) + ", pipeline needs order " +
                                    std::to_string(args.u));
    const std::string hname = "hadamard_o" + std::to_string(h.order()) + ".txt";
    save_sign_matrix(a.path(hname).string(), h.matrix());
    a.record(hname);

    const PseudoQuasi3Design p = construct_stage(h, args.full_triples, a);
    const DeriveStage derived = derive_stage(p.incidence, 0, "derived", a);
    const DeriveStage residual = derive_stage(p.incidence, 0, "residual", a);
    const CodeStage derived_code = code_stage(derived.incidence, "code_derived", a);
    const CodeStage residual_code = code_stage(residual.incidence, "code_residual", a);

    const std::string summary_row = code_summary(residual_code) + "; " + code_summary(derived_code);

    ordered_json summary;
    summary["u"] = args.u;
    summary["hadamard"] = spec;
    summary["design"] = ordered_json{{"v", p.certificate.v},
                                     {"k", p.certificate.k},
                                     {"lambda", p.certificate.lambda},
                                     {"anchored_triple_values",
                                      ordered_json::array({p.triple_low, p.triple_high})},
                                     {"witnesses", p.certificate.witnesses}};
    summary["residual"] = ordered_json{{"v", residual.certificate.v},
                                       {"k", residual.certificate.k},
                                       {"lambda", residual.certificate.lambda},
                                       {"pair_spectrum",
                                        spectrum_json(residual.certificate.pair_spectrum)},
                                       {"code", code_summary_json(residual_code)}};
    summary["derived"] = ordered_json{{"v", derived.certificate.v},
                                      {"k", derived.certificate.k},
                                      {"lambda", derived.certificate.lambda},
                                      {"pair_spectrum",
                                       spectrum_json(derived.certificate.pair_spectrum)},
                                      {"code", code_summary_json(derived_code)}};
    summary["summary_row"] = summary_row;
    write_text_file(a.path("summary.json"), summary.dump(2) + "\n");
    a.record("summary.json");

    const ordered_json params{{"u", args.u},
                              {"hadamard", spec},
                              {"anchor", 0},
                              {"full_triples", args.full_triples}};
    write_manifest(a, "pipeline", params);

    if (args.json) {
        out << summary.dump(2) << "\n";
        return;
    }
    out << "P_" << p.u << ": symmetric " << design_params(p.certificate)
        << "; anchors 0.." << p.anchor_count - 1 << " triple values {" << p.triple_low << ","
        << p.triple_high << "}\n";
    out << "residual block 0: " << design_params(residual.certificate) << "; pair spectrum "
        << spectrum_values(residual.certificate.pair_spectrum) << "\n";
    out << "derived block 0: " << design_params(derived.certificate) << "; pair spectrum "
        << spectrum_values(derived.certificate.pair_spectrum) << "\n";
    out << summary_row << "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pseudo quasi-3 design construction and certification toolkit"};
    app.name("pq3");
    app.require_subcommand(1);

    HadamardArgs hargs;
    auto* hadamard = app.add_subcommand("hadamard", "build or import a verified Hadamard matrix");
    hadamard->add_option("--hadamard", hargs.spec,
                         "source: sylvester:<k> | paley:<q> | kron:<fileA>,<fileB> | import:<file>")
        ->required();
    hadamard->add_option("--out", hargs.out_dir, "output directory");
    hadamard->add_flag("--json", hargs.json, "print a JSON report");

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "assemble and certify the design P_u");
    construct->add_option("--u", cargs.u, "design order parameter (even, >= 2)")->required();
    construct->add_option("--hadamard", cargs.hadamard_file, "file holding an order-u Hadamard matrix")
        ->required();
    construct->add_option("--out", cargs.out_dir, "output directory");
    construct->add_flag("--full-triples", cargs.full_triples,
                        "also compute the full triple spectrum (cubic cost)");
    construct->add_flag("--json", cargs.json, "print the certificate JSON");

    DeriveArgs dargs;
    auto* derive = app.add_subcommand("derive", "extract the derived or residual design of a block");
    derive->add_option("design", dargs.design_file, "symmetric design incidence file")->required();
    derive->add_option("--anchor", dargs.anchor, "block index (default 0)");
    derive->add_option("--kind", dargs.kind, "derived | residual")
        ->required()
        ->check(CLI::IsMember({"derived", "residual"}));
    derive->add_option("--out", dargs.out_dir, "output directory");
    derive->add_flag("--json", dargs.json, "print the certificate JSON");

    CodeArgs kargs;
    auto* code = app.add_subcommand("code", "turn a design into a self-complementary binary code");
    code->add_option("design", kargs.design_file, "design incidence file")->required();
    code->add_option("--out", kargs.out_dir, "output directory");
    code->add_flag("--json", kargs.json, "print the bound report JSON");

    DecodeArgs xargs;
    auto* decode = app.add_subcommand("decode", "extract the words of one weight as a design");
    decode->add_option("code", xargs.code_file, "code file")->required();
    decode->add_option("--weight", xargs.weight, "word weight to extract")->required();
    decode->add_option("--out", xargs.out_dir, "output directory");
    decode->add_flag("--json", xargs.json, "print a JSON report");

    PipelineArgs pargs;
    auto* pipeline =
        app.add_subcommand("pipeline", "Hadamard -> P_u -> derived+residual -> codes -> bounds");
    pipeline->add_option("--u", pargs.u, "design order parameter (even, >= 2)")->required();
    pipeline->add_option("--hadamard", pargs.spec,
                         "hadamard source descriptor (defaults to the smallest standard source)");
    pipeline->add_option("--out", pargs.out_dir, "output directory");
    pipeline->add_flag("--full-triples", pargs.full_triples,
                       "also compute the full triple spectrum (cubic cost)");
    pipeline->add_flag("--json", pargs.json, "print the summary JSON");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pq3");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (hadamard->parsed()) cmd_hadamard(hargs, out);
        if (construct->parsed()) cmd_construct(cargs, out);
        if (derive->parsed()) cmd_derive(dargs, out);
        if (code->parsed()) cmd_code(kargs, out);
        if (decode->parsed()) cmd_decode(xargs, out);
        if (pipeline->parsed()) cmd_pipeline(pargs, out);
        return 0;
    } catch (const verification_error& e) {
        err << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pq3::cli
