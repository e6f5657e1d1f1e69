#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pq3/commands.hpp"
#include "pq3/construction.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = pq3::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("hadamard command writes a verified matrix and its manifest") {
    const fs::path dir = support::fresh_dir("cli_hadamard");
    const RunResult r = run({"hadamard", "--hadamard", "sylvester:2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("order 4") != std::string::npos);

    const std::string matrix = support::slurp(dir / "hadamard_o4.txt");
    CHECK(matrix.substr(0, 4) == "4 4\n");
    CHECK(matrix.find('+') != std::string::npos);

    const json manifest = json::parse(support::slurp(dir / "hadamard.manifest.json"));
    CHECK(manifest["command"] == "hadamard");
    CHECK(manifest["parameters"]["hadamard"] == "sylvester:2");
    REQUIRE(manifest["created"].size() == 1);
    CHECK(manifest["created"][0]["file"] == "hadamard_o4.txt");
    const std::string digest = manifest["created"][0]["digest"];
    CHECK(digest.rfind("fnv1a64:", 0) == 0);
    CHECK(digest.size() == 8 + 16);
    CHECK(digest == pq3::cli::digest_file((dir / "hadamard_o4.txt").string()));
}

TEST_CASE("hadamard paley output re-imports as a verified matrix") {
    const fs::path dir = support::fresh_dir("cli_paley");
    REQUIRE(run({"hadamard", "--hadamard", "paley:11", "--out", dir.string()}).code == 0);
    const auto h = pq3::import_hadamard_file((dir / "hadamard_o12.txt").string());
    CHECK(h.order() == 12);
}

TEST_CASE("hadamard rejects corrupted imports with the failing rows") {
    const fs::path dir = support::fresh_dir("cli_import");
    pq3::SignMatrix bad = pq3::sylvester(2).matrix();
    bad.set(1, 1, +1);
    pq3::save_sign_matrix((dir / "bad.txt").string(), bad);

    const RunResult r = run({"hadamard", "--hadamard", "import:" + (dir / "bad.txt").string(),
                             "--out", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("rows") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "hadamard_o4.txt"));  // nothing written on failure
}

TEST_CASE("hadamard rejects malformed source descriptors") {
    const fs::path dir = support::fresh_dir("cli_badspec");
    CHECK(run({"hadamard", "--hadamard", "sylvester", "--out", dir.string()}).code == 2);
    CHECK(run({"hadamard", "--hadamard", "magic:4", "--out", dir.string()}).code == 2);
    CHECK(run({"hadamard", "--hadamard", "paley:abc", "--out", dir.string()}).code == 2);
}

TEST_CASE("construct emits the incidence matrix, certificate, and cell map") {
    const fs::path dir = support::fresh_dir("cli_construct");
    REQUIRE(run({"hadamard", "--hadamard", "sylvester:2", "--out", dir.string()}).code == 0);
    const RunResult r = run({"construct", "--u", "4", "--hadamard",
                             (dir / "hadamard_o4.txt").string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("2-(64,28,12)") != std::string::npos);

    const json cert = json::parse(support::slurp(dir / "p_u4.cert.json"));
    CHECK(cert["v"] == 64);
    CHECK(cert["k"] == 28);
    CHECK(cert["lambda"] == 12);
    CHECK(cert["symmetric"] == true);
    for (int a = 0; a < 8; ++a) {
        bool found = false;
        for (const auto& w : cert["witnesses"]) found |= w == a;
        CHECK(found);
    }

    const json manifest = json::parse(support::slurp(dir / "construct.manifest.json"));
    CHECK(manifest["parameters"]["shift"] == "left");
    CHECK(manifest["parameters"]["cell_map"][0][0] == "0");
    CHECK(manifest["parameters"]["cell_map"][1][0] == "S1T");

    // The written matrix is byte-deterministic against a direct assembly.
    const auto direct = pq3::assemble_p(pq3::sylvester(2));
    CHECK(pq3::load_bit_matrix((dir / "p_u4.txt").string()) == direct.incidence);
}

TEST_CASE("construct rejects a non-hadamard input file at verification") {
    const fs::path dir = support::fresh_dir("cli_construct_bad");
    support::spill(dir / "h3.txt", "3 3\n+++\n+++\n+++\n");
    const RunResult r = run({"construct", "--u", "3", "--hadamard", (dir / "h3.txt").string(),
                             "--out", dir.string()});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(dir / "p_u3.txt"));
}

TEST_CASE("construct rejects an order mismatch as an input error") {
    const fs::path dir = support::fresh_dir("cli_construct_order");
    REQUIRE(run({"hadamard", "--hadamard", "sylvester:2", "--out", dir.string()}).code == 0);
    const RunResult r = run({"construct", "--u", "8", "--hadamard",
                             (dir / "hadamard_o4.txt").string(), "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("order") != std::string::npos);
}

TEST_CASE("derive extracts certified sub-designs for both kinds") {
    const fs::path dir = support::fresh_dir("cli_derive");
    pq3::save_bit_matrix((dir / "p.txt").string(), pq3::assemble_p(pq3::sylvester(2)).incidence);

    const RunResult res = run({"derive", (dir / "p.txt").string(), "--anchor", "0", "--kind",
                               "residual", "--out", dir.string()});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("2-(36,16,12)") != std::string::npos);
    CHECK(res.out.find("warning") == std::string::npos);
    const json rcert = json::parse(support::slurp(dir / "residual_a0.cert.json"));
    CHECK(rcert["quasi_symmetric_values"] == json::array({6, 8}));

    const RunResult der = run({"derive", (dir / "p.txt").string(), "--kind", "derived", "--out",
                               dir.string()});
    REQUIRE(der.code == 0);  // anchor defaults to block 0
    const json dcert = json::parse(support::slurp(dir / "derived_a0.cert.json"));
    CHECK(dcert["v"] == 28);
    CHECK(dcert["k"] == 12);
    CHECK(dcert["lambda"] == 11);
}

TEST_CASE("derive warns when the anchor is not a witness") {
    const fs::path dir = support::fresh_dir("cli_derive_warn");
    pq3::save_bit_matrix((dir / "qr.txt").string(), support::qr_design(19));
    const RunResult r = run({"derive", (dir / "qr.txt").string(), "--anchor", "0", "--kind",
                             "derived", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("warning") != std::string::npos);
    CHECK(r.out.find("not a pseudo quasi-3 witness") != std::string::npos);
    CHECK(fs::exists(dir / "derived_a0.cert.json"));
}

TEST_CASE("derive rejects bad anchors and kinds") {
    const fs::path dir = support::fresh_dir("cli_derive_bad");
    pq3::save_bit_matrix((dir / "p.txt").string(), pq3::assemble_p(pq3::sylvester(1)).incidence);
    CHECK(run({"derive", (dir / "p.txt").string(), "--anchor", "99", "--kind", "derived",
               "--out", dir.string()}).code == 2);
    CHECK(run({"derive", (dir / "p.txt").string(), "--kind", "sideways", "--out",
               dir.string()}).code == 2);
    pq3::save_bit_matrix((dir / "flat.txt").string(), support::complete_pairs_design(4));
    CHECK(run({"derive", (dir / "flat.txt").string(), "--kind", "derived", "--out",
               dir.string()}).code == 1);  // not symmetric
}

TEST_CASE("code reports the parameters and both certifications") {
    const fs::path dir = support::fresh_dir("cli_code");
    const auto p = pq3::assemble_p(pq3::sylvester(2));
    pq3::save_bit_matrix((dir / "residual.txt").string(), pq3::residual_design(p.incidence, 0));

    const RunResult r = run({"code", (dir / "residual.txt").string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("(36,128,16) meets bound") != std::string::npos);

    const json report = json::parse(support::slurp(dir / "code_residual.report.json"));
    CHECK(report["grey_rankin"]["meets_with_equality"] == true);
    CHECK(report["grey_rankin"]["bound_numerator"] == 128);
    CHECK(report["quasi_symmetry"]["ok"] == true);

    const pq3::BinaryCode written = pq3::load_code((dir / "code_residual.txt").string());
    CHECK(written.length() == 36);
    CHECK(written.size() == 128);
}

TEST_CASE("decode round trips the residual design through the code file") {
    const fs::path dir = support::fresh_dir("cli_decode");
    const auto p = pq3::assemble_p(pq3::sylvester(2));
    const pq3::BitMatrix residual = pq3::residual_design(p.incidence, 0);
    pq3::save_bit_matrix((dir / "residual.txt").string(), residual);
    REQUIRE(run({"code", (dir / "residual.txt").string(), "--out", dir.string()}).code == 0);

    const RunResult r = run({"decode", (dir / "code_residual.txt").string(), "--weight", "16", "--out",
                             dir.string()});
    REQUIRE(r.code == 0);
    const pq3::BitMatrix decoded = pq3::load_bit_matrix((dir / "decoded_w16.txt").string());
    CHECK(decoded.rows() == 63);
    const auto cert = pq3::verify_2design(decoded);
    CHECK(cert.v == 36);
    CHECK(cert.k == 16);
    CHECK(cert.lambda == 12);

    CHECK(run({"decode", (dir / "code_residual.txt").string(), "--weight", "5", "--out",
               dir.string()}).code == 2);
}

TEST_CASE("decode rejects a code file with duplicate words") {
    const fs::path dir = support::fresh_dir("cli_decode_dup");
    support::spill(dir / "dup.txt", "3 2\n101\n101\n");
    CHECK(run({"decode", (dir / "dup.txt").string(), "--weight", "2", "--out",
               dir.string()}).code == 2);
}

TEST_CASE("pipeline at u=2 emits every artifact and the summary row") {
    const fs::path dir = support::fresh_dir("cli_pipeline2");
    const RunResult r = run({"pipeline", "--u", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("(10,32,4) meets bound; (6,32,2) meets bound") != std::string::npos);

    for (const char* name :
         {"hadamard_o2.txt", "p_u2.txt", "p_u2.cert.json", "derived_a0.txt",
          "derived_a0.cert.json", "residual_a0.txt", "residual_a0.cert.json", "code_derived.txt",
          "code_derived.report.json", "code_residual.txt", "code_residual.report.json",
          "summary.json", "pipeline.manifest.json"})
        CHECK(fs::exists(dir / name));

    const json summary = json::parse(support::slurp(dir / "summary.json"));
    CHECK(summary["u"] == 2);
    CHECK(summary["hadamard"] == "sylvester:1");
    CHECK(summary["residual"]["code"]["meets_bound"] == true);
    CHECK(summary["derived"]["code"]["meets_bound"] == true);

    const json manifest = json::parse(support::slurp(dir / "pipeline.manifest.json"));
    CHECK(manifest["created"].size() == 12);  // everything except the manifest itself
}

TEST_CASE("pipeline at u=4 matches the quoted summary row") {
    const fs::path dir = support::fresh_dir("cli_pipeline4");
    const RunResult r = run({"pipeline", "--u", "4", "--hadamard", "sylvester:2", "--out",
                             dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("(36,128,16) meets bound; (28,128,12) meets bound") != std::string::npos);
}

TEST_CASE("pipeline refuses an order with no hadamard source") {
    const fs::path dir = support::fresh_dir("cli_pipeline5");
    const RunResult r = run({"pipeline", "--u", "5", "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("no Hadamard matrix source") != std::string::npos);
}

TEST_CASE("identical pipeline invocations are byte-identical") {
    const fs::path a = support::fresh_dir("cli_repro_a");
    const fs::path b = support::fresh_dir("cli_repro_b");
    REQUIRE(run({"pipeline", "--u", "2", "--out", a.string()}).code == 0);
    REQUIRE(run({"pipeline", "--u", "2", "--out", b.string()}).code == 0);
    CHECK(support::slurp(a / "summary.json") == support::slurp(b / "summary.json"));
    CHECK(support::slurp(a / "pipeline.manifest.json") ==
          support::slurp(b / "pipeline.manifest.json"));
    CHECK(support::slurp(a / "p_u2.txt") == support::slurp(b / "p_u2.txt"));
}

TEST_CASE("json mode prints machine-readable reports") {
    const fs::path dir = support::fresh_dir("cli_json");
    REQUIRE(run({"hadamard", "--hadamard", "sylvester:1", "--out", dir.string()}).code == 0);
    const RunResult r = run({"construct", "--u", "2", "--hadamard",
                             (dir / "hadamard_o2.txt").string(), "--out", dir.string(), "--json"});
    REQUIRE(r.code == 0);
    const json cert = json::parse(r.out);
    CHECK(cert["v"] == 16);
    CHECK(cert["k"] == 6);

    const RunResult p = run({"pipeline", "--u", "2", "--out", dir.string(), "--json"});
    REQUIRE(p.code == 0);
    CHECK(json::parse(p.out)["summary_row"].get<std::string>().find("meets bound") !=
          std::string::npos);
}

TEST_CASE("full-triples flag decides the quasi-3 question in the certificate") {
    const fs::path dir = support::fresh_dir("cli_full_triples");
    REQUIRE(run({"hadamard", "--hadamard", "sylvester:1", "--out", dir.string()}).code == 0);
    REQUIRE(run({"construct", "--u", "2", "--hadamard", (dir / "hadamard_o2.txt").string(),
                 "--out", dir.string(), "--full-triples"}).code == 0);
    const json cert = json::parse(support::slurp(dir / "p_u2.cert.json"));
    REQUIRE(cert.contains("global_triple_spectrum"));
    REQUIRE(cert.contains("quasi3"));

    const fs::path plain = support::fresh_dir("cli_no_triples");
    REQUIRE(run({"construct", "--u", "2", "--hadamard", (dir / "hadamard_o2.txt").string(),
                 "--out", plain.string()}).code == 0);
    CHECK_FALSE(json::parse(support::slurp(plain / "p_u2.cert.json")).contains("quasi3"));
}

TEST_CASE("argument errors exit with code 2 and help exits 0") {
    CHECK(run({}).code == 2);                       // missing subcommand
    CHECK(run({"transmogrify"}).code == 2);         // unknown subcommand
    CHECK(run({"construct", "--u", "4"}).code == 2);  // missing required option
    CHECK(run({"pipeline", "--u", "2", "--frobnicate"}).code == 2);
    const RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("pipeline") != std::string::npos);
}
