#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pq3/codes.hpp"
#include "pq3/construction.hpp"
#include "pq3/designs.hpp"
#include "pq3/hadamard.hpp"

namespace pq3::cli {

// FNV-1a over the file bytes; the digest recorded for every artifact so a
// replayed manifest can be checked for byte-identical outputs.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_file(const std::string& path);

// Builds a Hadamard matrix from a source descriptor:
//   sylvester:<k> | paley:<q> | kron:<fileA>,<fileB> | import:<file>
HadamardMatrix resolve_hadamard_spec(const std::string& spec);

// Descriptor for the smallest standard source of an order-u matrix, used by
// the pipeline when no explicit source is given.
std::string default_hadamard_spec(int u);

struct HadamardArgs {
    std::string spec;
    std::string out_dir;
    bool json = false;
};

struct ConstructArgs {
    int u = 0;
    std::string hadamard_file;
    std::string out_dir;
    bool full_triples = false;
    bool json = false;
};

struct DeriveArgs {
    std::string design_file;
    int anchor = 0;
    std::string kind;  // "derived" or "residual"
    std::string out_dir;
    bool json = false;
};

struct CodeArgs {
    std::string design_file;
    std::string out_dir;
    bool json = false;
};

struct DecodeArgs {
    std::string code_file;
    long long weight = -1;
    std::string out_dir;
    bool json = false;
};

struct PipelineArgs {
    int u = 0;
    std::string spec;  // optional; default_hadamard_spec(u) when empty
    std::string out_dir;
    bool full_triples = false;
    bool json = false;
};

// Each command writes its artifacts plus <command>.manifest.json into the
// output directory and prints a summary (or JSON with json=true) to `out`.
// Nothing is written unless every verification gate has passed.
void cmd_hadamard(const HadamardArgs& args, std::ostream& out);
void cmd_construct(const ConstructArgs& args, std::ostream& out);
void cmd_derive(const DeriveArgs& args, std::ostream& out);
void cmd_code(const CodeArgs& args, std::ostream& out);
void cmd_decode(const DecodeArgs& args, std::ostream& out);
void cmd_pipeline(const PipelineArgs& args, std::ostream& out);

// Full command-line surface. Returns the process exit code:
// 0 success, 1 verification failure, 2 input or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pq3::cli
