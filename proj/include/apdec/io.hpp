#pragma once

#include <string>
#include <vector>

#include "apdec/binomial_poly.hpp"
#include "apdec/gowers.hpp"
#include "apdec/increment.hpp"
#include "apdec/nilmanifold.hpp"
#include "apdec/schmidt.hpp"
#include "apdec/sets.hpp"

// Structured-text (JSON) file formats. Exact rationals travel as "num/den"
// strings; floats are emitted with round-trip precision. Identical inputs and
// seeds produce byte-identical files.

namespace apdec::io {

inline constexpr const char* kVersion = "0.1.0";

// Polynomial records: {"basis": "binomial"|"monomial", "coeffs": ["1/3", ...]}.
// Monomial input is converted on ingestion; binomial is canonical.
std::string poly_to_json(const BinomialPoly& p);
BinomialPoly poly_from_json_text(const std::string& text);

std::vector<BinomialPoly> read_polys_file(const std::string& path);
void write_polys_file(const std::string& path,
                      const std::vector<BinomialPoly>& polys);

std::vector<Rat> read_alphas_file(const std::string& path);

// Sequence files: {"seqs": [{"group": "torus:2"|"heisenberg",
//                            "degree": k, "coords": [<poly>, ...]}]}
std::vector<NilPolySeq> read_seqs_file(const std::string& path);

// Function files: {"n": 5, "set": [1,2,4]} or
// {"domain": "interval"|"cyclic", "values": [[re,im]|re, ...]}.
GridFunction read_function_file(const std::string& path);

// Set files: {"n": N, "set": [..sorted..], "kind": "...",
//             "verified_3ap_free": bool}.
SetResult read_set_file(const std::string& path);
void write_set_file(const std::string& path, const SetResult& set);

// Constructor shorthand accepted wherever a set file is expected:
// "salem-spencer:<base>:<digits>", "behrend:<d>:<side>",
// "random:<n>:<density>:<seed>", "interval:<n>".
SetResult load_set(const std::string& path_or_spec);

// FNV-1a of the canonical config string; embedded in every report.
std::string config_hash(const std::string& canonical);

std::string decomposition_report(const Decomposition& dec,
                                 const std::string& config);
std::string nil_report(const NilDecomposeResult& res, const std::string& config);
std::string witness_report(const SchmidtWitness& w, const std::string& config);
std::string scaling_report_json(const ScalingReport& rep,
                                const std::string& config);
std::string scaling_report_csv(const ScalingReport& rep);
std::string trace_report(const RunTrace& trace, const std::string& config);
std::string smallint_report(const SmoothnessDiameterReport& rep,
                            const std::string& config);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace apdec::io
