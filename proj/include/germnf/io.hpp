#pragma once

#include <string>
#include <vector>

#include "germnf/jet.hpp"
#include "germnf/pipeline.hpp"

namespace germnf {

/// One coefficient of f - id in the input document.
struct CoeffRecord {
    int component = 1; // 1 or 2
    int e1 = 0, e2 = 0;
    GaussQ value;
};

/// Validated input: the map f = id + sum of records, described exactly.
struct InputDocument {
    int truncation_degree = 2;
    std::vector<CoeffRecord> map_minus_id;
};

/// Parse and validate UTF-8 JSON of the form
///   {"truncation_degree": D, "map_minus_id": [{"component":1,"e1":2,"e2":0,
///    "re":"0/1","im":"1/1"}, ...]}
/// Rationals are "p/q" strings (bare integers allowed). Throws parse_error
/// with a field diagnostic on malformed JSON, unknown or missing keys,
/// out-of-range exponents, zero denominators, or duplicate monomials.
InputDocument parse_input(const std::string& bytes);

/// The document as a jet truncated at the working degree. Records beyond that
/// degree fall outside the computed jet.
JetMap document_to_jet(const InputDocument& doc, int working_degree);

struct RunOptions {
    int degree = 10;
    bool case_only = false;
    bool permissive_scale = false;
    bool verify = true;
    bool text_format = false;
};

struct RunResult {
    int exit_code = 0;       // 0 ok, 2 parse, 3 hypotheses, 4 missing root, 5 certificate
    std::string output;      // report, canonical bytes
    std::string diagnostics; // stderr text
};

/// The whole batch front end as a pure function of (document bytes, options):
/// identical inputs produce byte-identical results.
RunResult run_document(const std::string& bytes, const RunOptions& options);

/// Canonical JSON serialization of a report (sorted keys, monomials in
/// lexicographic order, rationals as "p/q" strings).
std::string report_to_json(const NormalFormReport& report);

/// Human-readable rendering with concrete coefficients substituted into the
/// normal-form shape.
std::string report_to_text(const NormalFormReport& report);

} // namespace germnf
