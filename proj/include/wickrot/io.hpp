#pragma once

// Input-document parsing (the JSON curvature schema), document emission for
// the catalog, and JSON report builders for the CLI.

#include <string>

#include "json.hpp"

#include "wickrot/classify.hpp"
#include "wickrot/curvature.hpp"
#include "wickrot/flow.hpp"
#include "wickrot/invariants.hpp"

namespace wick {

using Json = nlohmann::ordered_json;

/// Reads, symmetry-completes and validates a curvature document.
CurvatureBundle parse_input(const std::string& path);

CurvatureBundle parse_document(const Json& doc);

/// Document with every nonzero component listed explicitly; parse_document of
/// the result reproduces the bundle bit-exactly.
Json emit_document(const CurvatureBundle& bundle);

void write_document(const CurvatureBundle& bundle, const std::string& path);

Json config_json(const FlowConfig& config);
Json flow_json(const FlowResult& result);
Json closed_json(const ClosedVerdict& verdict);
Json purity_json(const PurityReport& report);
Json wick_json(const WickVerdict& verdict);
Json invariants_json(const InvariantVector& inv);
Json signature_json(const Signature& sig);

}  // namespace wick
