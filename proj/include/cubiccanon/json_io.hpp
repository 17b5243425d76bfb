#ifndef CUBICCANON_JSON_IO_HPP
#define CUBICCANON_JSON_IO_HPP

#include <string>

#include "cubiccanon/invariants.hpp"
#include "cubiccanon/normalize.hpp"

namespace cubiccanon {

/// Schema version 1. Key order is fixed:
///   ClassificationResult: schema_version, family, params, scale, map,
///                         canonical_text, residual
///   InvariantReport: schema_version, cusp, isol, node, red,
///                    sing_complex, nonisolated_singular_locus
/// (plus "degenerate" on reports that carry such levels).
std::string to_json(const ClassificationResult& result);
std::string to_json(const InvariantReport& report);

ClassificationResult classification_from_json(const std::string& text);
InvariantReport invariant_report_from_json(const std::string& text);

}  // namespace cubiccanon

#endif
