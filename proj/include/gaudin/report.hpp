#ifndef GAUDIN_REPORT_HPP
#define GAUDIN_REPORT_HPP

// JSON serialization for every user-facing report. All rationals travel as
// exact "p/q" strings; floating-point approximations are confined to fields
// whose names say so. Field and entry order is deterministic so identical
// inputs always produce byte-identical documents.

#include <json.hpp>

#include <string>

#include "gaudin/duality.hpp"
#include "gaudin/repmodule.hpp"
#include "gaudin/tensor.hpp"
#include "gaudin/weight.hpp"

namespace gaudin {

using Json = nlohmann::ordered_json;

// {"eps": [[2r, "p/q"], ...], "level": "p/q"}, eps sorted by doubled index
// ascending.
Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

// Versioned dump of a built module: block table, per-generator action
// triplets [row, col, "p/q"], Gram triplets, completion status. Windowed
// modules mark blocks whose image leaves the window instead of guessing.
Json module_to_json(const RepModule& m, bool with_actions, bool with_gram);

Json unitarity_to_json(const UnitarityReport& r);

// One record per marked point for the mu block: exact characteristic
// polynomial of the restricted Hamiltonian, diagonalizability verdict, and
// numeric eigenvalues for human reading (approximate field only).
Json spectrum_reports(const TensorSystem& sys, const Weight& mu, int digits);

// Case files: {"type","m","n","k","partitions","levels","mu","z"}. Malformed
// documents raise std::invalid_argument with a description of the bad field.
CorrespondenceCase case_from_json(const Json& j);
Json case_to_json(const CorrespondenceCase& c);

Json comparison_to_json(const ComparisonReport& r);
Json bridge_to_json(const BridgeReport& r);

// Writes through a sibling temporary file and renames over the target, so a
// reader never observes a partially written document.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace gaudin

#endif
