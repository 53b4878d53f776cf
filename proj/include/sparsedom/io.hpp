#pragma once

#include <json.hpp>

#include "sparsedom/dominate.hpp"
#include "sparsedom/generators.hpp"

namespace sparsedom {

// Ordered JSON keeps report files byte-stable across runs.
using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);  // "p/q"
Rational rational_from_json(const Json& j);

Json cube_to_json(const DyadicCube& q);  // {u, j, m}
DyadicCube cube_from_json(const Json& j);

Json box_to_json(const Box& b);  // {lo, hi}
Box box_from_json(const Json& j);

Json grid_to_json(const GridSpec& g);  // {d, root, J}
GridSpec grid_from_json(const Json& j);

Json q_to_json(double q);  // number or "inf"
double q_from_json(const Json& j);

// In-memory field: {grid, n, q, values} or {grid, n, q, generator, seed?}.
Json field_to_json(const SampledFunction& f);
SampledFunction field_from_json(const Json& j);

// Field files: JSON header next to a binary or CSV payload
// (little-endian 64-bit floats, cell index row-major).
void save_field(const SampledFunction& f, const std::string& header_path,
                const std::string& payload_format);
SampledFunction load_field(const std::string& header_path);

Json certificate_to_json(const OscillationCertificate& c);

Json collection_to_json(const SparseCollection& s);
SparseCollection collection_from_json(const Json& j);

Json shift_to_json(const ShiftSpec& s);
ShiftSpec shift_from_json(const Json& j);

Json general_shift_to_json(const GeneralShiftSpec& s);
GeneralShiftSpec general_shift_from_json(const Json& j);

Json kernel_to_json(const KernelSpec& k);
KernelSpec kernel_from_json(const Json& j);

Json ap_report_to_json(const ApReport& r);
Json domination_report_to_json(const DominationReport& r);
Json a2_experiment_to_json(const A2Experiment& e);
Json verify_report_to_json(const VerifyReport& r);

}  // namespace sparsedom
