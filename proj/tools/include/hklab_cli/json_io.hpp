#pragma once

#include <json.hpp>

#include "hklab/homeo.hpp"
#include "hklab/involution.hpp"
#include "hklab/ks_orbits.hpp"
#include "hklab/linalg.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/quiver.hpp"
#include "hklab/springer_hecke.hpp"
#include "hklab/verify.hpp"

namespace hklab::io {

using json = nlohmann::json;

// Matrices are {"rows", "cols", "data"} with data row-major; an entry is a number or [re, im].
// A bare list of rows is accepted on input.
json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const json& j);

json jordan_to_json(const JordanType& J);
JordanType jordan_from_json(const json& j);

json spectral_to_json(const SpectralData& s);
SpectralData spectral_from_json(const json& j);

json dims_to_json(const DimensionVector& d);
DimensionVector dims_from_json(const json& j);

json rep_to_json(const QuiverRep& rep);
QuiverRep rep_from_json(const json& j);

json balance_to_json(const BalanceReport& r);
BalanceReport balance_from_json(const json& j);

json encoded_to_json(const EncodedPoint& p);
EncodedPoint encoded_from_json(const json& j);

json trace_to_json(const TracePath& path);
TracePath trace_from_json(const json& j);

json ks_endpoint_to_json(const KsEndpointReport& r);
json ks_table_to_json(const KsTable& t);
json hecke_to_json(const HeckePresentation& h);
json roots_to_json(const RestrictedRootData& r);
json semismall_to_json(const std::vector<SemismallRow>& rows);

json suite_to_json(const SuiteReport& r);
SuiteReport suite_from_json(const json& j);

json equivariance_to_json(const EquivarianceReport& r);

// Full-precision dump; doubles are written in shortest round-trip form.
std::string dump(const json& j);

json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace hklab::io
