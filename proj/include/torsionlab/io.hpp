#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "torsionlab/chain_complex.hpp"
#include "torsionlab/circle.hpp"
#include "torsionlab/spectral.hpp"

namespace torsionlab::io {

using Json = nlohmann::ordered_json;

/// x rounded to `digits` significant decimal digits (non-finite values pass through).
double rounded(double x, int digits);

/// Scalars: "p/q" strings, {"rat": "p/q", "sqrt": ["a/b", ...]} for rat * prod sqrt(a/b),
/// or plain JSON numbers for transcendental magnitudes.
LogMagnitude scalar_from_json(const Json& j);
Json scalar_to_json(const LogMagnitude& m, int digits = 17);

struct ComplexDocument {
  ChainComplexData complex;
  std::optional<HomologyBasisData> homology;
};

/// {"ranks": [...], "boundaries": [rows of ∂_1, rows of ∂_2, ...],
///  "homology": {"q": {"cycles": [[...], ...], "rank": r, "scales": [...]}}}.
/// Throws std::invalid_argument on shape or parse errors.
ComplexDocument complex_from_json(const Json& j);
Json complex_to_json(const ChainComplexData& c, const HomologyBasisData* h = nullptr);

/// Header `kind,nu_n,l1,l2,tol`, its value row, then `k,a_k` rows.
std::string zero_table_csv(const ZeroTable& table, int digits = 12);
ZeroTable zero_table_from_csv(const std::string& text);

Json to_json(const ZetaEvaluation& e, int digits = 12);
Json to_json(const VerificationReport& r, int digits = 12);
Json to_json(const ConeSweep& s, int digits = 12);
Json to_json(const CylinderSweep& s, int digits = 12);

}  // namespace torsionlab::io
