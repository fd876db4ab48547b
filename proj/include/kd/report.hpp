#pragma once

// JSON rendering of results. Every top-level document carries a `schema`
// field; key names are stable within a schema version.

#include "kd/chord.hpp"
#include "kd/invariants.hpp"

#include "json.hpp"

#include <string>

namespace kd {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "kdessin/1";
inline constexpr const char* kEngineVersion = "1.0.0";

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
Json big_to_json(const BigInt& x);

/// {"text": ..., "terms": [[exponent, coefficient], ...]} by descending exponent.
Json poly_to_json(const LaurentPoly& p, char var = 'A');
Json counts_to_json(const Counts& c);
Json quasi_trees_to_json(const QuasiTreeCounts& q);
Json determinant_to_json(const DeterminantReport& r);
Json coefficients_to_json(const CoefficientTable& t);

/// Indented `key: value` lines; objects nest, scalar arrays join with spaces,
/// polynomials print their text.
std::string render_plain(const Json& doc);

}  // namespace kd
