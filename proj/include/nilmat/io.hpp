// JSON forms of matrices, presentations, subgroups and reports. Integers
// are decimal strings, rationals "p/q" strings, generator indices 1-based.
//
// Every from_json throws std::invalid_argument on malformed input.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nilmat/distortion.hpp"
#include "nilmat/jennings.hpp"
#include "nilmat/nickel.hpp"
#include "nilmat/presentation.hpp"

namespace nilmat::io {

using Json = nlohmann::ordered_json;

std::string rational_string(const Rational& r);
Rational parse_rational(const std::string& s);
Integer parse_integer(const Json& v);

Json to_json(const UnitriangularMatrix& m);
Json to_json(const IntegerMatrix& m);
/// Integer entries as decimal strings, the rest as "p/q".
Json to_json(const RationalMatrix& m);
UnitriangularMatrix unitriangular_from_json(const Json& j);
IntegerMatrix integer_matrix_from_json(const Json& j);

Json to_json(const NilpotentPresentation& p);
NilpotentPresentation presentation_from_json(const Json& j);

Json to_json(const SubgroupGens& h);
SubgroupGens subgroup_from_json(const Json& j);

Json to_json(const DistortionReport& r);

/// ordering is the basis as exponent vectors.
Json to_json(const EmbeddingResult& r, const JenningsBasis& basis);
/// ordering is the permutation of the module basis.
Json to_json(const NickelEmbedding& r);

/// Basis elements as lists of {"exponents", "coefficient"} terms.
Json to_json(const FunctionModule& m, const NilpotentPresentation& p);

Json to_json(const OrderingReport& r);

/// Parses text and reports the offending input on failure.
Json parse(const std::string& text, const std::string& what);

}  // namespace nilmat::io
