#pragma once

#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expmom/moment_vector.hpp"
#include "expmom/poly2.hpp"
#include "expmom/semialgebraic.hpp"

namespace expmom {

// Insertion-ordered JSON keeps emitted documents byte-stable.
using Json = nlohmann::ordered_json;

// Wire formats. Parsing is strict: unknown fields, wrong types, and
// inconsistent shape data are rejected with std::invalid_argument.
//   Poly2:            {"degree": N, "coeffs": [[i, j, c], ...]}
//   SemiAlgebraicSet: {"box": [xmin, xmax, ymin, ymax], "constraints": [Poly2...]}
//   MomentVector:     {"order": N, "entries": [a_00, a_10, a_01, ...]}
//   complex:          {"re": x, "im": y}
Json poly2_to_json(const Poly2& p);
Poly2 poly2_from_json(const Json& j);

Json set_to_json(const SemiAlgebraicSet& s);
SemiAlgebraicSet set_from_json(const Json& j);

Json moments_to_json(const MomentVector& a);
MomentVector moments_from_json(const Json& j);

Json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);

// Rejects json objects carrying keys outside required + optional; rejects
// missing required keys.
void check_fields(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {});

// Pretty serializer that renders every finite double with 17 significant
// digits, so emitted values round-trip exactly.
std::string dump_json_17(const Json& j);

}  // namespace expmom
