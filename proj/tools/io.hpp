#pragma once

#include "arithdyn/dynamics.hpp"
#include "arithdyn/torus.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace arithdyn::io {

using json = nlohmann::ordered_json;

/// Text form of a double with exactly 17 significant digits.
std::string fmt17(double x);

/// JSON text with every float at 17 significant digits; non-finite floats become null.
std::string dump(const json& j, int indent = 2);

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
json load_json_arg(const std::string& arg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Integer from a JSON integer or a decimal string.
Int int_from_json(const json& j);
Int parse_int(const std::string& s);
/// "p/q" or "p"
Rational parse_rational(const std::string& s);
/// Always "num/den".
std::string rational_str(const Rational& q);

/// Comma list, low degree first.
IntPoly parse_poly(const std::string& s);
IntPoly poly_from_json(const json& j);
json poly_to_json(const IntPoly& p);

std::vector<long> parse_long_list(const std::string& s);

/// {"d": int, "U": [...], "V": [...]}; coefficient i multiplies X^{d-i} Y^i.
RationalMap map_from_json(const json& j);
json map_to_json(const RationalMap& f);

/// "a/b" is [a:b], "inf" is [1:0], "a:b:c" (optionally bracketed) is a point of P^k.
ProjPointQ parse_point(const std::string& s);
json point_to_json(const ProjPointQ& x);

json ledger_to_json(const LocalHeightLedger& l);
json global_to_json(const GlobalHeightResult& g);

/// [{"rational": "p/q"} | {"minpoly": [...], "root_index": i}, ...]
TorusPoint torus_point_from_json(const json& j);
TorusCoordinate torus_coordinate_from_json(const json& j);
json torus_coordinate_to_json(const TorusCoordinate& c);

/// "re,im" rows; an optional header line and RFC-4180 quoting are accepted.
std::vector<Complex> read_cloud_csv(const std::string& text);
std::string cloud_to_csv(const std::vector<Complex>& pts);
/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t h);

}  // namespace arithdyn::io
