#include "io.hpp"

#include "arithdyn/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arithdyn::io {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw Error(ErrorKind::InvalidInput, msg);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

void dump_rec(const json& j, int indent, int level, std::string& out) {
    const bool pretty = indent >= 0;
    const std::string pad = pretty ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
    const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
    const char* nl = pretty ? "\n" : "";
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{";
        out += nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",";
                out += nl;
            }
            first = false;
            out += pad + json(it.key()).dump() + (pretty ? ": " : ":");
            dump_rec(it.value(), indent, level + 1, out);
        }
        out += nl + close_pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[";
        out += nl;
        bool first = true;
        for (const auto& v : j) {
            if (!first) {
                out += ",";
                out += nl;
            }
            first = false;
            out += pad;
            dump_rec(v, indent, level + 1, out);
        }
        out += nl + close_pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            return;
        }
        out += fmt17(x);
        return;
    }
    default:
        out += j.dump();
    }
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_double(const std::string& s, double& x) {
    if (s.empty()) return false;
    char* end = nullptr;
    x = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.17g", x);
    return buf;
}

std::string dump(const json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path);
    out << text;
}

json load_json_arg(const std::string& arg) {
    const std::string t = trim(arg);
    const std::string text = !t.empty() && (t[0] == '{' || t[0] == '[') ? t : read_file(t);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

Int parse_int(const std::string& s) {
    std::string t = trim(s);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    Int n;
    if (t.empty() || n.set_str(t, 10) != 0) bad("not an integer: '" + s + "'");
    return n;
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return parse_int(j.dump());
    if (j.is_string()) return parse_int(j.get<std::string>());
    bad("expected an integer, got " + j.dump());
}

Rational parse_rational(const std::string& s) {
    const auto parts = split(s, '/');
    if (parts.size() > 2) bad("not a rational: '" + s + "'");
    const Int den = parts.size() == 2 ? parse_int(parts[1]) : Int(1);
    if (den == 0) bad("zero denominator in '" + s + "'");
    Rational q(parse_int(parts[0]), den);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

IntPoly parse_poly(const std::string& s) {
    std::vector<Int> c;
    for (const auto& part : split(s, ',')) c.push_back(parse_int(part));
    return IntPoly(std::move(c));
}

IntPoly poly_from_json(const json& j) {
    if (!j.is_array()) bad("polynomial must be a JSON array");
    std::vector<Int> c;
    for (const auto& e : j) c.push_back(int_from_json(e));
    return IntPoly(std::move(c));
}

json poly_to_json(const IntPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    for (const auto& part : split(s, ',')) {
        const Int n = parse_int(part);
        if (!n.fits_slong_p()) bad("integer out of range: " + part);
        out.push_back(n.get_si());
    }
    return out;
}

RationalMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("U") || !j.contains("V"))
        bad("map JSON needs \"d\", \"U\" and \"V\"");
    const Int d = int_from_json(j["d"]);
    if (d < 1 || d > 64) bad("map degree out of range");
    const auto deg = static_cast<unsigned>(d.get_ui());
    auto coeffs = [&](const char* key) {
        const json& a = j[key];
        if (!a.is_array() || a.size() != deg + 1)
            bad(std::string("\"") + key + "\" must list d + 1 coefficients");
        std::vector<Int> c;
        for (const auto& e : a) c.push_back(int_from_json(e));
        return BinaryForm(deg, std::move(c));
    };
    return RationalMap(coeffs("U"), coeffs("V"));
}

json map_to_json(const RationalMap& f) {
    json j;
    j["d"] = f.degree();
    json u = json::array(), v = json::array();
    for (unsigned i = 0; i <= f.degree(); ++i) {
        u.push_back(f.u()[i].get_str());
        v.push_back(f.v()[i].get_str());
    }
    j["U"] = u;
    j["V"] = v;
    return j;
}

ProjPointQ parse_point(const std::string& s) {
    std::string t = trim(s);
    if (t == "inf") return ProjPointQ{1, 0};
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
    if (t.find(':') != std::string::npos) {
        std::vector<Int> c;
        for (const auto& part : split(t, ':')) c.push_back(parse_int(part));
        if (c.size() < 2) bad("point needs at least two coordinates");
        return ProjPointQ(std::move(c));
    }
    const auto parts = split(t, '/');
    if (parts.size() > 2) bad("not a point: '" + s + "'");
    const Int b = parts.size() == 2 ? parse_int(parts[1]) : Int(1);
    return ProjPointQ(std::vector<Int>{parse_int(parts[0]), b});
}

json point_to_json(const ProjPointQ& x) {
    json a = json::array();
    for (const auto& c : x.coords()) a.push_back(c.get_str());
    return a;
}

json ledger_to_json(const LocalHeightLedger& l) {
    json fp = json::object();
    for (const auto& [p, e] : l.finite_places) {
        fp[std::to_string(p)] = {{"log_coefficient", rational_str(e.log_coefficient)},
                                 {"value", e.value},
                                 {"tail_bound", e.tail_bound},
                                 {"steps", e.steps}};
    }
    return {{"finite_places", fp},
            {"archimedean", l.archimedean},
            {"archimedean_tail", l.archimedean_tail},
            {"archimedean_steps", l.archimedean_steps},
            {"total", l.total},
            {"total_error", l.total_error}};
}

json global_to_json(const GlobalHeightResult& g) {
    return {{"value", g.value}, {"error", g.error}, {"rounding", g.rounding}, {"n_used", g.n_used}, {"partial", g.partial}, {"note", g.note}};
}

TorusCoordinate torus_coordinate_from_json(const json& j) {
    if (!j.is_object()) bad("torus coordinate must be an object");
    if (j.contains("rational")) {
        if (!j["rational"].is_string() && !j["rational"].is_number_integer())
            bad("\"rational\" must be a \"p/q\" string");
        const std::string s = j["rational"].is_string() ? j["rational"].get<std::string>() : j["rational"].dump();
        return TorusCoordinate(parse_rational(s));
    }
    if (j.contains("minpoly")) {
        std::size_t idx = 0;
        if (j.contains("root_index")) {
            if (!j["root_index"].is_number_unsigned()) bad("\"root_index\" must be a nonnegative integer");
            idx = j["root_index"].get<std::size_t>();
        }
        return TorusCoordinate(AlgebraicNumber(poly_from_json(j["minpoly"])), idx);
    }
    bad("torus coordinate needs \"rational\" or \"minpoly\"");
}

TorusPoint torus_point_from_json(const json& j) {
    if (!j.is_array()) bad("torus point must be a JSON array");
    std::vector<TorusCoordinate> c;
    for (const auto& e : j) c.push_back(torus_coordinate_from_json(e));
    return TorusPoint(std::move(c));
}

json torus_coordinate_to_json(const TorusCoordinate& c) {
    if (c.is_rational()) return {{"rational", rational_str(c.rational())}};
    return {{"minpoly", poly_to_json(c.algebraic().minpoly())}, {"root_index", c.root_index()}};
}

std::vector<Complex> read_cloud_csv(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = csv_split(line);
        double re = 0, im = 0;
        const bool ok = f.size() >= 2 && parse_double(f[0], re) && parse_double(f[1], im);
        if (!ok) {
            if (out.empty() && lineno == 1) continue;
            bad("bad point row " + std::to_string(lineno) + ": '" + line + "'");
        }
        out.emplace_back(re, im);
    }
    return out;
}

std::string cloud_to_csv(const std::vector<Complex>& pts) {
    std::string s = "re,im\r\n";
    for (const auto& z : pts) s += fmt17(static_cast<double>(z.real())) + "," + fmt17(static_cast<double>(z.imag())) + "\r\n";
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace arithdyn::io
