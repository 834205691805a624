#include "commands.hpp"

#include "arithdyn/error.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>

namespace arithdyn::cli {

namespace {

using io::fmt17;

double rounding(double v) {
    return 8 * DBL_EPSILON * std::max(1.0, std::abs(v));
}

json complex_json(Complex z) {
    return {{"re", static_cast<double>(z.real())}, {"im", static_cast<double>(z.imag())}};
}

// --map JSON or --power d, exactly one.
struct MapSource {
    std::string map;
    unsigned power = 0;

    void attach(CLI::App* sub) {
        auto* g = sub->add_option_group("map source");
        g->add_option("--map", map, "map JSON (inline or file)");
        g->add_option("--power", power, "power map [X^d : Y^d]")->check(CLI::Range(2u, 64u));
        g->require_option(1);
    }
    RationalMap build() const {
        return map.empty() ? RationalMap::power_map(power) : io::map_from_json(io::load_json_arg(map));
    }
};

std::vector<ProjPointC> affine_points(const std::vector<Complex>& zs) {
    std::vector<ProjPointC> out;
    for (const auto& z : zs) out.push_back(ProjPointC::affine(z));
    return out;
}

std::vector<Complex> affine_cloud(const std::vector<ProjPointC>& pts) {
    std::vector<Complex> out;
    for (const auto& p : pts)
        if (!p.is_infinity()) out.push_back(p.affine_coordinate());
    return out;
}

json gvalue_json(const GValue& g) {
    return g.infinite ? json(nullptr) : json(g.value);
}

EmpiricalMeasure family_measure(const std::string& family) {
    const auto colon = family.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "--family must look like kind:argument");
    const std::string kind = family.substr(0, colon), arg = family.substr(colon + 1);
    if (kind == "rou" || kind == "primitive") {
        const Int n = io::parse_int(arg);
        if (n < 1 || n > 10'000'000) throw Error(ErrorKind::InvalidInput, "root-of-unity order out of range");
        return EmpiricalMeasure::roots_of_unity(static_cast<unsigned>(n.get_ui()), kind == "primitive");
    }
    if (kind == "poly") return EmpiricalMeasure::galois_orbit(AlgebraicNumber(io::parse_poly(arg)));
    if (kind == "cloud") {
        EmpiricalMeasure nu;
        nu.points = affine_points(io::read_cloud_csv(io::read_file(arg)));
        return nu;
    }
    throw Error(ErrorKind::InvalidInput, "unknown family kind '" + kind + "' (rou, primitive, poly, cloud)");
}

Command height_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("height", "naive height of a rational point");
    auto point = std::make_shared<std::string>();
    sub->add_option("--point", *point, "a/b, inf, or a:b:c")->required();
    return {sub, "height", [point] {
        const ProjPointQ x = io::parse_point(*point);
        const double h = height(x);
        Outcome o;
        o.result = {{"point", io::point_to_json(x)}, {"H", x.exp_height().get_str()}, {"height", h},
                    {"error", rounding(h)}};
        o.error_bounds = {{"height", rounding(h)}};
        return o;
    }};
}

Command enumerate_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("enumerate", "points of P^k(Q) with H <= B as CSV");
    struct Opts {
        unsigned k = 1;
        std::int64_t bound = 1;
        std::size_t cap = kDefaultEnumerationCap;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--k", o->k, "dimension")->required()->check(CLI::Range(1u, 16u));
    sub->add_option("--bound", o->bound, "height bound B")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sub->add_option("--cap", o->cap, "maximum number of points")->capture_default_str();
    return {sub, "enumerate", [o] {
        const auto pts = enumerate_points(o->k, o->bound, o->cap);
        Outcome out;
        out.csv_primary = true;
        std::string& s = out.csv;
        for (unsigned i = 0; i <= o->k; ++i) s += "x" + std::to_string(i) + ",";
        s += "H,h\r\n";
        for (const auto& x : pts) {
            for (const auto& c : x.coords()) s += c.get_str() + ",";
            s += x.exp_height().get_str() + "," + fmt17(height(x)) + "\r\n";
        }
        out.result = {{"k", o->k}, {"B", o->bound}, {"count", pts.size()}};
        out.error_bounds = {{"count", 0}};
        return out;
    }};
}

Command schanuel_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("schanuel", "N(B) / (2^k B^{k+1} / zeta(k+1))");
    struct Opts {
        unsigned k = 1;
        std::int64_t bound = 1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--k", o->k, "dimension")->required()->check(CLI::Range(1u, 16u));
    sub->add_option("--bound", o->bound, "height bound B")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 32));
    return {sub, "schanuel", [o] {
        const auto n = count_points(o->k, o->bound);
        const double r = schanuel_ratio(o->k, o->bound);
        Outcome out;
        out.result = {{"k", o->k}, {"B", o->bound}, {"count", n}, {"ratio", r}, {"error", rounding(r)}};
        out.error_bounds = {{"count", 0}, {"ratio", rounding(r)}};
        return out;
    }};
}

Command mahler_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("mahler", "Mahler measure of an integer polynomial");
    struct Opts {
        std::string poly;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--poly", o->poly, "coefficients, low degree first (use --poly=-2,0,1 for a leading minus)")->required();
    sub->add_option("--tol", o->tol, "root tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "mahler", [o] {
        const IntPoly p = io::parse_poly(o->poly);
        const auto m = mahler_measure(p, o->tol);
        json roots = json::array();
        for (const auto& r : m.roots.roots) {
            json z = complex_json(r.center);
            z["radius"] = static_cast<double>(r.radius);
            roots.push_back(z);
        }
        Outcome out;
        out.result = {{"poly", io::poly_to_json(p)},
                      {"measure", m.measure},
                      {"log_measure", m.log_measure},
                      {"error_bound", m.error_bound},
                      {"measure_error_bound", m.measure * std::expm1(m.error_bound)},
                      {"precision_digits", m.roots.precision_digits},
                      {"roots", roots}};
        out.error_bounds = {{"log_measure", m.error_bound}, {"measure", m.measure * std::expm1(m.error_bound)}};
        out.tolerances = {{"tol", o->tol}};
        return out;
    }};
}

Command algheight_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("algheight", "height of an algebraic number, place by place");
    struct Opts {
        std::string poly;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--poly", o->poly, "minimal polynomial, low degree first")->required();
    sub->add_option("--tol", o->tol, "root tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "algheight", [o] {
        const AlgebraicNumber xi(io::parse_poly(o->poly));
        const auto b = local_height_breakdown(xi, o->tol);
        const auto m = mahler_measure(xi.minpoly(), o->tol);
        json places = json::object();
        for (const auto& [p, v] : b.finite) places[std::to_string(p)] = v;
        places["inf"] = b.archimedean;
        Outcome out;
        out.result = {{"minpoly", io::poly_to_json(xi.minpoly())},
                      {"degree", xi.degree()},
                      {"height", b.total()},
                      {"mahler", m.measure},
                      {"places", places},
                      {"error_bound", b.error_bound}};
        out.error_bounds = {{"height", b.error_bound}, {"mahler", m.measure * std::expm1(m.error_bound)}};
        out.tolerances = {{"tol", o->tol}};
        return out;
    }};
}

Command rou_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("rou", "decide whether a root of the polynomial is a root of unity");
    auto poly = std::make_shared<std::string>();
    sub->add_option("--poly", *poly, "minimal polynomial, low degree first")->required();
    return {sub, "rou", [poly] {
        const AlgebraicNumber xi(io::parse_poly(*poly));
        const auto v = is_root_of_unity(xi);
        Outcome out;
        out.result = {{"minpoly", io::poly_to_json(xi.minpoly())},
                      {"is_root_of_unity", v.is_root_of_unity},
                      {"order", v.order ? json(*v.order) : json(nullptr)},
                      {"reason", v.reason}};
        return out;
    }};
}

Command canheight_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("canheight", "canonical height of a rational point");
    struct Opts {
        std::string map, point, method = "local";
        double tol = 1e-8;
        std::size_t budget = kDefaultDigitBudget;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--map", o->map, "map JSON (inline or file)")->required();
    sub->add_option("--point", o->point, "a/b or inf")->required();
    sub->add_option("--tol", o->tol, "target error")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--method", o->method, "global, local or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"global", "local", "both"}));
    sub->add_option("--digit-budget", o->budget, "digit budget of the global method")->capture_default_str();
    return {sub, "canheight", [o] {
        const RationalMap f = io::map_from_json(io::load_json_arg(o->map));
        const ProjPointQ x = io::parse_point(o->point);
        if (x.dim() != 1) throw Error(ErrorKind::InvalidInput, "canheight needs a point of P^1");
        Outcome out;
        out.result = {{"map", io::map_to_json(f)}, {"point", io::point_to_json(x)}, {"method", o->method}};
        out.tolerances = {{"tol", o->tol}, {"digit_budget", o->budget}};
        std::optional<GlobalHeightResult> g;
        std::optional<LocalHeightLedger> l;
        if (o->method != "local") {
            g = canonical_height_global(f, x, o->tol, o->budget);
            out.result["global"] = io::global_to_json(*g);
            out.error_bounds["global"] = g->error + g->rounding;
        }
        if (o->method != "global") {
            l = canonical_height_local(f, x, o->tol);
            out.result["local"] = io::ledger_to_json(*l);
            out.error_bounds["local"] = l->total_error;
        }
        if (g && l) {
            const double gap = std::abs(g->value - l->total);
            out.result["gap"] = gap;
            const double allowed = g->error + g->rounding + l->total_error;
            out.result["combined_error"] = allowed;
            out.result["agree"] = gap <= allowed;
        }
        out.result["value"] = l ? l->total : g->value;
        out.result["error"] = l ? l->total_error : g->error + g->rounding;
        return out;
    }};
}

Command preperiodic_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("preperiodic", "all rational preperiodic points");
    struct Opts {
        std::string map;
        std::size_t cap = kDefaultEnumerationCap;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--map", o->map, "map JSON (inline or file)")->required();
    sub->add_option("--cap", o->cap, "enumeration cap")->capture_default_str();
    return {sub, "preperiodic", [o] {
        const RationalMap f = io::map_from_json(io::load_json_arg(o->map));
        const auto pts = preperiodic_points_rational(f, o->cap);
        json arr = json::array();
        for (const auto& x : pts) arr.push_back(io::point_to_json(x));
        Outcome out;
        out.result = {{"map", io::map_to_json(f)},
                      {"height_bound", preperiodic_height_bound(f)},
                      {"count", pts.size()},
                      {"points", arr}};
        out.error_bounds = {{"points", 0}};
        return out;
    }};
}

Command goodred_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("goodred", "reduction type at each small prime");
    struct Opts {
        std::string map;
        unsigned long primes = 50;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--map", o->map, "map JSON (inline or file)")->required();
    sub->add_option("--primes", o->primes, "list every prime up to this bound")->capture_default_str()->check(CLI::Range(2ul, 1000000ul));
    return {sub, "goodred", [o] {
        const RationalMap f = io::map_from_json(io::load_json_arg(o->map));
        std::vector<unsigned long> ps;
        for (unsigned long p = 2; p <= o->primes; ++p)
            if (is_prime(p)) ps.push_back(p);
        for (unsigned long p : f.bad_primes())
            if (p > o->primes) ps.push_back(p);
        json table = json::array();
        for (unsigned long p : ps)
            table.push_back({{"p", p}, {"good", good_reduction_at(f, p)}, {"valuation", vp(f.resultant(), p)}});
        Outcome out;
        out.result = {{"map", io::map_to_json(f)},
                      {"resultant", f.resultant().get_str()},
                      {"bad_primes", f.bad_primes()},
                      {"table", table}};
        return out;
    }};
}

Command julia_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("julia-sample", "filled Julia membership on a grid, as CSV");
    struct Opts {
        MapSource src;
        unsigned grid = 64;
        std::vector<double> box{-2, 2, -2, 2};
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    o->src.attach(sub);
    sub->add_option("--grid", o->grid, "points per side")->capture_default_str()->check(CLI::Range(2u, 4096u));
    sub->add_option("--box", o->box, "re_min,re_max,im_min,im_max")->delimiter(',')->expected(4)->capture_default_str();
    sub->add_option("--tol", o->tol, "escape-rate tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "julia-sample", [o] {
        if (!(o->box[0] < o->box[1] && o->box[2] < o->box[3])) throw Error(ErrorKind::InvalidInput, "empty box");
        const EscapeRateField field(o->src.build(), o->tol);
        Outcome out;
        out.csv_primary = true;
        out.csv = "re,im,lambda,membership\r\n";
        std::size_t counts[3] = {0, 0, 0};
        const double n = o->grid - 1;
        for (unsigned j = 0; j < o->grid; ++j) {
            const double im = o->box[2] + (o->box[3] - o->box[2]) * j / n;
            for (unsigned i = 0; i < o->grid; ++i) {
                const double re = o->box[0] + (o->box[1] - o->box[0]) * i / n;
                const Complex z(re, im);
                const auto m = filled_julia_membership(field, z, Complex(1));
                ++counts[static_cast<int>(m)];
                out.csv += fmt17(re) + "," + fmt17(im) + "," + fmt17(field.escape_rate(z, Complex(1))) + "," +
                           to_string(m) + "\r\n";
            }
        }
        out.result = {{"grid", o->grid},
                      {"inside", counts[0]},
                      {"outside", counts[1]},
                      {"boundary_uncertain", counts[2]},
                      {"lambda_error", field.error()}};
        out.error_bounds = {{"lambda", field.error()}};
        out.tolerances = {{"tol", o->tol}};
        return out;
    }};
}

Command tdiam_cmd(CLI::App& app, Globals& g) {
    auto* sub = app.add_subcommand("tdiam", "Fekete estimate of the transfinite diameter");
    struct Opts {
        MapSource src;
        unsigned n = 10;
        unsigned restarts = 32;
        unsigned iterations = 3000;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    o->src.attach(sub);
    sub->add_option("--n", o->n, "number of points")->required()->check(CLI::Range(2u, 400u));
    sub->add_option("--restarts", o->restarts, "random restarts")->capture_default_str()->check(CLI::Range(1u, 10000u));
    sub->add_option("--max-iterations", o->iterations, "iterations per restart")->capture_default_str();
    sub->add_option("--tol", o->tol, "escape-rate tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "tdiam", [o, &g] {
        const EscapeRateField field(o->src.build(), o->tol);
        FeketeOptions opt;
        opt.restarts = o->restarts;
        opt.max_iterations = o->iterations;
        opt.seed = g.seed;
        const auto r = transfinite_diameter(field, o->n, opt);
        Outcome out;
        out.result = {{"n", r.n},
                      {"delta_n", r.delta_n},
                      {"formula_value", r.formula_value},
                      {"gap", r.delta_n - r.formula_value},
                      {"mean_pairing", r.mean_pairing},
                      {"converged", r.converged},
                      {"restarts", r.restarts},
                      {"seed", g.seed},
                      {"certified", false},
                      {"note", "delta_n is the best configuration found, a lower bound for the supremum"}};
        out.error_bounds = {{"delta_n", rounding(r.delta_n)}, {"mean_pairing", 2 * field.error() + rounding(r.mean_pairing)},
                            {"formula_value", rounding(r.formula_value)}};
        out.tolerances = {{"tol", o->tol}, {"restarts", o->restarts}, {"max_iterations", o->iterations}};
        out.csv = io::cloud_to_csv(affine_cloud(r.points));
        return out;
    }};
}

Command discrepancy_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("discrepancy", "archimedean discrepancy, and the full identity for power maps");
    struct Opts {
        MapSource src;
        std::string poly;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    o->src.attach(sub);
    sub->add_option("--poly", o->poly, "minimal polynomial, low degree first")->required();
    sub->add_option("--tol", o->tol, "escape-rate tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "discrepancy", [o] {
        const EscapeRateField field(o->src.build(), o->tol);
        const AlgebraicNumber xi(io::parse_poly(o->poly));
        Outcome out;
        out.tolerances = {{"tol", o->tol}};
        out.result = {{"map", io::map_to_json(field.map())}, {"minpoly", io::poly_to_json(xi.minpoly())}};
        if (field.map().is_power_map()) {
            const auto rep = height_discrepancy_check(field, xi);
            json fin = json::object();
            for (const auto& [p, v] : rep.d_finite) fin[std::to_string(p)] = v;
            out.result["d_infinity"] = rep.d_infinity;
            out.result["identity"] = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"gap", rep.gap}, {"d_finite", fin},
                                      {"error_bound", rep.error_bound}};
            out.result["error_bound"] = rep.error_bound;
            out.error_bounds = {{"d_infinity", rep.error_bound}, {"gap", rep.error_bound}};
        } else {
            const double d = discrepancy(field, xi);
            const double err = 2 * field.error() + rounding(d);
            out.result["d_infinity"] = d;
            out.result["error_bound"] = err;
            out.error_bounds = {{"d_infinity", err}};
        }
        return out;
    }};
}

Command baker_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("baker", "mean pairwise pairing against -c log n / n");
    struct Opts {
        MapSource src;
        std::string points;
        unsigned rou = 0;
        double c = 5;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    o->src.attach(sub);
    auto* pts = sub->add_option_group("points source");
    pts->add_option("--points", o->points, "CSV file of re,im rows");
    pts->add_option("--roots-of-unity", o->rou, "all n-th roots of unity")->check(CLI::Range(2u, 100000u));
    pts->require_option(1);
    sub->add_option("--c", o->c, "constant in the bound")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", o->tol, "escape-rate tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "baker", [o] {
        const EscapeRateField field(o->src.build(), o->tol);
        const auto points = o->rou ? EmpiricalMeasure::roots_of_unity(o->rou).points
                                   : affine_points(io::read_cloud_csv(io::read_file(o->points)));
        if (points.size() < 2) throw Error(ErrorKind::InvalidInput, "need at least two points");
        const auto g = baker_mean_pairing(field, points);
        const double n = static_cast<double>(points.size());
        const double bound = -o->c * std::log(n) / n;
        const double err = 2 * field.error() + rounding(g.value);
        Outcome out;
        out.result = {{"test", "baker"},
                      {"n", points.size()},
                      {"statistic", gvalue_json(g)},
                      {"infinite", g.infinite},
                      {"bound", bound},
                      {"pass", !g.infinite && g.value + err >= bound},
                      {"error_bound", err}};
        if (o->rou && field.map().is_power_map()) out.result["expected"] = -std::log(n) / (n - 1);
        out.error_bounds = {{"statistic", err}};
        out.tolerances = {{"tol", o->tol}, {"c", o->c}};
        return out;
    }};
}

Command bilu_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("bilu", "monomial moments of an orbit family, as CSV");
    struct Opts {
        std::string family;
        std::string exponents;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--family", o->family, "rou:n, primitive:n, poly:c0,c1,... or cloud:file.csv")->required();
    sub->add_option("--exponents", o->exponents, "comma list (use --exponents=-1,2 for a leading minus)")->required();
    return {sub, "bilu", [o] {
        const auto nu = family_measure(o->family);
        const auto m = bilu_moment_test(nu, io::parse_long_list(o->exponents));
        Outcome out;
        out.csv_primary = true;
        out.csv = "exponent,magnitude,used,excluded\r\n";
        double worst = 0;
        for (const auto& e : m) {
            out.csv += std::to_string(e.exponent) + "," + fmt17(e.magnitude) + "," + std::to_string(e.used) + "," +
                       std::to_string(e.excluded) + "\r\n";
            worst = std::max(worst, e.magnitude);
        }
        out.result = {{"family", o->family}, {"n", nu.size()}, {"max_magnitude", worst}};
        out.error_bounds = {{"magnitude", 64 * DBL_EPSILON}};
        return out;
    }};
}

Command energy_cmd(CLI::App& app) {
    auto* sub = app.add_subcommand("energy", "discrete energy of a point cloud");
    struct Opts {
        MapSource src;
        std::string cloud;
        double c = 5;
        double tol = 1e-12;
    };
    auto o = std::make_shared<Opts>();
    o->src.attach(sub);
    sub->add_option("--cloud", o->cloud, "CSV file of re,im rows")->required();
    sub->add_option("--c", o->c, "constant in the bound -c log n / n")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", o->tol, "escape-rate tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    return {sub, "energy", [o] {
        const EscapeRateField field(o->src.build(), o->tol);
        EmpiricalMeasure nu;
        nu.points = affine_points(io::read_cloud_csv(io::read_file(o->cloud)));
        const auto e = discrete_energy(field, nu);
        const double n = static_cast<double>(nu.size());
        const double bound = -o->c * std::log(n) / n;
        const double err = 2 * field.error() + rounding(e.value);
        Outcome out;
        out.result = {{"test", "energy"},
                      {"n", nu.size()},
                      {"statistic", gvalue_json(e)},
                      {"infinite", e.infinite},
                      {"bound", bound},
                      {"pass", !e.infinite && e.value + err >= bound},
                      {"error_bound", err}};
        out.error_bounds = {{"statistic", err}};
        out.tolerances = {{"tol", o->tol}, {"c", o->c}};
        return out;
    }};
}

std::vector<Command> torus_cmds(CLI::App& app) {
    auto* torus = app.add_subcommand("torus", "heights and monomial maps on G_m^k");
    torus->require_subcommand(1);
    std::vector<Command> out;

    auto* h = torus->add_subcommand("height", "sum of coordinate heights");
    auto hp = std::make_shared<std::string>();
    h->add_option("--point", *hp, "JSON array of coordinate descriptors")->required();
    out.push_back({h, "torus height", [hp] {
        const TorusPoint x = io::torus_point_from_json(io::load_json_arg(*hp));
        json coords = json::array(), hs = json::array();
        for (const auto& c : x.coords()) {
            coords.push_back(io::torus_coordinate_to_json(c));
            hs.push_back(c.height());
        }
        const double v = torus_height(x);
        const double err = static_cast<double>(x.dim()) * static_cast<double>(kDefaultTolerance) + rounding(v);
        Outcome o;
        o.result = {{"point", coords}, {"coordinate_heights", hs}, {"height", v}, {"error_bound", err}};
        o.error_bounds = {{"height", err}};
        return o;
    }});

    auto* p = torus->add_subcommand("push", "image under z -> prod z_i^{a_i}");
    struct PushOpts {
        std::string point, exponents;
    };
    auto po = std::make_shared<PushOpts>();
    p->add_option("--point", po->point, "JSON array of coordinate descriptors")->required();
    p->add_option("--exponents", po->exponents, "comma list (use --exponents=-1,2 for a leading minus)")->required();
    out.push_back({p, "torus push", [po] {
        const TorusPoint x = io::torus_point_from_json(io::load_json_arg(po->point));
        const auto r = monomial_pushforward(x, io::parse_long_list(po->exponents));
        const double err = r.height ? 2 * static_cast<double>(kDefaultTolerance) + rounding(*r.height) : 0.0;
        Outcome o;
        o.result = {{"rational", r.rational ? json(io::rational_str(*r.rational)) : json(nullptr)},
                    {"product_polynomial", r.product_polynomial ? io::poly_to_json(*r.product_polynomial) : json(nullptr)},
                    {"value", complex_json(r.value)},
                    {"height", r.height ? json(*r.height) : json(nullptr)},
                    {"bound_coordinatewise", r.bound_coordinatewise},
                    {"bound_total", r.bound_total},
                    {"bound_holds", r.bound_holds},
                    {"cloud_size", r.cloud.size()},
                    {"notice", r.notice},
                    {"error_bound", err}};
        o.error_bounds = {{"height", err}};
        o.csv = io::cloud_to_csv(r.cloud);
        return o;
    }});

    auto* s = torus->add_subcommand("subadd", "check h(alpha beta) <= h(alpha) + h(beta)");
    struct SubOpts {
        std::string alpha, beta;
    };
    auto so = std::make_shared<SubOpts>();
    s->add_option("--alpha", so->alpha, "coordinate descriptor JSON")->required();
    s->add_option("--beta", so->beta, "coordinate descriptor JSON")->required();
    out.push_back({s, "torus subadd", [so] {
        const auto a = io::torus_coordinate_from_json(io::load_json_arg(so->alpha));
        const auto b = io::torus_coordinate_from_json(io::load_json_arg(so->beta));
        const auto rep = subadditivity_check(a, b);
        const double err = 2 * static_cast<double>(kDefaultTolerance) + rounding(rep.bound);
        Outcome o;
        o.result = {{"h_alpha", rep.h_alpha},
                    {"h_beta", rep.h_beta},
                    {"h_product", rep.h_product ? json(*rep.h_product) : json(nullptr)},
                    {"bound", rep.bound},
                    {"holds", rep.holds},
                    {"exact", rep.exact},
                    {"notice", rep.notice},
                    {"error_bound", err}};
        o.error_bounds = {{"h_product", err}, {"bound", err}};
        return o;
    }});
    return out;
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app, Globals& globals) {
    std::vector<Command> cmds;
    cmds.push_back(height_cmd(app));
    cmds.push_back(enumerate_cmd(app));
    cmds.push_back(schanuel_cmd(app));
    cmds.push_back(mahler_cmd(app));
    cmds.push_back(algheight_cmd(app));
    cmds.push_back(rou_cmd(app));
    cmds.push_back(canheight_cmd(app));
    cmds.push_back(preperiodic_cmd(app));
    cmds.push_back(goodred_cmd(app));
    cmds.push_back(julia_cmd(app));
    cmds.push_back(tdiam_cmd(app, globals));
    cmds.push_back(discrepancy_cmd(app));
    cmds.push_back(baker_cmd(app));
    cmds.push_back(bilu_cmd(app));
    cmds.push_back(energy_cmd(app));
    for (auto& c : torus_cmds(app)) cmds.push_back(std::move(c));
    return cmds;
}

}  // namespace arithdyn::cli
