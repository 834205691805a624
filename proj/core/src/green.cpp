#include "arithdyn/green.hpp"

#include "arithdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace arithdyn {

namespace {

constexpr long double kEpsLd = std::numeric_limits<long double>::epsilon();
constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

std::vector<long double> coeffs_ld(const BinaryForm& f) {
    std::vector<long double> out;
    for (const auto& c : f.coeffs()) out.push_back(static_cast<long double>(c.get_d()));
    return out;
}

Complex eval_form(const std::vector<long double>& c, Complex x, Complex y) {
    const std::size_t d = c.size() - 1;
    Complex acc = 0;
    if (std::abs(x) >= std::abs(y)) {
        const Complex t = y / x;
        for (std::size_t i = d + 1; i-- > 0;) acc = acc * t + c[i];
        return acc * std::pow(x, static_cast<int>(d));
    }
    const Complex t = x / y;
    for (std::size_t i = 0; i <= d; ++i) acc = acc * t + c[i];
    return acc * std::pow(y, static_cast<int>(d));
}

// Escape rate with cached coefficients.
struct Evaluator {
    std::vector<long double> cu, cv;
    long double d;
    unsigned depth;

    Evaluator(const RationalMap& f, unsigned k) : cu(coeffs_ld(f.u())), cv(coeffs_ld(f.v())), d(f.degree()), depth(k) {}

    long double operator()(Complex x, Complex y) const {
        const long double m0 = std::max(std::abs(x), std::abs(y));
        if (!(m0 > 0)) throw Error(ErrorKind::InvalidInput, "escape rate at (0, 0)");
        long double total = std::log(m0);
        x /= m0;
        y /= m0;
        long double weight = 1 / d;
        for (unsigned k = 0; k < depth; ++k) {
            const Complex u = eval_form(cu, x, y), v = eval_form(cv, x, y);
            const long double m = std::max(std::abs(u), std::abs(v));
            total += weight * std::log(m);
            x = u / m;
            y = v / m;
            weight /= d;
        }
        return total;
    }
};

long double det(const ProjPointC& p, const ProjPointC& q) {
    return std::abs(p.x * q.y - q.x * p.y);
}

// Durand-Kerner on complex coefficients (low to high); used only to seed the optimizer.
std::vector<Complex> rough_roots(std::vector<Complex> c) {
    while (c.size() > 1 && std::abs(c.back()) < 1e-300L) c.pop_back();
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    for (auto& x : c) x /= c[n];
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(1.0L + std::abs(c[0]), kTwoPi * i / n + 0.4L);
    for (int it = 0; it < 500; ++it) {
        long double moved = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex p = 1;
            for (std::size_t k = n; k-- > 0;) p = p * z[i] + c[k];
            Complex q = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) q *= z[i] - z[j];
            if (q == Complex(0)) q = 1e-30L;
            const Complex step = p / q;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-18L) break;
    }
    return z;
}

}  // namespace

EscapeRateField::EscapeRateField(RationalMap f, double tol) : f_(std::move(f)), tol_(tol) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    const double d = f_.degree();
    const double log_c = f_.log_archimedean_constant();
    double tail = log_c / (d - 1);
    while (tail > tol / 10) {
        tail /= d;
        ++depth_;
    }
    error_ = tail + static_cast<double>(64 * (d + 1) * (depth_ + 1) * kEpsLd);
    res_term_ = log_abs(f_.resultant()) / (d * (d - 1));
}

double EscapeRateField::escape_rate(Complex x, Complex y) const {
    return static_cast<double>(Evaluator(f_, depth_)(x, y));
}

std::string to_string(JuliaMembership m) {
    switch (m) {
    case JuliaMembership::Inside: return "inside";
    case JuliaMembership::Outside: return "outside";
    case JuliaMembership::BoundaryUncertain: return "boundary-uncertain";
    }
    return "?";
}

JuliaMembership filled_julia_membership(const EscapeRateField& field, Complex x, Complex y) {
    const double lambda = field.escape_rate(x, y);
    const double margin = field.error();
    if (lambda <= -margin) return JuliaMembership::Inside;
    if (lambda >= margin) return JuliaMembership::Outside;
    return JuliaMembership::BoundaryUncertain;
}

GValue g_pairing(const EscapeRateField& field, const ProjPointC& p1, const ProjPointC& p2) {
    const long double dt = det(p1, p2);
    if (dt == 0) return {true, std::numeric_limits<double>::infinity()};
    const double v = -static_cast<double>(std::log(dt)) + field.escape_rate(p1) + field.escape_rate(p2) -
                     field.resultant_term();
    return {false, v};
}

EmpiricalMeasure EmpiricalMeasure::galois_orbit(const AlgebraicNumber& xi, long double tol) {
    EmpiricalMeasure nu;
    for (const auto& r : complex_roots(xi.minpoly(), tol).roots) nu.points.push_back(ProjPointC::affine(r.center));
    return nu;
}

EmpiricalMeasure EmpiricalMeasure::roots_of_unity(unsigned n, bool primitive_only) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be positive");
    EmpiricalMeasure nu;
    for (unsigned k = 0; k < n; ++k) {
        if (primitive_only && std::gcd(k, n) != 1) continue;
        const long double t = kTwoPi * k / n;
        nu.points.push_back(ProjPointC::affine(Complex(std::cos(t), std::sin(t))));
    }
    return nu;
}

GValue mean_pairing(const EscapeRateField& field, const std::vector<ProjPointC>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw Error(ErrorKind::InvalidInput, "mean pairing needs at least two points");
    const Evaluator lam(field.map(), field.depth());
    long double sum_lambda = 0;
    for (const auto& p : points) sum_lambda += lam(p.x, p.y);
    long double sum_log = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const long double dt = det(points[i], points[j]);
            if (dt == 0) return {true, std::numeric_limits<double>::infinity()};
            sum_log += std::log(dt);
        }
    const long double nn = n;
    const long double v = -2 * sum_log / (nn * (nn - 1)) + 2 * sum_lambda / nn - field.resultant_term();
    return {false, static_cast<double>(v)};
}

double discrepancy(const EscapeRateField& field, const AlgebraicNumber& xi) {
    if (xi.degree() < 2) throw Error(ErrorKind::InvalidInput, "discrepancy needs degree >= 2");
    return mean_pairing(field, EmpiricalMeasure::galois_orbit(xi).points).value;
}

HeightDiscrepancyReport height_discrepancy_check(const EscapeRateField& field, const AlgebraicNumber& xi) {
    if (!field.map().is_power_map())
        throw Error(ErrorKind::UnsupportedScope, "height/discrepancy identity is implemented for power maps only");
    if (xi.degree() < 2) throw Error(ErrorKind::InvalidInput, "discrepancy needs degree >= 2");
    HeightDiscrepancyReport rep;
    const auto mahler = mahler_measure(xi.minpoly());
    const double n = xi.degree();
    rep.lhs = mahler.log_measure / n;

    const auto& roots = mahler.roots.roots;
    std::vector<ProjPointC> pts;
    for (const auto& r : roots) pts.push_back(ProjPointC::affine(r.center));
    rep.d_infinity = mean_pairing(field, pts).value;
    // Root radii move each log-distance by at most (r_i + r_j) / (dist - r_i - r_j).
    long double err = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        err += 2 * roots[i].radius / static_cast<long double>(n);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (i == j) continue;
            const long double r = roots[i].radius + roots[j].radius;
            err += r / (std::abs(roots[i].center - roots[j].center) - r) / (n * (n - 1));
        }
    }

    const IntPoly& p = xi.minpoly();
    const Int& lead = p.leading();
    Int lead_pow;
    mpz_pow_ui(lead_pow.get_mpz_t(), lead.get_mpz_t(), 2 * xi.degree() - 2);
    Rational delta = discriminant(p) / Rational(lead_pow);
    delta.canonicalize();
    std::vector<unsigned long> primes = prime_divisors(Int(delta.get_num()));
    for (unsigned long q : prime_divisors(Int(delta.get_den()))) primes.push_back(q);
    for (unsigned long q : prime_divisors(lead)) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    double finite_sum = 0;
    for (unsigned long q : primes) {
        const double logq = std::log(static_cast<double>(q));
        const auto vd = vp(delta, q);
        const double v_delta = vd.value ? static_cast<double>(*vd.value) : 0;
        const double v_lead = static_cast<double>(vp(lead, q));
        const double dq = v_delta * logq / (n * (n - 1)) + 2 * v_lead * logq / n;
        rep.d_finite[q] = dq;
        finite_sum += dq;
    }
    rep.rhs = (rep.d_infinity + finite_sum) / 2;
    rep.gap = std::abs(rep.lhs - rep.rhs);
    rep.error_bound = static_cast<double>(err) / 2 + field.error() + mahler.error_bound / n +
                      16 * std::numeric_limits<double>::epsilon() * (1 + std::abs(rep.rhs));
    return rep;
}

GValue baker_mean_pairing(const EscapeRateField& field, const std::vector<ProjPointC>& points) {
    return mean_pairing(field, points);
}

double fit_baker_constant(const std::vector<std::pair<unsigned, GValue>>& means) {
    double c = 0;
    for (const auto& [n, g] : means) {
        if (g.infinite || n < 2) continue;
        c = std::max(c, -g.value * n / std::log(static_cast<double>(n)));
    }
    return c;
}

GValue discrete_energy(const EscapeRateField& field, const EmpiricalMeasure& nu) {
    bool distinct = false;
    for (std::size_t i = 1; i < nu.points.size() && !distinct; ++i)
        distinct = det(nu.points[0], nu.points[i]) != 0;
    if (!distinct) throw Error(ErrorKind::InvalidInput, "energy needs at least two distinct points");
    return mean_pairing(field, nu.points);
}

namespace {

// sum_{i<j} log|2 sin((t_i - t_j)/2)| and its gradient.
long double circle_objective(const std::vector<long double>& t, std::vector<long double>* grad) {
    const std::size_t n = t.size();
    long double s = 0;
    if (grad) grad->assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const long double h = (t[i] - t[j]) / 2;
            const long double sn = std::sin(h);
            s += std::log(std::abs(2 * sn));
            if (grad) {
                const long double g = std::cos(h) / sn / 2;
                (*grad)[i] += g;
                (*grad)[j] -= g;
            }
        }
    return s;
}

TransfiniteDiameterResult fekete_circle(const EscapeRateField& field, unsigned n, const FeketeOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<long double> angle(0, kTwoPi);
    TransfiniteDiameterResult best;
    long double best_s = -std::numeric_limits<long double>::infinity();
    std::vector<long double> best_t;
    bool best_conv = false;
    for (unsigned r = 0; r < opt.restarts; ++r) {
        std::vector<long double> t(n);
        for (auto& x : t) x = angle(rng);
        std::vector<long double> g;
        long double s = circle_objective(t, &g);
        long double step = 1e-2L;
        bool conv = false;
        for (unsigned it = 0; it < opt.max_iterations && !conv; ++it) {
            long double gn = 0;
            for (auto x : g) gn = std::max(gn, std::abs(x));
            if (gn < 1e-13L) {
                conv = true;
                break;
            }
            while (true) {
                std::vector<long double> trial(t);
                for (std::size_t i = 0; i < n; ++i) trial[i] += step * g[i];
                std::vector<long double> tg;
                const long double ts = circle_objective(trial, &tg);
                if (std::isfinite(ts) && ts >= s) {
                    conv = ts - s < 1e-15L * (1 + std::abs(s)) && gn < 1e-7L;
                    t = std::move(trial);
                    g = std::move(tg);
                    s = ts;
                    step *= 1.5L;
                    break;
                }
                step /= 2;
                if (step < 1e-20L) {
                    conv = true;
                    break;
                }
            }
        }
        if (s > best_s) {
            best_s = s;
            best_t = t;
            best_conv = conv;
        }
    }
    best.n = n;
    best.converged = best_conv;
    best.restarts = opt.restarts;
    for (auto x : best_t) best.points.push_back(ProjPointC::affine(std::polar(1.0L, x)));
    const long double nn = n;
    best.delta_n = static_cast<double>(std::exp(2 * best_s / (nn * (nn - 1))));
    best.mean_pairing = mean_pairing(field, best.points).value;
    return best;
}

struct AffineObjective {
    const EscapeRateField& field;
    Evaluator lam;
    long double res_term;

    long double lambda(Complex z) const { return lam(z, Complex(1)); }

    // Mean pairing of [z_i : 1]; the gradient is w.r.t. (Re z_i, Im z_i) packed as complex numbers.
    long double value(const std::vector<Complex>& z, std::vector<Complex>* grad) const {
        const std::size_t n = z.size();
        const long double nn = n;
        const long double wpair = 2 / (nn * (nn - 1)), wlam = 2 / nn;
        long double s = 0;
        if (grad) grad->assign(n, Complex(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex dz = z[i] - z[j];
                const long double a = std::norm(dz);
                if (a == 0) return std::numeric_limits<long double>::infinity();
                s -= wpair * std::log(a) / 2;
                if (grad) {
                    const Complex g = -wpair * dz / a;
                    (*grad)[i] += g;
                    (*grad)[j] -= g;
                }
            }
        for (std::size_t i = 0; i < n; ++i) {
            s += wlam * lambda(z[i]);
            if (grad) {
                const long double h = 1e-7L * std::max(1.0L, std::abs(z[i]));
                const long double gx = (lambda(z[i] + h) - lambda(z[i] - h)) / (2 * h);
                const long double gy = (lambda(z[i] + Complex(0, h)) - lambda(z[i] - Complex(0, h))) / (2 * h);
                (*grad)[i] += wlam * Complex(gx, gy);
            }
        }
        return s - res_term;
    }
};

std::vector<Complex> preimages(const std::vector<long double>& cu, const std::vector<long double>& cv, Complex w) {
    const std::size_t d = cu.size() - 1;
    std::vector<Complex> poly(d + 1);
    for (std::size_t k = 0; k <= d; ++k) poly[k] = cu[d - k] - w * cv[d - k];
    return rough_roots(poly);
}

// Backward tree f^{-k}(w) of a point already near the Julia set, at least `count` points.
std::vector<Complex> julia_pool(const RationalMap& f, std::size_t count, std::mt19937_64& rng) {
    const auto cu = coeffs_ld(f.u()), cv = coeffs_ld(f.v());
    std::uniform_real_distribution<long double> u01(-1, 1);
    Complex w(u01(rng), u01(rng));
    for (int it = 0; it < 60; ++it) {
        const auto pre = preimages(cu, cv, w);
        w = pre.empty() ? Complex(u01(rng), u01(rng)) : pre[std::uniform_int_distribution<std::size_t>(0, pre.size() - 1)(rng)];
        if (!(std::abs(w) < 1e6L)) w = Complex(u01(rng), u01(rng));
    }
    std::vector<Complex> level{w};
    while (level.size() < count) {
        std::vector<Complex> next;
        for (const auto& z : level)
            for (const auto& p : preimages(cu, cv, z))
                if (std::abs(p) < 1e6L) next.push_back(p);
        if (next.size() <= level.size()) break;
        level = std::move(next);
    }
    return level;
}

// Coordinate exchange on the pool: maximize sum_{i<j} log|z_i - z_j| - (n-1) sum lambda_i.
std::vector<std::size_t> exchange_search(const std::vector<Complex>& pool, const std::vector<long double>& lam,
                                         std::vector<std::size_t> pick) {
    const std::size_t n = pick.size();
    for (int pass = 0; pass < 50; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            auto score = [&](std::size_t c) {
                long double s = -static_cast<long double>(n - 1) * lam[c];
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const long double a = std::abs(pool[c] - pool[pick[j]]);
                    if (a == 0) return -std::numeric_limits<long double>::infinity();
                    s += std::log(a);
                }
                return s;
            };
            long double current = score(pick[i]);
            for (std::size_t c = 0; c < pool.size(); ++c) {
                const long double sc = score(c);
                if (sc > current + 1e-15L * (1 + std::abs(current))) {
                    current = sc;
                    pick[i] = c;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return pick;
}

TransfiniteDiameterResult fekete_affine(const EscapeRateField& field, unsigned n, const FeketeOptions& opt) {
    const AffineObjective obj{field, Evaluator(field.map(), field.depth()), field.resultant_term()};
    std::mt19937_64 rng(opt.seed);
    const auto pool = julia_pool(field.map(), std::max<std::size_t>(1024, 40 * n), rng);
    if (pool.size() < n) throw Error(ErrorKind::ResourceLimit, "could not sample enough Julia set points");
    std::vector<long double> lam;
    for (const auto& z : pool) lam.push_back(obj.lambda(z));

    long double best_f = std::numeric_limits<long double>::infinity();
    std::vector<Complex> best_z;
    bool best_conv = false;
    std::vector<std::size_t> all(pool.size());
    std::iota(all.begin(), all.end(), 0);
    for (unsigned r = 0; r < opt.restarts; ++r) {
        std::shuffle(all.begin(), all.end(), rng);
        const auto pick = exchange_search(pool, lam, std::vector<std::size_t>(all.begin(), all.begin() + n));
        std::vector<Complex> z;
        for (auto i : pick) z.push_back(pool[i]);
        std::vector<Complex> g;
        long double fv = obj.value(z, &g);
        long double step = 1e-3L;
        bool conv = false;
        unsigned stall = 0;
        for (unsigned it = 0; it < opt.max_iterations && !conv; ++it) {
            while (true) {
                std::vector<Complex> trial(z);
                for (std::size_t i = 0; i < n; ++i) trial[i] -= step * g[i];
                const long double tf = obj.value(trial, nullptr);
                if (std::isfinite(tf) && tf <= fv) {
                    stall = fv - tf < 1e-14L * (1 + std::abs(fv)) ? stall + 1 : 0;
                    z = std::move(trial);
                    fv = obj.value(z, &g);
                    step *= 1.5L;
                    break;
                }
                step /= 2;
                if (step < 1e-18L) {
                    conv = true;
                    break;
                }
            }
            if (stall >= 20) conv = true;
        }
        if (fv < best_f) {
            best_f = fv;
            best_z = z;
            best_conv = conv;
        }
    }
    TransfiniteDiameterResult res;
    res.n = n;
    res.converged = best_conv;
    res.restarts = opt.restarts;
    for (const auto& z : best_z) res.points.push_back(ProjPointC::affine(z));
    res.mean_pairing = static_cast<double>(best_f);
    res.delta_n = static_cast<double>(std::exp(-best_f - field.resultant_term()));
    return res;
}

}  // namespace

TransfiniteDiameterResult transfinite_diameter(const EscapeRateField& field, unsigned n, const FeketeOptions& options) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "transfinite diameter needs n >= 2");
    if (options.restarts == 0) throw Error(ErrorKind::InvalidInput, "need at least one restart");
    auto res = field.map().is_power_map() ? fekete_circle(field, n, options) : fekete_affine(field, n, options);
    res.formula_value = std::exp(-field.resultant_term());
    return res;
}

std::vector<MomentEntry> bilu_moment_test(const EmpiricalMeasure& nu, const std::vector<long>& exponents) {
    std::vector<MomentEntry> out;
    for (long a : exponents) {
        if (a == 0) throw Error(ErrorKind::InvalidInput, "moment exponent must be nonzero");
        MomentEntry e;
        e.exponent = a;
        Complex sum = 0;
        for (const auto& p : nu.points) {
            if (p.is_infinity() || (a < 0 && p.is_zero())) {
                ++e.excluded;
                continue;
            }
            sum += std::pow(p.affine_coordinate(), static_cast<int>(a));
            ++e.used;
        }
        e.magnitude = e.used ? static_cast<double>(std::abs(sum) / static_cast<long double>(e.used)) : 0.0;
        out.push_back(e);
    }
    return out;
}

AnnulusReport annulus_mass_bound(const AlgebraicNumber& xi, double r, long double tol) {
    if (!(r > 1)) throw Error(ErrorKind::InvalidInput, "annulus radius must exceed 1");
    if (xi.minpoly()[0] == 0) throw Error(ErrorKind::InvalidInput, "xi = 0 is not a torus point");
    const auto m = mahler_measure(xi.minpoly(), tol);
    std::size_t outside = 0;
    for (const auto& root : m.roots.roots) {
        const long double a = std::abs(root.center);
        if (a > r || a < 1 / static_cast<long double>(r)) ++outside;
    }
    AnnulusReport rep;
    rep.observed = static_cast<double>(outside) / xi.degree();
    rep.bound = 2 * (m.log_measure / xi.degree()) / std::log(r);
    rep.pass = rep.observed <= rep.bound + 1e-12;
    return rep;
}

}  // namespace arithdyn
