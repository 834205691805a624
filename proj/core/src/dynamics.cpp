#include "arithdyn/dynamics.hpp"

#include "arithdyn/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace arithdyn {

namespace {

constexpr long double kEpsLd = std::numeric_limits<long double>::epsilon();

Int joint_content(const BinaryForm& u, const BinaryForm& v) {
    Int g = 0;
    for (const auto& c : u.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (const auto& c : v.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

BinaryForm divide_content(const BinaryForm& f, const Int& g) {
    std::vector<Int> c = f.coeffs();
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return BinaryForm(f.degree(), std::move(c));
}

bool is_unit_monomial(const BinaryForm& f, std::size_t index) {
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i == index && abs(f[i]) != 1) return false;
        if (i != index && f[i] != 0) return false;
    }
    return true;
}

// (U(a, b), V(a, b)) / g with g = gcd of the pair; g divides Res for coprime (a, b).
std::pair<Int, Int> step_pair(const RationalMap& f, const Int& a, const Int& b, Int& g) {
    Int u = f.u().eval(a, b), v = f.v().eval(a, b);
    mpz_gcd(g.get_mpz_t(), f.resultant().get_mpz_t(), u.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return {std::move(u), std::move(v)};
}

double log_max_abs(const Int& a, const Int& b) {
    return log_abs(abs(a) >= abs(b) ? a : b);
}

// num / den to long double precision.
long double ratio_ld(const Int& num, const Int& den) {
    mpf_class q(num, 160);
    q /= mpf_class(den, 160);
    const double hi = q.get_d();
    const mpf_class rest = q - mpf_class(hi, 160);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

std::vector<long double> to_ld(const BinaryForm& f) {
    std::vector<long double> out;
    for (const auto& c : f.coeffs()) out.push_back(static_cast<long double>(c.get_d()));
    return out;
}

Complex eval_ld(const std::vector<long double>& c, Complex x, Complex y) {
    // sum c_i x^{d-i} y^i, Horner in the ratio of the smaller coordinate.
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

unsigned steps_for(double bound, unsigned d, double tol) {
    if (bound <= 0) return 0;
    unsigned k = 0;
    double tail = bound / (d - 1.0);
    while (tail > tol) {
        tail /= d;
        ++k;
    }
    return k;
}

}  // namespace

RationalMap::RationalMap(BinaryForm u, BinaryForm v) {
    if (u.degree() != v.degree())
        throw Error(ErrorKind::InvalidInput, "U and V must have a common degree");
    if (u.degree() < 2) throw Error(ErrorKind::InvalidInput, "map degree must be >= 2");
    const Int g = joint_content(u, v);
    if (g == 0) throw Error(ErrorKind::DegenerateMap, "U and V are both zero");
    u_ = divide_content(u, g);
    v_ = divide_content(v, g);
    res_ = arithdyn::resultant(u_, v_);
    if (res_ == 0) throw Error(ErrorKind::DegenerateMap, "Res(U, V) = 0: U and V share a zero");
    bad_primes_ = prime_divisors(res_);
    cofactors_ = nullstellensatz_cofactors(u_, v_);
    constants_ = functoriality_constants(as_morphism());
    const Int l1 = std::max(cofactors_.a_x.l1_norm() + cofactors_.b_x.l1_norm(),
                            cofactors_.a_y.l1_norm() + cofactors_.b_y.l1_norm());
    log_c_inf_ = std::max({constants_.c_upper, log_abs(l1) - log_abs(res_), 0.0});
}

RationalMap RationalMap::power_map(unsigned d) {
    return RationalMap(BinaryForm::x_power(d), BinaryForm::y_power(d));
}

RationalMap RationalMap::quadratic(long c) {
    return RationalMap(BinaryForm(2, {1, 0, c}), BinaryForm(2, {0, 0, 1}));
}

bool RationalMap::is_power_map() const {
    return is_unit_monomial(u_, 0) && is_unit_monomial(v_, degree());
}

std::pair<ProjPointQ, Int> RationalMap::apply_with_gcd(const ProjPointQ& x) const {
    if (x.dim() != 1) throw Error(ErrorKind::InvalidInput, "point must lie in P^1");
    Int g;
    auto [a, b] = step_pair(*this, x[0], x[1], g);
    return {ProjPointQ(std::vector<Int>{std::move(a), std::move(b)}), g};
}

RationalMap RationalMap::compose(const RationalMap& other) const {
    return RationalMap(u_.compose(other.u_, other.v_), v_.compose(other.u_, other.v_));
}

bool RationalMap::same_map(const RationalMap& other) const {
    if (degree() != other.degree()) return false;
    return u_ * other.v_ == other.u_ * v_;
}

std::string RationalMap::to_string() const {
    return "[" + u_.to_string() + " : " + v_.to_string() + "]";
}

bool good_reduction_at(const RationalMap& f, unsigned long p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    return vp(f.resultant(), p) == 0;
}

std::string to_string(OrbitRecord::Status status) {
    switch (status) {
    case OrbitRecord::Status::Escaping: return "escaping";
    case OrbitRecord::Status::Cycle: return "cycle";
    case OrbitRecord::Status::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

OrbitRecord iterate(const RationalMap& f, const ProjPointQ& x, std::size_t n_max, double height_cap) {
    if (x.dim() != 1) throw Error(ErrorKind::InvalidInput, "point must lie in P^1");
    OrbitRecord rec;
    std::unordered_map<ProjPointQ, std::size_t, ProjPointHash> seen;
    rec.points.push_back(x);
    seen.emplace(x, 0);
    if (height(x) > height_cap) {
        rec.status = OrbitRecord::Status::Escaping;
        return rec;
    }
    for (std::size_t k = 0; k < n_max; ++k) {
        auto [next, g] = f.apply_with_gcd(rec.points.back());
        rec.gcds.push_back(g);
        rec.points.push_back(next);
        auto [it, fresh] = seen.emplace(next, k + 1);
        if (!fresh) {
            rec.status = OrbitRecord::Status::Cycle;
            rec.cycle_entry = it->second;
            rec.cycle_length = k + 1 - it->second;
            return rec;
        }
        if (height(next) > height_cap) {
            rec.status = OrbitRecord::Status::Escaping;
            return rec;
        }
    }
    rec.status = OrbitRecord::Status::BudgetExhausted;
    return rec;
}

GlobalHeightResult canonical_height_global(const RationalMap& f, const ProjPointQ& x, double tol,
                                           std::size_t digit_budget) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (x.dim() != 1) throw Error(ErrorKind::InvalidInput, "point must lie in P^1");
    const unsigned d = f.degree();
    const double c = f.constants().c_max();
    const unsigned target = steps_for(c, d, tol);

    Int a = x[0], b = x[1], g;
    unsigned n = 0;
    GlobalHeightResult out;
    while (n < target) {
        const std::size_t digits = std::max(mpz_sizeinbase(a.get_mpz_t(), 10), mpz_sizeinbase(b.get_mpz_t(), 10));
        if (digits * d > digit_budget) {
            out.partial = true;
            out.note = "digit budget " + std::to_string(digit_budget) + " reached at n = " + std::to_string(n) +
                       "; use canonical_height_local";
            break;
        }
        std::tie(a, b) = step_pair(f, a, b, g);
        ++n;
    }
    const double scale = std::pow(static_cast<double>(d), -static_cast<double>(n));
    out.n_used = n;
    out.value = log_max_abs(a, b) * scale;
    out.error = c * scale / (d - 1.0);
    out.rounding = 8 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
    return out;
}

long double archimedean_escape_sum(const RationalMap& f, Complex x, Complex y, unsigned steps) {
    const long double m0 = std::max(std::abs(x), std::abs(y));
    if (!(m0 > 0)) throw Error(ErrorKind::InvalidInput, "escape rate at (0, 0)");
    const auto cu = to_ld(f.u()), cv = to_ld(f.v());
    const long double d = f.degree();
    long double total = std::log(m0);
    x /= m0;
    y /= m0;
    long double weight = 1 / d;
    for (unsigned k = 0; k < steps; ++k) {
        const Complex u = eval_ld(cu, x, y), v = eval_ld(cv, x, y);
        const long double m = std::max(std::abs(u), std::abs(v));
        total += weight * std::log(m);
        x = u / m;
        y = v / m;
        weight /= d;
    }
    return total;
}

LocalHeightLedger canonical_height_local(const RationalMap& f, const ProjPointQ& x, double tol) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (x.dim() != 1) throw Error(ErrorKind::InvalidInput, "point must lie in P^1");
    const unsigned d = f.degree();
    LocalHeightLedger out;

    const double tol_finite = f.bad_primes().empty() ? 0 : tol / 2 / f.bad_primes().size();
    for (unsigned long p : f.bad_primes()) {
        const long e = vp(f.resultant(), p);
        const double logp = std::log(static_cast<double>(p));
        const unsigned k_steps = std::max(1u, steps_for(e * logp, d, tol_finite));
        // Precision drops by v_p(g_k) <= e per step; keep at least e + 1 digits.
        unsigned long prec = (k_steps + 1) * static_cast<unsigned long>(e) + 1;
        Int modulus, pp(static_cast<unsigned long>(p));
        mpz_pow_ui(modulus.get_mpz_t(), pp.get_mpz_t(), prec);
        Int a = x[0] % modulus, b = x[1] % modulus;
        FinitePlaceEntry entry;
        Rational weight(1);
        for (unsigned k = 1; k <= k_steps; ++k) {
            Int u = f.u().eval(a, b) % modulus, v = f.v().eval(a, b) % modulus;
            const long vu = u == 0 ? static_cast<long>(prec) : vp(u, p);
            const long vv = v == 0 ? static_cast<long>(prec) : vp(v, p);
            const long val = std::min(vu, vv);
            if (val > e) throw Error(ErrorKind::InvalidInput, "gcd valuation exceeds v_p(Res)");
            weight /= d;
            entry.log_coefficient -= weight * val;
            Int shift;
            mpz_pow_ui(shift.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(val));
            prec -= static_cast<unsigned long>(val);
            mpz_divexact(modulus.get_mpz_t(), modulus.get_mpz_t(), shift.get_mpz_t());
            mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), shift.get_mpz_t());
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), shift.get_mpz_t());
            a = u % modulus;
            b = v % modulus;
        }
        entry.log_coefficient.canonicalize();
        entry.steps = k_steps;
        entry.value = entry.log_coefficient.get_d() * logp;
        entry.tail_bound = e * logp * std::pow(static_cast<double>(d), -static_cast<double>(k_steps)) / (d - 1.0) +
                           4 * std::numeric_limits<double>::epsilon() * std::abs(entry.value);
        out.finite_places[p] = entry;
    }

    const Int& a = x[0];
    const Int& b = x[1];
    const bool a_big = abs(a) >= abs(b);
    const Complex z0 = a_big ? Complex(a > 0 ? 1 : -1) : Complex(ratio_ld(a, abs(b)));
    const Complex z1 = a_big ? Complex(ratio_ld(b, abs(a))) : Complex(b > 0 ? 1 : -1);
    const double log_c = f.log_archimedean_constant();
    const double tol_arch = tol / 2;
    unsigned k_steps = 1;
    auto allowance = [&](unsigned k) { return static_cast<double>(64 * (d + 1) * (k + 1) * kEpsLd); };
    auto arch_tail = [&](unsigned k) {
        return log_c * std::pow(static_cast<double>(d), -static_cast<double>(k)) / (d - 1.0) + allowance(k);
    };
    while (arch_tail(k_steps) > tol_arch && k_steps < 4096) ++k_steps;
    out.archimedean_steps = k_steps;
    out.archimedean = static_cast<double>(archimedean_escape_sum(f, z0, z1, k_steps)) + log_max_abs(a, b);
    out.archimedean_tail = arch_tail(k_steps) + 4 * std::numeric_limits<double>::epsilon() * std::abs(out.archimedean);

    out.total = out.archimedean;
    out.total_error = out.archimedean_tail;
    for (const auto& [p, entry] : out.finite_places) {
        out.total += entry.value;
        out.total_error += entry.tail_bound;
    }
    return out;
}

double preperiodic_height_bound(const RationalMap& f) {
    const double d = f.degree();
    return f.constants().c_max() * (2 * d - 1) / ((d - 1) * (d - 1));
}

std::vector<ProjPointQ> preperiodic_points_rational(const RationalMap& f, std::size_t cap) {
    const double bound = preperiodic_height_bound(f);
    std::vector<ProjPointQ> candidates;
    try {
        candidates = enumerate_points_log(1, bound, cap);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ResourceLimit) throw;
        std::ostringstream msg;
        msg << "preperiodic search needs every point with h <= " << bound << "; " << e.what();
        throw Error(ErrorKind::ResourceLimit, msg.str());
    }
    const double height_cap = bound + f.constants().c_upper;
    // Distinct points with h <= height_cap number at most (2H + 1)^2.
    const double big_h = std::exp(std::min(height_cap, 20.0));
    const auto n_max = static_cast<std::size_t>(std::min(4 * big_h * big_h + 8 * big_h + 2, 1e8));
    std::vector<ProjPointQ> out;
    for (const auto& x : candidates) {
        const auto rec = iterate(f, x, n_max, height_cap);
        if (rec.status == OrbitRecord::Status::BudgetExhausted)
            throw Error(ErrorKind::ResourceLimit, "orbit of " + x.to_string() + " neither closed nor escaped");
        if (rec.status == OrbitRecord::Status::Cycle) out.push_back(x);
    }
    return out;
}

CommutingReport commuting_height_agreement(const RationalMap& f, const RationalMap& g,
                                           const std::vector<ProjPointQ>& samples, double tol) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (!f.compose(g).same_map(g.compose(f)))
        throw Error(ErrorKind::InvalidInput, "maps do not commute: f o g != g o f");
    CommutingReport rep;
    rep.samples = samples;
    rep.tol = tol;
    for (const auto& x : samples) {
        const double hf = canonical_height_local(f, x, tol / 4).total;
        const double hg = canonical_height_local(g, x, tol / 4).total;
        rep.height_f.push_back(hf);
        rep.height_g.push_back(hg);
        rep.max_gap = std::max(rep.max_gap, std::abs(hf - hg));
    }
    rep.pass = rep.max_gap <= tol;
    return rep;
}

}  // namespace arithdyn
