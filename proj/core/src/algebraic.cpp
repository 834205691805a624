#include "arithdyn/algebraic.hpp"

#include "arithdyn/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace arithdyn {

AlgebraicNumber::AlgebraicNumber(const IntPoly& minpoly) : minpoly_(minpoly.primitive()) {
    if (minpoly_.degree() < 1)
        throw Error(ErrorKind::InvalidInput, "minimal polynomial must have degree >= 1");
    if (!is_squarefree(minpoly_))
        throw Error(ErrorKind::RepeatedRoot, "minimal polynomial " + minpoly_.to_string() + " is not squarefree");
}

AlgebraicNumber AlgebraicNumber::deflated(const IntPoly& p) {
    return AlgebraicNumber(squarefree_part(p));
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
    return AlgebraicNumber(IntPoly(std::vector<Int>{-Int(q.get_num()), Int(q.get_den())}));
}

Rational AlgebraicNumber::as_rational() const {
    if (degree() != 1) throw Error(ErrorKind::InvalidInput, "algebraic number of degree " + std::to_string(degree()) + " is not rational");
    Rational q(-minpoly_[0], minpoly_[1]);
    q.canonicalize();
    return q;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (minpoly_[0] == 0) throw Error(ErrorKind::InvalidInput, "zero has no inverse");
    return AlgebraicNumber(minpoly_.reversed());
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p) {
    if (p.degree() < 1) return {};
    // A_0 = P, A_{j} = gcd(A_{j-1}, A_{j-1}'); B_j = A_{j-1} / A_j = prod_{i >= j} f_i.
    std::vector<IntPoly> a{p.primitive()};
    while (a.back().degree() > 0) a.push_back(gcd(a.back(), a.back().derivative()));
    std::vector<IntPoly> b;
    for (std::size_t j = 1; j < a.size(); ++j) b.push_back(*exact_divide(a[j - 1], a[j]));
    b.push_back(IntPoly{1});
    std::vector<IntPoly> f;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) f.push_back(exact_divide(b[j], b[j + 1])->primitive());
    return f;
}

MahlerResult mahler_measure(const IntPoly& p, long double tol) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidInput, "Mahler measure of the zero polynomial");
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    MahlerResult result;
    result.leading_coeff = p.leading();
    const double log_lead = log_abs(p.leading());
    if (p.degree() == 0) {
        result.log_measure = log_lead;
        result.measure = std::exp(log_lead);
        return result;
    }

    const auto factors = squarefree_decomposition(p);
    const long double per_root_tol = tol / static_cast<long double>(p.degree());
    long double arch = 0;
    long double err = 0;
    std::vector<CertifiedRoot> distinct;
    unsigned precision = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1) continue;
        const long double mult = static_cast<long double>(i + 1);
        auto report = complex_roots(factors[i], per_root_tol);
        precision = std::max(precision, report.precision_digits);
        for (const auto& r : report.roots) {
            // log max(1, t) is 1-Lipschitz in t.
            arch += mult * std::log(std::max(1.0L, std::abs(r.center)));
            err += mult * r.radius;
            distinct.push_back(r);
        }
    }
    err += static_cast<long double>(p.degree()) * 4 * std::numeric_limits<long double>::epsilon() * (1 + std::abs(arch));
    result.archimedean_part = static_cast<double>(arch);
    result.log_measure = static_cast<double>(static_cast<long double>(log_lead) + arch);
    result.measure = std::exp(result.log_measure);
    result.error_bound = static_cast<double>(err) + 4 * std::numeric_limits<double>::epsilon() * std::abs(result.log_measure);
    result.roots.roots = std::move(distinct);
    result.roots.precision_digits = precision;
    return result;
}

double height_algebraic(const AlgebraicNumber& xi, long double tol) {
    return mahler_measure(xi.minpoly(), tol).log_measure / xi.degree();
}

double PlaceBreakdown::total() const {
    double s = archimedean;
    for (const auto& [p, v] : finite) s += v;
    return s;
}

PlaceBreakdown local_height_breakdown(const AlgebraicNumber& xi, long double tol) {
    const auto m = mahler_measure(xi.minpoly(), tol);
    const double d = xi.degree();
    PlaceBreakdown out;
    const Int& lead = xi.minpoly().leading();
    for (unsigned long p : prime_divisors(lead))
        out.finite[p] = static_cast<double>(vp(lead, p)) * std::log(static_cast<double>(p)) / d;
    out.archimedean = m.archimedean_part / d;
    out.error_bound = m.error_bound / d;
    return out;
}

RootOfUnityVerdict is_root_of_unity(const AlgebraicNumber& xi, long double tol) {
    RootOfUnityVerdict verdict;
    const IntPoly& p = xi.minpoly();
    if (abs(p.leading()) != 1) {
        verdict.reason = "not an algebraic integer";
        return verdict;
    }
    if (p.degree() <= 200) {
        const auto roots = complex_roots(p, tol);
        for (const auto& r : roots.roots) {
            const long double mod = std::abs(r.center);
            if (mod - r.radius > 1 || mod + r.radius < 1) {
                verdict.reason = "a conjugate has modulus " + std::to_string(static_cast<double>(mod)) + " != 1";
                return verdict;
            }
        }
    }
    for (std::uint64_t m : phi_inverse(xi.degree())) {
        const IntPoly xm = IntPoly::monomial(static_cast<unsigned>(m)) - IntPoly{1};
        if (exact_divide(xm, p)) {
            verdict.is_root_of_unity = true;
            verdict.order = m;
            verdict.reason = "minimal polynomial divides X^" + std::to_string(m) + " - 1";
            return verdict;
        }
    }
    verdict.reason = "minimal polynomial divides no X^m - 1 with phi(m) = " + std::to_string(xi.degree());
    return verdict;
}

LehmerBounds lehmer_bounds(unsigned d, double c, double eps) {
    if (d == 0) throw Error(ErrorKind::InvalidInput, "degree must be >= 1");
    const double dd = d;
    return {1.0 / (4.0 * std::numbers::e * dd * dd * dd), c / std::pow(dd, 1.0 + eps)};
}

std::vector<Rational> power_sums(const IntPoly& p, unsigned count) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidInput, "power sums need degree >= 1");
    const auto n = static_cast<std::size_t>(p.degree());
    // Monic coefficients c_i of X^n + c_1 X^{n-1} + ... + c_n.
    std::vector<Rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = Rational(p[n - i], p.leading());
        c[i].canonicalize();
    }
    std::vector<Rational> s(count + 1, Rational(0));
    for (std::size_t k = 1; k <= count; ++k) {
        Rational acc = 0;
        const std::size_t top = std::min(k - 1, n);
        for (std::size_t i = 1; i <= top; ++i) acc += c[i] * s[k - i];
        if (k <= n) acc += Rational(static_cast<long>(k)) * c[k];
        s[k] = -acc;
    }
    s.erase(s.begin());
    return s;
}

IntPoly poly_from_power_sums(const std::vector<Rational>& sums, unsigned n) {
    if (sums.size() < n) throw Error(ErrorKind::InvalidInput, "not enough power sums");
    std::vector<Rational> c(n + 1, Rational(0));
    c[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational acc = sums[k - 1];
        for (std::size_t i = 1; i < k; ++i) acc += c[i] * sums[k - 1 - i];
        c[k] = -acc / Rational(static_cast<long>(k));
    }
    Int den = 1;
    for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> coeffs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) coeffs[n - i] = Rational(c[i] * den).get_num();
    return IntPoly(std::move(coeffs)).primitive();
}

}  // namespace arithdyn
