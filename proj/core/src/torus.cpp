#include "arithdyn/torus.hpp"

#include "arithdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace arithdyn {

namespace {

Rational pow_rational(const Rational& q, long e) {
    Rational base = e < 0 ? Rational(1) / q : q;
    Rational out = 1;
    for (long i = 0; i < std::labs(e); ++i) out *= base;
    out.canonicalize();
    return out;
}

// max(|num|, |den|)
Int rational_size(const Rational& q) {
    Int a = abs(q.get_num()), b = abs(q.get_den());
    return a > b ? a : b;
}

double rational_height(const Rational& q) {
    return log_abs(rational_size(q));
}

}  // namespace

std::vector<Complex> sorted_conjugates(const IntPoly& p) {
    std::vector<Complex> out;
    for (const auto& r : complex_roots(p).roots) out.push_back(r.center);
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

TorusCoordinate::TorusCoordinate(const Rational& q) : rational_(q), algebraic_(AlgebraicNumber::rational(q)) {
    rational_->canonicalize();
    if (*rational_ == 0) throw Error(ErrorKind::InvalidInput, "torus coordinates must be nonzero");
}

TorusCoordinate::TorusCoordinate(const AlgebraicNumber& xi, std::size_t root_index)
    : algebraic_(xi), root_index_(root_index) {
    if (xi.minpoly()[0] == 0) throw Error(ErrorKind::InvalidInput, "torus coordinates must be nonzero");
    if (root_index >= xi.degree())
        throw Error(ErrorKind::InvalidInput, "root index " + std::to_string(root_index) + " out of range");
    if (xi.is_rational()) rational_ = xi.as_rational();
}

std::vector<Complex> TorusCoordinate::conjugates() const {
    if (rational_) return {Complex(static_cast<long double>(rational_->get_d()))};
    return sorted_conjugates(algebraic_.minpoly());
}

Complex TorusCoordinate::value() const {
    return conjugates()[root_index_];
}

double TorusCoordinate::height() const {
    if (rational_) return rational_height(*rational_);
    return height_algebraic(algebraic_);
}

std::string TorusCoordinate::to_string() const {
    if (rational_) return rational_->get_str();
    return "root " + std::to_string(root_index_) + " of " + algebraic_.minpoly().to_string();
}

TorusPoint::TorusPoint(std::vector<TorusCoordinate> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorKind::InvalidInput, "torus point needs at least one coordinate");
}

double torus_height(const TorusPoint& x) {
    double s = 0;
    for (const auto& c : x.coords()) s += c.height();
    return s;
}

PushforwardResult monomial_pushforward(const TorusPoint& x, const std::vector<long>& a) {
    if (a.size() != x.dim()) throw Error(ErrorKind::InvalidInput, "exponent vector length differs from the dimension");
    if (std::all_of(a.begin(), a.end(), [](long e) { return e == 0; }))
        throw Error(ErrorKind::InvalidInput, "exponent vector must be nonzero");
    PushforwardResult out;
    double max_h = 0;
    long weight = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double h = x[i].height();
        out.bound_coordinatewise += std::labs(a[i]) * h;
        max_h = std::max(max_h, h);
        weight += std::labs(a[i]);
    }
    out.bound_total = weight * max_h;

    bool all_rational = true;
    for (const auto& c : x.coords()) all_rational = all_rational && c.is_rational();
    if (all_rational) {
        Rational v = 1;
        for (std::size_t i = 0; i < a.size(); ++i) v *= pow_rational(x[i].rational(), a[i]);
        v.canonicalize();
        out.rational = v;
        out.value = Complex(static_cast<long double>(v.get_d()));
        out.cloud = {out.value};
        out.product_polynomial = IntPoly(std::vector<Int>{-Int(v.get_num()), Int(v.get_den())});
        out.height = rational_height(v);
        out.bound_holds = *out.height <= out.bound_coordinatewise + 1e-12;
        return out;
    }

    // Orbit cloud and the chosen image.
    out.value = 1;
    out.cloud = {Complex(1)};
    std::size_t total_degree = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const auto conj = x[i].conjugates();
        out.value *= std::pow(conj[x[i].root_index()], static_cast<int>(a[i]));
        std::vector<Complex> next;
        for (const auto& c : out.cloud)
            for (const auto& z : conj) next.push_back(c * std::pow(z, static_cast<int>(a[i])));
        out.cloud = std::move(next);
        total_degree *= conj.size();
    }

    if (total_degree > kMaxProductDegree) {
        out.notice = "product degree " + std::to_string(total_degree) + " exceeds " +
                     std::to_string(kMaxProductDegree) + "; exact height skipped";
        return out;
    }
    // s_k(prod x_i^{a_i}) over all combinations = prod_i s_{k |a_i|}(x_i^{sign a_i}).
    const auto n = static_cast<unsigned>(total_degree);
    std::vector<Rational> sums(n, Rational(1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const IntPoly& base = x[i].algebraic().minpoly();
        const IntPoly p = a[i] > 0 ? base : base.reversed();
        const auto e = static_cast<unsigned>(std::labs(a[i]));
        const auto s = power_sums(p, n * e);
        for (unsigned k = 1; k <= n; ++k) sums[k - 1] *= s[k * e - 1];
    }
    out.product_polynomial = poly_from_power_sums(sums, n);
    out.height = mahler_measure(*out.product_polynomial).log_measure / n;
    out.bound_holds = *out.height <= out.bound_coordinatewise + 1e-9;
    return out;
}

SubadditivityReport subadditivity_check(const TorusCoordinate& alpha, const TorusCoordinate& beta) {
    SubadditivityReport rep;
    rep.h_alpha = alpha.height();
    rep.h_beta = beta.height();
    rep.bound = rep.h_alpha + rep.h_beta;
    if (alpha.is_rational() && beta.is_rational()) {
        Rational p = alpha.rational() * beta.rational();
        p.canonicalize();
        rep.h_product = rational_height(p);
        rep.exact = true;
        // h(pq) <= h(p) + h(q) holds exactly for the integers max(|num|,|den|).
        rep.holds = rational_size(p) <= rational_size(alpha.rational()) * rational_size(beta.rational());
        return rep;
    }
    const auto push = monomial_pushforward(TorusPoint({alpha, beta}), {1, 1});
    rep.notice = push.notice;
    rep.h_product = push.height;
    rep.holds = !push.height || *push.height <= rep.bound + 1e-9;
    return rep;
}

EmpiricalMeasure coordinate_cloud(const TorusPoint& x, std::size_t i) {
    if (i >= x.dim()) throw Error(ErrorKind::InvalidInput, "coordinate index out of range");
    EmpiricalMeasure nu;
    for (const auto& z : x[i].conjugates()) nu.points.push_back(ProjPointC::affine(z));
    return nu;
}

}  // namespace arithdyn
