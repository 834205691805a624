#include "arithdyn/roots.hpp"

#include "arithdyn/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace arithdyn {

namespace mp = boost::multiprecision;

namespace {

using Float50 = mp::cpp_bin_float_50;
using Float100 = mp::cpp_bin_float_100;
using Float200 = mp::number<mp::cpp_bin_float<200>, mp::et_off>;

// Minimal complex type usable with multiprecision reals.
template <class T>
struct Cx {
    T re{0}, im{0};

    Cx() = default;
    Cx(T r, T i = T(0)) : re(std::move(r)), im(std::move(i)) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b) {
        // Smith's algorithm keeps the intermediate magnitudes bounded.
        using std::abs;
        if (abs(b.re) >= abs(b.im)) {
            T r = b.im / b.re;
            T den = b.re + b.im * r;
            return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
        }
        T r = b.re / b.im;
        T den = b.re * r + b.im;
        return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
    }
};

template <class T>
T modulus(const Cx<T>& z) {
    using std::abs;
    using std::sqrt;
    T a = abs(z.re), b = abs(z.im);
    if (a < b) std::swap(a, b);
    if (a == 0) return T(0);
    T r = b / a;
    return a * sqrt(T(1) + r * r);
}

template <class T>
T from_int(const Int& c) {
    if constexpr (std::is_same_v<T, long double>) {
        return std::stold(c.get_str());
    } else {
        return T(c.get_str());
    }
}

template <class T>
T epsilon() {
    return std::numeric_limits<T>::epsilon();
}

// p(z) and p'(z) by Horner; coefficients low-to-high.
template <class T>
void horner(const std::vector<T>& a, const Cx<T>& z, Cx<T>& p, Cx<T>& dp) {
    p = Cx<T>(a.back());
    dp = Cx<T>(T(0));
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + Cx<T>(a[k]);
    }
}

template <class T>
std::vector<T> convert_coeffs(const IntPoly& p) {
    std::vector<T> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(from_int<T>(c));
    return out;
}

template <class T>
std::vector<Cx<T>> initial_guesses(const std::vector<T>& a) {
    using std::abs;
    using std::pow;
    const std::size_t n = a.size() - 1;
    // Fujiwara bound on the root moduli.
    T bound = T(0);
    for (std::size_t k = 0; k < n; ++k) {
        T ratio = abs(a[k] / a[n]);
        if (k == 0) ratio /= T(2);
        T candidate = T(2) * pow(ratio, T(1) / T(static_cast<double>(n - k)));
        bound = std::max(bound, candidate);
    }
    if (bound == T(0)) bound = T(1);
    const T radius = bound / T(2);
    const T center = -a[n - 1] / (T(static_cast<double>(n)) * a[n]);
    std::vector<Cx<T>> z(n);
    const long double pi = std::numbers::pi_v<long double>;
    for (std::size_t k = 0; k < n; ++k) {
        const long double theta = 2 * pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
        z[k] = Cx<T>(center + radius * T(std::cos(theta)), radius * T(std::sin(theta)));
    }
    return z;
}

// Gauss-Seidel Aberth-Ehrlich sweeps; returns true once every correction is
// at the working-precision noise floor.
template <class T>
bool aberth(const std::vector<T>& a, std::vector<Cx<T>>& z, int max_iter) {
    const std::size_t n = z.size();
    const T eps = epsilon<T>();
    for (int it = 0; it < max_iter; ++it) {
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            Cx<T> p, dp;
            horner(a, z[i], p, dp);
            if (p.re == 0 && p.im == 0) continue;
            Cx<T> ratio = p / dp;
            Cx<T> sum(T(0));
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) sum = sum + Cx<T>(T(1)) / (z[i] - z[j]);
            Cx<T> w = ratio / (Cx<T>(T(1)) - ratio * sum);
            z[i] = z[i] - w;
            const T scale = std::max(T(1), modulus(z[i]));
            if (modulus(w) > T(64) * eps * scale) converged = false;
        }
        if (converged) return true;
    }
    return false;
}

// Inclusion radii n |W_i| with a rounding allowance on the evaluation of P.
template <class T>
std::vector<T> inclusion_radii(const std::vector<T>& a, const std::vector<Cx<T>>& z) {
    const std::size_t n = z.size();
    const T eps = epsilon<T>();
    std::vector<T> radii(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cx<T> p(a.back());
        T absval = abs(a.back());
        const T zm = modulus(z[i]);
        for (std::size_t k = n; k-- > 0;) {
            p = p * z[i] + Cx<T>(a[k]);
            absval = absval * zm + abs(a[k]);
        }
        const T nt = T(static_cast<double>(n));
        const T pmag = modulus(p) + T(4) * (nt + T(1)) * eps * absval;
        Cx<T> prod(a.back());
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) prod = prod * (z[i] - z[j]);
        T denom = modulus(prod) * (T(1) - T(4) * nt * eps);
        radii[i] = denom > T(0) ? nt * pmag / denom : std::numeric_limits<T>::infinity();
    }
    return radii;
}

template <class T>
bool disjoint(const std::vector<Cx<T>>& z, const std::vector<T>& r) {
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (!(modulus(z[i] - z[j]) > r[i] + r[j])) return false;
    return true;
}

template <class From, class To>
std::vector<Cx<To>> lift(const std::vector<Cx<From>>& z) {
    std::vector<Cx<To>> out;
    out.reserve(z.size());
    for (const auto& v : z) out.emplace_back(To(v.re), To(v.im));
    return out;
}

template <class T>
RootReport make_report(const std::vector<Cx<T>>& z, const std::vector<T>& r, unsigned digits) {
    RootReport report;
    report.precision_digits = digits;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const long double re = static_cast<long double>(z[i].re);
        const long double im = static_cast<long double>(z[i].im);
        const T storage = modulus(Cx<T>(z[i].re - T(re), z[i].im - T(im)));
        report.roots.push_back({Complex(re, im), static_cast<long double>(r[i] + storage) *
                                                     (1 + 4 * std::numeric_limits<long double>::epsilon())});
    }
    return report;
}

template <class T>
bool certified(const std::vector<Cx<T>>& z, const std::vector<T>& r, long double tol) {
    const T t(tol);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (!(r[i] + T(2) * modulus(z[i]) * T(std::numeric_limits<long double>::epsilon()) < t)) return false;
    return disjoint(z, r);
}

}  // namespace

long double RootReport::max_radius() const {
    long double m = 0;
    for (const auto& r : roots) m = std::max(m, r.radius);
    return m;
}

RootReport complex_roots(const IntPoly& p, long double tol) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidInput, "complex_roots needs degree >= 1");
    if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (!is_squarefree(p))
        throw Error(ErrorKind::RepeatedRoot,
                    "polynomial " + p.to_string() + " has a repeated root; deflate with the exact gcd (squarefree_part)");

    const std::size_t n = static_cast<std::size_t>(p.degree());
    if (n == 1) {
        Rational root(-p[0], p[1]);
        root.canonicalize();
        Float100 exact(root.get_num().get_str());
        exact /= Float100(root.get_den().get_str());
        const long double center = static_cast<long double>(exact);
        const long double err = static_cast<long double>(abs(exact - Float100(center)));
        RootReport report;
        report.precision_digits = 100;
        report.roots.push_back({Complex(center, 0), err});
        return report;
    }

    // Stage 1: native extended precision.
    const auto a_ld = convert_coeffs<long double>(p);
    auto z_ld = initial_guesses(a_ld);
    aberth(a_ld, z_ld, 800);

    // Certify in 50 digits; escalate precision while radii exceed tol.
    const auto a50 = convert_coeffs<Float50>(p);
    auto z50 = lift<long double, Float50>(z_ld);
    auto r50 = inclusion_radii(a50, z50);
    if (certified(z50, r50, tol)) return make_report(z50, r50, 18);
    aberth(a50, z50, 200);
    r50 = inclusion_radii(a50, z50);
    if (certified(z50, r50, tol)) return make_report(z50, r50, 50);

    const auto a100 = convert_coeffs<Float100>(p);
    auto z100 = lift<Float50, Float100>(z50);
    aberth(a100, z100, 200);
    auto r100 = inclusion_radii(a100, z100);
    if (certified(z100, r100, tol)) return make_report(z100, r100, 100);

    const auto a200 = convert_coeffs<Float200>(p);
    auto z200 = lift<Float100, Float200>(z100);
    aberth(a200, z200, 200);
    auto r200 = inclusion_radii(a200, z200);
    if (certified(z200, r200, tol)) return make_report(z200, r200, 200);

    throw Error(ErrorKind::ResourceLimit,
                "root inclusion radii did not certify below tolerance at 200 digits for " + p.to_string());
}

}  // namespace arithdyn
