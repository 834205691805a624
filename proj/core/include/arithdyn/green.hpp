#pragma once

#include "arithdyn/algebraic.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/roots.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// Point of P^1(C) in homogeneous coordinates (not normalized).
struct ProjPointC {
    Complex x{1, 0};
    Complex y{0, 0};

    static ProjPointC affine(Complex z) { return {z, Complex(1)}; }
    static ProjPointC infinity() { return {Complex(1), Complex(0)}; }
    bool is_infinity() const { return y == Complex(0); }
    bool is_zero() const { return x == Complex(0) && y != Complex(0); }
    /// x / y; only for finite points.
    Complex affine_coordinate() const { return x / y; }
};

/// Homogeneous escape rate of a map, evaluated to a fixed depth K chosen so
/// that the certified tail is at most tol / 10.
class EscapeRateField {
public:
    explicit EscapeRateField(RationalMap f, double tol = 1e-12);

    const RationalMap& map() const { return f_; }
    unsigned degree() const { return f_.degree(); }
    unsigned depth() const { return depth_; }
    double tolerance() const { return tol_; }
    /// Certified bound on |escape_rate - Lambda| (tail plus rounding allowance).
    double error() const { return error_; }
    /// log|Res| / (d (d - 1)).
    double resultant_term() const { return res_term_; }

    /// Lambda(x, y); throws InvalidInput at (0, 0).
    double escape_rate(Complex x, Complex y) const;
    double escape_rate(const ProjPointC& p) const { return escape_rate(p.x, p.y); }

private:
    RationalMap f_;
    double tol_;
    unsigned depth_ = 0;
    double error_ = 0;
    double res_term_ = 0;
};

enum class JuliaMembership { Inside, Outside, BoundaryUncertain };
std::string to_string(JuliaMembership m);

/// Inside if Lambda <= -margin, outside if Lambda >= margin, margin = field.error().
JuliaMembership filled_julia_membership(const EscapeRateField& field, Complex x, Complex y);

/// Value of the pairing, with an explicit marker for the diagonal.
struct GValue {
    bool infinite = false;
    double value = 0;
};

/// G(P1, P2) = -log|x1 y2 - x2 y1| + Lambda(P1) + Lambda(P2) - log|Res| / (d(d-1)).
GValue g_pairing(const EscapeRateField& field, const ProjPointC& p1, const ProjPointC& p2);

/// Equal-weight atomic measure on P^1(C).
struct EmpiricalMeasure {
    std::vector<ProjPointC> points;

    /// Complex conjugates of xi (certified roots of its minimal polynomial).
    static EmpiricalMeasure galois_orbit(const AlgebraicNumber& xi, long double tol = kDefaultTolerance);
    /// exp(2 pi i k / n) for k in [0, n), or only gcd(k, n) = 1 when `primitive_only`.
    static EmpiricalMeasure roots_of_unity(unsigned n, bool primitive_only = false);
    std::size_t size() const { return points.size(); }
};

/// (1 / (n(n-1))) sum_{i != j} G(P_i, P_j); infinite when two points coincide.
GValue mean_pairing(const EscapeRateField& field, const std::vector<ProjPointC>& points);

/// Mean pairing over the complex conjugates of xi. Throws InvalidInput for degree 1.
double discrepancy(const EscapeRateField& field, const AlgebraicNumber& xi);

struct HeightDiscrepancyReport {
    double lhs = 0;  // h(xi)
    double rhs = 0;  // (D_inf + sum_p D_p) / 2
    double gap = 0;
    double d_infinity = 0;
    std::map<unsigned long, double> d_finite;
    double error_bound = 0;
};

/// Power maps only (UnsupportedScope otherwise): D_inf from the complex
/// conjugates, D_p exactly from v_p of the monic discriminant and of the
/// leading coefficient.
HeightDiscrepancyReport height_discrepancy_check(const EscapeRateField& field, const AlgebraicNumber& xi);

/// Mean pairing of `points`; a coincident pair gives an infinite value.
GValue baker_mean_pairing(const EscapeRateField& field, const std::vector<ProjPointC>& points);

/// Least c >= 0 with mean_n >= -c log(n) / n for every finite entry (n >= 2).
double fit_baker_constant(const std::vector<std::pair<unsigned, GValue>>& means);

struct TransfiniteDiameterResult {
    unsigned n = 0;
    double delta_n = 0;        // best found (n(n-1))-th root of the distance product
    double formula_value = 0;  // |Res|^{-1/(d(d-1))}
    double mean_pairing = 0;   // of the best configuration
    std::vector<ProjPointC> points;
    bool converged = false;
    unsigned restarts = 0;
};

struct FeketeOptions {
    unsigned restarts = 32;
    unsigned max_iterations = 3000;
    std::uint64_t seed = 1;
};

/// Estimates delta_n of the filled Julia set by maximizing the normalized
/// distance product (equivalently minimizing the mean pairing). Power maps use
/// angles on the unit circle; other maps optimize affine coordinates started
/// from inverse-iteration samples of the Julia set.
TransfiniteDiameterResult transfinite_diameter(const EscapeRateField& field, unsigned n,
                                               const FeketeOptions& options = {});

/// Mean off-diagonal pairing of nu. Throws InvalidInput with fewer than two distinct points.
GValue discrete_energy(const EscapeRateField& field, const EmpiricalMeasure& nu);

struct MomentEntry {
    long exponent = 0;
    double magnitude = 0;
    std::size_t used = 0;
    std::size_t excluded = 0;  // points at 0 or infinity that z^a cannot take
};

/// |(1/n) sum z_i^a| for every nonzero a.
std::vector<MomentEntry> bilu_moment_test(const EmpiricalMeasure& nu, const std::vector<long>& exponents);

struct AnnulusReport {
    double observed = 0;  // fraction of conjugates with |z| outside [1/r, r]
    double bound = 0;     // 2 h(xi) / log r
    bool pass = false;
};

AnnulusReport annulus_mass_bound(const AlgebraicNumber& xi, double r, long double tol = kDefaultTolerance);

}  // namespace arithdyn
