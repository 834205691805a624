#pragma once

#include "arithdyn/poly.hpp"
#include "arithdyn/roots.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

inline constexpr long double kDefaultTolerance = 1e-12L;

/// A Galois orbit of algebraic numbers, represented by its minimal polynomial
/// (primitive, squarefree, positive leading coefficient).
///
/// Irreducibility is NOT verified: there is no factorization engine. Every
/// height below is evaluated over the full root multiset of `minpoly`, which is
/// the height of the orbit exactly when the polynomial is irreducible.
class AlgebraicNumber {
public:
    /// Throws InvalidInput for constants and RepeatedRoot for non-squarefree input.
    explicit AlgebraicNumber(const IntPoly& minpoly);
    /// Uses the squarefree part of p.
    static AlgebraicNumber deflated(const IntPoly& p);
    /// den X - num.
    static AlgebraicNumber rational(const Rational& q);

    const IntPoly& minpoly() const { return minpoly_; }
    unsigned degree() const { return static_cast<unsigned>(minpoly_.degree()); }
    bool is_rational() const { return degree() == 1; }
    /// Value for degree 1.
    Rational as_rational() const;
    /// 1/xi (reversed polynomial); throws for xi = 0.
    AlgebraicNumber inverse() const;

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.minpoly_ == b.minpoly_; }

private:
    IntPoly minpoly_;
};

struct MahlerResult {
    double measure = 1;
    double log_measure = 0;
    /// Certified bound on |log_measure - (log|a_0| + sum log max(1, |xi_i|))|.
    double error_bound = 0;
    /// sum log max(1, |xi_i|) over the roots.
    double archimedean_part = 0;
    Int leading_coeff = 1;
    RootReport roots;
};

/// Squarefree decomposition p = c * prod f_i^i (Yun); entry i-1 holds f_i.
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);

/// M(P) = |a_0| prod max(1, |xi_i|) with roots counted with multiplicity
/// (computed on the squarefree factors), certified to `tol` in log scale.
MahlerResult mahler_measure(const IntPoly& p, long double tol = kDefaultTolerance);

/// h(xi) = log M(minpoly) / d.
double height_algebraic(const AlgebraicNumber& xi, long double tol = kDefaultTolerance);

struct PlaceBreakdown {
    /// p -> v_p(a_0) log p / d for the primes dividing the leading coefficient.
    std::map<unsigned long, double> finite;
    /// (log M - log|a_0|) / d
    double archimedean = 0;
    double error_bound = 0;
    double total() const;
};

PlaceBreakdown local_height_breakdown(const AlgebraicNumber& xi, long double tol = kDefaultTolerance);

struct RootOfUnityVerdict {
    bool is_root_of_unity = false;
    std::optional<std::uint64_t> order;
    std::string reason;
};

/// Moduli screen on certified roots, then exact division of X^m - 1 by the
/// minimal polynomial for every m with phi(m) = d.
RootOfUnityVerdict is_root_of_unity(const AlgebraicNumber& xi, long double tol = kDefaultTolerance);

struct LehmerBounds {
    double elementary = 0;         // 1 / (4 e d^3)
    double dobrowolski_form = 0;   // c / d^{1 + eps}, caller-supplied shape
};

LehmerBounds lehmer_bounds(unsigned d, double c = 1.0, double eps = 0.0);

/// Power sums s_1..s_count of the roots of p (Newton identities, exact).
std::vector<Rational> power_sums(const IntPoly& p, unsigned count);

/// Primitive integer polynomial of degree n whose roots have power sums
/// s_1..s_n (inverse Newton identities).
IntPoly poly_from_power_sums(const std::vector<Rational>& sums, unsigned n);

}  // namespace arithdyn
