#pragma once

#include "arithdyn/poly.hpp"

#include <complex>
#include <vector>

namespace arithdyn {

using Complex = std::complex<long double>;

/// A root approximation together with a radius such that the disk
/// |z - center| <= radius contains exactly one true root.
struct CertifiedRoot {
    Complex center;
    long double radius = 0;
};

struct RootReport {
    std::vector<CertifiedRoot> roots;
    /// Decimal digits of the working precision that achieved certification
    /// (18 means native long double).
    unsigned precision_digits = 0;
    long double max_radius() const;
};

/// All complex roots of a squarefree P, each certified to lie within `tol`
/// (inclusion radii n |P(z_i) / (a_n prod_{j != i} (z_i - z_j))|, pairwise
/// disjoint). Aberth-Ehrlich iteration in long double, refined at 50, 100 and
/// 200 decimal digits until the radii drop below tol.
///
/// Throws RepeatedRoot if gcd(P, P') is nonconstant; deflate with
/// squarefree_part() first.
RootReport complex_roots(const IntPoly& p, long double tol = 1e-12L);

}  // namespace arithdyn
