#pragma once

#include "arithdyn/algebraic.hpp"
#include "arithdyn/green.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace arithdyn {

/// One coordinate of a torus point: an exact nonzero rational, or a chosen
/// complex root of an integer polynomial. Roots are indexed in the order of
/// sorted_conjugates (by real part, then imaginary part).
class TorusCoordinate {
public:
    TorusCoordinate(const Rational& q);
    TorusCoordinate(const AlgebraicNumber& xi, std::size_t root_index = 0);

    bool is_rational() const { return rational_.has_value(); }
    const Rational& rational() const { return *rational_; }
    const AlgebraicNumber& algebraic() const { return algebraic_; }
    std::size_t root_index() const { return root_index_; }
    unsigned degree() const { return algebraic_.degree(); }

    /// All complex conjugates, sorted.
    std::vector<Complex> conjugates() const;
    /// The chosen conjugate.
    Complex value() const;
    double height() const;

    std::string to_string() const;

private:
    std::optional<Rational> rational_;
    AlgebraicNumber algebraic_;
    std::size_t root_index_ = 0;
};

/// Certified roots of p in (real, imaginary) order.
std::vector<Complex> sorted_conjugates(const IntPoly& p);

class TorusPoint {
public:
    /// Throws InvalidInput for an empty tuple or a zero coordinate.
    explicit TorusPoint(std::vector<TorusCoordinate> coords);
    std::size_t dim() const { return coords_.size(); }
    const std::vector<TorusCoordinate>& coords() const { return coords_; }
    const TorusCoordinate& operator[](std::size_t i) const { return coords_[i]; }

private:
    std::vector<TorusCoordinate> coords_;
};

/// sum_i h(x_i)
double torus_height(const TorusPoint& x);

inline constexpr unsigned kMaxProductDegree = 16;

struct PushforwardResult {
    /// Exact value when every coordinate is rational.
    std::optional<Rational> rational;
    /// Primitive integer polynomial prod (X - prod_i x_{i,j_i}^{a_i}) over all
    /// conjugate choices, when the product degree is <= kMaxProductDegree.
    std::optional<IntPoly> product_polynomial;
    /// Image of the chosen conjugates.
    Complex value;
    /// Images of every conjugate combination (the orbit cloud).
    std::vector<Complex> cloud;
    /// Mean height over the conjugate combinations (the exact height for
    /// rational points or a single coordinate); absent when not computable.
    std::optional<double> height;
    double bound_coordinatewise = 0;  // sum |a_i| h(x_i)
    double bound_total = 0;           // (sum |a_i|) max_i h(x_i)
    bool bound_holds = true;
    std::string notice;
};

/// psi_a(x) = prod x_i^{a_i}. Throws InvalidInput when a = 0 or the lengths differ.
PushforwardResult monomial_pushforward(const TorusPoint& x, const std::vector<long>& a);

struct SubadditivityReport {
    double h_alpha = 0;
    double h_beta = 0;
    /// h(alpha beta) for rationals; mean over conjugate products otherwise.
    std::optional<double> h_product;
    double bound = 0;
    bool holds = true;
    bool exact = false;
    std::string notice;
};

SubadditivityReport subadditivity_check(const TorusCoordinate& alpha, const TorusCoordinate& beta);

/// Conjugates of coordinate i as an equal-weight measure.
EmpiricalMeasure coordinate_cloud(const TorusPoint& x, std::size_t i);

}  // namespace arithdyn
