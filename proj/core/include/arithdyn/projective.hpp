#pragma once

#include "arithdyn/poly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// Point of P^k(Q) in normalized homogeneous coordinates: coprime integers,
/// first nonzero coordinate positive. Equality is tuple equality.
class ProjPointQ {
public:
    ProjPointQ() = default;
    /// Normalizes; throws InvalidInput if every coordinate is zero.
    explicit ProjPointQ(std::vector<Int> coords);
    ProjPointQ(std::initializer_list<long> coords);
    /// Clears denominators, then normalizes.
    static ProjPointQ from_rationals(const std::vector<Rational>& coords);

    unsigned dim() const { return static_cast<unsigned>(coords_.size()) - 1; }
    const std::vector<Int>& coords() const { return coords_; }
    const Int& operator[](std::size_t i) const { return coords_[i]; }

    /// H(x) = max |x_i|.
    Int exp_height() const;

    friend bool operator==(const ProjPointQ& a, const ProjPointQ& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const ProjPointQ& a, const ProjPointQ& b) { return a.coords_ < b.coords_; }

    /// "[a:b:c]"
    std::string to_string() const;

private:
    std::vector<Int> coords_;
};

struct ProjPointHash {
    std::size_t operator()(const ProjPointQ& p) const noexcept;
};

/// Naive logarithmic height log max |x_i|.
double height(const ProjPointQ& x);

/// Output cap for enumerate_points.
inline constexpr std::size_t kDefaultEnumerationCap = 5'000'000;

/// Points of P^k(Q) with H(x) = h exactly, lexicographic within the shell.
/// Shells are independent, so ranges of h can be produced concurrently.
std::vector<ProjPointQ> enumerate_shell(unsigned k, std::int64_t h);

/// Points with H(x) <= height_bound, each once, sorted lexicographically.
/// Throws ResourceLimit when the count would exceed `cap`.
std::vector<ProjPointQ> enumerate_points(unsigned k, std::int64_t height_bound,
                                         std::size_t cap = kDefaultEnumerationCap);

/// Same set as enumerate_points, selected by logarithmic bound h(x) <= log_bound.
std::vector<ProjPointQ> enumerate_points_log(unsigned k, double log_bound,
                                             std::size_t cap = kDefaultEnumerationCap);

/// Number of points with H(x) <= height_bound (no materialization).
std::uint64_t count_points(unsigned k, std::int64_t height_bound);

/// Calls `visit` on every normalized coordinate tuple with H = h (int64 coordinates).
void for_each_in_shell(unsigned k, std::int64_t h, const std::function<void(const std::vector<std::int64_t>&)>& visit);

/// Riemann zeta at integer s >= 2.
double zeta(unsigned s);

/// N(B) / (2^k B^{k+1} / zeta(k+1)) with N(B) = #{x : H(x) <= B}.
double schanuel_ratio(unsigned k, std::int64_t height_bound);

/// Segre embedding: coordinates x_i y_j in lexicographic (i, j) order.
ProjPointQ segre(const ProjPointQ& x, const ProjPointQ& y);

/// Veronese embedding: all degree-d monomials, exponent vectors in descending lex order.
ProjPointQ veronese(const ProjPointQ& x, unsigned d);

/// Projection from the coordinate point e_drop (drops one coordinate).
/// Throws InvalidInput when x is the center.
ProjPointQ linear_projection(const ProjPointQ& x, unsigned drop);

/// Homogeneous polynomial in n variables with integer coefficients.
struct HomogeneousPoly {
    struct Term {
        std::vector<unsigned> exponents;
        Int coeff;
    };
    unsigned nvars = 0;
    unsigned degree = 0;
    std::vector<Term> terms;

    static HomogeneousPoly from_binary_form(const BinaryForm& f);
    Int eval(const std::vector<Int>& x) const;
    Int l1_norm() const;
    bool is_zero() const;
};

/// Morphism P^k -> P^m given by m+1 forms of common degree d.
class HomMorphism {
public:
    HomMorphism(unsigned source_dim, std::vector<HomogeneousPoly> forms);
    /// P^1 -> P^1 morphism [U : V].
    static HomMorphism from_forms(const BinaryForm& u, const BinaryForm& v);
    /// x_i -> x_i^d on P^k.
    static HomMorphism power_map(unsigned k, unsigned d);

    unsigned source_dim() const { return source_dim_; }
    unsigned target_dim() const { return static_cast<unsigned>(forms_.size()) - 1; }
    unsigned degree() const { return degree_; }
    const std::vector<HomogeneousPoly>& forms() const { return forms_; }
    /// Decided exactly for k = 1; for k >= 2 this is the caller's assertion.
    bool base_point_free() const { return base_point_free_; }
    void assert_base_point_free(bool flag) { base_point_free_ = flag; }

    /// Binary-form view for k = 1 (throws otherwise).
    std::vector<BinaryForm> binary_forms() const;

private:
    unsigned source_dim_;
    unsigned degree_ = 0;
    std::vector<HomogeneousPoly> forms_;
    bool base_point_free_ = false;
};

/// Normalized image; throws Indeterminacy when every form vanishes at x.
ProjPointQ apply_morphism(const HomMorphism& f, const ProjPointQ& x);

struct FunctorialityConstants {
    /// h(f(x)) <= d h(x) + c_upper.
    double c_upper = 0;
    /// d h(x) - c_lower <= h(f(x)); unavailable for k >= 2.
    std::optional<double> c_lower;
    double c_max() const { return c_lower ? std::max(c_upper, *c_lower) : c_upper; }
};

/// c_upper = log max_i ||F_i||_1. For k = 1, c_lower = log max(||A_X||_1 + ||B_X||_1,
/// ||A_Y||_1 + ||B_Y||_1) from integer cofactors A U + B V = Res X^{2d-1} (and Y),
/// using that gcd(U(a,b), V(a,b)) divides Res for coprime (a, b).
FunctorialityConstants functoriality_constants(const HomMorphism& f);

}  // namespace arithdyn
