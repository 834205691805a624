#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

using Int = mpz_class;
using Rational = mpq_class;

/// Univariate integer polynomial, coefficients low-to-high. The zero
/// polynomial has an empty coefficient vector and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(unsigned degree, const Int& coeff = 1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Int& operator[](std::size_t i) const { return coeffs_[i]; }
    Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
    const Int& leading() const { return coeffs_.back(); }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    Int content() const;
    /// Content 1, positive leading coefficient.
    IntPoly primitive() const;
    IntPoly derivative() const;
    /// X^d P(1/X).
    IntPoly reversed() const;
    /// P(-X)
    IntPoly negated_variable() const;

    Int eval(const Int& x) const;
    Rational eval(const Rational& x) const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const Int& c, const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<Int> coeffs_;
};

/// Exact division over Z; returns nullopt when b does not divide a in Z[X].
std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b);

/// Primitive gcd in Z[X] (positive leading coefficient).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// True iff gcd(P, P') is constant.
bool is_squarefree(const IntPoly& p);

/// Primitive squarefree part P / gcd(P, P').
IntPoly squarefree_part(const IntPoly& p);

/// Homogeneous form sum_i c_i X^{d-i} Y^i.
class BinaryForm {
public:
    BinaryForm() = default;
    BinaryForm(unsigned degree, std::vector<Int> coeffs);
    BinaryForm(unsigned degree, std::initializer_list<long> coeffs);

    unsigned degree() const { return degree_; }
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Int& operator[](std::size_t i) const { return coeffs_[i]; }
    bool is_zero() const;

    Int eval(const Int& x, const Int& y) const;

    /// F(A, B) for forms A, B of a common degree e; the result has degree d*e.
    BinaryForm compose(const BinaryForm& a, const BinaryForm& b) const;

    /// Sum of absolute values of coefficients.
    Int l1_norm() const;

    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const Int& c, const BinaryForm& a);
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    /// X^{deg} as a form.
    static BinaryForm x_power(unsigned degree);
    static BinaryForm y_power(unsigned degree);

    std::string to_string() const;

private:
    unsigned degree_ = 0;
    std::vector<Int> coeffs_{Int(0)};
};

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
Int bareiss_determinant(std::vector<std::vector<Int>> m);

/// Sylvester matrix of the map (A, B) -> A U + B V on pairs of forms of degree d-1.
/// Rows index the coefficient of X^{2d-1-k} Y^k; columns are (A basis, B basis).
std::vector<std::vector<Int>> sylvester_matrix(const BinaryForm& u, const BinaryForm& v);

/// Res(U, V) = det of the Sylvester map. Throws InvalidInput on degree mismatch.
Int resultant(const BinaryForm& u, const BinaryForm& v);

/// Classical univariate resultant Res(f, g) (standard Sylvester sign convention).
Int resultant(const IntPoly& f, const IntPoly& g);

struct NullstellensatzCofactors {
    BinaryForm a_x, b_x;  // a_x U + b_x V = r X^{2d-1}
    BinaryForm a_y, b_y;  // a_y U + b_y V = r Y^{2d-1}
    Int r;                // Res(U, V)
};

/// Integer cofactors from the adjugate of the Sylvester matrix.
/// Throws DegenerateMap when Res(U, V) = 0.
NullstellensatzCofactors nullstellensatz_cofactors(const BinaryForm& u, const BinaryForm& v);

/// (-1)^{n(n-1)/2} Res(P, P') / a_n. Throws InvalidInput for deg P < 2.
Rational discriminant(const IntPoly& p);

/// n-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned n);

/// Euler phi.
std::uint64_t euler_phi(std::uint64_t n);

/// All m with phi(m) = d, searched up to `limit`.
std::vector<std::uint64_t> phi_inverse(std::uint64_t d, std::uint64_t limit = 100000);

struct PadicValuation {
    unsigned long prime = 2;
    std::optional<long> value;  // nullopt is +infinity
    bool is_infinite() const { return !value.has_value(); }
};

/// p-adic valuation; v_p(0) = +infinity.
PadicValuation vp(const Rational& q, unsigned long p);
long vp(const Int& n, unsigned long p);  // n != 0

/// Distinct prime divisors of |n| (trial division; n small enough to factor at desk scale).
std::vector<unsigned long> prime_divisors(const Int& n);

bool is_prime(unsigned long p);

/// log |n| for n != 0, accurate for integers far beyond double range.
double log_abs(const Int& n);
double log_abs(const Rational& q);

}  // namespace arithdyn
