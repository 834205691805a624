#pragma once

#include "arithdyn/poly.hpp"
#include "arithdyn/projective.hpp"
#include "arithdyn/roots.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// Endomorphism [U : V] of P^1 over Q with integer coefficients, jointly
/// content 1, degree d >= 2 and Res(U, V) != 0. Resultant, bad primes,
/// cofactors and functoriality constants are computed at construction.
class RationalMap {
public:
    /// Divides out the joint content. Throws InvalidInput (degree) or DegenerateMap (Res = 0).
    RationalMap(BinaryForm u, BinaryForm v);

    /// [X^d : Y^d]
    static RationalMap power_map(unsigned d);
    /// z -> z^2 + c as [X^2 + c Y^2 : Y^2].
    static RationalMap quadratic(long c);

    unsigned degree() const { return u_.degree(); }
    const BinaryForm& u() const { return u_; }
    const BinaryForm& v() const { return v_; }
    const Int& resultant() const { return res_; }
    const std::vector<unsigned long>& bad_primes() const { return bad_primes_; }
    const NullstellensatzCofactors& cofactors() const { return cofactors_; }
    const FunctorialityConstants& constants() const { return constants_; }
    /// log c_v at the archimedean place: for every (x, y) != 0,
    /// c^{-1} max(|x|,|y|)^d <= max(|U|,|V|) <= c max(|x|,|y|)^d.
    double log_archimedean_constant() const { return log_c_inf_; }
    /// True iff U is a monomial multiple of X^d and V of Y^d with unit coefficients.
    bool is_power_map() const;

    HomMorphism as_morphism() const { return HomMorphism::from_forms(u_, v_); }

    /// f(x) together with g = gcd(U(a, b), V(a, b)) (a divisor of Res).
    std::pair<ProjPointQ, Int> apply_with_gcd(const ProjPointQ& x) const;
    ProjPointQ apply(const ProjPointQ& x) const { return apply_with_gcd(x).first; }

    /// Forms of f o g (this after other), joint content removed.
    RationalMap compose(const RationalMap& other) const;
    /// Same endomorphism of P^1 (forms proportional).
    bool same_map(const RationalMap& other) const;

    std::string to_string() const;

private:
    BinaryForm u_, v_;
    Int res_;
    std::vector<unsigned long> bad_primes_;
    NullstellensatzCofactors cofactors_;
    FunctorialityConstants constants_;
    double log_c_inf_ = 0;
};

/// true iff v_p(Res(U, V)) = 0.
bool good_reduction_at(const RationalMap& f, unsigned long p);

struct OrbitRecord {
    enum class Status { Escaping, Cycle, BudgetExhausted };
    std::vector<ProjPointQ> points;
    /// gcds[k] = g_{k+1}: U(a_k, b_k) = g_{k+1} a_{k+1}, V(a_k, b_k) = g_{k+1} b_{k+1}.
    std::vector<Int> gcds;
    Status status = Status::BudgetExhausted;
    std::size_t cycle_entry = 0;
    std::size_t cycle_length = 0;
};

std::string to_string(OrbitRecord::Status status);

/// gcd-reduced orbit of x; stops at the first revisited point, when
/// h(x_k) > height_cap, or after n_max steps.
OrbitRecord iterate(const RationalMap& f, const ProjPointQ& x, std::size_t n_max, double height_cap);

inline constexpr std::size_t kDefaultDigitBudget = 1'000'000;

struct GlobalHeightResult {
    double value = 0;
    /// Certified truncation bound |d^{-n} h(f^n(x)) - hhat(x)| <= c_max / (d^n (d-1)).
    double error = 0;
    /// Floating-point allowance on the final logarithm; |value - hhat(x)| <= error + rounding.
    double rounding = 0;
    unsigned n_used = 0;
    /// Digit budget hit before reaching tol; value/error are still certified
    /// but error > tol. Use canonical_height_local instead.
    bool partial = false;
    std::string note;
};

/// hhat(x) = d^{-n} h(f^n(x)) for the least n with c_max / (d^n (d-1)) <= tol.
GlobalHeightResult canonical_height_global(const RationalMap& f, const ProjPointQ& x, double tol,
                                           std::size_t digit_budget = kDefaultDigitBudget);

struct FinitePlaceEntry {
    /// Partial sum -sum_{k<=K} d^{-k} v_p(g_k), the coefficient of log p.
    Rational log_coefficient;
    double value = 0;
    double tail_bound = 0;
    unsigned steps = 0;
};

struct LocalHeightLedger {
    std::map<unsigned long, FinitePlaceEntry> finite_places;
    double archimedean = 0;
    double archimedean_tail = 0;
    unsigned archimedean_steps = 0;
    double total = 0;
    double total_error = 0;
};

/// hhat(x) as a sum of local canonical heights at the coprime representative
/// (a, b) of x: an exact p-adic gcd recursion at each prime dividing Res, and
/// the renormalized archimedean escape rate. total_error <= tol.
LocalHeightLedger canonical_height_local(const RationalMap& f, const ProjPointQ& x, double tol);

/// Escape rate log max(|x|,|y|) + sum_{k<steps} d^{-k-1} log max(|U|,|V|)(z_k) along the
/// orbit z_k of (x, y) rescaled to max norm 1. The omitted tail is at most
/// log_archimedean_constant() / (d^steps (d-1)).
long double archimedean_escape_sum(const RationalMap& f, Complex x, Complex y, unsigned steps);

/// Northcott bound c_max (2d-1)/(d-1)^2 on h of rational preperiodic points.
double preperiodic_height_bound(const RationalMap& f);

/// Every preperiodic point of P^1(Q), sorted. Throws ResourceLimit when the
/// enumeration under the Northcott bound exceeds `cap` points.
std::vector<ProjPointQ> preperiodic_points_rational(const RationalMap& f,
                                                    std::size_t cap = kDefaultEnumerationCap);

struct CommutingReport {
    std::vector<ProjPointQ> samples;
    std::vector<double> height_f, height_g;
    double max_gap = 0;
    double tol = 0;
    bool pass = false;
};

/// Compares hhat_f and hhat_g on the samples. Throws InvalidInput unless f o g = g o f.
CommutingReport commuting_height_agreement(const RationalMap& f, const RationalMap& g,
                                           const std::vector<ProjPointQ>& samples, double tol);

}  // namespace arithdyn
