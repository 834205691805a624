#include "doctest.h"

#include "arithdyn/error.hpp"
#include "arithdyn/poly.hpp"

#include <random>

using namespace arithdyn;

namespace {

// Laplace expansion; independent of the Bareiss path under test.
Int laplace_det(const std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Int> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Int term = m[0][j] * laplace_det(minor);
        total += (j % 2 == 0) ? term : Int(-term);
    }
    return total;
}

// Matrix of (A, B) -> AU + BV assembled by multiplying basis monomials.
Int sylvester_oracle(const BinaryForm& u, const BinaryForm& v) {
    const unsigned d = u.degree();
    std::vector<std::vector<Int>> m(2 * d, std::vector<Int>(2 * d, Int(0)));
    for (unsigned j = 0; j < d; ++j) {
        std::vector<Int> basis(d, Int(0));
        basis[j] = 1;
        BinaryForm mono(d - 1, basis);
        BinaryForm au = mono * u;
        BinaryForm bv = mono * v;
        for (unsigned k = 0; k < 2 * d; ++k) {
            m[k][j] = au[k];
            m[k][d + j] = bv[k];
        }
    }
    return laplace_det(m);
}

BinaryForm random_form(std::mt19937_64& rng, unsigned d, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Int> c(d + 1);
    for (auto& x : c) x = dist(rng);
    return BinaryForm(d, c);
}

}  // namespace

TEST_CASE("resultant examples") {
    CHECK(resultant(BinaryForm(2, {1, 0, 0}), BinaryForm(2, {0, 0, 1})) == 1);
    CHECK(resultant(BinaryForm(2, {0, 1, 0}), BinaryForm(2, {0, 1, 0})) == 0);
    CHECK(resultant(BinaryForm(2, {1, 0, 1}), BinaryForm(2, {0, 0, 1})) == 1);
    CHECK_THROWS_AS(resultant(BinaryForm(2, {1, 0, 1}), BinaryForm(1, {0, 1})), Error);
}

TEST_CASE("resultant agrees with the Laplace oracle") {
    std::mt19937_64 rng(7);
    for (unsigned d = 1; d <= 4; ++d)
        for (int trial = 0; trial < 25; ++trial) {
            auto u = random_form(rng, d, 9);
            auto v = random_form(rng, d, 9);
            CHECK(resultant(u, v) == sylvester_oracle(u, v));
        }
}

TEST_CASE("resultant vanishes on a shared root") {
    std::mt19937_64 rng(11);
    const BinaryForm common(1, {2, -3});  // root [3:2]
    for (int trial = 0; trial < 20; ++trial) {
        auto u = common * random_form(rng, 2, 5);
        auto v = common * random_form(rng, 2, 5);
        CHECK(resultant(u, v) == 0);
    }
}

TEST_CASE("resultant of compositions") {
    // Res(U(F,G), V(F,G)) = +-Res(U,V)^e Res(F,G)^{d^2} with d = e = 2.
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 20) {
        auto u = random_form(rng, 2, 4), v = random_form(rng, 2, 4);
        auto f = random_form(rng, 2, 4), g = random_form(rng, 2, 4);
        Int ruv = resultant(u, v), rfg = resultant(f, g);
        if (ruv == 0 || rfg == 0) continue;
        Int lhs = resultant(u.compose(f, g), v.compose(f, g));
        Int rhs = ruv * ruv;
        Int rfg4 = rfg * rfg * rfg * rfg;
        rhs *= rfg4;
        CHECK(abs(lhs) == abs(rhs));
        ++checked;
    }
}

TEST_CASE("nullstellensatz cofactors") {
    SUBCASE("monomial map") {
        auto c = nullstellensatz_cofactors(BinaryForm(2, {1, 0, 0}), BinaryForm(2, {0, 0, 1}));
        CHECK(c.r == 1);
        CHECK(c.a_x == BinaryForm(1, {1, 0}));
        CHECK(c.b_x.is_zero());
        CHECK(c.a_y.is_zero());
        CHECK(c.b_y == BinaryForm(1, {0, 1}));
    }
    SUBCASE("z^2 + 1") {
        BinaryForm u(2, {1, 0, 1}), v(2, {0, 0, 1});
        auto c = nullstellensatz_cofactors(u, v);
        // Solved by hand: X(X^2+Y^2) - XY^2 = X^3 and Y Y^2 = Y^3.
        CHECK(c.r == 1);
        CHECK(c.a_x == BinaryForm(1, {1, 0}));
        CHECK(c.b_x == BinaryForm(1, {-1, 0}));
        CHECK(c.a_y.is_zero());
        CHECK(c.b_y == BinaryForm(1, {0, 1}));
    }
    SUBCASE("residual is exactly zero on random instances") {
        std::mt19937_64 rng(5);
        int checked = 0;
        while (checked < 40) {
            const unsigned d = 2 + checked % 3;
            auto u = random_form(rng, d, 9), v = random_form(rng, d, 9);
            if (resultant(u, v) == 0) continue;
            auto c = nullstellensatz_cofactors(u, v);
            auto lhs_x = c.a_x * u + c.b_x * v;
            auto lhs_y = c.a_y * u + c.b_y * v;
            CHECK(lhs_x == c.r * BinaryForm::x_power(2 * d - 1));
            CHECK(lhs_y == c.r * BinaryForm::y_power(2 * d - 1));
            ++checked;
        }
    }
    CHECK_THROWS_AS(nullstellensatz_cofactors(BinaryForm(2, {0, 1, 0}), BinaryForm(2, {0, 1, 0})), Error);
}

TEST_CASE("discriminant") {
    CHECK(discriminant(IntPoly{-1, 0, 0, 1}) == -27);
    CHECK(discriminant(IntPoly{-2, 0, 1}) == 8);
    CHECK(discriminant(IntPoly{1, -2, 1}) == 0);
    CHECK_THROWS_AS(discriminant(IntPoly{1, 1}), Error);
    for (unsigned n = 2; n <= 20; ++n) {
        Int nn;
        mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
        CHECK(abs(discriminant(IntPoly::monomial(n) - IntPoly{1})) == Rational(nn));
    }
    // Non-monic: 2X^2 - 1 has roots +-1/sqrt 2, disc = b^2 - 4ac = 8.
    CHECK(discriminant(IntPoly{-1, 0, 2}) == 8);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == IntPoly{-1, 1});
    CHECK(cyclotomic(4) == IntPoly{1, 0, 1});
    CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
    for (unsigned n = 1; n <= 60; ++n) CHECK(cyclotomic(n).degree() == static_cast<int>(euler_phi(n)));
    CHECK(cyclotomic(105).coeff(7) == -2);
}

TEST_CASE("phi inverse") {
    CHECK(phi_inverse(1) == std::vector<std::uint64_t>{1, 2});
    CHECK(phi_inverse(4) == std::vector<std::uint64_t>{5, 8, 10, 12});
    CHECK(phi_inverse(14).empty());
}

TEST_CASE("p-adic valuation") {
    CHECK(*vp(Rational(12), 2).value == 2);
    CHECK(*vp(Rational(5, 8), 2).value == -3);
    CHECK(*vp(Rational(7), 3).value == 0);
    CHECK(vp(Rational(0), 5).is_infinite());
    CHECK_THROWS_AS(vp(Rational(3), 4), Error);
}

TEST_CASE("p-adic valuation is additive and ultrametric") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    const unsigned long primes[] = {2, 3, 5, 7};
    for (int trial = 0; trial < 10000; ++trial) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        if (a == 0 || b == 0) continue;
        const unsigned long p = primes[trial % 4];
        const long va = *vp(a, p).value, vb = *vp(b, p).value;
        CHECK(*vp(Rational(a * b), p).value == va + vb);
        auto vs = vp(Rational(a + b), p);
        if (!vs.is_infinite()) CHECK(*vs.value >= std::min(va, vb));
    }
}

TEST_CASE("gcd and squarefree part") {
    IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 0, 1};
    CHECK_FALSE(is_squarefree(p));
    CHECK(squarefree_part(p) == IntPoly{-1, 1} * IntPoly{2, 0, 1});
    CHECK(gcd(IntPoly{-1, 0, 1}, IntPoly{1, 2, 1}) == IntPoly{1, 1});
    CHECK(is_squarefree(cyclotomic(30)));
}

TEST_CASE("prime divisors") {
    CHECK(prime_divisors(Int(360)) == std::vector<unsigned long>{2, 3, 5});
    CHECK(prime_divisors(Int(-97)) == std::vector<unsigned long>{97});
    CHECK(prime_divisors(Int(1)).empty());
}

TEST_CASE("form composition") {
    // z^2 composed with z^2 is z^4.
    BinaryForm x2(2, {1, 0, 0}), y2(2, {0, 0, 1});
    CHECK(x2.compose(x2, y2) == BinaryForm::x_power(4));
    CHECK(BinaryForm(2, {1, 0, 1}).eval(Int(2), Int(3)) == 13);
}
