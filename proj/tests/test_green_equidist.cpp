#include "doctest.h"

#include "arithdyn/error.hpp"
#include "arithdyn/green.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace arithdyn;

namespace {

Complex random_complex(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

// -log prod_{i != j} |xi_i - xi_j| / (n(n-1)) from the exact discriminant of the monic polynomial.
double log_distance_mean_from_disc(const IntPoly& p) {
    const double n = p.degree();
    Rational disc = discriminant(p);
    Int lead_pow;
    mpz_pow_ui(lead_pow.get_mpz_t(), p.leading().get_mpz_t(), 2 * p.degree() - 2);
    disc /= Rational(lead_pow);
    return -log_abs(disc) / (n * (n - 1));
}

const std::vector<RationalMap> kMaps = {
    RationalMap::power_map(2), RationalMap::quadratic(1), RationalMap::quadratic(-1),
    RationalMap(BinaryForm(2, {1, 2, 0}), BinaryForm(2, {0, 1, 1})),
    RationalMap(BinaryForm(3, {1, 0, -3, 1}), BinaryForm(3, {0, 2, 0, 5}))};

}  // namespace

TEST_CASE("escape rate examples") {
    EscapeRateField pm(RationalMap::power_map(3));
    CHECK(pm.depth() == 0);
    CHECK(pm.escape_rate(Complex(0.5, 0.2), Complex(2, 1)) == doctest::Approx(std::log(std::sqrt(5.0))).epsilon(1e-15));

    EscapeRateField q(RationalMap::quadratic(1));
    // mpmath, 50 digits, 200 steps.
    CHECK(std::abs(q.escape_rate(0, 1) - 0.20367726136974000) <= q.error() + 1e-15);
    CHECK(std::abs(q.escape_rate(Complex(0.1), 1) - 0.20560254766521063) <= q.error() + 1e-15);
    CHECK(std::abs(q.escape_rate(Complex(0.3, 0.7), Complex(1.5, -0.2)) - 0.57782277268843597) <= q.error() + 1e-15);
    CHECK(q.error() <= 1e-12);
    CHECK_THROWS_AS(q.escape_rate(0, 0), Error);
}

TEST_CASE("escape rate homogeneity and functional equation") {
    std::mt19937_64 rng(21);
    for (const auto& f : kMaps) {
        EscapeRateField field(f);
        const double tol = field.tolerance();
        const auto cu = f.u(), cv = f.v();
        for (int t = 0; t < 1000; ++t) {
            const Complex x = random_complex(rng, 3), y = random_complex(rng, 3);
            const Complex lam = random_complex(rng, 10);
            const double base = field.escape_rate(x, y);
            CHECK(std::abs(field.escape_rate(lam * x, lam * y) - std::log(std::abs(lam)) - base) <= 3 * tol);
            // Forms evaluated directly on the complex pair.
            Complex u = 0, v = 0;
            const unsigned d = f.degree();
            for (unsigned i = 0; i <= d; ++i) {
                const Complex mono = std::pow(x, static_cast<int>(d - i)) * std::pow(y, static_cast<int>(i));
                u += static_cast<long double>(cu[i].get_d()) * mono;
                v += static_cast<long double>(cv[i].get_d()) * mono;
            }
            CHECK(std::abs(field.escape_rate(u, v) - d * base) <= 3 * tol);
        }
    }
}

TEST_CASE("filled Julia membership") {
    EscapeRateField pm(RationalMap::power_map(2));
    CHECK(filled_julia_membership(pm, 0.5, 0.9) == JuliaMembership::Inside);
    CHECK(filled_julia_membership(pm, 2, 1) == JuliaMembership::Outside);
    CHECK(filled_julia_membership(pm, 1, 1) == JuliaMembership::BoundaryUncertain);
    EscapeRateField q(RationalMap::quadratic(1));
    CHECK(filled_julia_membership(q, 0.1, 1) == JuliaMembership::Outside);
    CHECK(filled_julia_membership(q, 0.01, 0.5) == JuliaMembership::Inside);
    CHECK(to_string(JuliaMembership::BoundaryUncertain) == "boundary-uncertain");
}

TEST_CASE("pairing examples and invariances") {
    EscapeRateField pm(RationalMap::power_map(2));
    auto g = g_pairing(pm, ProjPointC::affine(1), ProjPointC::affine(-1));
    CHECK_FALSE(g.infinite);
    CHECK(g.value == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK(g_pairing(pm, ProjPointC::affine(Complex(0.3, 0.1)), ProjPointC::affine(Complex(0.3, 0.1))).infinite);
    CHECK(g_pairing(pm, ProjPointC::infinity(), {Complex(5), Complex(0)}).infinite);

    std::mt19937_64 rng(22);
    for (const auto& f : kMaps) {
        EscapeRateField field(f);
        const double tol = field.tolerance();
        for (int t = 0; t < 200; ++t) {
            ProjPointC p{random_complex(rng, 2), random_complex(rng, 2)};
            ProjPointC q{random_complex(rng, 2), random_complex(rng, 2)};
            const auto a = g_pairing(field, p, q), b = g_pairing(field, q, p);
            CHECK(std::abs(a.value - b.value) <= 3 * tol);
            const Complex lam = t % 2 ? Complex(7) : random_complex(rng, 10);
            const auto c = g_pairing(field, {lam * p.x, lam * p.y}, q);
            CHECK(std::abs(a.value - c.value) <= 3 * tol);
        }
    }
}

TEST_CASE("discrepancy") {
    EscapeRateField pm(RationalMap::power_map(2));
    CHECK(std::abs(discrepancy(pm, AlgebraicNumber(IntPoly{-2, 0, 1})) + 0.5 * std::log(2.0)) < 1e-12);
    for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
        const auto phi = cyclotomic(p);
        CHECK(std::abs(discrepancy(pm, AlgebraicNumber(phi)) - log_distance_mean_from_disc(phi)) < 1e-11);
        CHECK(std::abs(discrepancy(pm, AlgebraicNumber(phi)) + std::log(p) / (p - 1.0)) < 1e-11);
    }
    CHECK_THROWS_AS(discrepancy(pm, AlgebraicNumber::rational(Rational(3, 2))), Error);
}

TEST_CASE("height and discrepancy identity for power maps") {
    EscapeRateField pm(RationalMap::power_map(5));
    struct Case { IntPoly p; double lhs; };
    const std::vector<Case> cases = {
        {IntPoly{-2, 0, 0, 0, 0, 1}, std::log(2.0) / 5},
        {IntPoly{-1, 0, 2}, std::log(2.0) / 2},
        {cyclotomic(7), 0.0},
        {IntPoly{-1, -1, 1}, std::log((1 + std::sqrt(5.0)) / 2) / 2},
        {IntPoly{-2, 0, 1}, std::log(2.0) / 2},
        {IntPoly{3, -1, 0, 4}, -1},
    };
    for (const auto& c : cases) {
        const auto rep = height_discrepancy_check(pm, AlgebraicNumber(c.p));
        CHECK(rep.gap <= 1e-6);
        CHECK(rep.gap <= rep.error_bound + 1e-12);
        if (c.lhs >= 0) CHECK(std::abs(rep.lhs - c.lhs) < 1e-12);
    }
    // 2X^2 - 1: monic disc 2, leading 2 -> D_2 = log 2 / 2 + log 2.
    const auto rep = height_discrepancy_check(pm, AlgebraicNumber(IntPoly{-1, 0, 2}));
    REQUIRE(rep.d_finite.count(2));
    CHECK(rep.d_finite.at(2) == doctest::Approx(1.5 * std::log(2.0)));

    EscapeRateField q(RationalMap::quadratic(1));
    try {
        height_discrepancy_check(q, AlgebraicNumber(IntPoly{-2, 0, 1}));
        FAIL("expected unsupported scope");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedScope);
    }
}

TEST_CASE("Baker mean pairing over roots of unity") {
    EscapeRateField pm(RationalMap::power_map(2));
    double previous = -1e9;
    std::vector<std::pair<unsigned, GValue>> sweep;
    for (unsigned n = 2; n <= 200; ++n) {
        const auto g = baker_mean_pairing(pm, EmpiricalMeasure::roots_of_unity(n).points);
        CHECK(std::abs(g.value + std::log(n) / (n - 1.0)) <= 1e-9);
        CHECK(g.value > previous);
        previous = g.value;
        sweep.emplace_back(n, g);
    }
    // -log n/(n-1) >= -c log n/n iff c >= n/(n-1); the worst case is n = 2.
    CHECK(fit_baker_constant(sweep) == doctest::Approx(2.0));
    CHECK(baker_mean_pairing(pm, {ProjPointC::affine(1), ProjPointC::affine(-1)}).value ==
          doctest::Approx(-std::log(2.0)));
    auto dup = baker_mean_pairing(pm, {ProjPointC::affine(1), ProjPointC::affine(1), ProjPointC::affine(-1)});
    CHECK(dup.infinite);
    sweep.emplace_back(3, dup);
    CHECK(fit_baker_constant(sweep) == doctest::Approx(2.0));
}

TEST_CASE("discrete energy") {
    EscapeRateField pm(RationalMap::power_map(2));
    auto e = discrete_energy(pm, EmpiricalMeasure::roots_of_unity(64));
    CHECK(std::abs(e.value + std::log(64.0) / 63) < 1e-12);

    EmpiricalMeasure cluster;
    std::mt19937_64 rng(23);
    for (int i = 0; i < 64; ++i) cluster.points.push_back(ProjPointC::affine(Complex(1) + random_complex(rng, 1e-3)));
    CHECK(discrete_energy(pm, cluster).value > 5);

    EmpiricalMeasure two{{ProjPointC::affine(1), ProjPointC::affine(-1)}};
    CHECK(discrete_energy(pm, two).value == doctest::Approx(-std::log(2.0)));
    EmpiricalMeasure same{{ProjPointC::affine(2), ProjPointC{Complex(4), Complex(2)}}};
    CHECK_THROWS_AS(discrete_energy(pm, same), Error);
}

TEST_CASE("Bilu moments") {
    for (unsigned p : {5u, 101u, 499u}) {
        const auto nu = EmpiricalMeasure::roots_of_unity(p, true);
        const auto m = bilu_moment_test(nu, {1, -1, 2, 5});
        CHECK(std::abs(m[0].magnitude - 1.0 / (p - 1)) < 1e-12);
        CHECK(std::abs(m[1].magnitude - 1.0 / (p - 1)) < 1e-12);
        for (const auto& e : m) CHECK(e.used == p - 1);
    }
    const auto all = EmpiricalMeasure::roots_of_unity(12);
    const auto m = bilu_moment_test(all, {1, 5, 11, -7, 12, 24});
    for (int i = 0; i < 4; ++i) CHECK(m[i].magnitude < 1e-15);
    CHECK(std::abs(m[4].magnitude - 1) < 1e-15);
    CHECK(std::abs(m[5].magnitude - 1) < 1e-15);

    EmpiricalMeasure with_zero{{ProjPointC::affine(0), ProjPointC::infinity(), ProjPointC::affine(2)}};
    const auto z = bilu_moment_test(with_zero, {-1, 1});
    CHECK(z[0].excluded == 2);
    CHECK(z[0].magnitude == doctest::Approx(0.5));
    CHECK(z[1].excluded == 1);
    CHECK(z[1].magnitude == doctest::Approx(1.0));
    CHECK_THROWS_AS(bilu_moment_test(with_zero, {0}), Error);

    // Galois orbit path agrees with the closed form.
    const auto orbit = EmpiricalMeasure::galois_orbit(AlgebraicNumber(cyclotomic(13)));
    CHECK(std::abs(bilu_moment_test(orbit, {1})[0].magnitude - 1.0 / 12) < 1e-12);
}

TEST_CASE("annulus mass bound") {
    auto r = annulus_mass_bound(AlgebraicNumber(cyclotomic(101)), 1.5);
    CHECK(r.observed == 0.0);
    CHECK(r.bound < 1e-10);
    CHECK(r.pass);

    r = annulus_mass_bound(AlgebraicNumber(IntPoly{-2, 0, 0, 1}), 1.2);
    CHECK(r.observed == 1.0);
    CHECK(r.bound == doctest::Approx(2 * (std::log(2.0) / 3) / std::log(1.2)));
    CHECK(r.pass);

    r = annulus_mass_bound(AlgebraicNumber(IntPoly{-1, 2}), 3);
    CHECK(r.observed == 0.0);
    CHECK(r.pass);

    CHECK_THROWS_AS(annulus_mass_bound(AlgebraicNumber(IntPoly{-1, 2}), 1.0), Error);
    CHECK_THROWS_AS(annulus_mass_bound(AlgebraicNumber(IntPoly{0, 1}), 2.0), Error);
}

TEST_CASE("transfinite diameter of the unit bidisk") {
    EscapeRateField pm(RationalMap::power_map(2));
    FeketeOptions opt;
    opt.restarts = 8;
    auto r3 = transfinite_diameter(pm, 3, opt);
    CHECK(std::abs(r3.delta_n - std::sqrt(3.0)) < 1e-9);
    CHECK(r3.formula_value == 1.0);
    auto r10 = transfinite_diameter(pm, 10, opt);
    CHECK(std::abs(r10.delta_n - std::pow(10.0, 1.0 / 9)) < 1e-9);
    CHECK(std::abs(r10.mean_pairing + std::log(10.0) / 9) < 1e-9);
    CHECK_THROWS_AS(transfinite_diameter(pm, 1), Error);
}

TEST_CASE("transfinite diameter decreases for z^2 + 1") {
    EscapeRateField q(RationalMap::quadratic(1));
    FeketeOptions opt;
    opt.restarts = 12;
    double previous = 1e9;
    for (unsigned n = 2; n <= 8; ++n) {
        const auto r = transfinite_diameter(q, n, opt);
        CHECK(r.formula_value == 1.0);
        CHECK(r.delta_n >= 1.0);
        CHECK(r.delta_n <= previous + 1e-3);
        // The reported value is the distance product of the returned points.
        const auto g = mean_pairing(q, r.points);
        CHECK(std::abs(std::exp(-g.value) - r.delta_n) < 1e-9);
        previous = r.delta_n;
    }
}
