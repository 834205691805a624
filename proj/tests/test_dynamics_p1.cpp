#include "doctest.h"

#include "arithdyn/dynamics.hpp"
#include "arithdyn/error.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <set>

using namespace arithdyn;

namespace {

// z -> U(z, 1) / V(z, 1) on Q u {inf} with plain rationals; nullopt is infinity.
using QPoint = std::optional<Rational>;

QPoint naive_apply(const BinaryForm& u, const BinaryForm& v, const QPoint& z) {
    Rational nu = 0, nv = 0;
    const unsigned d = u.degree();
    for (unsigned i = 0; i <= d; ++i) {
        // X^{d-i} Y^i at (z, 1), or at (1, 0) for infinity.
        Rational mono = 1;
        if (z) {
            for (unsigned j = 0; j < d - i; ++j) mono *= *z;
        } else if (i != 0) {
            mono = 0;
        }
        nu += Rational(u[i]) * mono;
        nv += Rational(v[i]) * mono;
    }
    if (nv == 0) return std::nullopt;
    Rational q = nu / nv;
    q.canonicalize();
    return q;
}

bool naive_preperiodic(const BinaryForm& u, const BinaryForm& v, QPoint z, int steps) {
    std::vector<QPoint> seen{z};
    for (int k = 0; k < steps; ++k) {
        z = naive_apply(u, v, z);
        for (const auto& w : seen)
            if (w == z) return true;
        seen.push_back(z);
    }
    return false;
}

ProjPointQ to_proj(const QPoint& z) {
    if (!z) return ProjPointQ{1, 0};
    return ProjPointQ(std::vector<Int>{Int(z->get_num()), Int(z->get_den())});
}

RationalMap random_map(std::mt19937_64& rng, unsigned d, long bound) {
    std::uniform_int_distribution<long> coef(-bound, bound);
    while (true) {
        std::vector<Int> u(d + 1), v(d + 1);
        for (auto& c : u) c = coef(rng);
        for (auto& c : v) c = coef(rng);
        BinaryForm fu(d, u), fv(d, v);
        if (fu.is_zero() || fv.is_zero() || resultant(fu, fv) == 0) continue;
        return RationalMap(fu, fv);
    }
}

ProjPointQ random_point(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    while (true) {
        long a = dist(rng), b = dist(rng);
        if (a != 0 || b != 0) return ProjPointQ{a, b};
    }
}

}  // namespace

TEST_CASE("map construction") {
    auto f = RationalMap(BinaryForm(2, {2, 0, 4}), BinaryForm(2, {0, 0, 6}));
    CHECK(f.u() == BinaryForm(2, {1, 0, 2}));
    CHECK(f.v() == BinaryForm(2, {0, 0, 3}));
    CHECK_THROWS_AS(RationalMap(BinaryForm(1, {1, 0}), BinaryForm(1, {0, 1})), Error);
    try {
        RationalMap(BinaryForm(2, {1, 1, 0}), BinaryForm(2, {0, 1, 0}));
        FAIL("expected degenerate map");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateMap);
    }
    CHECK(RationalMap::power_map(3).is_power_map());
    CHECK_FALSE(RationalMap::quadratic(1).is_power_map());
    CHECK(RationalMap::power_map(2).log_archimedean_constant() == 0.0);
}

TEST_CASE("good reduction") {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 101ul}) {
        CHECK(good_reduction_at(RationalMap::power_map(2), p));
        CHECK(good_reduction_at(RationalMap::quadratic(1), p));
    }
    // [X^2 - XY : Y^2]: Res = 1.
    auto g = RationalMap(BinaryForm(2, {1, -1, 0}), BinaryForm(2, {0, 0, 1}));
    CHECK(g.resultant() == 1);
    CHECK(good_reduction_at(g, 2));
    // [X^2 : XY + 2Y^2]: Res = V(0, 1)^2 = 4.
    auto h = RationalMap(BinaryForm(2, {1, 0, 0}), BinaryForm(2, {0, 1, 2}));
    CHECK(h.resultant() == 4);
    CHECK_FALSE(good_reduction_at(h, 2));
    CHECK(good_reduction_at(h, 3));
    CHECK(h.bad_primes() == std::vector<unsigned long>{2});
    CHECK_THROWS_AS(good_reduction_at(h, 4), Error);
}

TEST_CASE("iterate examples") {
    auto sq = RationalMap::power_map(2);
    auto r = iterate(sq, ProjPointQ{1, -1}, 100, 10);
    CHECK(r.status == OrbitRecord::Status::Cycle);
    CHECK(r.cycle_entry == 1);
    CHECK(r.cycle_length == 1);

    auto cheb = RationalMap::quadratic(-1);
    r = iterate(cheb, ProjPointQ{0, 1}, 100, 10);
    CHECK(r.status == OrbitRecord::Status::Cycle);
    CHECK(r.cycle_entry == 0);
    CHECK(r.cycle_length == 2);
    CHECK(r.points[1] == ProjPointQ{1, -1});

    auto plus1 = RationalMap::quadratic(1);
    r = iterate(plus1, ProjPointQ{0, 1}, 100, std::log(100.0));
    CHECK(r.status == OrbitRecord::Status::Escaping);
    REQUIRE(r.points.size() == 6);
    CHECK(r.points[3] == ProjPointQ{5, 1});
    CHECK(r.points[5] == ProjPointQ{677, 1});

    r = iterate(plus1, ProjPointQ{0, 1}, 2, 1e9);
    CHECK(r.status == OrbitRecord::Status::BudgetExhausted);
    CHECK(to_string(r.status) == "budget-exhausted");
}

TEST_CASE("orbit gcd invariant") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto f = random_map(rng, 2 + t % 2, 6);
        auto r = iterate(f, random_point(rng, 20), 4, 1e9);
        REQUIRE(r.gcds.size() + 1 == r.points.size());
        for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
            const auto& x = r.points[k];
            const auto& y = r.points[k + 1];
            const Int u = f.u().eval(x[0], x[1]), v = f.v().eval(x[0], x[1]);
            const Int& g = r.gcds[k];
            CHECK(g > 0);
            CHECK(f.resultant() % g == 0);
            // Normalization may flip the sign of the image tuple.
            const bool plus = u == g * y[0] && v == g * y[1];
            const bool minus = u == -g * y[0] && v == -g * y[1];
            CHECK((plus || minus));
        }
    }
}

TEST_CASE("global canonical height") {
    auto pm = RationalMap::power_map(3);
    auto r = canonical_height_global(pm, ProjPointQ{5, -7}, 1e-12);
    CHECK(r.n_used == 0);
    CHECK(r.value == height(ProjPointQ{5, -7}));
    CHECK(r.error == 0.0);
    CHECK(r.rounding <= 1e-14);

    r = canonical_height_global(RationalMap::quadratic(-1), ProjPointQ{0, 1}, 1e-9);
    CHECK(r.value == 0.0);

    // mpmath escape-rate oracle at 60 digits.
    r = canonical_height_global(RationalMap::quadratic(1), ProjPointQ{0, 1}, 1e-6);
    CHECK_FALSE(r.partial);
    CHECK(r.error <= 1e-6);
    CHECK(std::abs(r.value - 0.20367726136974000) <= r.error + r.rounding);

    r = canonical_height_global(RationalMap::quadratic(1), ProjPointQ{0, 1}, 1e-12, 10000);
    CHECK(r.partial);
    CHECK(r.error > 1e-12);
    CHECK(std::abs(r.value - 0.20367726136974000) <= r.error + r.rounding);
}

TEST_CASE("local canonical height examples") {
    auto led = canonical_height_local(RationalMap::power_map(2), ProjPointQ{2, 3}, 1e-12);
    CHECK(led.finite_places.empty());
    CHECK(std::abs(led.archimedean - std::log(3.0)) < 1e-14);
    CHECK(std::abs(led.total - height(ProjPointQ{2, 3})) < 1e-14);

    led = canonical_height_local(RationalMap::quadratic(-1), ProjPointQ{1, 1}, 1e-12);
    CHECK(std::abs(led.total) <= 1e-12);

    const double tol = 1e-12;
    struct Case { long c, a, b; double expected; };
    for (auto cs : {Case{1, 0, 1, 0.20367726136974000}, Case{1, 1, 1, 0.40735452273948000},
                    Case{-2, 1, 3, 1.0986122886681097}, Case{2, 1, 3, 1.5708180588991726}}) {
        led = canonical_height_local(RationalMap::quadratic(cs.c), ProjPointQ{cs.a, cs.b}, tol);
        CHECK(led.total_error <= tol);
        CHECK(std::abs(led.total - cs.expected) <= tol + 1e-15);
    }
}

TEST_CASE("finite places of a map with bad reduction") {
    // [X^2 : XY + 2Y^2], Res = 4.
    auto h = RationalMap(BinaryForm(2, {1, 0, 0}), BinaryForm(2, {0, 1, 2}));
    for (auto x : {ProjPointQ{1, 2}, ProjPointQ{4, 1}, ProjPointQ{3, 8}, ProjPointQ{0, 1}}) {
        auto led = canonical_height_local(h, x, 1e-10);
        CHECK(led.total_error <= 1e-10);
        for (const auto& [p, e] : led.finite_places) CHECK(h.resultant() % p == 0);
        auto g = canonical_height_global(h, x, 1e-6);
        CHECK(std::abs(led.total - g.value) <= led.total_error + g.error + g.rounding);
    }
    // [0:1] -> [0:2] = [0:1]: gcd 2 every step, lambda_2 = -log 2 sum 2^{-k} = -log 2.
    auto led = canonical_height_local(h, ProjPointQ{0, 1}, 1e-10);
    REQUIRE(led.finite_places.count(2));
    CHECK(std::abs(led.finite_places.at(2).value + std::log(2.0)) < 1e-9);
    CHECK(std::abs(led.total) < 1e-9);
}

TEST_CASE("global and local agree on random maps") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        auto f = random_map(rng, 2 + t % 2, 5);
        auto x = random_point(rng, 50);
        auto loc = canonical_height_local(f, x, 1e-10);
        auto glo = canonical_height_global(f, x, 1e-5);
        CHECK(loc.total_error <= 1e-10);
        CHECK(std::abs(loc.total - glo.value) <= loc.total_error + glo.error);
        CHECK(loc.total >= -loc.total_error);
        for (const auto& [p, e] : loc.finite_places) CHECK(f.resultant() % p == 0);
    }
}

TEST_CASE("canonical height properties on random pairs") {
    std::mt19937_64 rng(13);
    const double tol = 1e-10;
    for (int t = 0; t < 100; ++t) {
        auto f = random_map(rng, 2 + t % 3, 4);
        auto x = random_point(rng, 30);
        const double d = f.degree();
        const double hx = canonical_height_local(f, x, tol).total;
        const double hfx = canonical_height_local(f, f.apply(x), tol).total;
        CHECK(std::abs(hfx - d * hx) <= 2 * (d + 1) * tol);
        CHECK(hx >= -tol);
        CHECK(std::abs(hx - height(x)) <= f.constants().c_max() / (d - 1) + tol);
    }
}

TEST_CASE("good reduction and integral points give zero finite part") {
    auto f = RationalMap::quadratic(3);
    auto led = canonical_height_local(f, ProjPointQ{7, 1}, 1e-12);
    CHECK(led.finite_places.empty());
}

TEST_CASE("zero canonical height iff cycle") {
    for (long c : {-2l, -1l, 0l, 1l, 2l}) {
        auto f = RationalMap::quadratic(c);
        const double cap = preperiodic_height_bound(f) + f.constants().c_upper;
        for (const auto& x : enumerate_points(1, 6)) {
            const auto rec = iterate(f, x, 10000, cap);
            const double h = canonical_height_local(f, x, 1e-10).total;
            CHECK((rec.status == OrbitRecord::Status::Cycle) == (std::abs(h) <= 1e-10));
        }
    }
}

TEST_CASE("preperiodic points") {
    CHECK(preperiodic_points_rational(RationalMap::power_map(2)) ==
          std::vector<ProjPointQ>{ProjPointQ{0, 1}, ProjPointQ{1, -1}, ProjPointQ{1, 0}, ProjPointQ{1, 1}});
    CHECK(preperiodic_points_rational(RationalMap::quadratic(1)) == std::vector<ProjPointQ>{ProjPointQ{1, 0}});

    // Oracle: rational iteration over every point with H <= 30 for 10 steps.
    for (long c : {-2l, -1l, 0l, 1l, 3l}) {
        auto f = RationalMap::quadratic(c);
        std::set<ProjPointQ> oracle;
        for (const auto& x : enumerate_points(1, 30)) {
            QPoint z;
            if (x[1] != 0) {
                z = Rational(x[0], x[1]);
                z->canonicalize();
            }
            if (naive_preperiodic(f.u(), f.v(), z, 10)) oracle.insert(to_proj(z));
        }
        const auto got = preperiodic_points_rational(f);
        CHECK(std::set<ProjPointQ>(got.begin(), got.end()) == oracle);
    }
    // z^2 - 1: 0 <-> -1, inf fixed; 1 -> 0.
    CHECK(preperiodic_points_rational(RationalMap::quadratic(-1)) ==
          std::vector<ProjPointQ>{ProjPointQ{0, 1}, ProjPointQ{1, -1}, ProjPointQ{1, 0}, ProjPointQ{1, 1}});

    CHECK_THROWS_AS(preperiodic_points_rational(RationalMap::quadratic(1000), 100), Error);
}

TEST_CASE("commuting maps") {
    std::vector<ProjPointQ> samples{ProjPointQ{1, 2}, ProjPointQ{3, 7}, ProjPointQ{-5, 11}, ProjPointQ{13, 4}};
    auto rep = commuting_height_agreement(RationalMap::power_map(2), RationalMap::power_map(3), samples, 1e-10);
    CHECK(rep.pass);
    CHECK(rep.max_gap <= 1e-14);
    for (std::size_t i = 0; i < samples.size(); ++i) CHECK(std::abs(rep.height_f[i] - height(samples[i])) < 1e-14);

    auto f = RationalMap::quadratic(1);
    rep = commuting_height_agreement(f, f, samples, 1e-10);
    CHECK(rep.max_gap == 0.0);

    auto t2 = RationalMap(BinaryForm(2, {2, 0, -1}), BinaryForm(2, {0, 0, 1}));
    auto t3 = RationalMap(BinaryForm(3, {4, 0, -3, 0}), BinaryForm(3, {0, 0, 0, 1}));
    rep = commuting_height_agreement(t2, t3, samples, 1e-9);
    CHECK(rep.pass);

    CHECK_THROWS_AS(commuting_height_agreement(RationalMap::quadratic(1), RationalMap::power_map(2), samples, 1e-9), Error);
}
