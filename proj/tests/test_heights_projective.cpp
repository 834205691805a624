#include "doctest.h"

#include "arithdyn/error.hpp"
#include "arithdyn/projective.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace arithdyn;

namespace {

// Every nonzero tuple of the cube, normalized and deduplicated.
std::vector<ProjPointQ> brute_force_points(unsigned k, long bound) {
    std::set<ProjPointQ> seen;
    std::vector<long> x(k + 1, -bound);
    while (true) {
        bool nonzero = false;
        for (long c : x) nonzero = nonzero || c != 0;
        if (nonzero) {
            ProjPointQ p(std::vector<Int>(x.begin(), x.end()));
            if (p.exp_height() <= bound) seen.insert(p);
        }
        std::size_t pos = x.size();
        while (pos-- > 0) {
            if (x[pos] < bound) {
                ++x[pos];
                break;
            }
            x[pos] = -bound;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
    }
    return {seen.begin(), seen.end()};
}

ProjPointQ random_point(std::mt19937_64& rng, unsigned k, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    while (true) {
        std::vector<Int> c(k + 1);
        bool nonzero = false;
        for (auto& x : c) {
            x = dist(rng);
            nonzero = nonzero || x != 0;
        }
        if (nonzero) return ProjPointQ(c);
    }
}

}  // namespace

TEST_CASE("normalization and naive height") {
    CHECK(height(ProjPointQ{1, 0}) == 0.0);
    ProjPointQ p{2, 4};
    CHECK(p == ProjPointQ{1, 2});
    CHECK(height(p) == doctest::Approx(std::log(2.0)));
    CHECK(height(ProjPointQ{3, 5, -7}) == doctest::Approx(std::log(7.0)));
    CHECK(ProjPointQ{-3, 6} == ProjPointQ{1, -2});
    CHECK(ProjPointQ{0, -5} == ProjPointQ{0, 1});
    CHECK_THROWS_AS(ProjPointQ({0, 0}), Error);
    CHECK(ProjPointQ::from_rationals({Rational(1, 2), Rational(2, 3)}) == ProjPointQ{3, 4});
}

TEST_CASE("height is zero exactly on {-1,0,1} coordinates") {
    for (const auto& p : enumerate_points(2, 2)) {
        bool unit = true;
        for (const auto& c : p.coords()) unit = unit && abs(c) <= 1;
        CHECK((height(p) == 0.0) == unit);
    }
}

TEST_CASE("enumeration examples") {
    auto h1 = enumerate_points(1, 1);
    REQUIRE(h1.size() == 4);
    CHECK(h1 == std::vector<ProjPointQ>{ProjPointQ{0, 1}, ProjPointQ{1, -1}, ProjPointQ{1, 0}, ProjPointQ{1, 1}});
    // Brute force over |a|, |b| <= 2: [0:1] [1:0] [1:+-1] [1:+-2] [2:+-1].
    CHECK(enumerate_points(1, 2).size() == 8);
    CHECK(enumerate_points(2, 1).size() == 13);
    CHECK(enumerate_points(1, 0).empty());
}

TEST_CASE("enumeration matches the brute-force oracle") {
    for (unsigned k = 1; k <= 2; ++k)
        for (long b = 1; b <= 5; ++b) CHECK(enumerate_points(k, b) == brute_force_points(k, b));
    CHECK(count_points(2, 5) == brute_force_points(2, 5).size());
}

TEST_CASE("shells partition the enumeration") {
    std::vector<ProjPointQ> merged;
    for (long h = 1; h <= 6; ++h) {
        auto s = enumerate_shell(1, h);
        for (const auto& p : s) CHECK(p.exp_height() == h);
        merged.insert(merged.end(), s.begin(), s.end());
    }
    std::sort(merged.begin(), merged.end());
    CHECK(merged == enumerate_points(1, 6));
}

TEST_CASE("logarithmic bound selection") {
    CHECK(enumerate_points_log(1, std::log(2.0)).size() == 8);
    CHECK(enumerate_points_log(1, 0.0).size() == 4);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_points(2, 200, 1000), Error);
    try {
        enumerate_points(1, 100, 10);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
}

TEST_CASE("zeta values") {
    CHECK(std::abs(zeta(2) - M_PI * M_PI / 6) < 1e-14);
    CHECK(std::abs(zeta(3) - 1.2020569031595942) < 1e-14);
    CHECK(std::abs(zeta(4) - std::pow(M_PI, 4) / 90) < 1e-14);
}

TEST_CASE("Schanuel ratio") {
    CHECK(std::abs(schanuel_ratio(1, 10) - 1) < 0.2);
    CHECK(std::abs(schanuel_ratio(2, 50) - 1) < 0.1);
    CHECK(std::abs(schanuel_ratio(1, 1000) - 1) < 0.02);
    CHECK_THROWS_AS(schanuel_ratio(1, 1), Error);
}

TEST_CASE("Segre and Veronese identities") {
    auto s = segre(ProjPointQ{1, 2}, ProjPointQ{1, 3});
    CHECK(s == ProjPointQ{1, 3, 2, 6});
    CHECK(height(s) == doctest::Approx(std::log(2.0) + std::log(3.0)));
    CHECK(segre(ProjPointQ{1, 0}, ProjPointQ{1, 0}) == ProjPointQ{1, 0, 0, 0});
    CHECK(height(segre(ProjPointQ{2, 3}, ProjPointQ{5, 7})) == doctest::Approx(std::log(21.0)));

    CHECK(veronese(ProjPointQ{1, 2}, 2) == ProjPointQ{1, 2, 4});
    auto v5 = veronese(ProjPointQ{1, 1}, 5);
    CHECK(v5.coords().size() == 6);
    CHECK(height(v5) == 0.0);
    CHECK(height(veronese(ProjPointQ{2, 3}, 3)) == doctest::Approx(3 * std::log(3.0)));

    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        auto x = random_point(rng, 2, 50), y = random_point(rng, 1, 50);
        // Exact: H(S(x, y)) = H(x) H(y) and H(V_d(x)) = H(x)^d.
        CHECK(segre(x, y).exp_height() == x.exp_height() * y.exp_height());
        Int h3;
        mpz_pow_ui(h3.get_mpz_t(), x.exp_height().get_mpz_t(), 3);
        CHECK(veronese(x, 3).exp_height() == h3);
    }
}

TEST_CASE("linear projection never increases height") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 500; ++t) {
        auto x = random_point(rng, 3, 1000);
        for (unsigned drop = 0; drop <= 3; ++drop) {
            bool center = true;
            for (unsigned i = 0; i <= 3; ++i)
                if (i != drop && x[i] != 0) center = false;
            if (center) {
                CHECK_THROWS_AS(linear_projection(x, drop), Error);
                continue;
            }
            CHECK(height(linear_projection(x, drop)) <= height(x) + 1e-12);
        }
    }
    CHECK_THROWS_AS(linear_projection(ProjPointQ{0, 0, 1}, 2), Error);
}

TEST_CASE("height invariances") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        auto x = random_point(rng, 2, 10000);
        std::vector<Int> perm = {x[2], x[0], x[1]};
        CHECK(height(ProjPointQ(perm)) == height(x));
        std::vector<Rational> scaled;
        for (const auto& c : x.coords()) scaled.push_back(Rational(c) * Rational(7, 11));
        CHECK(ProjPointQ::from_rationals(scaled) == x);
    }
}

TEST_CASE("apply_morphism examples") {
    auto sq = HomMorphism::power_map(1, 2);
    auto img = apply_morphism(sq, ProjPointQ{2, 3});
    CHECK(img == ProjPointQ{4, 9});
    CHECK(height(img) == doctest::Approx(2 * height(ProjPointQ{2, 3})));
    CHECK(apply_morphism(sq, ProjPointQ{1, 1}) == ProjPointQ{1, 1});

    auto f = HomMorphism::from_forms(BinaryForm(2, {1, 0, 1}), BinaryForm(2, {0, 0, 1}));
    CHECK(f.base_point_free());
    CHECK(apply_morphism(f, ProjPointQ{0, 1}) == ProjPointQ{1, 1});

    // [XY : Y^2] is not defined at [1:0].
    auto g = HomMorphism::from_forms(BinaryForm(2, {0, 1, 0}), BinaryForm(2, {0, 0, 1}));
    CHECK_FALSE(g.base_point_free());
    CHECK_THROWS_AS(apply_morphism(g, ProjPointQ{1, 0}), Error);
    try {
        apply_morphism(g, ProjPointQ{1, 0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Indeterminacy);
    }
}

TEST_CASE("functoriality constants") {
    auto sq = functoriality_constants(HomMorphism::power_map(1, 2));
    CHECK(sq.c_upper == 0.0);
    REQUIRE(sq.c_lower);
    CHECK(*sq.c_lower == 0.0);

    auto plus1 = functoriality_constants(HomMorphism::from_forms(BinaryForm(2, {1, 0, 1}), BinaryForm(2, {0, 0, 1})));
    CHECK(plus1.c_upper == doctest::Approx(std::log(2.0)));
    REQUIRE(plus1.c_lower);
    CHECK(*plus1.c_lower == doctest::Approx(std::log(2.0)));  // ||X||_1 + ||-X||_1 = 2

    auto p2 = functoriality_constants(HomMorphism::power_map(2, 3));
    CHECK(p2.c_upper == 0.0);
    CHECK_FALSE(p2.c_lower.has_value());
}

TEST_CASE("functoriality sandwich on random maps") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> coef(-9, 9);
    int maps = 0;
    while (maps < 10) {
        BinaryForm u(2, {coef(rng), coef(rng), coef(rng)}), v(2, {coef(rng), coef(rng), coef(rng)});
        if (resultant(u, v) == 0) continue;
        auto f = HomMorphism::from_forms(u, v);
        REQUIRE(f.base_point_free());
        auto c = functoriality_constants(f);
        REQUIRE(c.c_lower);
        for (int t = 0; t < 300; ++t) {
            auto x = random_point(rng, 1, 100000);
            const double hx = height(x), hfx = height(apply_morphism(f, x));
            CHECK(hfx <= 2 * hx + c.c_upper + 1e-9);
            CHECK(hfx >= 2 * hx - *c.c_lower - 1e-9);
        }
        ++maps;
    }
}

TEST_CASE("power map on P^2") {
    auto f = HomMorphism::power_map(2, 3);
    auto x = ProjPointQ{2, -3, 5};
    CHECK(apply_morphism(f, x) == ProjPointQ{8, -27, 125});
    CHECK(height(apply_morphism(f, x)) == doctest::Approx(3 * height(x)));
}
