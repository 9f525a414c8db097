#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "epslab/padic.hpp"

using namespace epslab;

TEST_CASE("Prime validates primality") {
    CHECK_THROWS_AS(Prime(1), PrimeError);
    CHECK_THROWS_AS(Prime(4), PrimeError);
    CHECK_THROWS_AS(Prime(9), PrimeError);
    CHECK(Prime(2).value() == 2);
    CHECK(Prime(7).value() == 7);
}

TEST_CASE("unit group structure: canonical generators and orders") {
    auto S = unit_group_structure(Prime(3), 2);
    CHECK(S->generators() == std::vector<i64>{2});
    CHECK(S->orders() == std::vector<i64>{6});
    CHECK(S->group_order() == 6);

    auto S21 = unit_group_structure(Prime(2), 1);
    CHECK(S21->generators().empty());
    CHECK(S21->group_order() == 1);

    auto S51 = unit_group_structure(Prime(5), 1);
    CHECK(S51->generators() == std::vector<i64>{2});
    CHECK(S51->orders() == std::vector<i64>{4});

    auto S22 = unit_group_structure(Prime(2), 2);
    CHECK(S22->generators() == std::vector<i64>{3});
    CHECK(S22->orders() == std::vector<i64>{2});

    auto S23 = unit_group_structure(Prime(2), 3);
    CHECK(S23->generators() == std::vector<i64>{7, 5});
    CHECK(S23->orders() == std::vector<i64>{2, 2});

    auto S24 = unit_group_structure(Prime(2), 4);
    CHECK(S24->generators() == std::vector<i64>{15, 5});
    CHECK(S24->orders() == std::vector<i64>{2, 4});

    CHECK_THROWS_AS(unit_group_structure(Prime(3), 0), LevelError);
}

TEST_CASE("generators span the whole unit group (exhaustive, p <= 7, n <= 4)") {
    for (i64 p : {2, 3, 5, 7}) {
        for (int n = 1; n <= 4; ++n) {
            auto S = unit_group_structure(Prime(p), n);
            std::set<i64> seen;
            std::vector<i64> exps(S->generators().size(), 0);
            while (true) {
                seen.insert(S->power_of_generators(exps));
                size_t i = exps.size();
                bool done = exps.empty();
                while (i > 0) {
                    --i;
                    if (++exps[i] < S->orders()[i]) break;
                    exps[i] = 0;
                    if (i == 0) done = true;
                }
                if (done) break;
            }
            CHECK(static_cast<i64>(seen.size()) == (p - 1) * S->prime().pow(n - 1));
        }
    }
}

TEST_CASE("discrete log examples and round trip") {
    auto S = unit_group_structure(Prime(3), 2);
    CHECK(S->discrete_log(7) == std::vector<i64>{4});
    CHECK(S->discrete_log(1) == std::vector<i64>{0});
    CHECK(unit_group_structure(Prime(5), 1)->discrete_log(2) == std::vector<i64>{1});
    CHECK_THROWS_AS(S->discrete_log(6), UnitError);

    for (i64 p : {2, 3, 5, 7}) {
        for (int n = 1; n <= 3; ++n) {
            auto G = unit_group_structure(Prime(p), n);
            std::vector<i64> exps(G->generators().size(), 0);
            while (true) {
                CHECK(G->discrete_log(G->power_of_generators(exps)) == exps);
                size_t i = exps.size();
                bool done = exps.empty();
                while (i > 0) {
                    --i;
                    if (++exps[i] < G->orders()[i]) break;
                    exps[i] = 0;
                    if (i == 0) done = true;
                }
                if (done) break;
            }
        }
    }
}

TEST_CASE("val_unit_decompose") {
    Prime p3(3), p5(5);
    ValUnit a = val_unit_decompose(18, p3, 2);
    CHECK(a.valuation() == 2);
    CHECK(a.unit() == 2);

    ValUnit b = val_unit_decompose(1, 3, p3, 1);
    CHECK(b.valuation() == -1);
    CHECK(b.unit() == 1);

    ValUnit c = val_unit_decompose(7, p5, 1);
    CHECK(c.valuation() == 0);
    CHECK(c.unit() == 2);

    CHECK_THROWS_AS(val_unit_decompose(0, p3, 1), ZeroError);
}

TEST_CASE("val_unit_decompose is multiplicative") {
    Prime p(5);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        i64 x = static_cast<i64>(rng() % 4000) + 1;
        i64 y = static_cast<i64>(rng() % 4000) + 1;
        ValUnit dx = val_unit_decompose(x, p, 4);
        ValUnit dy = val_unit_decompose(y, p, 4);
        ValUnit dxy = val_unit_decompose(x * y, p, 4);
        CHECK(dxy.valuation() == dx.valuation() + dy.valuation());
        CHECK((dx * dy).same_class(dxy));
    }
}

TEST_CASE("frac_part") {
    Prime p3(3), p5(5);
    CHECK(frac_part(ValUnit(p3, -2, 7, 2)) == std::pair<i64, i64>{7, 9});
    CHECK(frac_part(ValUnit(p5, 0, 4, 1)) == std::pair<i64, i64>{0, 1});
    CHECK(frac_part(ValUnit(p3, -1, 1, 1)) == std::pair<i64, i64>{1, 3});
    CHECK_THROWS_AS(frac_part(ValUnit(p3, -2, 1, 1)), PrecisionError);
}

TEST_CASE("frac_part(x) + frac_part(-x) = 1 for negative valuation") {
    for (i64 p : {2, 3, 5, 7}) {
        Prime pp(p);
        std::mt19937 rng(11 + static_cast<unsigned>(p));
        for (int trial = 0; trial < 100; ++trial) {
            int v = -1 - static_cast<int>(rng() % 3);
            i64 pk = pp.pow(-v);
            i64 u = static_cast<i64>(rng() % pk);
            if (u == 0 || u % p == 0) continue;
            ValUnit x(pp, v, u, -v);
            auto [an, ad] = frac_part(x);
            auto [bn, bd] = frac_part(-x);
            CHECK(an * bd + bn * ad == ad * bd); // a + b = 1
        }
    }
}

TEST_CASE("ring addition drops precision by the valuation of the sum") {
    Prime p(3);
    // 1 + 2 = 3 in Z/27: valuation 1, precision 2
    auto [ok, s] = val_unit_add(ValUnit(p, 0, 1, 3), ValUnit(p, 0, 2, 3), 3);
    REQUIRE(ok);
    CHECK(s.valuation() == 1);
    CHECK(s.unit() == 1);
    CHECK(s.precision() == 2);

    // 1 + 26 = 27 = 0 in Z/27
    auto [ok2, z] = val_unit_add(ValUnit(p, 0, 1, 3), ValUnit(p, 0, 26, 3), 3);
    CHECK_FALSE(ok2);
    (void)z;

    // mixed valuations: 3 + 2 = 5, a unit
    auto [ok3, t] = val_unit_add(ValUnit(p, 1, 1, 2), ValUnit(p, 0, 2, 3), 3);
    REQUIRE(ok3);
    CHECK(t.valuation() == 0);
    CHECK(t.unit() == 5);

    CHECK_THROWS_AS(val_unit_add(ValUnit(p, 0, 1, 1), ValUnit(p, 0, 1, 3), 3), PrecisionError);
}

TEST_CASE("ValUnit arithmetic basics") {
    Prime p(5);
    ValUnit x(p, 1, 2, 3);
    ValUnit y(p, -2, 3, 3);
    ValUnit xy = x * y;
    CHECK(xy.valuation() == -1);
    CHECK(xy.unit() == 6);
    CHECK(x.inverse().same_class(ValUnit(p, -1, 63, 3))); // 2 * 63 = 126 = 1 mod 125
    CHECK((x.pow(3)).unit() == 8);
    CHECK((-x).unit() == 123);
    CHECK_THROWS_AS(ValUnit(p, 0, 10, 2), UnitError);
    CHECK_THROWS_AS(ValUnit(p, 0, 1, 0), PrecisionError);
}
