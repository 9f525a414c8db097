#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "epslab/characters.hpp"
#include "oracle.hpp"

using namespace epslab;

namespace {

MultChar chi_k(const UnitGroupPtr& S, i64 k) { return MultChar::make(S, {k}); }

std::vector<MultChar> all_chars(i64 p, int n) { return enumerate_chars(Prime(p), n); }

} // namespace

TEST_CASE("conductor examples") {
    auto S32 = unit_group_structure(Prime(3), 2);
    CHECK(chi_k(S32, 1).conductor() == 2);
    CHECK(chi_k(S32, 3).conductor() == 1);
    CHECK(chi_k(S32, 0).conductor() == 0);
    CHECK(chi_k(S32, 0).is_trivial());

    auto S52 = unit_group_structure(Prime(5), 2);
    CHECK(chi_k(S52, 10).conductor() == 1); // the quadratic character seen at level 2
}

TEST_CASE("character evaluation on units and on F^x") {
    auto S31 = unit_group_structure(Prime(3), 1);
    MultChar quad3 = chi_k(S31, 1);
    CHECK(quad3.eval_field(ValUnit(Prime(3), 2, 2, 1)) == Cyclo::from_integer(-1));
    MultChar triv = chi_k(S31, 0);
    CHECK(triv.eval_field(ValUnit(Prime(3), -4, 2, 1)).is_one());
    MultChar with_pi = MultChar::make(S31, {0}, 6, 1);
    CHECK(with_pi.eval_field(pi_power(Prime(3), 1)) == root_of_unity(6, 1));

    // evaluation needs the unit class at conductor precision
    auto S32 = unit_group_structure(Prime(3), 2);
    CHECK_THROWS_AS(chi_k(S32, 1).eval_field(ValUnit(Prime(3), 0, 2, 1)), PrecisionError);
}

TEST_CASE("characters are homomorphisms (exhaustive at small scale)") {
    for (i64 p : {2, 3, 5}) {
        for (int n = 1; n <= 2; ++n) {
            for (const auto& chi : all_chars(p, n)) {
                i64 pn = chi.group()->modulus();
                for (i64 u = 1; u < pn; ++u) {
                    if (u % p == 0) continue;
                    for (i64 v = 1; v < pn; ++v) {
                        if (v % p == 0) continue;
                        CHECK(chi.eval_unit(detail::mul_mod(u, v, pn)) == chi.eval_unit(u) * chi.eval_unit(v));
                    }
                }
            }
        }
    }
}

TEST_CASE("field evaluation is multiplicative") {
    auto S = unit_group_structure(Prime(5), 2);
    MultChar chi = MultChar::make(S, {3}, 4, 1);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        i64 uv = 1 + static_cast<i64>(rng() % 24);
        i64 vv = 1 + static_cast<i64>(rng() % 24);
        if (uv % 5 == 0 || vv % 5 == 0) continue;
        ValUnit x(Prime(5), static_cast<i64>(rng() % 7) - 3, uv, 2);
        ValUnit y(Prime(5), static_cast<i64>(rng() % 7) - 3, vv, 2);
        CHECK(chi.eval_field(x * y) == chi.eval_field(x) * chi.eval_field(y));
    }
}

TEST_CASE("orthogonality on the last filtration step") {
    // for a(chi) = a >= 1: sum over U^{a-1}/U^a of chi^{-1} vanishes
    for (i64 p : {2, 3, 5, 7}) {
        for (int a = 1; a <= 3; ++a) {
            for (const auto& chi : all_chars(p, a)) {
                if (chi.conductor() != a) continue;
                Cyclo sum;
                i64 pa = chi.group()->modulus();
                i64 step = Prime(p).pow(a - 1);
                for (i64 t = 0; t < p; ++t) {
                    i64 u = (1 + step * t) % pa;
                    if (u == 0 || u % p == 0) continue;
                    sum = sum + char_eval_field(char_inv(chi), ValUnit(Prime(p), 0, u, a));
                }
                CHECK(sum.is_zero());
            }
        }
    }
}

TEST_CASE("conductor of products: bounded by the max, equal when they differ") {
    for (i64 p : {2, 3, 5}) {
        int nmax = p == 5 ? 2 : 3;
        auto chars = all_chars(p, nmax);
        for (const auto& c1 : chars) {
            for (const auto& c2 : chars) {
                int a1 = c1.conductor(), a2 = c2.conductor();
                int r = char_mul(c1, c2).conductor();
                CHECK(r <= std::max(a1, a2));
                if (a1 != a2) CHECK(r == std::max(a1, a2));
            }
        }
    }
}

TEST_CASE("char_mul and char_inv examples") {
    auto S32 = unit_group_structure(Prime(3), 2);
    MultChar prod = char_mul(chi_k(S32, 1), chi_k(S32, 2));
    CHECK(prod.exps() == std::vector<i64>{3});
    CHECK(prod.conductor() == 1);
    CHECK(char_mul(chi_k(S32, 1), char_inv(chi_k(S32, 1))).is_trivial());
    auto S51 = unit_group_structure(Prime(5), 1);
    CHECK(char_mul(chi_k(S51, 2), chi_k(S51, 2)).is_trivial());

    // conductor is recomputed, never assumed: levels coerce to the max
    auto S31 = unit_group_structure(Prime(3), 1);
    MultChar lifted = char_mul(chi_k(S31, 1), chi_k(S32, 1));
    CHECK(lifted.level() == 2);
    CHECK(lifted.conductor() == 2);
}

TEST_CASE("at_level preserves values") {
    auto S31 = unit_group_structure(Prime(3), 1);
    MultChar quad = chi_k(S31, 1);
    MultChar lift = quad.at_level(3);
    CHECK(lift.conductor() == 1);
    for (i64 u = 1; u < 27; ++u) {
        if (u % 3 == 0) continue;
        CHECK(lift.eval_unit(u) == quad.eval_unit(u % 3));
    }
    CHECK_THROWS_AS(lift.at_level(1), LevelError);
}

TEST_CASE("enumeration: counts, order, and conductor filter") {
    CHECK(enumerate_chars(Prime(5), 1, 1).size() == 3);
    CHECK(enumerate_chars(Prime(3), 2, 2).size() == 4);
    CHECK(enumerate_chars(Prime(3), 2).size() == 6);
    CHECK(enumerate_chars(Prime(2), 1).size() == 1);

    auto chars = enumerate_chars(Prime(3), 2);
    for (size_t i = 0; i < chars.size(); ++i) {
        CHECK(chars[i].exps() == std::vector<i64>{static_cast<i64>(i)});
        CHECK(chars[i].pi_order() == 1); // chi(pi) = 1 default
    }
}

TEST_CASE("additive characters") {
    Prime p3(3);
    AddChar psi = AddChar::canonical(p3);
    CHECK(psi.conductor() == 0);
    CHECK(psi.eval(ValUnit(p3, -1, 1, 1)) == root_of_unity(3, 1));
    CHECK(psi.eval(ValUnit(p3, 0, 2, 1)).is_one());
    CHECK(psi.eval(ValUnit(p3, -2, 7, 2)) == root_of_unity(9, 7));

    // n(psi_F) = 0: trivial on O_F, nontrivial at v = -1, for every desk prime
    for (i64 p : {2, 3, 5, 7}) {
        AddChar can = AddChar::canonical(Prime(p));
        CHECK(can.eval(ValUnit(Prime(p), 0, 1, 2)).is_one());
        CHECK(can.eval(ValUnit(Prime(p), 3, 1, 2)).is_one());
        CHECK_FALSE(can.eval(ValUnit(Prime(p), -1, 1, 2)).is_one());
    }

    // n(b psi) = n(psi) + v(b)
    AddChar shifted = psi.twisted_by(ValUnit(p3, 2, 2, 4));
    CHECK(shifted.conductor() == 2);
    CHECK(shifted.twist().unit() == 2);
}

TEST_CASE("psi is additive where both sides are defined") {
    Prime p(5);
    AddChar psi = AddChar::canonical(p).twisted_by(ValUnit(p, -2, 3, 6));
    std::mt19937 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        i64 xv = static_cast<i64>(rng() % 125);
        i64 yv = static_cast<i64>(rng() % 125);
        if (xv == 0 || yv == 0 || xv % 5 == 0 || yv % 5 == 0) continue;
        ValUnit x(p, 0, xv, 3), y(p, 0, yv, 3);
        auto [ok, s] = val_unit_add(x, y, 3);
        if (!ok) continue;
        CHECK(psi.eval(s) == psi.eval(x) * psi.eval(y));
    }
}

TEST_CASE("character values match the independent oracle") {
    for (i64 p : {3, 5, 7}) {
        for (const auto& chi : all_chars(p, 2)) {
            i64 pn = chi.group()->modulus();
            for (i64 u = 1; u < pn; ++u) {
                if (u % p == 0) continue;
                CHECK(std::abs(chi.eval_unit(u).embed() - oracle::chi_value(chi, u)) < 1e-10);
            }
        }
    }
}
