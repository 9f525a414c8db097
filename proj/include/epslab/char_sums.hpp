#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "epslab/characters.hpp"
#include "epslab/cyclo.hpp"

namespace epslab {

// Which reading of the local Jacobi sum J_1 a verification run uses.
// Strict keeps the defining constraint t - x in U_F; Shell(v) restricts to
// nu(1 - s) = v with chi_2 evaluated on all of F^x; AutoShell picks the
// shell the case analysis of the twisting formula itself selects.
struct JacobiMode {
    enum class Kind { Strict, Shell, AutoShell };
    Kind kind = Kind::Strict;
    int shell_v = 0;

    static JacobiMode strict() { return {Kind::Strict, 0}; }
    static JacobiMode shell(int v) { return {Kind::Shell, v}; }
    static JacobiMode auto_shell() { return {Kind::AutoShell, 0}; }

    std::string name() const {
        switch (kind) {
            case Kind::Strict: return "strict";
            case Kind::Shell: return "shell:" + std::to_string(shell_v);
            case Kind::AutoShell: return "autoshell";
        }
        return "?";
    }

    bool operator==(const JacobiMode& o) const { return kind == o.kind && shell_v == o.shell_v; }
};

namespace detail {

// monomial accumulator over zeta_M; every character-sum term is a single
// root of unity, so sums are integer counts per exponent
class ZetaAccumulator {
public:
    explicit ZetaAccumulator(i64 M) : M_(M), counts_(static_cast<size_t>(M), 0) {}

    i64 order() const { return M_; }

    void add(i64 order, i64 exp) {
        exp %= order;
        if (exp < 0) exp += order;
        ++counts_[static_cast<size_t>(exp * (M_ / order))];
    }

    void add_slot(i64 slot) { ++counts_[static_cast<size_t>(slot)]; }

    i64 slot(i64 order, i64 exp) const {
        exp %= order;
        if (exp < 0) exp += order;
        return exp * (M_ / order);
    }

    Cyclo value() const { return Cyclo::from_power_counts(M_, counts_); }

private:
    i64 M_;
    std::vector<i64> counts_;
};

inline i64 pow_i64(i64 b, i64 e) {
    i64 r = 1;
    for (i64 i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace detail

// ---------------------------------------------------------------------------
// G(chi, psi, m) = sum over x in U/U^m of chi^{-1}(x) psi(x/c),
// c = pi^{a(chi)+n(psi)}.  Well defined (coset-representative independent)
// only for m >= a(chi); smaller m is rejected rather than guessed.
inline Cyclo gauss_sum(const MultChar& chi, const AddChar& psi, int m,
                       const std::vector<i64>* reps = nullptr) {
    if (chi.prime() != psi.prime()) throw PrimeError("character and psi over different primes");
    const Prime& p = chi.prime();
    int a = chi.conductor();
    if (m < std::max(a, 1))
        throw IllDefinedSumError("gauss_sum needs level m >= max(a(chi),1), got m=" + std::to_string(m));

    // psi(x/c) = psi_F(b x pi^{-a-n(psi)}) has denominator exponent a
    i64 P = p.pow(a);
    i64 ub = a > 0 ? psi.twist().unit_mod(a) : 1;
    i64 L = chi.unit_value_order();
    i64 M = std::lcm(L, P);
    detail::ZetaAccumulator acc(M);

    auto add_term = [&](i64 x) {
        i64 tchi = chi.unit_exponent(x); // chi^{-1}(x) = zeta_L^{-tchi}
        if (a > 0) {
            i64 A = detail::mul_mod(ub, x % P, P);
            acc.add_slot((acc.slot(L, -tchi) + acc.slot(P, A)) % M);
        } else {
            acc.add(L, -tchi);
        }
    };

    if (reps) {
        for (i64 x : *reps) {
            if (x % p.value() == 0) throw UnitError("coset representative not a unit");
            add_term(x);
        }
    } else {
        i64 pm = p.pow(m);
        for (i64 x = 1; x < pm; ++x)
            if (x % p.value() != 0) add_term(x);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// I(m) = integral over U_F of chi^{-1}(x) psi(x / pi^{l+m}) dx, l = a + n(psi),
// realized as q^{-N} * sum over U/U^N at the minimal level N where the
// integrand is constant on cosets: N = max(a(chi), a(chi)+m, 1).
inline HalfScaled char_sum_I(const MultChar& chi, const AddChar& psi, int m) {
    if (chi.prime() != psi.prime()) throw PrimeError("character and psi over different primes");
    const Prime& p = chi.prime();
    int a = chi.conductor();
    int N = std::max({a, a + m, 1});
    int dexp = std::max(a + m, 0); // psi(x/pi^{l+m}) has denominator exponent a+m
    i64 P = p.pow(dexp);
    i64 ub = dexp > 0 ? psi.twist().unit_mod(dexp) : 1;
    i64 L = chi.unit_value_order();
    i64 M = std::lcm(L, P);
    detail::ZetaAccumulator acc(M);

    i64 pN = p.pow(N);
    for (i64 x = 1; x < pN; ++x) {
        if (x % p.value() == 0) continue;
        i64 tchi = chi.unit_exponent(x);
        i64 slot = acc.slot(L, -tchi);
        if (dexp > 0) slot = (slot + acc.slot(P, detail::mul_mod(ub, x % P, P))) % M;
        acc.add_slot(slot);
    }
    Cyclo u = acc.value().times_rational(1, boost::multiprecision::pow(BigInt(p.value()), static_cast<unsigned>(N)));
    return HalfScaled(std::move(u), 0, p.value());
}

// ---------------------------------------------------------------------------
// varphi(x) = sum over y in U/U^a of psi(y (x-1) / pi^{a+n(psi)});
// closed form q^a [x in U^a] - q^{a-1} [x in U^{a-1}]
inline Cyclo varphi(i64 x, int a, const AddChar& psi) {
    if (a < 1) throw LevelError("varphi needs level a >= 1");
    const Prime& p = psi.prime();
    i64 pa = p.pow(a);
    x %= pa;
    if (x < 0) x += pa;
    if (x == 0 || x % p.value() == 0) throw UnitError("varphi argument must be a unit");
    i64 ub = psi.twist().unit_mod(a);
    detail::ZetaAccumulator acc(pa);
    for (i64 y = 1; y < pa; ++y) {
        if (y % p.value() == 0) continue;
        i64 A = detail::mul_mod(detail::mul_mod(ub, y, pa), (x - 1 + pa) % pa, pa);
        acc.add(pa, A);
    }
    return acc.value();
}

// the bracket side of the closed form, for tests and the verifier
inline Cyclo varphi_closed_form(i64 x, int a, const Prime& p) {
    i64 pa = p.pow(a);
    x %= pa;
    if (x < 0) x += pa;
    BigInt v = 0;
    if (x % pa == 1 % pa) v += boost::multiprecision::pow(BigInt(p.value()), static_cast<unsigned>(a));
    i64 pam1 = p.pow(a - 1);
    if (x % pam1 == 1 % pam1) v -= boost::multiprecision::pow(BigInt(p.value()), static_cast<unsigned>(a - 1));
    return Cyclo::from_rational(v, 1);
}

// ---------------------------------------------------------------------------
// J_t(chi1, chi2, n) = sum over x in U/U^n with t - x in U_F of
// chi1^{-1}(x) chi2^{-1}(t - x)
inline Cyclo jacobi_strict(const MultChar& chi1, const MultChar& chi2, i64 t, int n) {
    if (chi1.prime() != chi2.prime()) throw PrimeError("characters of different primes");
    const Prime& p = chi1.prime();
    if (n < std::max({chi1.conductor(), chi2.conductor(), 1}))
        throw IllDefinedSumError("jacobi level below max(a(chi1), a(chi2), 1)");
    i64 pn = p.pow(n);
    t %= pn;
    if (t < 0) t += pn;
    if (t == 0 || t % p.value() == 0) throw UnitError("t must be a unit");

    i64 L1 = chi1.unit_value_order(), L2 = chi2.unit_value_order();
    i64 M = std::lcm(L1, L2);
    detail::ZetaAccumulator acc(M);
    for (i64 x = 1; x < pn; ++x) {
        if (x % p.value() == 0) continue;
        i64 y = (t - x % pn + pn) % pn;
        if (y == 0 || y % p.value() == 0) continue; // t - x not a unit
        acc.add_slot((acc.slot(L1, -chi1.unit_exponent(x)) + acc.slot(L2, -chi2.unit_exponent(y))) % M);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// shell Jacobi sum: sum over s in U/U^n with nu(1-s) = v of
// chi1^{-1}(s) chi2^{-1}(1-s), chi2 evaluated on all of F^x, i.e. including
// the chi2(pi)^{-v} factor on the pi-part of 1-s
inline Cyclo jacobi_shell(const MultChar& chi1, const MultChar& chi2, int n, int v) {
    if (chi1.prime() != chi2.prime()) throw PrimeError("characters of different primes");
    const Prime& p = chi1.prime();
    if (n < std::max(chi1.conductor(), 1))
        throw IllDefinedSumError("jacobi level below a(chi1)");
    if (v < 0 || v > n - chi2.conductor() || v > n - 1)
        throw PrecisionError("shell v=" + std::to_string(v) +
                             " leaves the unit part of 1-s undetermined to conductor precision");

    i64 pn = p.pow(n);
    i64 L1 = chi1.unit_value_order();
    i64 L2f = chi2.field_value_order();
    i64 M = std::lcm(L1, L2f);
    detail::ZetaAccumulator acc(M);
    for (i64 s = 1; s < pn; ++s) {
        if (s % p.value() == 0) continue;
        i64 d = (1 - s % pn + pn) % pn;
        if (d == 0) continue; // nu(1-s) >= n: outside every admissible shell
        int w = 0;
        i64 dd = d;
        while (dd % p.value() == 0) { dd /= p.value(); ++w; }
        if (w != v) continue;
        ValUnit one_minus_s(p, v, dd, n - v);
        i64 Lf = 0;
        i64 t2 = chi2.field_exponent(one_minus_s, &Lf);
        acc.add_slot((acc.slot(L1, -chi1.unit_exponent(s)) + acc.slot(L2f, -t2)) % M);
    }
    return acc.value();
}

} // namespace epslab
