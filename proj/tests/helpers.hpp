#pragma once

// Test-only sum kernels: the unrestricted double sum behind eps(chi1) eps(chi2)
// and its block decomposition over the valuation of t = x + y.  These stay
// independent of the library's gauss/jacobi code paths; they share only the
// exponent-accumulator plumbing.

#include "epslab/epsilon.hpp"

namespace testhelpers {

using namespace epslab;

// S = sum over x, y in U/U^n of chi1^{-1}(x) chi2^{-1}(y) psi((x+y)/c),
// c = pi^{n + n(psi)}
inline Cyclo eps_product_double_sum(const MultChar& chi1, const MultChar& chi2, const AddChar& psi, int n) {
    const Prime& p = chi1.prime();
    i64 pn = p.pow(n);
    i64 L1 = chi1.unit_value_order(), L2 = chi2.unit_value_order();
    i64 M = std::lcm(std::lcm(L1, L2), p.pow(n));
    detail::ZetaAccumulator acc(M);
    i64 ub = psi.twist().unit_mod(std::min(psi.twist().precision(), n == 0 ? 1 : n));
    for (i64 x = 1; x < pn; ++x) {
        if (x % p.value() == 0) continue;
        i64 t1 = chi1.unit_exponent(x);
        for (i64 y = 1; y < pn; ++y) {
            if (y % p.value() == 0) continue;
            i64 s = (x + y) % pn;
            i64 slot = (acc.slot(L1, -t1) + acc.slot(L2, -chi2.unit_exponent(y))) % M;
            if (s != 0) {
                int w = 0;
                i64 ss = s;
                while (ss % p.value() == 0) { ss /= p.value(); ++w; }
                // psi((x+y)/c) has denominator p^{n-w}
                if (w < n) {
                    i64 P = p.pow(n - w);
                    slot = (slot + acc.slot(P, detail::mul_mod(ub % P, ss % P, P))) % M;
                }
            }
            acc.add_slot(slot);
        }
    }
    return acc.value();
}

// K(t) = sum over x in U/U^level with t - x a unit of chi1^{-1}(x) chi2^{-1}(t-x);
// t is any residue mod p^level (non-unit t included)
inline Cyclo K_sum(const MultChar& chi1, const MultChar& chi2, i64 t, int level) {
    const Prime& p = chi1.prime();
    i64 pn = p.pow(level);
    t = ((t % pn) + pn) % pn;
    i64 L1 = chi1.unit_value_order(), L2 = chi2.unit_value_order();
    i64 M = std::lcm(L1, L2);
    detail::ZetaAccumulator acc(M);
    for (i64 x = 1; x < pn; ++x) {
        if (x % p.value() == 0) continue;
        i64 y = (t - x + pn) % pn;
        if (y == 0 || y % p.value() == 0) continue;
        acc.add_slot((acc.slot(L1, -chi1.unit_exponent(x)) + acc.slot(L2, -chi2.unit_exponent(y))) % M);
    }
    return acc.value();
}

// Gsum_a = sum over u in U/U^{n-a} of prod^{-1}(u) psi(u pi^{a-n-n(psi)})
inline Cyclo G_block(const MultChar& prod, const AddChar& psi, int a, int n) {
    const Prime& p = prod.prime();
    i64 span = p.pow(n - a);
    i64 L = prod.unit_value_order();
    i64 P = p.pow(n - a);
    i64 M = std::lcm(L, P);
    detail::ZetaAccumulator acc(M);
    i64 ub = psi.twist().unit_mod(std::max(1, n - a));
    for (i64 u = 1; u < span; ++u) {
        if (u % p.value() == 0) continue;
        acc.add_slot((acc.slot(L, -prod.unit_exponent(u)) + acc.slot(P, detail::mul_mod(ub % P, u % P, P))) % M);
    }
    return acc.value();
}

inline Cyclo chi_at_pi_power(const MultChar& chi, i64 e) {
    i64 em = e % chi.pi_order();
    if (em < 0) em += chi.pi_order();
    return root_of_unity(chi.pi_order(), chi.pi_exp() * em);
}

} // namespace testhelpers
