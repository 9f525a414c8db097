#pragma once

// Independent numeric route used to check [DERIVED] expectations: characters
// evaluated through complex exponentials with discrete logs found by plain
// linear search, sums accumulated in doubles.  Shares nothing with the exact
// path beyond the canonical generator convention.

#include <complex>
#include <vector>

#include "epslab/characters.hpp"

namespace oracle {

using epslab::i64;
using cplx = std::complex<double>;

const double TAU = 6.28318530717958647692;

inline i64 mulm(i64 a, i64 b, i64 m) { return static_cast<i64>((static_cast<__int128>(a) * b) % m); }

// exponent tuple of u by exhaustive search over the generator powers
inline std::vector<i64> slow_dlog(const epslab::UnitGroupStructure& S, i64 u) {
    u %= S.modulus();
    std::vector<i64> exps(S.generators().size(), 0);
    while (true) {
        i64 prod = 1 % S.modulus();
        for (size_t i = 0; i < exps.size(); ++i)
            for (i64 j = 0; j < exps[i]; ++j) prod = mulm(prod, S.generators()[i], S.modulus());
        if (prod == u) return exps;
        size_t i = exps.size();
        while (i > 0) {
            --i;
            if (++exps[i] < S.orders()[i]) break;
            exps[i] = 0;
            if (i == 0) return exps; // u not in the group: caller errs
        }
        if (exps.empty()) return exps;
    }
}

inline cplx chi_value(const epslab::MultChar& chi, i64 u) {
    auto d = slow_dlog(*chi.group(), u);
    double arg = 0;
    for (size_t i = 0; i < d.size(); ++i)
        arg += static_cast<double>(chi.exps()[i]) * static_cast<double>(d[i]) /
               static_cast<double>(chi.group()->orders()[i]);
    return std::polar(1.0, TAU * arg);
}

inline cplx chi_field_value(const epslab::MultChar& chi, i64 v, i64 u) {
    double arg = static_cast<double>(chi.pi_exp()) * static_cast<double>(v) / static_cast<double>(chi.pi_order());
    return std::polar(1.0, TAU * arg) * chi_value(chi, u);
}

// psi(x) for x = u p^v and psi = b psi_F: e^{2 pi i frac(b x)}
inline cplx psi_value(const epslab::AddChar& psi, i64 xv, i64 xu) {
    i64 v = psi.twist().valuation() + xv;
    if (v >= 0) return {1.0, 0.0};
    i64 pj = 1;
    for (i64 i = 0; i < -v; ++i) pj *= psi.prime().value();
    i64 num = mulm(psi.twist().unit_mod(static_cast<int>(-v)), ((xu % pj) + pj) % pj, pj);
    return std::polar(1.0, TAU * static_cast<double>(num) / static_cast<double>(pj));
}

inline cplx gauss(const epslab::MultChar& chi, const epslab::AddChar& psi, int m) {
    const auto& p = chi.prime();
    i64 pm = p.pow(m);
    i64 a = chi.conductor();
    cplx sum = 0;
    for (i64 x = 1; x < pm; ++x) {
        if (x % p.value() == 0) continue;
        sum += std::conj(chi_value(chi, x % chi.group()->modulus())) *
               psi_value(psi, -a - psi.twist().valuation(), x);
    }
    return sum;
}

inline cplx epsilon(const epslab::MultChar& chi, const epslab::AddChar& psi) {
    const auto& p = chi.prime();
    i64 a = chi.conductor();
    i64 n = psi.twist().valuation();
    cplx chi_c = std::polar(1.0, TAU * static_cast<double>(chi.pi_exp()) * static_cast<double>(a + n) /
                                     static_cast<double>(chi.pi_order()));
    if (a == 0) return chi_c;
    return chi_c * std::pow(static_cast<double>(p.value()), -static_cast<double>(a) / 2.0) *
           gauss(chi, psi, static_cast<int>(a));
}

} // namespace oracle
