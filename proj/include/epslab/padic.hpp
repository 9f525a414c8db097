#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "epslab/errors.hpp"

namespace epslab {

using i64 = long long;

namespace detail {

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

inline i64 pow_mod(i64 a, i64 e, i64 m) {
    i64 r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

// extended gcd: returns g and x with a*x = g (mod m); a inverse needs g == 1
inline i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0) a1 += m;
    while (a1 != 0) {
        i64 q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw UnitError("no inverse modulo " + std::to_string(m));
    x %= m;
    if (x < 0) x += m;
    return x;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline i64 gcd_ll(i64 a, i64 b) { return std::gcd(a, b); }

inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> fs;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Prime: residue characteristic p, primality checked once.  For Q_p the
// residue field has q = p elements and pi = p is the uniformizer.
class Prime {
public:
    explicit Prime(i64 p) : p_(p) {
        if (p < 2) throw PrimeError(std::to_string(p) + " < 2");
        for (i64 d = 2; d * d <= p; ++d)
            if (p % d == 0) throw PrimeError(std::to_string(p) + " is composite");
    }
    i64 value() const { return p_; }
    i64 pow(int e) const { return detail::ipow(p_, e); }
    bool operator==(const Prime& o) const { return p_ == o.p_; }
    bool operator!=(const Prime& o) const { return p_ != o.p_; }

    // largest precision such that p^k fits comfortably in 64 bits
    int max_precision() const {
        int k = 0;
        i64 v = 1;
        while (v <= (i64{1} << 60) / p_) { v *= p_; ++k; }
        return k;
    }

private:
    i64 p_;
};

// ---------------------------------------------------------------------------
// ValUnit: a truncated p-adic number u * p^v with the unit u known modulo
// p^k.  All field elements (pi powers, twists b, the element c, y_{alpha,psi})
// are carried in this form.  Immutable.
class ValUnit {
public:
    ValUnit(Prime p, i64 v, i64 u, int k) : p_(p), v_(v), k_(k) {
        if (k < 1) throw PrecisionError("precision k must be >= 1");
        if (k > p.max_precision()) throw PrecisionError("precision k too large for 64-bit representative");
        i64 pk = p.pow(k);
        u %= pk;
        if (u < 0) u += pk;
        if (u == 0 || u % p.value() == 0)
            throw UnitError("unit representative divisible by p");
        u_ = u;
    }

    const Prime& prime() const { return p_; }
    i64 valuation() const { return v_; }
    i64 unit() const { return u_; }
    int precision() const { return k_; }

    // unit representative reduced to precision j <= k
    i64 unit_mod(int j) const {
        if (j > k_) throw PrecisionError("unit known mod p^" + std::to_string(k_) +
                                         ", requested mod p^" + std::to_string(j));
        return j == k_ ? u_ : u_ % p_.pow(j);
    }

    ValUnit truncated(int j) const { return ValUnit(p_, v_, unit_mod(j), j); }

    ValUnit operator*(const ValUnit& o) const {
        require_same_prime(o);
        int k = std::min(k_, o.k_);
        return ValUnit(p_, v_ + o.v_, detail::mul_mod(unit_mod(k), o.unit_mod(k), p_.pow(k)), k);
    }

    ValUnit inverse() const {
        return ValUnit(p_, -v_, detail::inv_mod(u_, p_.pow(k_)), k_);
    }

    ValUnit operator-() const {
        return ValUnit(p_, v_, p_.pow(k_) - u_, k_);
    }

    ValUnit pow(i64 e) const {
        if (e < 0) return inverse().pow(-e);
        return ValUnit(p_, v_ * e, detail::pow_mod(u_, e, p_.pow(k_)), k_);
    }

    // same element as far as both precisions can tell
    bool same_class(const ValUnit& o) const {
        if (p_ != o.p_ || v_ != o.v_) return false;
        int k = std::min(k_, o.k_);
        return unit_mod(k) == o.unit_mod(k);
    }

private:
    void require_same_prime(const ValUnit& o) const {
        if (p_ != o.p_) throw PrimeError("mixed primes in ValUnit arithmetic");
    }

    Prime p_;
    i64 v_;
    i64 u_;
    int k_;
};

// pi^e with unit part exactly 1
inline ValUnit pi_power(const Prime& p, i64 e, int k = 1) {
    return ValUnit(p, e, 1, k);
}

// ---------------------------------------------------------------------------
// decompose a rational num/den (den a p-power up to sign, or any integer
// coprime pattern; the unit part of den is inverted mod p^k) as u * p^v
inline ValUnit val_unit_decompose(i64 num, i64 den, const Prime& p, int k) {
    if (num == 0) throw ZeroError("valuation of 0 undefined");
    if (den == 0) throw ZeroError("zero denominator");
    bool neg = (num < 0) != (den < 0);
    if (num < 0) num = -num;
    if (den < 0) den = -den;
    i64 v = 0;
    while (num % p.value() == 0) { num /= p.value(); ++v; }
    while (den % p.value() == 0) { den /= p.value(); --v; }
    i64 pk = p.pow(k);
    i64 u = detail::mul_mod(num % pk, detail::inv_mod(den % pk, pk), pk);
    if (neg) u = pk - u;
    return ValUnit(p, v, u, k);
}

inline ValUnit val_unit_decompose(i64 x, const Prime& p, int k) {
    return val_unit_decompose(x, 1, p, k);
}

// addition inside the residue ring Z/p^N; the sum's precision drops by the
// valuation of the sum.  Returns nothing if x + y = 0 mod p^N.
inline std::pair<bool, ValUnit> val_unit_add(const ValUnit& x, const ValUnit& y, int N) {
    const Prime& p = x.prime();
    if (p != y.prime()) throw PrimeError("mixed primes in ValUnit addition");
    if (x.valuation() < 0 || y.valuation() < 0)
        throw PrecisionError("ring addition needs nonnegative valuations");
    if (x.valuation() + x.precision() < N || y.valuation() + y.precision() < N)
        throw PrecisionError("operands not determined mod p^" + std::to_string(N));
    i64 pN = p.pow(N);
    i64 rx = x.valuation() >= N ? 0 : detail::mul_mod(x.unit_mod(static_cast<int>(N - x.valuation())), p.pow(static_cast<int>(x.valuation())), pN);
    i64 ry = y.valuation() >= N ? 0 : detail::mul_mod(y.unit_mod(static_cast<int>(N - y.valuation())), p.pow(static_cast<int>(y.valuation())), pN);
    i64 s = (rx + ry) % pN;
    if (s == 0) return {false, pi_power(p, 0)};
    i64 w = 0;
    while (s % p.value() == 0) { s /= p.value(); ++w; }
    return {true, ValUnit(p, w, s, static_cast<int>(N - w))};
}

// fractional part of u*p^v in [0,1) as a reduced fraction num/p^j
inline std::pair<i64, i64> frac_part(const ValUnit& x) {
    if (x.valuation() >= 0) return {0, 1};
    int j = static_cast<int>(-x.valuation());
    if (x.precision() < j)
        throw PrecisionError("frac_part needs the unit mod p^" + std::to_string(j));
    i64 pj = x.prime().pow(j);
    i64 num = x.unit_mod(j) % pj;
    i64 g = detail::gcd_ll(num, pj);
    return {num / g, pj / g};
}

// ---------------------------------------------------------------------------
// UnitGroupStructure: generators and orders of (Z/p^n)^x together with a
// full discrete-log table.  Canonical generators: the smallest positive
// primitive root for odd p; {-1, 5} for p = 2, n >= 3.
class UnitGroupStructure {
public:
    static std::shared_ptr<const UnitGroupStructure> make(const Prime& p, int n) {
        return std::shared_ptr<const UnitGroupStructure>(new UnitGroupStructure(p, n));
    }

    const Prime& prime() const { return p_; }
    int level() const { return n_; }
    i64 modulus() const { return pn_; }
    const std::vector<i64>& generators() const { return gens_; }
    const std::vector<i64>& orders() const { return orders_; }
    i64 group_order() const { return group_order_; }

    bool is_unit(i64 u) const {
        u %= pn_;
        if (u < 0) u += pn_;
        return u != 0 && u % p_.value() != 0;
    }

    // exponent tuple of u with respect to the canonical generators
    std::vector<i64> discrete_log(i64 u) const {
        u %= pn_;
        if (u < 0) u += pn_;
        if (!is_unit(u)) throw UnitError(std::to_string(u) + " is not a unit mod p^" + std::to_string(n_));
        return table_[static_cast<size_t>(u)];
    }

    i64 power_of_generators(const std::vector<i64>& exps) const {
        if (exps.size() != gens_.size()) throw UnitError("exponent tuple has wrong arity");
        i64 r = 1 % pn_;
        for (size_t i = 0; i < gens_.size(); ++i)
            r = detail::mul_mod(r, detail::pow_mod(gens_[i], exps[i], pn_), pn_);
        return r;
    }

    // canonical coset representatives of U/U^n: units in [1, p^n), ascending
    std::vector<i64> unit_representatives() const {
        std::vector<i64> reps;
        reps.reserve(static_cast<size_t>(group_order_));
        for (i64 u = 1; u < pn_; ++u)
            if (u % p_.value() != 0) reps.push_back(u);
        return reps;
    }

private:
    UnitGroupStructure(const Prime& p, int n) : p_(p), n_(n) {
        if (n < 1) throw LevelError("level must be >= 1");
        pn_ = p.pow(n);
        group_order_ = (p.value() - 1) * p.pow(n - 1);
        if (p.value() == 2) {
            if (n == 1) {
                // trivial group
            } else if (n == 2) {
                gens_ = {3};
                orders_ = {2};
            } else {
                gens_ = {pn_ - 1, 5};
                orders_ = {2, p.pow(n - 2)};
            }
        } else {
            gens_ = {smallest_primitive_root()};
            orders_ = {group_order_};
        }
        build_table();
    }

    i64 smallest_primitive_root() const {
        auto factors = detail::prime_factors(group_order_);
        for (i64 g = 2; g < pn_; ++g) {
            if (g % p_.value() == 0) continue;
            bool primitive = true;
            for (i64 f : factors)
                if (detail::pow_mod(g, group_order_ / f, pn_) == 1) { primitive = false; break; }
            if (primitive) return g;
        }
        throw SearchFailure("no primitive root mod " + std::to_string(pn_));
    }

    void build_table() {
        table_.assign(static_cast<size_t>(pn_), {});
        size_t arity = gens_.size();
        std::vector<i64> exps(arity, 0);
        i64 count = 0;
        // enumerate the full group once, tuples in row-major order (last
        // generator fastest); each unit gets a unique tuple

        while (true) {
            i64 u = 1 % pn_;
            for (size_t i = 0; i < arity; ++i)
                u = detail::mul_mod(u, detail::pow_mod(gens_[i], exps[i], pn_), pn_);
            table_[static_cast<size_t>(u)] = exps;
            ++count;
            size_t i = arity;
            while (i > 0) {
                --i;
                if (++exps[i] < orders_[i]) break;
                exps[i] = 0;
                if (i == 0) { i = arity + 1; break; }
            }
            if (arity == 0 || i == arity + 1) break;
        }
        if (count != group_order_)
            throw SearchFailure("generators do not enumerate the unit group");
    }

    Prime p_;
    int n_;
    i64 pn_ = 0;
    i64 group_order_ = 0;
    std::vector<i64> gens_;
    std::vector<i64> orders_;
    std::vector<std::vector<i64>> table_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroupStructure>;

inline UnitGroupPtr unit_group_structure(const Prime& p, int n) {
    return UnitGroupStructure::make(p, n);
}

} // namespace epslab
