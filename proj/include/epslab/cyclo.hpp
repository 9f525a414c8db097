#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "epslab/errors.hpp"
#include "epslab/padic.hpp"

namespace epslab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace detail {

inline i64 euler_phi(i64 n) {
    i64 r = n;
    for (i64 f : prime_factors(n)) r = r / f * (f - 1);
    return r;
}

// Phi_M = x^phi(M) + sum of tail terms c_d x^d.  Coefficients stay tiny:
// Phi_M(x) = Phi_rad(x^{M/rad}) and rad(M) is small for every M we touch.
struct CycloPoly {
    i64 M = 1;
    i64 degree = 0;
    std::vector<std::pair<i64, i64>> tail; // (exponent, coefficient), exponent < degree
};

inline const std::vector<i64>& dense_cyclotomic(i64 n) {
    static std::map<i64, std::vector<i64>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // compute iteratively so the recursion never re-enters the lock
    for (i64 m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        std::vector<i64> poly(static_cast<size_t>(m) + 1, 0);
        poly[0] = -1;
        poly[static_cast<size_t>(m)] = 1; // x^m - 1
        for (i64 d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const auto& div = cache.at(d);
            // exact long division, highest terms first
            std::vector<i64> quot(poly.size() - div.size() + 1, 0);
            for (size_t i = quot.size(); i-- > 0;) {
                i64 c = poly[i + div.size() - 1];
                quot[i] = c;
                if (c == 0) continue;
                for (size_t j = 0; j < div.size(); ++j)
                    poly[i + j] -= c * div[j];
            }
            poly = std::move(quot);
        }
        cache.emplace(m, std::move(poly));
    }
    return cache.at(n);
}

inline const CycloPoly& cyclotomic_poly(i64 M) {
    // desk-scale guard: a runaway lcm of mixed orders is a usage bug, not
    // something to chew on for minutes
    if (M > 5000000) throw OrderError("cyclotomic order " + std::to_string(M) + " beyond the supported scale");
    static std::map<i64, CycloPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    i64 rad = 1;
    for (i64 f : prime_factors(M)) rad *= f;
    i64 stride = M / rad;
    const auto& dense = dense_cyclotomic(rad);

    CycloPoly cp;
    cp.M = M;
    cp.degree = (static_cast<i64>(dense.size()) - 1) * stride;
    for (size_t d = 0; d + 1 < dense.size(); ++d)
        if (dense[d] != 0) cp.tail.emplace_back(static_cast<i64>(d) * stride, dense[d]);
    return cache.emplace(M, std::move(cp)).first->second;
}

// in-place remainder mod Phi_M; buf may have any degree below buf.size()
template <typename Int>
inline void reduce_mod_cyclotomic(std::vector<Int>& buf, const CycloPoly& cp) {
    for (size_t i = buf.size(); i-- > static_cast<size_t>(cp.degree);) {
        if (buf[i] == 0) continue;
        Int c = std::move(buf[i]);
        buf[i] = 0;
        for (const auto& [d, coef] : cp.tail)
            buf[i - static_cast<size_t>(cp.degree) + static_cast<size_t>(d)] -= coef * c;
    }
    buf.resize(static_cast<size_t>(cp.degree));
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Cyclo: an element of Q(zeta_M) stored as the canonical representative in
// Q[x]/Phi_M(x), coefficients as big integers over one common denominator.
// Structural equality equals field equality once both sides share an order.
class Cyclo {
public:
    Cyclo() : M_(1), num_(1, BigInt(0)), den_(1) {}

    static Cyclo from_integer(i64 v) {
        Cyclo c;
        c.num_[0] = v;
        return c;
    }

    static Cyclo from_rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw ZeroError("rational with zero denominator");
        Cyclo c;
        c.num_[0] = num;
        c.den_ = den;
        c.normalize();
        return c;
    }

    // sum of counted powers of zeta_M: counts[k] copies of zeta_M^k
    template <typename Int>
    static Cyclo from_power_counts(i64 M, std::vector<Int> counts) {
        if (M < 1) throw OrderError("root order must be >= 1");
        const auto& cp = detail::cyclotomic_poly(M);
        detail::reduce_mod_cyclotomic(counts, cp);
        Cyclo c;
        c.M_ = M;
        c.num_.assign(counts.begin(), counts.end());
        c.den_ = 1;
        c.normalize();
        return c;
    }

    i64 order() const { return M_; }
    const std::vector<BigInt>& nums() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const {
        for (const auto& v : num_)
            if (v != 0) return false;
        return true;
    }

    bool is_one() const { return is_rational() && num_[0] == 1 && den_ == 1; }

    bool is_rational() const {
        for (size_t i = 1; i < num_.size(); ++i)
            if (num_[i] != 0) return false;
        return true;
    }

    std::optional<std::pair<BigInt, BigInt>> rational_value() const {
        if (!is_rational()) return std::nullopt;
        return std::make_pair(num_[0], den_);
    }

    // re-express in Q(zeta_L); requires M | L
    Cyclo to_order(i64 L) const {
        if (L == M_) return *this;
        if (L % M_ != 0) throw OrderError("target order not a multiple of current order");
        i64 stride = L / M_;
        std::vector<BigInt> buf(static_cast<size_t>(L), BigInt(0));
        for (size_t i = 0; i < num_.size(); ++i)
            if (num_[i] != 0) buf[i * static_cast<size_t>(stride)] = num_[i];
        detail::reduce_mod_cyclotomic(buf, detail::cyclotomic_poly(L));
        Cyclo c;
        c.M_ = L;
        c.num_ = std::move(buf);
        c.den_ = den_;
        c.normalize();
        return c;
    }

    Cyclo operator-() const {
        Cyclo c = *this;
        for (auto& v : c.num_) v = -v;
        return c;
    }

    Cyclo operator+(const Cyclo& o) const {
        i64 L = std::lcm(M_, o.M_);
        Cyclo a = to_order(L), b = o.to_order(L);
        Cyclo c;
        c.M_ = L;
        c.den_ = a.den_ * b.den_;
        c.num_.assign(a.num_.size(), BigInt(0));
        for (size_t i = 0; i < a.num_.size(); ++i)
            c.num_[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
        c.normalize();
        return c;
    }

    Cyclo operator-(const Cyclo& o) const { return *this + (-o); }

    Cyclo operator*(const Cyclo& o) const {
        i64 L = std::lcm(M_, o.M_);
        Cyclo a = to_order(L), b = o.to_order(L);
        std::vector<BigInt> buf(2 * a.num_.size(), BigInt(0));
        std::vector<size_t> bs;
        for (size_t j = 0; j < b.num_.size(); ++j)
            if (b.num_[j] != 0) bs.push_back(j);
        for (size_t i = 0; i < a.num_.size(); ++i) {
            if (a.num_[i] == 0) continue;
            for (size_t j : bs) buf[i + j] += a.num_[i] * b.num_[j];
        }
        detail::reduce_mod_cyclotomic(buf, detail::cyclotomic_poly(L));
        Cyclo c;
        c.M_ = L;
        c.num_ = std::move(buf);
        c.den_ = a.den_ * b.den_;
        c.normalize();
        return c;
    }

    Cyclo times_rational(const BigInt& num, const BigInt& den) const {
        if (den == 0) throw ZeroError("scale by zero denominator");
        Cyclo c = *this;
        for (auto& v : c.num_) v *= num;
        c.den_ *= den;
        c.normalize();
        return c;
    }

    bool operator==(const Cyclo& o) const {
        i64 L = std::lcm(M_, o.M_);
        Cyclo a = to_order(L), b = o.to_order(L);
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    // Galois map zeta_M -> zeta_M^k, gcd(k, M) = 1
    Cyclo galois(i64 k) const {
        k %= M_;
        if (k < 0) k += M_;
        if (std::gcd(k, M_) != 1) throw UnitError("Galois exponent not coprime to order");
        std::vector<BigInt> buf(static_cast<size_t>(M_) + 1, BigInt(0));
        for (size_t i = 0; i < num_.size(); ++i)
            if (num_[i] != 0) buf[static_cast<size_t>((static_cast<i64>(i) * k) % M_)] += num_[i];
        detail::reduce_mod_cyclotomic(buf, detail::cyclotomic_poly(M_));
        Cyclo c;
        c.M_ = M_;
        c.num_ = std::move(buf);
        c.den_ = den_;
        c.normalize();
        return c;
    }

    // complex conjugation: zeta -> zeta^{-1}
    Cyclo conj() const { return M_ == 1 ? *this : galois(M_ - 1); }

    // multiplicative inverse via extended gcd with Phi_M in Q[x]
    Cyclo inverse() const {
        if (is_zero()) throw ZeroError("inverse of zero");
        if (is_rational()) return from_rational(den_, num_[0]);
        std::vector<BigRat> r0, r1, s0, s1;
        const auto& cp = detail::cyclotomic_poly(M_);
        r0.assign(static_cast<size_t>(cp.degree) + 1, BigRat(0));
        r0[static_cast<size_t>(cp.degree)] = 1;
        for (const auto& [d, c] : cp.tail) r0[static_cast<size_t>(d)] = c;
        r1.assign(num_.begin(), num_.end());
        s0 = {BigRat(0)};
        s1 = {BigRat(1)};
        auto deg = [](const std::vector<BigRat>& p) {
            for (size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return static_cast<long>(i);
            return -1L;
        };
        while (deg(r1) > 0) {
            long d1 = deg(r1);
            // one full division step: r0 = q*r1 + rem
            std::vector<BigRat> q(static_cast<size_t>(deg(r0) - d1) + 1, BigRat(0));
            while (deg(r0) >= d1) {
                long d0 = deg(r0);
                BigRat c = r0[static_cast<size_t>(d0)] / r1[static_cast<size_t>(d1)];
                q[static_cast<size_t>(d0 - d1)] = c;
                for (long j = 0; j <= d1; ++j)
                    r0[static_cast<size_t>(d0 - d1 + j)] -= c * r1[static_cast<size_t>(j)];
            }
            // s0 -= q*s1
            std::vector<BigRat> s(std::max(s0.size(), s1.size() + q.size()), BigRat(0));
            for (size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
            }
            std::swap(r0, r1);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (deg(r1) != 0)
            throw ZeroError("element shares a factor with Phi_M"); // cannot happen: Phi_M irreducible
        BigRat lead = r1[0];
        std::vector<BigRat> inv(s1.size());
        for (size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / lead;
        return from_rational_coeffs(M_, inv);
    }

    std::complex<double> embed() const {
        const double tau = 6.28318530717958647692;
        std::complex<double> z(0.0, 0.0);
        double d = den_.convert_to<double>();
        for (size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            double ang = tau * static_cast<double>(i) / static_cast<double>(M_);
            z += (num_[i].convert_to<double>() / d) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return z;
    }

    // canonical form in the smallest cyclotomic subfield Q(zeta_d), d | M
    Cyclo minimized() const {
        if (num_.size() > 200) return *this; // only needed for printing/serialization scales
        Cyclo cur = *this;
        bool shrunk = true;
        while (shrunk && cur.M_ > 1) {
            shrunk = false;
            if (cur.is_rational()) {
                Cyclo c;
                c.num_[0] = cur.num_[0];
                c.den_ = cur.den_;
                return c;
            }
            for (i64 f : detail::prime_factors(cur.M_)) {
                i64 d = cur.M_ / f;
                if (d <= 2) continue; // handled by the rationality check above
                bool fixed = true;
                for (i64 t = 1; t < f && fixed; ++t) {
                    i64 k = 1 + t * d;
                    if (std::gcd(k, cur.M_) != 1) continue;
                    if (cur.galois(k) != cur) fixed = false;
                }
                if (!fixed) continue;
                auto re = cur.rebase(d);
                if (re) {
                    cur = *re;
                    shrunk = true;
                    break;
                }
            }
        }
        return cur;
    }

    static Cyclo from_rational_coeffs(i64 M, const std::vector<BigRat>& coeffs) {
        BigInt den = 1;
        for (const auto& c : coeffs) den = den / detail::big_gcd(den, boost::multiprecision::denominator(c)) * boost::multiprecision::denominator(c);
        std::vector<BigInt> nums(static_cast<size_t>(detail::cyclotomic_poly(M).degree), BigInt(0));
        for (size_t i = 0; i < coeffs.size() && i < nums.size(); ++i)
            nums[i] = boost::multiprecision::numerator(coeffs[i]) * (den / boost::multiprecision::denominator(coeffs[i]));
        Cyclo c;
        c.M_ = M;
        c.num_ = std::move(nums);
        c.den_ = den;
        c.normalize();
        return c;
    }

private:
    void normalize() {
        const auto& cp = detail::cyclotomic_poly(M_);
        num_.resize(static_cast<size_t>(cp.degree > 0 ? cp.degree : 1), BigInt(0));
        if (M_ == 1) num_.resize(1);
        BigInt g = 0;
        for (const auto& v : num_) g = detail::big_gcd(g, v);
        if (g == 0) {
            den_ = 1;
            return;
        }
        g = detail::big_gcd(g, den_);
        if (den_ < 0) g = -g;
        if (g != 1) {
            for (auto& v : num_) v /= g;
            den_ /= g;
        }
    }

    // exact coordinates with respect to the basis of Q(zeta_d) inside Q(zeta_M)
    std::optional<Cyclo> rebase(i64 d) const {
        size_t rows = num_.size();
        size_t cols = static_cast<size_t>(detail::euler_phi(d));
        std::vector<std::vector<BigRat>> aug(rows, std::vector<BigRat>(cols + 1, BigRat(0)));
        for (size_t j = 0; j < cols; ++j) {
            std::vector<BigInt> buf(static_cast<size_t>(M_) + 1, BigInt(0));
            buf[static_cast<size_t>((static_cast<i64>(j) * (M_ / d)) % M_)] = 1;
            detail::reduce_mod_cyclotomic(buf, detail::cyclotomic_poly(M_));
            for (size_t i = 0; i < rows; ++i) aug[i][j] = BigRat(buf[i]);
        }
        for (size_t i = 0; i < rows; ++i) aug[i][cols] = BigRat(num_[i]) / BigRat(den_);

        size_t lead = 0;
        for (size_t col = 0; col < cols && lead < rows; ++col) {
            size_t piv = lead;
            while (piv < rows && aug[piv][col] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(aug[piv], aug[lead]);
            BigRat pv = aug[lead][col];
            for (auto& v : aug[lead]) v /= pv;
            for (size_t r = 0; r < rows; ++r) {
                if (r == lead || aug[r][col] == 0) continue;
                BigRat factor = aug[r][col];
                for (size_t cc = col; cc <= cols; ++cc) aug[r][cc] -= factor * aug[lead][cc];
            }
            ++lead;
        }
        // consistency + read off the unique solution
        std::vector<BigRat> sol(cols, BigRat(0));
        for (size_t r = 0; r < rows; ++r) {
            size_t col = 0;
            while (col < cols && aug[r][col] == 0) ++col;
            if (col == cols) {
                if (aug[r][cols] != 0) return std::nullopt;
                continue;
            }
            sol[col] = aug[r][cols];
        }
        return from_rational_coeffs(d, sol);
    }

    i64 M_;
    std::vector<BigInt> num_;
    BigInt den_;
};

inline Cyclo root_of_unity(i64 M, i64 k) {
    if (M < 1) throw OrderError("root order must be >= 1");
    k %= M;
    if (k < 0) k += M;
    i64 g = std::gcd(k, M);
    i64 Mm = M / g, km = k / g;
    std::vector<i64> counts(static_cast<size_t>(Mm), 0);
    counts[static_cast<size_t>(km)] = 1;
    return Cyclo::from_power_counts(Mm, std::move(counts));
}

inline Cyclo conj(const Cyclo& a) { return a.conj(); }
inline Cyclo abs_square(const Cyclo& a) { return a * a.conj(); }
inline std::complex<double> embed_complex(const Cyclo& a) { return a.embed(); }

// ---------------------------------------------------------------------------
// HalfScaled: u * q^{e/2} with u cyclotomic and e an integer kept formal.
// The value ring for epsilon factors and friends; identities balance e, so
// exact comparisons only ever need equal parity after normalization.
class HalfScaled {
public:
    HalfScaled(Cyclo u, i64 e, i64 q) : u_(std::move(u)), e_(e), q_(q) {
        if (q < 2) throw PreconditionError("q must be >= 2");
    }

    const Cyclo& unit() const { return u_; }
    i64 e_half() const { return e_; }
    i64 q() const { return q_; }

    HalfScaled operator*(const HalfScaled& o) const {
        require_same_q(o);
        return HalfScaled(u_ * o.u_, e_ + o.e_, q_);
    }

    HalfScaled times(const Cyclo& c) const { return HalfScaled(u_ * c, e_, q_); }

    HalfScaled times_q_half(i64 j) const { return HalfScaled(u_, e_ + j, q_); }

    HalfScaled times_rational(const BigInt& num, const BigInt& den) const {
        return HalfScaled(u_.times_rational(num, den), e_, q_);
    }

    // canonical form with e in {0, 1}; even q-powers fold into u
    HalfScaled normalized() const {
        i64 e0 = ((e_ % 2) + 2) % 2;
        i64 shift = (e_ - e0) / 2;
        Cyclo u = u_;
        if (shift > 0) u = u.times_rational(boost::multiprecision::pow(BigInt(q_), static_cast<unsigned>(shift)), 1);
        if (shift < 0) u = u.times_rational(1, boost::multiprecision::pow(BigInt(q_), static_cast<unsigned>(-shift)));
        return HalfScaled(std::move(u), e0, q_);
    }

    enum class Eq { Equal, NotEqual, Indeterminate };

    // exact comparison; cross-parity cases are left to the float backend
    Eq exact_eq(const HalfScaled& o) const {
        if (u_.is_zero() && o.u_.is_zero()) return Eq::Equal;
        if (u_.is_zero() != o.u_.is_zero()) return Eq::NotEqual;
        if (q_ != o.q_) return Eq::Indeterminate;
        HalfScaled a = normalized(), b = o.normalized();
        if (a.e_ != b.e_) return Eq::Indeterminate;
        return a.u_ == b.u_ ? Eq::Equal : Eq::NotEqual;
    }

    // |u|^2 * q^e, exact (integral powers of q only)
    Cyclo abs_square() const {
        Cyclo s = epslab::abs_square(u_);
        if (e_ > 0) return s.times_rational(boost::multiprecision::pow(BigInt(q_), static_cast<unsigned>(e_)), 1);
        if (e_ < 0) return s.times_rational(1, boost::multiprecision::pow(BigInt(q_), static_cast<unsigned>(-e_)));
        return s;
    }

    std::complex<double> embed() const {
        return u_.embed() * std::pow(static_cast<double>(q_), static_cast<double>(e_) / 2.0);
    }

private:
    void require_same_q(const HalfScaled& o) const {
        if (q_ != o.q_) throw PreconditionError("mixed q in HalfScaled arithmetic");
    }

    Cyclo u_;
    i64 e_;
    i64 q_;
};

inline Cyclo abs_square(const HalfScaled& h) { return h.abs_square(); }
inline std::complex<double> embed_complex(const HalfScaled& h) { return h.embed(); }

} // namespace epslab
