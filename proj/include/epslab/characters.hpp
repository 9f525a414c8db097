#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "epslab/cyclo.hpp"
#include "epslab/padic.hpp"

namespace epslab {

namespace detail {

// rewrite zeta_L^t as zeta_o^e; requires the value's order to divide o
inline i64 rescale_exponent(i64 t, i64 L, i64 o) {
    t %= L;
    if (t < 0) t += L;
    if (t == 0) return 0;
    i64 g = std::gcd(t, L);
    i64 ord = L / g;
    if (o % ord != 0) throw OrderError("root of unity does not live in the target group");
    return (t / g) % ord * (o / ord) % o;
}

// canonical (order, exponent) pair for a root of unity
inline std::pair<i64, i64> normalize_root(i64 order, i64 exp) {
    if (order < 1) throw OrderError("root order must be >= 1");
    exp %= order;
    if (exp < 0) exp += order;
    if (exp == 0) return {1, 0};
    i64 g = std::gcd(exp, order);
    return {order / g, exp / g};
}

} // namespace detail

// ---------------------------------------------------------------------------
// MultChar: a finite-order character of Q_p^x, stored at an explicit level n
// as exponents on the canonical generators of (Z/p^n)^x together with the
// value chi(pi) = zeta_{pi_order}^{pi_exp}.  Evaluation never extrapolates
// beyond the stored level.  Immutable.
class MultChar {
public:
    static MultChar make(UnitGroupPtr S, std::vector<i64> exps, i64 pi_order = 1, i64 pi_exp = 0) {
        return MultChar(std::move(S), std::move(exps), pi_order, pi_exp);
    }

    const Prime& prime() const { return S_->prime(); }
    int level() const { return S_->level(); }
    const UnitGroupPtr& group() const { return S_; }
    const std::vector<i64>& exps() const { return exps_; }
    i64 pi_order() const { return pi_order_; }
    i64 pi_exp() const { return pi_exp_; }
    int conductor() const { return conductor_; }
    bool is_ramified() const { return conductor_ > 0; }
    bool is_trivial() const { return conductor_ == 0 && pi_exp_ == 0; }

    // lcm of the orders of the values on units
    i64 unit_value_order() const { return value_order_; }
    i64 field_value_order() const { return std::lcm(value_order_, pi_order_); }

    // chi(u) = zeta_{unit_value_order()}^t for an exact integer unit u;
    // u is interpreted modulo p^level (any lift of a class mod p^a works)
    i64 unit_exponent(i64 u) const {
        i64 m = S_->modulus();
        u %= m;
        if (u < 0) u += m;
        if (u == 0 || u % prime().value() == 0)
            throw UnitError(std::to_string(u) + " is not a unit");
        return exp_table_[static_cast<size_t>(u)];
    }

    Cyclo eval_unit(i64 u) const { return root_of_unity(value_order_, unit_exponent(u)); }

    Cyclo pi_value() const { return root_of_unity(pi_order_, pi_exp_); }

    // chi on F^x: chi(pi)^{v(x)} * chi(unit part); the unit class must be
    // known at least to conductor precision
    i64 field_exponent(const ValUnit& x, i64* order_out) const {
        if (x.precision() < conductor_)
            throw PrecisionError("unit part known mod p^" + std::to_string(x.precision()) +
                                 ", conductor is " + std::to_string(conductor_));
        i64 L = field_value_order();
        i64 t = detail::rescale_exponent(unit_exponent(x.unit()), value_order_, L);
        i64 vm = x.valuation() % pi_order_;
        if (vm < 0) vm += pi_order_;
        i64 tp = detail::rescale_exponent(detail::mul_mod(pi_exp_, vm, pi_order_), pi_order_, L);
        if (order_out) *order_out = L;
        return (t + tp) % L;
    }

    Cyclo eval_field(const ValUnit& x) const {
        i64 L = 1;
        i64 t = field_exponent(x, &L);
        return root_of_unity(L, t);
    }

    MultChar with_pi(i64 pi_order, i64 pi_exp) const {
        return MultChar(S_, exps_, pi_order, pi_exp);
    }

    // the same character seen at a higher level
    MultChar at_level(int n2) const {
        if (n2 == level()) return *this;
        if (n2 < level()) throw LevelError("characters are never truncated below their stored level");
        auto S2 = unit_group_structure(prime(), n2);
        std::vector<i64> exps2(S2->generators().size(), 0);
        for (size_t i = 0; i < exps2.size(); ++i) {
            i64 t = unit_exponent(S2->generators()[i]);
            exps2[i] = detail::rescale_exponent(t, value_order_, S2->orders()[i]);
        }
        return MultChar(std::move(S2), std::move(exps2), pi_order_, pi_exp_);
    }

    bool operator==(const MultChar& o) const {
        return prime() == o.prime() && level() == o.level() && exps_ == o.exps_ &&
               pi_order_ == o.pi_order_ && pi_exp_ == o.pi_exp_;
    }

private:
    MultChar(UnitGroupPtr S, std::vector<i64> exps, i64 pi_order, i64 pi_exp) : S_(std::move(S)) {
        const auto& orders = S_->orders();
        if (exps.size() != orders.size())
            throw UnitError("exponent tuple arity does not match the generator list");
        exps_ = std::move(exps);
        for (size_t i = 0; i < exps_.size(); ++i) {
            exps_[i] %= orders[i];
            if (exps_[i] < 0) exps_[i] += orders[i];
        }
        auto [po, pe] = detail::normalize_root(pi_order, pi_exp);
        pi_order_ = po;
        pi_exp_ = pe;

        value_order_ = 1;
        for (size_t i = 0; i < exps_.size(); ++i) {
            i64 g = std::gcd(exps_[i], orders[i]);
            value_order_ = std::lcm(value_order_, orders[i] / (g == 0 ? orders[i] : g));
        }
        build_table();
        conductor_ = compute_conductor();
    }

    void build_table() {
        i64 m = S_->modulus();
        exp_table_.assign(static_cast<size_t>(m), 0);
        const auto& orders = S_->orders();
        for (i64 u = 1; u < m; ++u) {
            if (u % prime().value() == 0) continue;
            auto d = S_->discrete_log(u);
            i64 t = 0;
            for (size_t i = 0; i < d.size(); ++i) {
                // e_i * d_i as a fraction of orders[i], rescaled to value_order_
                i64 c = detail::mul_mod(exps_[i], d[i], orders[i]);
                t = (t + detail::rescale_exponent(c, orders[i], value_order_)) % value_order_;
            }
            exp_table_[static_cast<size_t>(u)] = t;
        }
    }

    int compute_conductor() const {
        i64 p = prime().value();
        for (int m = 0; m <= level(); ++m) {
            i64 pm = prime().pow(m);
            i64 span = S_->modulus() / pm;
            bool trivial = true;
            for (i64 t = 0; t < span && trivial; ++t) {
                i64 u = (1 + pm * t) % S_->modulus();
                if (u == 0 || u % p == 0) continue; // only m = 0 meets non-units
                if (exp_table_[static_cast<size_t>(u)] != 0) trivial = false;
            }
            if (trivial) return m;
        }
        return level(); // unreachable: chi is trivial on U^n by construction
    }

    UnitGroupPtr S_;
    std::vector<i64> exps_;
    i64 pi_order_;
    i64 pi_exp_;
    i64 value_order_;
    int conductor_;
    std::vector<i64> exp_table_;
};

inline MultChar mult_char_make(UnitGroupPtr S, std::vector<i64> exps, i64 pi_order = 1, i64 pi_exp = 0) {
    return MultChar::make(std::move(S), std::move(exps), pi_order, pi_exp);
}

inline int conductor(const MultChar& chi) { return chi.conductor(); }

inline Cyclo char_eval_field(const MultChar& chi, const ValUnit& x) { return chi.eval_field(x); }

inline MultChar char_mul(const MultChar& a, const MultChar& b) {
    if (a.prime() != b.prime()) throw PrimeError("characters of different primes");
    int n = std::max(a.level(), b.level());
    MultChar a2 = a.at_level(n), b2 = b.at_level(n);
    std::vector<i64> exps(a2.exps().size());
    for (size_t i = 0; i < exps.size(); ++i) exps[i] = a2.exps()[i] + b2.exps()[i];
    i64 L = std::lcm(a.pi_order(), b.pi_order());
    i64 k = a.pi_exp() * (L / a.pi_order()) + b.pi_exp() * (L / b.pi_order());
    return MultChar::make(a2.group(), std::move(exps), L, k);
}

inline MultChar char_inv(const MultChar& a) {
    std::vector<i64> exps(a.exps().size());
    for (size_t i = 0; i < exps.size(); ++i) exps[i] = -a.exps()[i];
    return MultChar::make(a.group(), std::move(exps), a.pi_order(), -a.pi_exp());
}

// all characters of U/U^n with chi(pi) = 1, ordered by exponent tuple
inline std::vector<MultChar> enumerate_chars(const Prime& p, int n,
                                             std::optional<int> conductor_filter = std::nullopt) {
    auto S = unit_group_structure(p, n);
    const auto& orders = S->orders();
    std::vector<MultChar> out;
    std::vector<i64> exps(orders.size(), 0);
    while (true) {
        MultChar chi = MultChar::make(S, exps);
        if (!conductor_filter || chi.conductor() == *conductor_filter) out.push_back(chi);
        size_t i = orders.size();
        bool done = orders.empty();
        while (i > 0) {
            --i;
            if (++exps[i] < orders[i]) break;
            exps[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// AddChar: psi = b * psi_F, i.e. psi(x) = psi_F(bx) for the canonical
// character psi_F(x) = e^{2 pi i frac(x)}.  n(psi) = v(b) since n(psi_F) = 0.
class AddChar {
public:
    explicit AddChar(ValUnit b) : b_(std::move(b)) {}

    static AddChar canonical(const Prime& p) {
        return AddChar(ValUnit(p, 0, 1, default_precision(p)));
    }

    static int default_precision(const Prime& p) {
        return std::min(p.max_precision(), 16);
    }

    const ValUnit& twist() const { return b_; }
    const Prime& prime() const { return b_.prime(); }
    i64 conductor() const { return b_.valuation(); }

    // psi(x) as an exact root of unity of p-power order
    std::pair<i64, i64> exponent(const ValUnit& x) const {
        return frac_part(b_ * x);
    }

    Cyclo eval(const ValUnit& x) const {
        auto [num, den] = exponent(x);
        return root_of_unity(den, num);
    }

    AddChar twisted_by(const ValUnit& b2) const { return AddChar(b_ * b2); }

private:
    ValUnit b_;
};

inline AddChar add_char_make(ValUnit b) { return AddChar(std::move(b)); }
inline Cyclo add_char_eval(const AddChar& psi, const ValUnit& x) { return psi.eval(x); }

} // namespace epslab
