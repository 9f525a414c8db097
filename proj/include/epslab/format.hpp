#pragma once

#include <complex>
#include <sstream>
#include <string>

#include "epslab/cyclo.hpp"

namespace epslab {

// zeta-polynomial in the minimal cyclotomic field, e.g. "zeta3 - zeta3^2"
inline std::string pretty(const Cyclo& value) {
    Cyclo c = value.minimized();
    if (c.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.nums().size(); ++i) {
        const BigInt& v = c.nums()[i];
        if (v == 0) continue;
        BigInt a = v < 0 ? BigInt(-v) : v;
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        bool unit_coeff = (a == 1 && c.den() == 1);
        if (!unit_coeff || i == 0) {
            os << a.str();
            if (c.den() != 1) os << "/" << c.den().str();
        }
        if (i > 0) {
            if (!unit_coeff) os << "*";
            os << "zeta" << c.order();
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

inline std::string pretty(const HalfScaled& h) {
    std::string base = pretty(h.unit());
    if (h.e_half() == 0 || h.unit().is_zero()) return base;
    std::ostringstream os;
    os << "(" << base << ") * " << h.q() << "^(" << h.e_half() << "/2)";
    return os.str();
}

inline std::string pretty(std::complex<double> z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace epslab
