#ifndef HEUNINT_POLY_HPP
#define HEUNINT_POLY_HPP

#include <vector>

#include "heunint/cx.hpp"
#include "heunint/jet.hpp"

namespace heunint {

// Dense polynomial, ascending coefficients.
using Poly = std::vector<Cx>;

inline Cx poly_eval(const Poly& p, Cx x) {
    Cx r{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline Jet poly_eval(const Poly& p, const Jet& x) {
    Jet r = Jet::constant(Cx{}, x.basepoint(), x.order());
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

// Coefficients of p(x0 + t) as a polynomial in t (Taylor shift by repeated
// synthetic division).
inline Poly poly_shift(const Poly& p, Cx x0) {
    Poly q = p;
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n - 1; ++i)
        for (int j = n - 2; j >= i; --j)
            q[static_cast<std::size_t>(j)] += x0 * q[static_cast<std::size_t>(j) + 1];
    return q;
}

inline Poly poly_derive(const Poly& p) {
    if (p.size() <= 1) return {Cx{}};
    Poly q(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        q[k - 1] = static_cast<double>(k) * p[k];
    return q;
}

} // namespace heunint

#endif
