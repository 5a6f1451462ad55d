#ifndef HEUNINT_CX_HPP
#define HEUNINT_CX_HPP

#include <cmath>
#include <complex>

#include "heunint/errors.hpp"

namespace heunint {

using Cx = std::complex<double>;

inline bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Branch policy for log/sqrt/pow on the negative real axis. Everything is
// principal except the cut itself, where Im(log) = cut * pi. Flipping `cut`
// must leave every identity residual unchanged; only the common prefactors
// of integrand and antiderivative move.
struct Branch {
    double cut = +1.0;
};

inline Cx log_b(Cx z, Branch br = {}) {
    if (z == 0.0) throw DomainError("log of zero");
    if (z.imag() == 0.0 && z.real() < 0.0)
        return {std::log(-z.real()), br.cut * M_PI};
    return std::log(z);
}

inline Cx sqrt_b(Cx z, Branch br = {}) {
    if (z == 0.0) return 0.0;
    return std::exp(0.5 * log_b(z, br));
}

inline Cx pow_b(Cx z, Cx w, Branch br = {}) {
    if (z == 0.0) {
        if (w == 0.0) return 1.0;
        if (w.real() > 0.0) return 0.0; // limit value along any ray
        throw DomainError("zero base with non-positive power");
    }
    return std::exp(w * log_b(z, br));
}

} // namespace heunint

#endif
