#ifndef HEUNINT_SPECIAL_HPP
#define HEUNINT_SPECIAL_HPP

#include "heunint/cx.hpp"
#include "heunint/jet.hpp"

namespace heunint {

struct SpecialFnConfig {
    double series_tol = 1e-15;
    int max_terms = 400;
};

// Gamma(1/3), to double precision.
inline constexpr double kGammaOneThird = 2.6789385347077476;

// Confluent hypergeometric 1F1(a; b; z), direct series, |z| <= 4.
Cx hyp1f1(Cx a, Cx b, Cx z, SpecialFnConfig cfg = {});

// Gauss hypergeometric 2F1(a, b; c; z), direct series, |z| <= 0.9.
Cx hyp2f1(Cx a, Cx b, Cx c, Cx z, SpecialFnConfig cfg = {});

enum class BesselKind { J, Y };

// J and Y of integer order 0 or 1; J by the ascending series, Y by the
// log-plus-series form with the principal logarithm. |z| <= 20, Y needs
// z != 0.
Cx bessel(BesselKind kind, int n, Cx z, SpecialFnConfig cfg = {});

// Imaginary error function erfi(z) = -i erf(iz), odd series, |z| <= 6.
Cx erfi(Cx z, SpecialFnConfig cfg = {});

// Upper incomplete gamma at s = 1/3: Gamma(1/3) minus the ascending
// lower-incomplete series, principal branch of w^(1/3). |w| <= 10.
Cx inc_gamma_upper_one_third(Cx w, SpecialFnConfig cfg = {}, Branch br = {});

// Jet lifts, built from each function's defining second-order ODE recentered
// at the inner value and composed with the inner jet.
Jet hyp1f1_jet(Cx a, Cx b, const Jet& z, SpecialFnConfig cfg = {});
Jet hyp2f1_jet(Cx a, Cx b, Cx c, const Jet& z, SpecialFnConfig cfg = {});
Jet bessel_jet(BesselKind kind, int n, const Jet& z, SpecialFnConfig cfg = {});
Jet erfi_jet(const Jet& z, SpecialFnConfig cfg = {});
Jet inc_gamma_upper_one_third_jet(const Jet& w, SpecialFnConfig cfg = {}, Branch br = {});

} // namespace heunint

#endif
