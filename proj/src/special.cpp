#include "heunint/special.hpp"

#include <cmath>

#include "heunint/heun.hpp"
#include "heunint/poly.hpp"

namespace heunint {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

bool non_positive_integer(Cx z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= 0.5 && std::abs(z.real() - r) <= tol;
}

// Sums term_0 + term_1 + ... where step advances term_n to term_{n+1}.
// Halts only once the last three terms fall below tol * running magnitude.
template <typename Step>
Cx sum_series(Cx term, Step step, const SpecialFnConfig& cfg, const char* what) {
    if (!(cfg.series_tol > 0.0) || cfg.max_terms <= 10)
        throw DomainError(std::string(what) + ": bad series configuration");
    Cx s{};
    double mag = 1.0;
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        s += term;
        mag = std::max(mag, std::abs(s));
        quiet = (std::abs(term) <= cfg.series_tol * mag) ? quiet + 1 : 0;
        if (quiet >= 3) return s;
        term = step(term, n);
    }
    throw ConvergenceError(std::string(what) + ": series did not converge", s);
}

// Jet of the solution of A f'' + B f' + C f = 0 (polynomials in the outer
// variable) through the inner jet, seeded by the pointwise value and
// derivative at inner.value().
Jet ode_lift(const Poly& A, const Poly& B, const Poly& C, Cx f0, Cx f1,
             const Jet& inner) {
    const Cx z0 = inner.value();
    if (poly_eval(A, z0) == 0.0)
        throw DomainError("ode_lift: expansion point is singular");
    PolyODE shifted{poly_shift(A, z0), poly_shift(B, z0), poly_shift(C, z0), {}};
    const auto c = taylor_coeffs(shifted, SeedPair{f0, f1}, inner.order());
    Jet outer(z0, inner.order());
    for (int k = 0; k <= inner.order(); ++k)
        outer.coeff(k) = c[static_cast<std::size_t>(k)];
    return compose(outer, inner);
}

} // namespace

Cx hyp1f1(Cx a, Cx b, Cx z, SpecialFnConfig cfg) {
    if (non_positive_integer(b))
        throw DomainError("hyp1f1: b is a non-positive integer");
    if (std::abs(z) > 4.0 + 1e-9)
        throw DomainError("hyp1f1: |z| beyond the supported domain");
    return sum_series(Cx{1.0}, [&](Cx t, int n) {
        return t * (a + static_cast<double>(n)) /
               ((b + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
    }, cfg, "hyp1f1");
}

Cx hyp2f1(Cx a, Cx b, Cx c, Cx z, SpecialFnConfig cfg) {
    if (non_positive_integer(c))
        throw DomainError("hyp2f1: c is a non-positive integer");
    if (std::abs(z) > 0.9 + 1e-9)
        throw DomainError("hyp2f1: |z| beyond the supported domain");
    return sum_series(Cx{1.0}, [&](Cx t, int n) {
        const double dn = static_cast<double>(n);
        return t * (a + dn) * (b + dn) /
               ((c + dn) * static_cast<double>(n + 1)) * z;
    }, cfg, "hyp2f1");
}

namespace {

Cx bessel_j(int n, Cx z, const SpecialFnConfig& cfg) {
    const Cx h = 0.5 * z;
    const Cx t2 = -(h * h);
    Cx pre = (n == 0) ? Cx{1.0} : h;
    return pre * sum_series(Cx{1.0}, [&](Cx t, int k) {
        return t * t2 / (static_cast<double>(k + 1) * static_cast<double>(k + 1 + n));
    }, cfg, "besselj");
}

Cx bessel_y(int n, Cx z, const SpecialFnConfig& cfg) {
    // log-plus-series form for integer order (psi terms written with
    // harmonic numbers)
    const Cx h = 0.5 * z;
    const Cx t2 = h * h;
    const Cx L = log_b(h) + kEulerGamma;
    if (n == 0) {
        // (2/pi) [ L J0 + sum_{k>=1} (-1)^{k+1} H_k t2^k / (k!)^2 ]
        Cx sum{};
        Cx term{1.0};
        double Hk = 0.0;
        double mag = 1.0;
        int quiet = 0;
        for (int k = 1; k <= cfg.max_terms; ++k) {
            term *= -t2 / (static_cast<double>(k) * static_cast<double>(k));
            Hk += 1.0 / k;
            const Cx add = -Hk * term; // (-1)^{k+1} H_k t2^k/(k!)^2
            sum += add;
            mag = std::max(mag, std::abs(sum));
            quiet = (std::abs(add) <= cfg.series_tol * mag) ? quiet + 1 : 0;
            if (quiet >= 3) break;
            if (k == cfg.max_terms)
                throw ConvergenceError("bessely: series did not converge", sum);
        }
        return (2.0 / M_PI) * (L * bessel_j(0, z, cfg) + sum);
    }
    // Y1 = (2/pi) ln(z/2) J1 - 2/(pi z)
    //      - (1/pi) h sum_k (psi(k+1)+psi(k+2)) (-t2)^k / (k! (k+1)!)
    Cx sum{};
    Cx term{1.0};
    double psi_a = -kEulerGamma;       // psi(1)
    double psi_b = -kEulerGamma + 1.0; // psi(2)
    double mag = 1.0;
    int quiet = 0;
    for (int k = 0; k <= cfg.max_terms; ++k) {
        const Cx add = (psi_a + psi_b) * term;
        sum += add;
        mag = std::max(mag, std::abs(sum));
        quiet = (std::abs(add) <= cfg.series_tol * mag) ? quiet + 1 : 0;
        if (quiet >= 3) break;
        if (k == cfg.max_terms)
            throw ConvergenceError("bessely: series did not converge", sum);
        term *= -t2 / (static_cast<double>(k + 1) * static_cast<double>(k + 2));
        psi_a += 1.0 / (k + 1);
        psi_b += 1.0 / (k + 2);
    }
    return (2.0 / M_PI) * (log_b(h) * bessel_j(1, z, cfg)) - 2.0 / (M_PI * z) -
           (1.0 / M_PI) * h * sum;
}

} // namespace

Cx bessel(BesselKind kind, int n, Cx z, SpecialFnConfig cfg) {
    if (n != 0 && n != 1) throw DomainError("bessel: order must be 0 or 1");
    if (std::abs(z) > 20.0 + 1e-9)
        throw DomainError("bessel: |z| beyond the supported domain");
    if (kind == BesselKind::Y && z == 0.0)
        throw DomainError("bessel: Y is singular at z = 0");
    return kind == BesselKind::J ? bessel_j(n, z, cfg) : bessel_y(n, z, cfg);
}

Cx erfi(Cx z, SpecialFnConfig cfg) {
    if (std::abs(z) > 6.0 + 1e-9)
        throw DomainError("erfi: |z| beyond the supported domain");
    const Cx z2 = z * z;
    // sum z^{2n+1} / (n! (2n+1)), scaled by 2/sqrt(pi)
    Cx s{};
    Cx pw = z;
    double fact = 1.0;
    double mag = 1.0;
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        const Cx add = pw / (fact * (2.0 * n + 1.0));
        s += add;
        mag = std::max(mag, std::abs(s));
        quiet = (std::abs(add) <= cfg.series_tol * mag) ? quiet + 1 : 0;
        if (quiet >= 3) return (2.0 / std::sqrt(M_PI)) * s;
        pw *= z2;
        fact *= (n + 1.0);
    }
    throw ConvergenceError("erfi: series did not converge", (2.0 / std::sqrt(M_PI)) * s);
}

Cx inc_gamma_upper_one_third(Cx w, SpecialFnConfig cfg, Branch br) {
    if (std::abs(w) > 10.0 + 1e-9)
        throw DomainError("inc_gamma_upper_one_third: |w| beyond the supported domain");
    if (w == 0.0) return kGammaOneThird;
    // lower incomplete: w^{1/3} sum (-w)^n / (n! (n + 1/3))
    Cx s{};
    Cx term{1.0};
    double mag = 1.0;
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        const Cx add = term / (n + 1.0 / 3.0);
        s += add;
        mag = std::max(mag, std::abs(s));
        quiet = (std::abs(add) <= cfg.series_tol * mag) ? quiet + 1 : 0;
        if (quiet >= 3)
            return kGammaOneThird - pow_b(w, Cx{1.0 / 3.0}, br) * s;
        term *= -w / (n + 1.0);
    }
    throw ConvergenceError("inc_gamma_upper_one_third: series did not converge",
                           kGammaOneThird - pow_b(w, Cx{1.0 / 3.0}, br) * s);
}

Jet hyp1f1_jet(Cx a, Cx b, const Jet& z, SpecialFnConfig cfg) {
    const Cx z0 = z.value();
    const Cx f0 = hyp1f1(a, b, z0, cfg);
    const Cx f1 = (a / b) * hyp1f1(a + 1.0, b + 1.0, z0, cfg);
    // z f'' + (b - z) f' - a f = 0
    return ode_lift({Cx{}, 1.0}, {b, -1.0}, {-a}, f0, f1, z);
}

Jet hyp2f1_jet(Cx a, Cx b, Cx c, const Jet& z, SpecialFnConfig cfg) {
    const Cx z0 = z.value();
    const Cx f0 = hyp2f1(a, b, c, z0, cfg);
    const Cx f1 = (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z0, cfg);
    // z(1-z) f'' + [c - (a+b+1) z] f' - a b f = 0
    return ode_lift({Cx{}, 1.0, -1.0}, {c, -(a + b + 1.0)}, {-a * b}, f0, f1, z);
}

Jet bessel_jet(BesselKind kind, int n, const Jet& z, SpecialFnConfig cfg) {
    const Cx z0 = z.value();
    const Cx w0 = bessel(kind, 0, z0, cfg);
    const Cx w1 = bessel(kind, 1, z0, cfg);
    const Cx f0 = (n == 0) ? w0 : w1;
    const Cx f1 = (n == 0) ? -w1 : w0 - w1 / z0;
    const double nn = static_cast<double>(n) * n;
    // z^2 w'' + z w' + (z^2 - n^2) w = 0
    return ode_lift({Cx{}, Cx{}, 1.0}, {Cx{}, 1.0}, {-nn, Cx{}, 1.0}, f0, f1, z);
}

Jet erfi_jet(const Jet& z, SpecialFnConfig cfg) {
    const Cx z0 = z.value();
    const Cx f0 = erfi(z0, cfg);
    const Cx f1 = (2.0 / std::sqrt(M_PI)) * std::exp(z0 * z0);
    // w'' - 2 z w' = 0
    return ode_lift({1.0}, {Cx{}, -2.0}, {Cx{}}, f0, f1, z);
}

Jet inc_gamma_upper_one_third_jet(const Jet& w, SpecialFnConfig cfg, Branch br) {
    const Cx w0 = w.value();
    if (w0 == 0.0)
        throw DomainError("inc_gamma_upper_one_third_jet: expansion point must be nonzero");
    const Cx f0 = inc_gamma_upper_one_third(w0, cfg, br);
    const Cx f1 = -pow_b(w0, Cx{-2.0 / 3.0}, br) * std::exp(-w0);
    // 3 w g'' + (3 w + 2) g' = 0
    return ode_lift({Cx{}, 3.0}, {2.0, 3.0}, {Cx{}}, f0, f1, w);
}

} // namespace heunint
