#include "heunint/jet.hpp"

#include <cmath>

namespace heunint {

namespace {

void require_compatible(const Jet& a, const Jet& b) {
    if (a.basepoint() != b.basepoint())
        throw DomainError("jet basepoint mismatch");
    if (a.order() != b.order())
        throw DomainError("jet order mismatch");
}

} // namespace

Cx Jet::derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<std::size_t>(k)] * fact;
}

Jet operator+(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.coeff(k) += b.coeff(k);
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.coeff(k) -= b.coeff(k);
    return r;
}

Jet operator-(const Jet& a) {
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.coeff(k) = -r.coeff(k);
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    const int n = a.order();
    Jet r(a.basepoint(), n);
    for (int k = 0; k <= n; ++k) {
        Cx s{};
        for (int i = 0; i <= k; ++i) s += a.coeff(i) * b.coeff(k - i);
        r.coeff(k) = s;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    if (b.coeff(0) == 0.0)
        throw DomainError("jet division by zero constant term");
    const int n = a.order();
    Jet r(a.basepoint(), n);
    for (int k = 0; k <= n; ++k) {
        Cx s = a.coeff(k);
        for (int i = 0; i < k; ++i) s -= r.coeff(i) * b.coeff(k - i);
        r.coeff(k) = s / b.coeff(0);
    }
    return r;
}

Jet operator+(const Jet& a, Cx s) { Jet r = a; r.coeff(0) += s; return r; }
Jet operator+(Cx s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, Cx s) { Jet r = a; r.coeff(0) -= s; return r; }
Jet operator-(Cx s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, Cx s) {
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.coeff(k) *= s;
    return r;
}
Jet operator*(Cx s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, Cx s) {
    if (s == 0.0) throw DomainError("jet division by zero scalar");
    return a * (1.0 / s);
}
Jet operator/(Cx s, const Jet& a) {
    return Jet::constant(s, a.basepoint(), a.order()) / a;
}

Jet jexp(const Jet& a) {
    const int n = a.order();
    Jet r(a.basepoint(), n);
    r.coeff(0) = std::exp(a.coeff(0));
    for (int k = 1; k <= n; ++k) {
        Cx s{};
        for (int i = 1; i <= k; ++i)
            s += static_cast<double>(i) * a.coeff(i) * r.coeff(k - i);
        r.coeff(k) = s / static_cast<double>(k);
    }
    return r;
}

Jet jlog(const Jet& a, Branch br) {
    if (a.coeff(0) == 0.0)
        throw DomainError("jet log with zero constant term");
    const int n = a.order();
    Jet r(a.basepoint(), n);
    r.coeff(0) = log_b(a.coeff(0), br);
    for (int k = 1; k <= n; ++k) {
        Cx s = static_cast<double>(k) * a.coeff(k);
        for (int i = 1; i < k; ++i)
            s -= static_cast<double>(i) * r.coeff(i) * a.coeff(k - i);
        r.coeff(k) = s / (static_cast<double>(k) * a.coeff(0));
    }
    return r;
}

Jet jpow(const Jet& a, Cx w, Branch br) {
    if (a.coeff(0) == 0.0)
        throw DomainError("jet power with zero constant term");
    return jexp(jlog(a, br) * w);
}

Jet jsqrt(const Jet& a, Branch br) {
    if (a.coeff(0) == 0.0)
        throw DomainError("jet sqrt with zero constant term");
    const int n = a.order();
    Jet r(a.basepoint(), n);
    r.coeff(0) = sqrt_b(a.coeff(0), br);
    for (int k = 1; k <= n; ++k) {
        Cx s = a.coeff(k);
        for (int i = 1; i < k; ++i) s -= r.coeff(i) * r.coeff(k - i);
        r.coeff(k) = s / (2.0 * r.coeff(0));
    }
    return r;
}

namespace {

// sin and cos advance together through the shared recurrence.
void sincos_jets(const Jet& a, Jet& s, Jet& c) {
    const int n = a.order();
    s = Jet(a.basepoint(), n);
    c = Jet(a.basepoint(), n);
    s.coeff(0) = std::sin(a.coeff(0));
    c.coeff(0) = std::cos(a.coeff(0));
    for (int k = 1; k <= n; ++k) {
        Cx ss{}, cc{};
        for (int i = 1; i <= k; ++i) {
            const Cx ai = static_cast<double>(i) * a.coeff(i);
            ss += ai * c.coeff(k - i);
            cc -= ai * s.coeff(k - i);
        }
        s.coeff(k) = ss / static_cast<double>(k);
        c.coeff(k) = cc / static_cast<double>(k);
    }
}

} // namespace

Jet jsin(const Jet& a) {
    Jet s(a.basepoint(), a.order()), c(a.basepoint(), a.order());
    sincos_jets(a, s, c);
    return s;
}

Jet jcos(const Jet& a) {
    Jet s(a.basepoint(), a.order()), c(a.basepoint(), a.order());
    sincos_jets(a, s, c);
    return c;
}

Jet jatan(const Jet& a) {
    const int n = a.order();
    Jet r(a.basepoint(), n);
    r.coeff(0) = std::atan(a.coeff(0));
    if (n == 0) return r;
    // r' = a' / (1 + a^2), integrated term by term
    const Jet g = Jet::constant(1.0, a.basepoint(), n) + a * a;
    const Jet u = Jet(derive(a)) / truncate(g, n - 1);
    for (int k = 1; k <= n; ++k)
        r.coeff(k) = u.coeff(k - 1) / static_cast<double>(k);
    return r;
}

Jet jpow_int(const Jet& a, int n) {
    if (n < 0) return Cx{1.0} / jpow_int(a, -n);
    Jet r = Jet::constant(1.0, a.basepoint(), a.order());
    Jet base = a;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
    }
    return r;
}

Jet truncate(const Jet& a, int n) {
    Jet r(a.basepoint(), n);
    for (int k = 0; k <= n; ++k) r.coeff(k) = a.coeff(k);
    return r;
}

Jet derive(const Jet& a) {
    if (a.order() == 0) throw DomainError("cannot derive an order-0 jet");
    Jet r(a.basepoint(), a.order() - 1);
    for (int k = 1; k <= a.order(); ++k)
        r.coeff(k - 1) = static_cast<double>(k) * a.coeff(k);
    return r;
}

Jet compose(const Jet& outer, const Jet& inner) {
    if (outer.order() != inner.order())
        throw DomainError("compose: order mismatch");
    if (outer.basepoint() != inner.value())
        throw DomainError("compose: outer basepoint must equal inner value");
    const int n = inner.order();
    Jet t = inner;        // inner - inner(x0), zero constant term
    t.coeff(0) = 0.0;
    Jet r = Jet::constant(outer.coeff(n), inner.basepoint(), n);
    for (int k = n - 1; k >= 0; --k)
        r = r * t + outer.coeff(k);
    return r;
}

} // namespace heunint
