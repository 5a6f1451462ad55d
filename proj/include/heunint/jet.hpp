#ifndef HEUNINT_JET_HPP
#define HEUNINT_JET_HPP

#include <vector>

#include "heunint/cx.hpp"

namespace heunint {

// Order-N truncated Taylor expansion of a function at a basepoint.
// coeff(k) is the k-th Taylor coefficient f^(k)(x0)/k!. Arithmetic never
// reads beyond the order; binary operations require matching basepoint
// and order.
class Jet {
public:
    Jet(Cx basepoint, int order)
        : base_(basepoint), c_(static_cast<std::size_t>(order) + 1, Cx{}) {}

    static Jet constant(Cx value, Cx basepoint, int order) {
        Jet j(basepoint, order);
        j.c_[0] = value;
        return j;
    }
    // The identity function x at x0: coefficients {x0, 1, 0, ...}.
    static Jet variable(Cx x0, int order) {
        Jet j(x0, order);
        j.c_[0] = x0;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Cx basepoint() const { return base_; }
    Cx coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    Cx& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }
    Cx value() const { return c_[0]; }
    // f'(x0) etc., with the factorial restored.
    Cx derivative(int k = 1) const;

    const std::vector<Cx>& coeffs() const { return c_; }

private:
    Cx base_;
    std::vector<Cx> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);

Jet operator+(const Jet& a, Cx s);
Jet operator+(Cx s, const Jet& a);
Jet operator-(const Jet& a, Cx s);
Jet operator-(Cx s, const Jet& a);
Jet operator*(const Jet& a, Cx s);
Jet operator*(Cx s, const Jet& a);
Jet operator/(const Jet& a, Cx s);
Jet operator/(Cx s, const Jet& a);

Jet jexp(const Jet& a);
Jet jlog(const Jet& a, Branch br = {});
Jet jpow(const Jet& a, Cx w, Branch br = {});
Jet jsqrt(const Jet& a, Branch br = {});
Jet jsin(const Jet& a);
Jet jcos(const Jet& a);
Jet jatan(const Jet& a);

// Integer power; branch-free, valid at any basepoint (negative n needs a
// nonzero constant term).
Jet jpow_int(const Jet& a, int n);

// Drop to order n (n <= a.order()).
Jet truncate(const Jet& a, int n);
// Jet of f' at the same basepoint, one order lower.
Jet derive(const Jet& a);
// Composition g(f): `outer` is the jet of g at f(x0), `inner` the jet of f
// at x0; requires outer.basepoint() == inner.value() and equal orders.
Jet compose(const Jet& outer, const Jet& inner);

} // namespace heunint

#endif
