#include "heunint/quadrature.hpp"

#include <cmath>

namespace heunint {

namespace {

struct SimpsonState {
    const std::function<Cx(double)>* f;
    long evals = 0;
    double err = 0.0;
    int max_depth;
    bool capped = false;

    Cx eval(double x) {
        ++evals;
        return (*f)(x);
    }

    // One refinement level: whole-interval Simpson `s` with endpoint values
    // already known; returns the refined value.
    Cx refine(double a, double b, Cx fa, Cx fm, Cx fb, Cx s,
              double budget, int depth) {
        const double m = 0.5 * (a + b);
        const double h = b - a;
        const Cx fl = eval(0.5 * (a + m));
        const Cx fr = eval(0.5 * (m + b));
        const Cx sl = (h / 12.0) * (fa + 4.0 * fl + fm);
        const Cx sr = (h / 12.0) * (fm + 4.0 * fr + fb);
        const Cx s2 = sl + sr;
        const double delta = std::abs(s2 - s);
        if (delta <= 15.0 * budget || depth >= max_depth) {
            if (depth >= max_depth && delta > 15.0 * budget) capped = true;
            err += delta / 15.0;
            return s2 + (s2 - s) / 15.0;
        }
        return refine(a, m, fa, fl, fm, sl, budget, depth + 1) +
               refine(m, b, fm, fr, fb, sr, budget, depth + 1);
    }
};

} // namespace

QuadResult integrate_adaptive(const std::function<Cx(double)>& f,
                              double a, double b, double tol, int max_depth) {
    if (!(a <= b)) throw DomainError("integrate_adaptive: requires a <= b");
    if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be positive");
    if (a == b) return {Cx{}, 0.0, 0};

    SimpsonState st;
    st.f = &f;
    st.max_depth = max_depth;

    // coarse pass fixes the scale of the error budget
    const int np = 8;
    Cx coarse{};
    for (int i = 0; i < np; ++i) {
        const double x0 = a + (b - a) * i / np;
        const double x1 = a + (b - a) * (i + 1) / np;
        coarse += ((x1 - x0) / 6.0) *
                  (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    const double budget = tol * std::max(1.0, std::abs(coarse));

    const Cx fa = st.eval(a);
    const Cx fm = st.eval(0.5 * (a + b));
    const Cx fb = st.eval(b);
    const Cx s = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    const Cx v = st.refine(a, b, fa, fm, fb, s, budget, 0);

    if (st.capped)
        throw ConvergenceError("integrate_adaptive: subdivision depth cap exceeded",
                               v, st.err);
    if (!is_finite(v))
        throw DomainError("integrate_adaptive: non-finite integrand");
    return {v, st.err, st.evals};
}

Cx derivative_fd(const std::function<Cx(Cx)>& f, Cx x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace heunint
