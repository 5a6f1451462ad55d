#ifndef HEUNINT_QUADRATURE_HPP
#define HEUNINT_QUADRATURE_HPP

#include <functional>

#include "heunint/cx.hpp"

namespace heunint {

struct QuadResult {
    Cx value{};
    double err_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Simpson over a real interval, complex-valued integrand; real and
// imaginary parts share one subdivision. `tol` is the error budget relative
// to max(1, |integral|): on smooth integrands err_estimate <= tol * that
// scale. Exceeding the depth cap raises ConvergenceError carrying the best
// estimate.
QuadResult integrate_adaptive(const std::function<Cx(double)>& f,
                              double a, double b, double tol = 1e-10,
                              int max_depth = 30);

// Central difference (f(x+h) - f(x-h)) / (2h).
Cx derivative_fd(const std::function<Cx(Cx)>& f, Cx x, double h);

} // namespace heunint

#endif
