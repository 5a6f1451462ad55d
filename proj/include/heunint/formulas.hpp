#ifndef HEUNINT_FORMULAS_HPP
#define HEUNINT_FORMULAS_HPP

#include "heunint/cx.hpp"
#include "heunint/heun.hpp"

namespace heunint {

// Closed forms for the first derivative of the CH and BC local solutions,
// each valid under one exact parameter tie.
enum class FormulaId { DHC_AT0, DHC_CASE1, DHC_CASE2, DHB_AT0, DHB_HYP, DHB_CASE };

const char* formula_name(FormulaId id);

// Exponent branch of the x^s prefactor in dHc_case2. Killing the 1/x^2 term
// of the derivative's own equation forces s into {1, -1-beta}: PlusOne is the
// analytic branch carrying the canonical solution's derivative,
// MinusOneMinusBeta the subdominant one.
enum class SBranch { PlusOne, MinusOneMinusBeta };

// H_c'(0) = ((1+gamma-alpha)beta + gamma - alpha + 2 eta) / (2(1+beta)).
Cx dHc_at0(const ParamSet& ch);

// Requires delta = -(beta+gamma+2) alpha / 2. The derivative is the value at
// the origin times the CH solution with parameters
// (alpha, beta+1, gamma+1, -(beta+gamma) alpha/2, (beta+gamma-alpha+1)/2 + eta).
Cx dHc_case1(const ParamSet& ch, Cx x);

// Requires eta = (beta+1) alpha/2 - (gamma+1) beta/2 - gamma/2 (the tie that
// removes the constant term of the cleared q). With
// eta' = (alpha-gamma) beta/2 + (alpha-gamma+1)/2 and
// M = (beta+gamma+2) alpha + 2 delta:
//   PlusOne:  H_c'(x) = M/(2(beta+2)) * x *
//                       H_c(alpha, beta+2, gamma+1, alpha/2+delta, eta'; x),
//             the canonical solution's derivative (needs beta != -2);
//   MinusOneMinusBeta: x^{-1-beta} H_c(alpha, -beta-2, gamma+1,
//                       alpha/2+delta, eta'; x), the solution of the same
//             derivative equation carrying the second indicial exponent --
//             the derivative of the exponent-(-beta) companion solution, not
//             of the canonical one (needs Re(beta) < -1).
Cx dHc_case2(const ParamSet& ch, Cx x, SBranch s);

// H_b'(0) = (delta + beta(alpha+1)) / (2(1+alpha)).
Cx dHb_at0(const ParamSet& bc);

// H_b'(alpha, 0, gamma, 0; x) in terms of 1F1 at x^2.
Cx dHb_hyp(Cx alpha, Cx gamma, Cx x);

// Requires gamma = alpha + 2. Returns the value at the origin times
// H_b(alpha+1, beta, alpha-1, beta+delta; x).
Cx dHb_case(const ParamSet& bc, Cx x);

} // namespace heunint

#endif
