#ifndef HEUNINT_HEUN_HPP
#define HEUNINT_HEUN_HPP

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heunint/cx.hpp"
#include "heunint/jet.hpp"
#include "heunint/poly.hpp"

namespace heunint {

// The four confluent members of the Heun family.
enum class Family { CH, BC, DC, TC };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);
std::size_t param_count(Family f); // CH 5, BC 4, DC 4, TC 3

// Parameter tuple of one family, in the order (alpha, beta, gamma, delta[, eta]).
class ParamSet {
public:
    ParamSet(Family f, std::vector<Cx> v);

    static ParamSet ch(Cx a, Cx b, Cx g, Cx d, Cx e) { return {Family::CH, {a, b, g, d, e}}; }
    static ParamSet bc(Cx a, Cx b, Cx g, Cx d) { return {Family::BC, {a, b, g, d}}; }
    static ParamSet dc(Cx a, Cx b, Cx g, Cx d) { return {Family::DC, {a, b, g, d}}; }
    static ParamSet tc(Cx a, Cx b, Cx g) { return {Family::TC, {a, b, g}}; }

    Family family() const { return fam_; }
    const std::vector<Cx>& values() const { return v_; }

    Cx alpha() const { return v_[0]; }
    Cx beta() const { return v_[1]; }
    Cx gamma() const { return v_[2]; }
    Cx delta() const; // not defined for TC
    Cx eta() const;   // CH only

private:
    Family fam_;
    std::vector<Cx> v_;
};

// A(x) y'' + B(x) y' + C(x) y = 0 with polynomial coefficients; denominators
// of the family's (p, q) cleared by their least common polynomial multiple.
struct PolyODE {
    Poly A, B, C;
    std::vector<Cx> sing; // finite roots of A
};

PolyODE ode_from_family(Family f, const ParamSet& p);

// y1 empty means the n = 0 recurrence equation determines it (exponent-zero
// local solution at a regular singular basepoint).
struct SeedPair {
    Cx y0{1.0, 0.0};
    std::optional<Cx> y1;
};

// Canonical local-solution seeds: (1, AUTO) for CH/BC, (1, 0) for DC/TC.
// Throws ResonanceError when the determining denominator can vanish
// (CH: beta a negative integer; BC: alpha a negative integer).
SeedPair seeds_for(Family f, const ParamSet& p);

// Taylor coefficients at basepoint 0 of the given ODE. With y1 engaged the
// basepoint must be ordinary (A[0] != 0); with y1 empty a simple-zero
// basepoint (A[0] = 0, A[1] != 0) is solved by the exponent-zero recurrence.
std::vector<Cx> taylor_coeffs(const PolyODE& ode, const SeedPair& seeds, int n);

// Same, with the truncation index chosen adaptively: stop once
// |c_n * xmax^n| < 1e-16 * scale for 5 consecutive n (cap 500).
std::vector<Cx> taylor_coeffs_auto(const PolyODE& ode, const SeedPair& seeds,
                                   double xmax, int cap = 500);

// One solution of a family equation, evaluable anywhere reachable from its
// anchor without crossing a singularity. Expansion charts are memoized;
// evaluation is thread-safe and the object is logically immutable.
class Solution {
public:
    // canonical local solution at the origin, y(0) = 1
    Solution(Family f, const ParamSet& p);
    // arbitrary seeds at an ordinary anchor point
    Solution(Family f, const ParamSet& p, Cx anchor, Cx y0, Cx y1);

    std::pair<Cx, Cx> eval(Cx x) const; // (y, y')
    Jet jet(Cx x0, int order) const;

    Family family() const { return fam_; }
    const ParamSet& params() const { return par_; }
    const PolyODE& ode() const { return ode_; }
    Cx anchor() const { return anchor_; }
    // distance from the anchor to the nearest other finite singularity
    double radius() const { return radius0_; }
    const std::vector<Cx>& coeffs0() const;

private:
    struct Chart {
        Cx bp;
        std::vector<Cx> c;
        double reach; // trust radius of the truncated series
    };

    double dist_to_sing(Cx z, bool exclude_anchor) const;
    Chart build_chart(Cx bp, Cx y0, Cx y1) const;
    const Chart& chart_for(Cx x) const;
    static std::pair<Cx, Cx> sum_chart(const Chart& ch, Cx x);

    Family fam_;
    ParamSet par_;
    PolyODE ode_;
    Cx anchor_;
    double radius0_;
    mutable std::deque<Chart> charts_;
    mutable std::mutex mu_;
};

// Convenience wrappers matching the operation names used elsewhere.
inline std::pair<Cx, Cx> heun_eval(const Solution& sol, Cx x) { return sol.eval(x); }
inline Jet heun_jet(const Solution& sol, Cx x0, int order) { return sol.jet(x0, order); }

// Propagates (y, y') from x0 to x1 along the real axis with an adaptive
// Runge-Kutta-Fehlberg 7(8) stepper; the independent cross-check of the
// series engine. x0 may sit on a regular singular point, in which case the
// seeds must be consistent with the analytic branch there.
std::pair<Cx, Cx> continue_solution(Family f, const ParamSet& p, double x0,
                                    std::pair<Cx, Cx> seeds, double x1);

// A y'' + B y' + C y at the jet's basepoint, normalized by
// max(1, |A y''|, |B y'|, |C y|).
Cx ode_residual(Family f, const ParamSet& p, const Jet& yjet);

// Table entries p = B/A, q = C/A as jets (basepoint away from singularities),
// and the integrating factor f = exp(int p) in closed form.
Jet family_p(Family f, const ParamSet& p, const Jet& x);
Jet family_q(Family f, const ParamSet& p, const Jet& x);
Jet family_f(Family f, const ParamSet& p, const Jet& x, Branch br = {});

} // namespace heunint

#endif
