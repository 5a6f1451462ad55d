#include "heunint/formulas.hpp"

#include <cmath>

#include "heunint/special.hpp"

namespace heunint {

namespace {

constexpr double kTieTol = 1e-12; // absolute tolerance on exact parameter ties

void require_tie(Cx got, Cx want, const char* what) {
    if (std::abs(got - want) > kTieTol)
        throw ConstraintError(std::string(what) + ": parameter tie violated");
}

} // namespace

const char* formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::DHC_AT0: return "DHC_AT0";
        case FormulaId::DHC_CASE1: return "DHC_CASE1";
        case FormulaId::DHC_CASE2: return "DHC_CASE2";
        case FormulaId::DHB_AT0: return "DHB_AT0";
        case FormulaId::DHB_HYP: return "DHB_HYP";
        case FormulaId::DHB_CASE: return "DHB_CASE";
    }
    return "?";
}

Cx dHc_at0(const ParamSet& ch) {
    const Cx a = ch.alpha(), b = ch.beta(), g = ch.gamma(), e = ch.eta();
    if (std::abs(b + 1.0) <= kTieTol)
        throw DomainError("dHc_at0: beta = -1");
    return ((1.0 + g - a) * b + g - a + 2.0 * e) / (2.0 * (1.0 + b));
}

Cx dHc_case1(const ParamSet& ch, Cx x) {
    const Cx a = ch.alpha(), b = ch.beta(), g = ch.gamma(), e = ch.eta();
    require_tie(ch.delta(), -(b + g + 2.0) * a / 2.0, "dHc_case1");
    const Cx c0 = dHc_at0(ch);
    const ParamSet shifted = ParamSet::ch(
        a, b + 1.0, g + 1.0, -(b + g) * a / 2.0,
        0.5 * (b + g - a + 1.0) + e);
    Solution w(Family::CH, shifted);
    return c0 * w.eval(x).first;
}

Cx dHc_case2(const ParamSet& ch, Cx x, SBranch sbr) {
    const Cx a = ch.alpha(), b = ch.beta(), g = ch.gamma(), d = ch.delta();
    require_tie(ch.eta(), (b + 1.0) * a / 2.0 - (g + 1.0) * b / 2.0 - g / 2.0,
                "dHc_case2");
    if (x == 0.0) throw ConstraintError("dHc_case2: x must be nonzero");
    const Cx etap = (a - g) * b / 2.0 + 0.5 * (a - g + 1.0);
    if (sbr == SBranch::PlusOne) {
        if (std::abs(b + 2.0) <= kTieTol)
            throw DomainError("dHc_case2: beta = -2");
        const Cx M = (b + g + 2.0) * a + 2.0 * d;
        Solution w(Family::CH, ParamSet::ch(a, b + 2.0, g + 1.0, a / 2.0 + d, etap));
        return (M / (2.0 * (b + 2.0))) * x * w.eval(x).first;
    }
    if (!(b.real() < -1.0))
        throw ConstraintError("dHc_case2: s = -1-beta needs Re(beta) < -1");
    Solution w(Family::CH, ParamSet::ch(a, -b - 2.0, g + 1.0, a / 2.0 + d, etap));
    return pow_b(x, -1.0 - b) * w.eval(x).first;
}

Cx dHb_at0(const ParamSet& bc) {
    const Cx a = bc.alpha(), b = bc.beta(), d = bc.delta();
    if (std::abs(a + 1.0) <= kTieTol)
        throw DomainError("dHb_at0: alpha = -1");
    return (d + b * (a + 1.0)) / (2.0 * (1.0 + a));
}

Cx dHb_hyp(Cx alpha, Cx gamma, Cx x) {
    if (std::abs(alpha + 2.0) <= kTieTol)
        throw DomainError("dHb_hyp: alpha = -2");
    return ((alpha + 2.0 - gamma) * x / (alpha + 2.0)) *
           hyp1f1((alpha + 6.0 - gamma) / 4.0, 2.0 + alpha / 2.0, x * x);
}

Cx dHb_case(const ParamSet& bc, Cx x) {
    const Cx a = bc.alpha(), b = bc.beta(), d = bc.delta();
    require_tie(bc.gamma(), a + 2.0, "dHb_case");
    const Cx c0 = dHb_at0(bc); // throws DomainError at alpha = -1
    Solution w(Family::BC, ParamSet::bc(a + 1.0, b, a - 1.0, b + d));
    return c0 * w.eval(x).first;
}

} // namespace heunint
