#include "heunint/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "heunint/special.hpp"

namespace heunint {

namespace {

constexpr double kTieTol = 1e-12;     // exact parameter ties
constexpr double kMargin = 0.05;      // clearance around excluded points
constexpr double kMinDomain = 0.15;   // smallest usable interval
constexpr double kCaseZeroTol = 1e-10; // |Delta| below this selects the double-root form

struct IdRow {
    IdentityId id;
    const char* name;
    Family fam;
    bool conj;
    bool hform; // printed closed-form kernel, transcription-checkable
};

const IdRow kRows[kIdentityCount] = {
    {IdentityId::CH_ELEM, "CH_ELEM", Family::CH, false, true},
    {IdentityId::CH_ZERO, "CH_ZERO", Family::CH, false, false},
    {IdentityId::CH_ZERO_DER1, "CH_ZERO_DER1", Family::CH, false, false},
    {IdentityId::CH_STANJEL, "CH_STANJEL", Family::CH, false, false},
    {IdentityId::CH_HYP, "CH_HYP", Family::CH, false, true},
    {IdentityId::CH_H3, "CH_H3", Family::CH, false, true},
    {IdentityId::CH_BESSEL, "CH_BESSEL", Family::CH, false, true},
    {IdentityId::CH_CONJ, "CH_CONJ", Family::CH, true, false},
    {IdentityId::BC_ELEM, "BC_ELEM", Family::BC, false, true},
    {IdentityId::BC_ZERO, "BC_ZERO", Family::BC, false, false},
    {IdentityId::BC_ZERO_SPC, "BC_ZERO_SPC", Family::BC, false, false},
    {IdentityId::BC_ERFI, "BC_ERFI", Family::BC, false, true},
    {IdentityId::BC_H3, "BC_H3", Family::BC, false, true},
    {IdentityId::BC_CONJ, "BC_CONJ", Family::BC, true, false},
    {IdentityId::DC_ELEM, "DC_ELEM", Family::DC, false, true},
    {IdentityId::DC_ZERO, "DC_ZERO", Family::DC, false, false},
    {IdentityId::DC_LOG, "DC_LOG", Family::DC, false, true},
    {IdentityId::DC_H3, "DC_H3", Family::DC, false, true},
    {IdentityId::DC_CONJ, "DC_CONJ", Family::DC, true, false},
    {IdentityId::TC_ELEM, "TC_ELEM", Family::TC, false, true},
    {IdentityId::TC_GAMMA, "TC_GAMMA", Family::TC, false, true},
    {IdentityId::TC_H3, "TC_H3", Family::TC, false, true},
    {IdentityId::TC_CONJ, "TC_CONJ", Family::TC, true, false},
};

const IdRow& row(IdentityId id) {
    for (const IdRow& r : kRows)
        if (r.id == id) return r;
    throw DomainError("unknown identity id");
}

bool near(Cx z, Cx w, double tol = kTieTol) { return std::abs(z - w) <= tol; }

bool near_neg_int(Cx z, double tol = kTieTol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= -0.5 && std::abs(z.real() - r) <= tol;
}

bool near_pos_int(Cx z, double tol = kTieTol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r >= 0.5 && std::abs(z.real() - r) <= tol;
}

bool params_real(const ParamSet& p, const std::optional<HChoice>& hc) {
    for (const Cx& v : p.values())
        if (std::abs(v.imag()) > kTieTol) return false;
    if (hc && (std::abs(hc->rho.imag()) > kTieTol || std::abs(hc->k.imag()) > kTieTol))
        return false;
    return true;
}

// --- family-specific constants -------------------------------------------

// Coefficients shared by the CH kernels: C x^2 + 2 B x + A is the cleared
// first-order polynomial, M x + N the cleared zeroth-order one.
struct ChAux {
    Cx M, N, C, B, A, Delta;
};

ChAux ch_aux(const ParamSet& p) {
    const Cx a = p.alpha(), b = p.beta(), g = p.gamma(), d = p.delta(), e = p.eta();
    ChAux r;
    r.M = (b + g + 2.0) * a + 2.0 * d;
    r.N = -(b + 1.0) * a + (g + 1.0) * b + 2.0 * e + g;
    r.C = 2.0 * a;
    r.B = b + g + 2.0 - a;
    r.A = -2.0 * (b + 1.0);
    r.Delta = r.A * r.C - r.B * r.B;
    return r;
}

Cx bc_delta(const ParamSet& p) {
    return -2.0 * (p.alpha() + 1.0) - p.beta() * p.beta() / 4.0;
}

Cx ch_eta_tied(const ParamSet& p) {
    // value of eta that cancels the constant term N
    const Cx a = p.alpha(), b = p.beta(), g = p.gamma();
    return (1.0 + b) * a / 2.0 - (1.0 + g) * b / 2.0 - g / 2.0;
}

// 0 = arctan form, 1 = double-root form, 2 = ratio-power form (also the
// analytic continuation used for complex parameter draws)
int select_case(Cx discr, bool real_draw) {
    if (!real_draw) return 2;
    if (std::abs(discr) <= kCaseZeroTol) return 1;
    return discr.real() > 0.0 ? 0 : 2;
}

} // namespace

const char* identity_name(IdentityId id) { return row(id).name; }

std::optional<IdentityId> identity_from_name(const std::string& s) {
    for (const IdRow& r : kRows)
        if (s == r.name) return r.id;
    return std::nullopt;
}

Family identity_family(IdentityId id) { return row(id).fam; }
bool is_conjugate_entry(IdentityId id) { return row(id).conj; }
bool has_explicit_h(IdentityId id) { return row(id).hform; }

bool ValidityReport::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

Interval default_domain(Family f) {
    switch (f) {
        case Family::CH: return {0.05, 0.85};
        case Family::BC: return {0.1, 2.0};
        case Family::DC: return {-0.8, 0.8};
        case Family::TC: return {-1.5, 1.5};
    }
    throw DomainError("unknown family");
}

const std::vector<EntryInfo>& list_identities() {
    static const std::vector<EntryInfo> table = {
        {IdentityId::CH_ELEM, Family::CH,
         "elementary kernel h = x^m e^{rho x^l} trig(kx)",
         "beta not a negative integer; k != 0 for the sin row"},
        {IdentityId::CH_ZERO, Family::CH,
         "constant kernel; integrand weight F(x) = M x + N with "
         "M = (beta+gamma+2)alpha + 2 delta, N = -(beta+1)alpha + (gamma+1)beta + 2 eta + gamma",
         "beta not a negative integer"},
        {IdentityId::CH_ZERO_DER1, Family::CH,
         "constant kernel, delta tied so the derivative collapses to a shifted solution",
         "delta = -(beta+gamma+2) alpha/2; N != 0; beta not a negative integer"},
        {IdentityId::CH_STANJEL, Family::CH,
         "bare-solution integrand at the resonant corner",
         "alpha = 0; beta = -1; gamma = 0; eta = 1/2; delta != 0; resonant, arbitrary seeds required"},
        {IdentityId::CH_HYP, Family::CH,
         "kernel h = x^{-beta} 2F1(-beta, 1+gamma; 1-beta; x) at alpha = 0",
         "alpha = 0; beta not a positive integer and beta != 1; beta not a negative integer"},
        {IdentityId::CH_H3, Family::CH,
         "kernel solving p h' + q h = 0; case split on Delta = AC - B^2",
         "alpha != 0; for Delta = 0 the point x0 = (alpha-beta-gamma-2)/(2 alpha) must lie outside the domain"},
        {IdentityId::CH_BESSEL, Family::CH,
         "Bessel kernel h = sqrt(x-1) {J1|Y1}(Omega sqrt(x-1))",
         "eta = eta0 = (1+beta) alpha/2 - (1+gamma) beta/2 - gamma/2; "
         "Omega = sqrt(2 alpha (beta+gamma+2) + 4 delta) != 0"},
        {IdentityId::CH_CONJ, Family::CH,
         "product of the eta and -eta solutions",
         "eta != 0; beta not a negative integer"},
        {IdentityId::BC_ELEM, Family::BC,
         "elementary kernel h = x^m e^{rho x^l} trig(kx)",
         "alpha not a negative integer; k != 0 for the sin row"},
        {IdentityId::BC_ZERO, Family::BC,
         "constant kernel; integrand weight A1 x - A2 with "
         "A1 = 2(gamma-alpha-2), A2 = delta + beta(alpha+1)",
         "alpha not a negative integer"},
        {IdentityId::BC_ZERO_SPC, Family::BC,
         "constant kernel with gamma = alpha + 2; derivative collapses to a shifted solution",
         "gamma = alpha + 2; alpha != -1 and alpha != 1 (both excluded); "
         "delta + beta(alpha+1) != 0"},
        {IdentityId::BC_ERFI, Family::BC,
         "kernel h = (sqrt(pi)/2) e^{-beta^2/4} erfi(x + beta/2) at alpha = -1",
         "alpha = -1; resonant, arbitrary seeds required"},
        {IdentityId::BC_H3, Family::BC,
         "kernel solving p h' + q h = 0; case split on Delta = -2(alpha+1) - beta^2/4",
         "Delta > 0 requires alpha < -1; Delta = 0 requires beta real outside [-4, 0] "
         "and x0 = -beta/4 outside the domain"},
        {IdentityId::BC_CONJ, Family::BC,
         "product of the (gamma, delta) and (-gamma, -delta) solutions",
         "alpha not a negative integer"},
        {IdentityId::DC_ELEM, Family::DC,
         "elementary kernel h = x^m e^{rho x^l} trig(kx)",
         "m <= 1 excludes a neighborhood of 0"},
        {IdentityId::DC_ZERO, Family::DC,
         "constant kernel; integrand weight beta x^2 + (gamma + 2 alpha) x + delta",
         "none"},
        {IdentityId::DC_LOG, Family::DC,
         "kernel h = log sqrt((x-1)/(x+1)) at alpha = 0",
         "alpha = 0"},
        {IdentityId::DC_H3, Family::DC,
         "kernel solving p h' + q h = 0 at alpha = 0",
         "alpha = 0; domain excludes 0"},
        {IdentityId::DC_CONJ, Family::DC,
         "product of the gamma and -gamma solutions",
         "gamma != 0"},
        {IdentityId::TC_ELEM, Family::TC,
         "elementary kernel h = x^m e^{rho x^l} trig(kx)",
         "m <= 1 excludes a neighborhood of 0"},
        {IdentityId::TC_GAMMA, Family::TC,
         "incomplete-gamma kernel h = Gamma(1/3, -x^3) at gamma = 0",
         "gamma = 0; domain excludes 0"},
        {IdentityId::TC_H3, Family::TC,
         "kernel solving p h' + q h = 0; case split on the sign of gamma",
         "gamma < 0 excludes the real roots of 3 x^2 + gamma; gamma = 0 excludes 0"},
        {IdentityId::TC_CONJ, Family::TC,
         "product of the alpha and -alpha solutions",
         "alpha != 0"},
    };
    return table;
}

// ---------------------------------------------------------------------------
// validity

ValidityReport validity(IdentityId id, const ParamSet& params,
                        const std::optional<HChoice>& hchoice) {
    ValidityReport rep;
    auto fail = [&](const std::string& c, const std::string& d) {
        rep.ok = false;
        rep.violations.emplace_back(c, d);
    };

    if (params.family() != identity_family(id)) {
        fail("family", "parameter set family does not match the entry");
        return rep;
    }
    const Family fam = params.family();
    const Cx a = params.alpha(), b = params.beta(), g = params.gamma();

    // canonical-normalization resonance is a flag, not a violation
    if (fam == Family::CH && near_neg_int(b)) rep.flags.push_back("resonant");
    if (fam == Family::BC && near_neg_int(a)) rep.flags.push_back("resonant");

    const bool is_elem = (id == IdentityId::CH_ELEM || id == IdentityId::BC_ELEM ||
                          id == IdentityId::DC_ELEM || id == IdentityId::TC_ELEM);
    if (is_elem) {
        if (!hchoice) {
            fail("hchoice", "elementary-kernel entries need (m, l, rho, k, trig)");
            return rep;
        }
        if (hchoice->m < 0 || hchoice->ell < 0)
            fail("hchoice", "m and l must be non-negative integers");
        if (hchoice->trig == HChoice::Trig::Sin && near(hchoice->k, 0.0))
            fail("k != 0 for the sin row", "the sin-row kernel degenerates to zero");
    } else if (hchoice) {
        fail("hchoice", "only elementary-kernel entries take an h choice");
    }

    switch (id) {
        case IdentityId::CH_ELEM:
        case IdentityId::CH_ZERO:
        case IdentityId::BC_ELEM:
        case IdentityId::BC_ZERO:
        case IdentityId::BC_CONJ:
        case IdentityId::DC_ELEM:
        case IdentityId::DC_ZERO:
        case IdentityId::TC_ELEM:
            break;
        case IdentityId::CH_ZERO_DER1: {
            const ChAux c = ch_aux(params);
            if (!near(params.delta(), -(b + g + 2.0) * a / 2.0))
                fail("delta = -(beta+gamma+2) alpha/2", "parameter tie violated");
            if (near(c.N, 0.0))
                fail("N != 0", "the constant integrand weight vanishes");
            break;
        }
        case IdentityId::CH_STANJEL:
            if (!near(a, 0.0)) fail("alpha = 0", "parameter tie violated");
            if (!near(b, -1.0)) fail("beta = -1", "parameter tie violated");
            if (!near(g, 0.0)) fail("gamma = 0", "parameter tie violated");
            if (!near(params.eta(), 0.5)) fail("eta = 1/2", "parameter tie violated");
            if (near(params.delta(), 0.0)) fail("delta != 0", "prefactor 1/delta undefined");
            if (!rep.has_flag("resonant")) rep.flags.push_back("resonant");
            break;
        case IdentityId::CH_HYP:
            if (!near(a, 0.0)) fail("alpha = 0", "parameter tie violated");
            if (near(b, 1.0)) fail("beta != 1", "the kernel derivative divides by beta - 1");
            if (near_pos_int(b))
                fail("beta not a positive integer",
                     "2F1 parameters 1-beta, 2-beta hit a pole");
            break;
        case IdentityId::CH_H3: {
            if (near(a, 0.0)) fail("alpha != 0", "the quadratic coefficient C = 2 alpha vanishes");
            const ChAux c = ch_aux(params);
            if (select_case(c.Delta, params_real(params, {})) == 1) {
                const Cx x0 = -c.B / c.C;
                const Interval dom = default_domain(Family::CH);
                if (std::abs(x0.imag()) < kMargin && x0.real() > dom.lo - kMargin &&
                    x0.real() < dom.hi + kMargin)
                    fail("x0 outside the interval",
                         "the double-root kernel is singular inside the domain");
            }
            break;
        }
        case IdentityId::CH_BESSEL: {
            if (!near(params.eta(), ch_eta_tied(params)))
                fail("eta = (1+beta) alpha/2 - (1+gamma) beta/2 - gamma/2",
                     "parameter tie violated");
            const ChAux c = ch_aux(params);
            if (near(2.0 * c.M, 0.0)) fail("Omega != 0", "the Bessel argument degenerates");
            break;
        }
        case IdentityId::CH_CONJ:
            if (near(params.eta(), 0.0)) fail("eta != 0", "the prefactor divides by 2 eta");
            break;
        case IdentityId::BC_ZERO_SPC:
            if (!near(g, a + 2.0)) fail("gamma = alpha + 2", "parameter tie violated");
            if (near(a, 1.0) || near(a, -1.0))
                fail("alpha != 1 and alpha != -1",
                     "both values excluded; the stated bound and the derivation's "
                     "denominator alpha + 1 disagree, so validity rejects either");
            if (near(params.delta() + b * (a + 1.0), 0.0))
                fail("delta + beta(alpha+1) != 0", "the collapsed form divides by it");
            break;
        case IdentityId::BC_ERFI:
            if (!near(a, -1.0)) fail("alpha = -1", "parameter tie violated");
            if (!rep.has_flag("resonant")) rep.flags.push_back("resonant");
            break;
        case IdentityId::BC_H3: {
            const Cx D = bc_delta(params);
            const int cs = select_case(D, params_real(params, {}));
            if (cs == 0 && !(a.real() < -1.0))
                fail("Delta > 0 requires alpha < -1", "inconsistent case selection");
            if (cs == 1) {
                const double br_ = b.real();
                if (std::abs(b.imag()) > kTieTol || (br_ >= -4.0 && br_ <= 0.0))
                    fail("beta real outside [-4, 0]",
                         "double-root case needs the kernel singularity away from the domain");
                const Interval dom = default_domain(Family::BC);
                const double x0 = -br_ / 4.0;
                if (x0 > dom.lo - kMargin && x0 < dom.hi + kMargin)
                    fail("x0 = -beta/4 outside the interval",
                         "the double-root kernel is singular inside the domain");
            }
            break;
        }
        case IdentityId::DC_LOG:
        case IdentityId::DC_H3:
            if (!near(a, 0.0)) fail("alpha = 0", "parameter tie violated");
            break;
        case IdentityId::DC_CONJ:
            if (near(g, 0.0)) fail("gamma != 0", "the prefactor divides by 2 gamma");
            break;
        case IdentityId::TC_GAMMA:
            if (!near(g, 0.0)) fail("gamma = 0", "parameter tie violated");
            break;
        case IdentityId::TC_H3:
            break;
        case IdentityId::TC_CONJ:
            if (near(a, 0.0)) fail("alpha != 0", "the prefactor divides by 2 alpha");
            break;
        default:
            break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// instantiate

namespace {

struct Exclusion {
    double x;
    double margin;
};

// real points the domain must clear; kernel poles of the three-form entries
// take a wider berth so the 1e-12 transcription comparison stays
// well-conditioned near them
std::vector<Exclusion> exclusion_points(IdentityId id, const ParamSet& p,
                                        const std::optional<HChoice>& hc, int hcase) {
    constexpr double kPoleMargin = 0.15;
    std::vector<Exclusion> ex;
    auto add_root = [&](Cx r) {
        if (std::abs(r.imag()) < kPoleMargin) ex.push_back({r.real(), kPoleMargin});
    };
    switch (id) {
        case IdentityId::DC_ELEM:
        case IdentityId::TC_ELEM:
            if (hc && hc->m <= 1) ex.push_back({0.0, kMargin});
            break;
        case IdentityId::DC_H3:
        case IdentityId::TC_GAMMA:
            ex.push_back({0.0, kMargin});
            break;
        case IdentityId::CH_H3: {
            const ChAux c = ch_aux(p);
            if (hcase == 1) {
                add_root(-c.B / c.C);
            } else {
                const Cx S = sqrt_b(-c.Delta);
                add_root((-c.B + S) / c.C);
                add_root((-c.B - S) / c.C);
            }
            break;
        }
        case IdentityId::BC_H3: {
            const Cx D = bc_delta(p);
            if (hcase == 1) {
                add_root(-p.beta() / 4.0);
            } else {
                const Cx S = sqrt_b(-D);
                add_root((-p.beta() + 2.0 * S) / 4.0);
                add_root((-p.beta() - 2.0 * S) / 4.0);
            }
            break;
        }
        case IdentityId::TC_H3: {
            if (hcase == 1) {
                ex.push_back({0.0, kPoleMargin});
            } else if (hcase == 2) {
                const Cx S = sqrt_b(-3.0 * p.gamma());
                add_root(S / 3.0);
                add_root(-S / 3.0);
            }
            break;
        }
        default:
            break;
    }
    return ex;
}

Interval carve_domain(Interval base, std::vector<Exclusion> excl) {
    std::vector<std::pair<double, double>> segs{{base.lo, base.hi}};
    std::sort(excl.begin(), excl.end(),
              [](const Exclusion& u, const Exclusion& v) { return u.x < v.x; });
    for (const Exclusion& e : excl) {
        std::vector<std::pair<double, double>> next;
        for (auto [lo, hi] : segs) {
            const double a = e.x - e.margin, b = e.x + e.margin;
            if (b <= lo || a >= hi) {
                next.emplace_back(lo, hi);
                continue;
            }
            if (a > lo) next.emplace_back(lo, a);
            if (b < hi) next.emplace_back(b, hi);
        }
        segs = std::move(next);
    }
    const std::pair<double, double>* best = nullptr;
    for (const auto& s : segs) {
        if (!best || s.second - s.first > best->second - best->first ||
            (s.second - s.first == best->second - best->first &&
             s.first + s.second > best->first + best->second))
            best = &s;
    }
    if (!best || best->second - best->first < kMinDomain)
        throw InvalidInstance("no usable domain interval remains after exclusions");
    return {best->first, best->second};
}

int entry_hcase(IdentityId id, const ParamSet& p, const std::optional<HChoice>& hc) {
    switch (id) {
        case IdentityId::CH_H3:
            return select_case(ch_aux(p).Delta, params_real(p, hc));
        case IdentityId::BC_H3:
            return select_case(bc_delta(p), params_real(p, hc));
        case IdentityId::TC_H3: {
            const Cx g = p.gamma();
            if (params_real(p, hc) && std::abs(g) <= kCaseZeroTol) return 1;
            return select_case(g, params_real(p, hc));
        }
        default:
            return 2;
    }
}

std::string describe_violations(const ValidityReport& rep) {
    std::string s = "invalid identity instance:";
    for (const auto& [c, d] : rep.violations) s += " [" + c + ": " + d + "]";
    return s;
}

} // namespace

IdentityInstance instantiate(IdentityId id, const ParamSet& params,
                             std::optional<HChoice> hchoice, SeedMode seed,
                             std::optional<Interval> domain, Branch br, int variant) {
    const ValidityReport rep = validity(id, params, hchoice);
    if (!rep.ok) throw InvalidInstance(describe_violations(rep));
    if (seed.kind == SeedMode::Kind::Canonical && rep.has_flag("resonant"))
        throw InvalidInstance("resonant parameter set: arbitrary seeds required");

    IdentityInstance inst(id, params);
    inst.hchoice_ = hchoice;
    inst.branch_ = br;
    inst.variant_ = variant;
    inst.hcase_ = entry_hcase(id, params, hchoice);
    inst.domain_ = carve_domain(domain.value_or(default_domain(params.family())),
                                exclusion_points(id, params, hchoice, inst.hcase_));
    if (seed.kind == SeedMode::Kind::Arbitrary && seed.anchor == 0.0)
        seed.anchor = inst.domain_.mid();
    if (seed.kind == SeedMode::Kind::Arbitrary && !inst.domain_.contains(seed.anchor))
        throw InvalidInstance("arbitrary-seed anchor lies outside the domain");
    inst.seed_ = seed;

    const Family fam = params.family();
    if (seed.kind == SeedMode::Kind::Canonical) {
        inst.y_ = std::make_shared<Solution>(fam, params);
    } else {
        inst.y_ = std::make_shared<Solution>(fam, params, Cx{seed.anchor, 0.0},
                                             seed.y0, seed.y1);
    }

    if (is_conjugate_entry(id)) {
        const ParamSet bar = conjugate_params(params);
        if (seed.kind == SeedMode::Kind::Canonical)
            inst.h_ = std::make_shared<Solution>(fam, bar);
        else
            inst.h_ = std::make_shared<Solution>(fam, bar, Cx{seed.anchor, 0.0},
                                                 seed.y0b, seed.y1b);
    } else if (seed.kind == SeedMode::Kind::Canonical) {
        // shifted-parameter partner of the closed-form-derivative entries
        if (id == IdentityId::CH_ZERO_DER1) {
            const Cx a = params.alpha(), b = params.beta(), g = params.gamma(),
                     e = params.eta();
            inst.h_ = std::make_shared<Solution>(
                Family::CH, ParamSet::ch(a, b + 1.0, g + 1.0, -(b + g) * a / 2.0,
                                         0.5 * (b + g - a + 1.0) + e));
        } else if (id == IdentityId::BC_ZERO_SPC) {
            const Cx a = params.alpha(), b = params.beta(), d = params.delta();
            inst.h_ = std::make_shared<Solution>(
                Family::BC, ParamSet::bc(a + 1.0, b, a - 1.0, b + d));
        }
    }
    return inst;
}

// ---------------------------------------------------------------------------
// entry evaluators

namespace {

struct PairJets {
    Jet I, F;
};

// kernel of the three-form entries, as a jet at X
Jet h3_kernel(const IdentityInstance& inst, const Jet& X) {
    const Branch br = inst.branch();
    const ParamSet& p = inst.params();
    switch (inst.id()) {
        case IdentityId::CH_H3: {
            const ChAux c = ch_aux(p);
            const Jet D = c.C * X * X + 2.0 * c.B * X + c.A;
            switch (inst.hcase()) {
                case 0: {
                    const Cx S = sqrt_b(c.Delta, br);
                    return jpow(D, -c.M / (2.0 * c.C), br) *
                           jexp(((c.M * c.B - c.N * c.C) / (c.C * S)) *
                                jatan((c.C * X + c.B) / S));
                }
                case 1: {
                    const Jet L = c.C * X + c.B;
                    return jpow(L, -c.M / c.C, br) *
                           jexp((c.N * c.C - c.M * c.B) / (c.C * L));
                }
                default: {
                    const Cx S = sqrt_b(-c.Delta, br);
                    const Jet L = c.C * X + c.B;
                    return jpow(D, -c.M / (2.0 * c.C), br) *
                           jpow((L - S) / (L + S),
                                (c.M * c.B - c.N * c.C) / (2.0 * c.C * S), br);
                }
            }
        }
        case IdentityId::BC_H3: {
            const Cx a = p.alpha(), b = p.beta(), g = p.gamma(), d = p.delta();
            const Cx D0 = bc_delta(p);
            const Jet D = 2.0 * X * X + b * X - a - 1.0;
            switch (inst.hcase()) {
                case 0: {
                    const Cx S = sqrt_b(D0, br);
                    return jpow(D, (g - a - 2.0) / 4.0, br) *
                           jexp((-(2.0 * d + b * (a + g)) / (4.0 * S)) *
                                jatan((4.0 * X + b) / (2.0 * S)));
                }
                case 1:
                    return jpow(X + b / 4.0, (g - a - 2.0) / 2.0, br) *
                           jexp((b * (g + a) + 2.0 * d) / (2.0 * (4.0 * X + b)));
                default: {
                    const Cx S = sqrt_b(-D0, br);
                    return jpow(D, (g - a - 2.0) / 4.0, br) *
                           jpow((4.0 * X + b + 2.0 * S) / (4.0 * X + b - 2.0 * S),
                                (2.0 * d + b * (a + g)) / (8.0 * S), br);
                }
            }
        }
        case IdentityId::TC_H3: {
            const Cx a = p.alpha(), b = p.beta(), g = p.gamma();
            const Jet D = 3.0 * X * X + g;
            switch (inst.hcase()) {
                case 0: {
                    const Cx S3 = sqrt_b(3.0 * g, br);
                    return jpow(D, (b - 3.0) / 6.0, br) *
                           jexp((a / S3) * jatan(std::sqrt(3.0) * X / sqrt_b(g, br)));
                }
                case 1:
                    return jpow(X, (b - 3.0) / 3.0, br) * jexp(-a / (3.0 * X));
                default: {
                    const Cx S = sqrt_b(-3.0 * g, br);
                    return jpow(D, (b - 3.0) / 6.0, br) *
                           jpow((3.0 * X - S) / (3.0 * X + S), a / (2.0 * S), br);
                }
            }
        }
        default:
            throw DomainError("h3_kernel: not a three-form entry");
    }
}

PairJets pair_jets(const IdentityInstance& inst, Cx x0, int n) {
    const ParamSet& P = inst.params();
    const Branch br = inst.branch();
    const Jet X = Jet::variable(x0, n);

    const Jet Yfull = inst.primary().jet(x0, n + 1);
    const Jet yv = truncate(Yfull, n);
    const Jet yp = derive(Yfull);

    auto pw = [&](const Jet& base, Cx e) { return jpow(base, e, br); };

    switch (inst.id()) {
        case IdentityId::CH_ELEM: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta(),
                     e = P.eta();
            const HChoice& hc = *inst.hchoice();
            const double m = hc.m, l = hc.ell;
            const Cx rho = hc.rho, k = hc.k;
            const Cx a2 = a, a1 = b + g - a + 2.0 * m + 2.0, a0 = -b - 2.0 * m - 1.0;
            const Cx b3 = -2.0 * k * k;
            const Cx b2 = (b + g + 2.0 * m + 2.0) * a + 2.0 * k * k + 2.0 * d;
            const Cx b1 = 2.0 * m * m + 2.0 * (g - a + b + 1.0) * m +
                          (1.0 + b) * (g - a) + b + 2.0 * e;
            const Cx b0 = -2.0 * m * (m + b);
            const Cx c2 = a, c1 = l + b + g - a + 2.0 * m + 1.0, c0 = -l - b - 2.0 * m;
            const Jet Xl = jpow_int(X, hc.ell);
            const Jet RL = (rho * l) * Xl;
            const Jet p1 = k * (a0 + a1 * X + a2 * X * X) + 2.0 * k * RL * (X - Cx{1.0});
            const Jet p2 = (b0 + b1 * X + (b2 + b3 * X) * X * X) +
                           2.0 * RL * ((c0 + c1 * X + c2 * X * X) + RL * (X - Cx{1.0}));
            const Jet S = jsin(k * X), C = jcos(k * X);
            const Jet qh = (m + RL) * yv - X * yp;
            Jet Fb(x0, n), Gb(x0, n);
            if (hc.trig == HChoice::Trig::Sin) {
                Fb = 2.0 * X * p1 * C + p2 * S;
                Gb = qh * S + k * X * C * yv;
            } else {
                Fb = p2 * C - 2.0 * X * p1 * S;
                Gb = qh * C - k * X * S * yv;
            }
            const Jet E = jexp(a * X + rho * Xl);
            PairJets out{pw(X, b + (m - 1.0)) * pw(X - Cx{1.0}, g) * E * Fb * yv,
                         2.0 * pw(X, b + m) * pw(X - Cx{1.0}, 1.0 + g) * E * Gb};
            return out;
        }
        case IdentityId::CH_ZERO: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const ChAux c = ch_aux(P);
            const Jet E = jexp(a * X);
            return {pw(X, b) * pw(X - Cx{1.0}, g) * E * (c.M * X + c.N) * yv,
                    -2.0 * pw(X, 1.0 + b) * pw(X - Cx{1.0}, 1.0 + g) * E * yp};
        }
        case IdentityId::CH_ZERO_DER1: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const ChAux c = ch_aux(P);
            const Jet E = jexp(a * X);
            const Jet I = pw(X, b) * pw(X - Cx{1.0}, g) * E * yv;
            if (inst.seed_mode().kind == SeedMode::Kind::Canonical) {
                const Jet wv = truncate(inst.secondary().jet(x0, n + 1), n);
                return {I, (-1.0 / (1.0 + b)) * pw(X, 1.0 + b) *
                               pw(X - Cx{1.0}, 1.0 + g) * E * wv};
            }
            return {I, (-2.0 / c.N) * pw(X, 1.0 + b) * pw(X - Cx{1.0}, 1.0 + g) * E * yp};
        }
        case IdentityId::CH_STANJEL: {
            const Cx d = P.delta();
            return {yv, ((1.0 - X) / d) * yp};
        }
        case IdentityId::CH_HYP: {
            const Cx b = P.beta(), g = P.gamma(), d = P.delta(), e = P.eta();
            const Jet G = hyp2f1_jet(-b, 1.0 + g, 1.0 - b, X);
            const Jet G2 = hyp2f1_jet(1.0 - b, 2.0 + g, 2.0 - b, X);
            const Jet hh = b * (((1.0 + g) / (b - 1.0)) * X * G2 - G);
            const Jet U = 2.0 * d * X + ((g + 1.0) * b + 2.0 * e + g);
            return {pw(X - Cx{1.0}, g) * U * G * yv,
                    2.0 * pw(X - Cx{1.0}, 1.0 + g) * (hh * yv - X * G * yp)};
        }
        case IdentityId::CH_H3: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const ChAux c = ch_aux(P);
            const Jet D = c.C * X * X + 2.0 * c.B * X + c.A;
            const Jet h = h3_kernel(inst, X);
            const Jet u = (c.M * (c.C + c.M) * X * X + 2.0 * c.N * (c.C + c.M) * X +
                           (c.N * c.N + 2.0 * c.B * c.N - c.A * c.M)) /
                          (D * D);
            const Jet pre = pw(X, 1.0 + b) * pw(X - Cx{1.0}, 1.0 + g) * jexp(a * X);
            return {pre * u * h * yv,
                    -pre * h * (((c.M * X + c.N) / D) * yv + yp)};
        }
        case IdentityId::CH_BESSEL: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const ChAux c = ch_aux(P);
            const Cx Om = sqrt_b(2.0 * c.M, br);
            const BesselKind kind =
                inst.variant() == 0 ? BesselKind::J : BesselKind::Y;
            const Jet SX = jsqrt(X - Cx{1.0}, br);
            const Jet Z = Om * SX;
            const Jet W0 = bessel_jet(kind, 0, Z);
            const Jet W1 = bessel_jet(kind, 1, Z);
            const Jet K = a * X * X + (2.0 + b + g - a) * X - b - 1.0;
            const Jet E = jexp(a * X);
            return {pw(X, b) * pw(X - Cx{1.0}, g) * E * K * W0 * yv,
                    pw(X, 1.0 + b) * pw(X - Cx{1.0}, 1.0 + g) * E *
                        (W0 * yv - (2.0 / Om) * SX * W1 * yp)};
        }
        case IdentityId::CH_CONJ: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), e = P.eta();
            const Jet Hfull = inst.secondary().jet(x0, n + 1);
            const Jet hv = truncate(Hfull, n);
            const Jet hp = derive(Hfull);
            const Jet E = jexp(a * X);
            return {pw(X, b) * pw(X - Cx{1.0}, g) * E * yv * hv,
                    (pw(X, 1.0 + b) / (2.0 * e)) * pw(X - Cx{1.0}, 1.0 + g) * E *
                        (hp * yv - hv * yp)};
        }
        case IdentityId::BC_ELEM: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const HChoice& hc = *inst.hchoice();
            const double m = hc.m, l = hc.ell;
            const Cx rho = hc.rho, k = hc.k;
            const Jet Xl = jpow_int(X, hc.ell);
            const Jet RL = (rho * l) * Xl;
            const Jet p1 = k * ((1.0 + 2.0 * m + a) - b * X - 2.0 * X * X) + 2.0 * k * RL;
            const Jet p2 = (m * (m + a) - 0.5 * (b * (a + 2.0 * m + 1.0) + d) * X +
                            (-k * k - a + g - 2.0 * m - 2.0) * X * X) +
                           RL * (((l + a + 2.0 * m) - b * X - 2.0 * X * X) + RL);
            const Jet S = jsin(k * X), C = jcos(k * X);
            const Jet qh = (m + RL) * yv - X * yp;
            Jet Fb(x0, n), Gb(x0, n);
            if (hc.trig == HChoice::Trig::Sin) {
                Fb = X * p1 * C + p2 * S;
                Gb = qh * S + k * X * C * yv;
            } else {
                Fb = p2 * C - X * p1 * S;
                Gb = qh * C - k * X * S * yv;
            }
            const Jet E = jexp(-(X * X) - b * X + rho * Xl);
            return {pw(X, a + (m - 1.0)) * E * Fb * yv, pw(X, a + m) * E * Gb};
        }
        case IdentityId::BC_ZERO: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const Cx A1 = 2.0 * (g - a - 2.0), A2 = d + b * (a + 1.0);
            const Jet E = jexp(-(X * X) - b * X);
            return {pw(X, a) * (A1 * X - A2) * E * yv,
                    -2.0 * pw(X, a + 1.0) * E * yp};
        }
        case IdentityId::BC_ZERO_SPC: {
            const Cx a = P.alpha(), b = P.beta(), d = P.delta();
            const Cx A2 = d + b * (a + 1.0);
            const Jet E = jexp(-(X * X) - b * X);
            const Jet I = pw(X, a) * E * yv;
            if (inst.seed_mode().kind == SeedMode::Kind::Canonical) {
                const Jet wv = truncate(inst.secondary().jet(x0, n + 1), n);
                return {I, (pw(X, a + 1.0) / (a + 1.0)) * E * wv};
            }
            return {I, (2.0 / A2) * pw(X, a + 1.0) * E * yp};
        }
        case IdentityId::BC_ERFI: {
            const Cx b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet E = jexp(-(X * X) - b * X);
            const Jet EZ = erfi_jet(X + b / 2.0);
            const Cx s = 2.0 * std::exp(b * b / 4.0) / std::sqrt(M_PI);
            return {E * (g - 1.0 - d / (2.0 * X)) * EZ * yv, s * yv - E * EZ * yp};
        }
        case IdentityId::BC_H3: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet D = 2.0 * X * X + b * X - a - 1.0;
            const Jet h = h3_kernel(inst, X);
            const Cx A2 = 4.0 * ((a - g) * (a - g) + 2.0 * (3.0 * a - 3.0 * g + 4.0));
            const Cx A1 = 4.0 * (a * b * (a - g + 5.0) + a * d + (b + d) * (4.0 - g));
            const Cx A0 = a * b * (a * b + 4.0 * b + 2.0 * d) + d * d + 3.0 * b * b +
                          4.0 * (a * a + b * d - a * g + 3.0 * a - g + 2.0);
            const Jet U = (A0 + A1 * X + A2 * X * X) / (D * D);
            const Jet Sx = (2.0 * (g - a - 2.0) * X - b * (a + 1.0) - d) / D;
            const Jet pre = pw(X, a + 1.0) * jexp(-(X * X) - b * X);
            return {pre * U * h * yv, 2.0 * pre * h * (Sx * yv - 2.0 * yp)};
        }
        case IdentityId::BC_CONJ: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet Hfull = inst.secondary().jet(x0, n + 1);
            const Jet hv = truncate(Hfull, n);
            const Jet hp = derive(Hfull);
            const Jet E = jexp(-(X * X) - b * X);
            return {pw(X, a) * (2.0 * g * X - d) * E * yv * hv,
                    pw(X, a + 1.0) * E * (yv * hp - yp * hv)};
        }
        case IdentityId::DC_ELEM: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const HChoice& hc = *inst.hchoice();
            const double m = hc.m, l = hc.ell;
            const Cx rho = hc.rho, k = hc.k;
            const Jet D2 = X * X - Cx{1.0};
            const Jet D23 = D2 * D2 * D2;
            const Cx at0 = -2.0 * m, at2 = 6.0 * m + 2.0, at4 = -6.0 * m - 4.0,
                     at6 = 2.0 * m + 2.0;
            const Cx bt6 = 3.0 * k * k + m * m + m;
            // x^4 coefficient of the kernel polynomial: beta - 3k^2 - 3m^2 - m
            const Cx bt4 = b - 3.0 * k * k - 3.0 * m * m - m;
            const Cx bt0 = m - m * m, bt1 = a * m, bt2 = k * k + 3.0 * m * m - m + d,
                     bt3 = g + 2.0 * a, bt5 = -a * m, bt8 = -k * k;
            const Cx ct6 = l + 2.0 * m + 1.0;
            const Cx ct0 = 2.0 - ct6, ct2 = 3.0 * ct6 - 4.0, ct4 = 2.0 - 3.0 * ct6;
            const Jet Xl = jpow_int(X, hc.ell);
            const Jet RL = (rho * l) * Xl;
            const Jet atP =
                at0 + X * (a + X * (at2 + X * (Cx{0.0} + X * (at4 + X * (-a + X * at6)))));
            const Jet btP =
                bt0 + X * (bt1 +
                           X * (bt2 +
                                X * (bt3 + X * (bt4 + X * (bt5 + X * (bt6 + X * (Cx{0.0} + X * bt8)))))));
            const Jet ctP =
                ct0 + X * (a + X * (ct2 + X * (Cx{0.0} + X * (ct4 + X * (-a + X * ct6)))));
            const Jet p1 = k * atP + 2.0 * k * RL * D23;
            const Jet p2 = btP + RL * (ctP + RL * D23);
            const Jet S = jsin(k * X), C = jcos(k * X);
            const Jet qh = (m + RL) * yv - X * yp;
            Jet Fb(x0, n), Gb(x0, n);
            if (hc.trig == HChoice::Trig::Sin) {
                Fb = X * p1 * C + p2 * S;
                Gb = qh * S + k * X * C * yv;
            } else {
                Fb = p2 * C - X * p1 * S;
                Gb = qh * C - k * X * S * yv;
            }
            const Jet E = jexp(a * X / D2 + rho * Xl);
            return {jpow_int(X, hc.m - 2) * E / (D2 * D2) * Fb * yv,
                    jpow_int(X, hc.m - 1) * D2 * E * Gb};
        }
        case IdentityId::DC_ZERO: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet D2 = X * X - Cx{1.0};
            const Jet E = jexp(a * X / D2);
            const Jet Sw = b * X * X + (g + 2.0 * a) * X + d;
            return {E / (D2 * D2) * Sw * yv, -D2 * E * yp};
        }
        case IdentityId::DC_LOG: {
            const Cx b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet D2 = X * X - Cx{1.0};
            const Jet hL = 0.5 * (jlog(X - Cx{1.0}, br) - jlog(X + Cx{1.0}, br));
            const Jet Sw = b * X * X + g * X + d;
            return {Sw / (D2 * D2) * hL * yv, yv - D2 * hL * yp};
        }
        case IdentityId::DC_H3: {
            const Cx b = P.beta(), g = P.gamma(), d = P.delta();
            const Jet D2 = X * X - Cx{1.0};
            const Jet E = jexp((g * X + b + d) / (4.0 * D2));
            const Jet h =
                pw(X, -d / 2.0) * pw(X - Cx{1.0}, (2.0 * d + g) / 8.0) *
                pw(X + Cx{1.0}, (2.0 * d - g) / 8.0) * E;
            const Jet UU =
                (d * d + 2.0 * d) +
                X * (2.0 * g * d +
                     X * ((2.0 * b * d + g * g - 2.0 * b - 12.0 * d) +
                          X * (2.0 * g * (b - 4.0) +
                               X * ((b * b - 4.0 * b + 10.0 * d) +
                                    X * (8.0 * g + X * (6.0 * b))))));
            const Jet Sw = b * X * X + g * X + d;
            return {pw(X, -2.0 - d / 2.0) * pw(X - Cx{1.0}, d / 4.0 + g / 8.0 - 3.0) *
                        pw(X + Cx{1.0}, d / 4.0 - g / 8.0 - 3.0) * E * UU * yv,
                    -h * ((2.0 * Sw / (X * D2)) * yv + 4.0 * D2 * yp)};
        }
        case IdentityId::DC_CONJ: {
            const Cx a = P.alpha(), g = P.gamma();
            const Jet Hfull = inst.secondary().jet(x0, n + 1);
            const Jet hv = truncate(Hfull, n);
            const Jet hp = derive(Hfull);
            const Jet D2 = X * X - Cx{1.0};
            const Jet E = jexp(a * X / D2);
            return {X / (D2 * D2) * E * yv * hv,
                    (D2 / (2.0 * g)) * E * (yv * hp - hv * yp)};
        }
        case IdentityId::TC_ELEM: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const HChoice& hc = *inst.hchoice();
            const double m = hc.m, l = hc.ell;
            const Cx rho = hc.rho, k = hc.k;
            const Jet Xl = jpow_int(X, hc.ell);
            const Jet RL = (rho * l) * Xl;
            const Jet P1 = -k * (3.0 * X * X * X + g * X - 2.0 * m) + 2.0 * k * RL;
            const Jet P2 = (m * (m - 1.0) - g * m * X + (a - k * k) * X * X +
                            (b - 3.0 * m - 3.0) * X * X * X) +
                           RL * (((l + 2.0 * m - 1.0) - g * X - 3.0 * X * X * X) + RL);
            const Jet S = jsin(k * X), C = jcos(k * X);
            const Jet qh = (m + RL) * yv - X * yp;
            Jet Fb(x0, n), Gb(x0, n);
            if (hc.trig == HChoice::Trig::Sin) {
                Fb = X * P1 * C + P2 * S;
                Gb = qh * S + k * X * C * yv;
            } else {
                Fb = P2 * C - X * P1 * S;
                Gb = qh * C - k * X * S * yv;
            }
            const Jet E = jexp(-(X * X * X) - g * X + rho * Xl);
            return {jpow_int(X, hc.m - 2) * E * Fb * yv, jpow_int(X, hc.m - 1) * E * Gb};
        }
        case IdentityId::TC_GAMMA: {
            const Cx a = P.alpha(), b = P.beta();
            const Jet W = -(X * X * X);
            const Jet G = inc_gamma_upper_one_third_jet(W, {}, br);
            const Jet E = jexp(-(X * X * X));
            return {(a + (b - 3.0) * X) * E * G * yv,
                    3.0 * X * X * jpow(W, Cx{-2.0 / 3.0}, br) * yv - E * G * yp};
        }
        case IdentityId::TC_H3: {
            const Cx a = P.alpha(), b = P.beta(), g = P.gamma();
            const Jet D = 3.0 * X * X + g;
            const Jet h = h3_kernel(inst, X);
            const Jet KK = (b - 3.0) * (b - 6.0) * X * X + 2.0 * a * (b - 6.0) * X +
                           (a * a + g * (b - 3.0));
            const Jet E = jexp(-(X * X * X) - g * X);
            return {E * KK * h / (D * D) * yv,
                    E * h * ((((b - 3.0) * X + a) / D) * yv - yp)};
        }
        case IdentityId::TC_CONJ: {
            const Cx a = P.alpha(), g = P.gamma();
            const Jet Hfull = inst.secondary().jet(x0, n + 1);
            const Jet hv = truncate(Hfull, n);
            const Jet hp = derive(Hfull);
            const Jet E = jexp(-(X * X * X) - g * X);
            return {E * hv * yv, (E / (2.0 * a)) * (hp * yv - hv * yp)};
        }
        default:
            break;
    }
    throw DomainError("unknown identity id");
}

} // namespace

Cx integrand(const IdentityInstance& inst, Cx x) {
    return pair_jets(inst, x, 0).I.value();
}

Cx antiderivative(const IdentityInstance& inst, Cx x) {
    return pair_jets(inst, x, 0).F.value();
}

Jet antiderivative_jet(const IdentityInstance& inst, Cx x, int order) {
    return pair_jets(inst, x, order).F;
}

// ---------------------------------------------------------------------------
// generic constructions

std::pair<Cx, Cx> lagrangian_pair(const Solution& y, const HJetFn& h, Cx x, Branch br) {
    const Jet H = h(x, 2);
    const Jet X = Jet::variable(x, 0);
    const Cx pv = family_p(y.family(), y.params(), X).value();
    const Cx qv = family_q(y.family(), y.params(), X).value();
    const Cx fv = family_f(y.family(), y.params(), X, br).value();
    const auto [yv, yp] = y.eval(x);
    const Cx bracket = H.derivative(2) + pv * H.derivative(1) + qv * H.value();
    return {fv * bracket * yv, fv * (yv * H.derivative(1) - H.value() * yp)};
}

std::pair<Cx, Cx> lagrangian_pair(Family f, const ParamSet& params, const HJetFn& h,
                                  Cx x, Branch br) {
    Solution y(f, params);
    return lagrangian_pair(y, h, x, br);
}

ParamSet conjugate_params(const ParamSet& p) {
    switch (p.family()) {
        case Family::CH:
            return ParamSet::ch(p.alpha(), p.beta(), p.gamma(), p.delta(), -p.eta());
        case Family::BC:
            return ParamSet::bc(p.alpha(), p.beta(), -p.gamma(), -p.delta());
        case Family::DC:
            return ParamSet::dc(p.alpha(), p.beta(), -p.gamma(), p.delta());
        case Family::TC:
            return ParamSet::tc(-p.alpha(), p.beta(), p.gamma());
    }
    throw DomainError("unknown family");
}

std::pair<Cx, Cx> conjugate_pair(const Solution& y, const Solution& h, Cx x, Branch br) {
    if (y.family() != h.family())
        throw ConstraintError("conjugate_pair: family mismatch");
    const ParamSet want = conjugate_params(y.params());
    const auto& got = h.params().values();
    for (std::size_t i = 0; i < got.size(); ++i)
        if (!near(got[i], want.values()[i]))
            throw ConstraintError("conjugate_pair: params_bar is not the legal conjugate");
    const Jet X = Jet::variable(x, 0);
    const Cx fv = family_f(y.family(), y.params(), X, br).value();
    const Cx qv = family_q(y.family(), y.params(), X).value();
    const Cx qbar = family_q(h.family(), h.params(), X).value();
    const auto [yv, yp] = y.eval(x);
    const auto [hv, hp] = h.eval(x);
    return {fv * (qv - qbar) * hv * yv, fv * (hp * yv - hv * yp)};
}

std::pair<Cx, Cx> conjugate_pair(Family f, const ParamSet& params,
                                 const ParamSet& params_bar, Cx x, Branch br) {
    Solution y(f, params);
    Solution h(f, params_bar);
    return conjugate_pair(y, h, x, br);
}

// ---------------------------------------------------------------------------
// transcription support

HJetFn explicit_h(const IdentityInstance& inst) {
    const ParamSet P = inst.params();
    const Branch br = inst.branch();
    switch (inst.id()) {
        case IdentityId::CH_ELEM:
        case IdentityId::BC_ELEM:
        case IdentityId::DC_ELEM:
        case IdentityId::TC_ELEM: {
            const HChoice hc = *inst.hchoice();
            return [hc](Cx x, int n) {
                const Jet X = Jet::variable(x, n);
                const Jet t = hc.k * X;
                return jpow_int(X, hc.m) * jexp(hc.rho * jpow_int(X, hc.ell)) *
                       (hc.trig == HChoice::Trig::Sin ? jsin(t) : jcos(t));
            };
        }
        case IdentityId::CH_HYP: {
            const Cx b = P.beta(), g = P.gamma();
            return [b, g, br](Cx x, int n) {
                const Jet X = Jet::variable(x, n);
                return jpow(X, -b, br) * hyp2f1_jet(-b, 1.0 + g, 1.0 - b, X);
            };
        }
        case IdentityId::CH_H3:
        case IdentityId::BC_H3:
        case IdentityId::TC_H3:
            return [inst](Cx x, int n) { return h3_kernel(inst, Jet::variable(x, n)); };
        case IdentityId::CH_BESSEL: {
            const Cx Om = sqrt_b(2.0 * ch_aux(P).M, br);
            const BesselKind kind = inst.variant() == 0 ? BesselKind::J : BesselKind::Y;
            return [Om, kind, br](Cx x, int n) {
                const Jet SX = jsqrt(Jet::variable(x, n) - Cx{1.0}, br);
                return SX * bessel_jet(kind, 1, Om * SX);
            };
        }
        case IdentityId::BC_ERFI: {
            const Cx b = P.beta();
            return [b](Cx x, int n) {
                const Cx s = 0.5 * std::sqrt(M_PI) * std::exp(-b * b / 4.0);
                return s * erfi_jet(Jet::variable(x, n) + b / 2.0);
            };
        }
        case IdentityId::DC_LOG:
            return [br](Cx x, int n) {
                const Jet X = Jet::variable(x, n);
                return 0.5 * (jlog(X - Cx{1.0}, br) - jlog(X + Cx{1.0}, br));
            };
        case IdentityId::DC_H3: {
            const Cx b = P.beta(), g = P.gamma(), d = P.delta();
            return [b, g, d, br](Cx x, int n) {
                const Jet X = Jet::variable(x, n);
                const Jet D2 = X * X - Cx{1.0};
                return jpow(X, -d / 2.0, br) * jpow(X - Cx{1.0}, (2.0 * d + g) / 8.0, br) *
                       jpow(X + Cx{1.0}, (2.0 * d - g) / 8.0, br) *
                       jexp((g * X + b + d) / (4.0 * D2));
            };
        }
        case IdentityId::TC_GAMMA:
            return [br](Cx x, int n) {
                const Jet X = Jet::variable(x, n);
                return inc_gamma_upper_one_third_jet(-(X * X * X), {}, br);
            };
        case IdentityId::CH_STANJEL: {
            const Cx d = P.delta();
            return [d](Cx x, int n) { return Jet::constant(1.0 / d, x, n); };
        }
        default:
            throw DomainError("entry has no printed closed-form kernel");
    }
}

Cx transcription_scale(const IdentityInstance& inst) {
    const ParamSet& P = inst.params();
    switch (inst.id()) {
        case IdentityId::CH_ELEM:
        case IdentityId::CH_HYP:
            return 2.0;
        case IdentityId::CH_ZERO:
        case IdentityId::BC_ZERO:
            return 2.0;
        case IdentityId::CH_H3:
        case IdentityId::BC_ELEM:
        case IdentityId::BC_CONJ:
        case IdentityId::DC_ELEM:
        case IdentityId::DC_ZERO:
        case IdentityId::DC_LOG:
        case IdentityId::TC_ELEM:
        case IdentityId::TC_GAMMA:
        case IdentityId::TC_H3:
        case IdentityId::CH_STANJEL:
            return 1.0;
        case IdentityId::BC_H3:
        case IdentityId::DC_H3:
            return 4.0;
        case IdentityId::CH_BESSEL:
            return 2.0 / sqrt_b(2.0 * ch_aux(P).M, inst.branch());
        case IdentityId::BC_ERFI:
            return 2.0 * std::exp(P.beta() * P.beta() / 4.0) / std::sqrt(M_PI);
        case IdentityId::CH_CONJ:
            return 1.0 / (2.0 * P.eta());
        case IdentityId::DC_CONJ:
            return 1.0 / (2.0 * P.gamma());
        case IdentityId::TC_CONJ:
            return 1.0 / (2.0 * P.alpha());
        default:
            throw DomainError("entry has no transcription scale");
    }
}

} // namespace heunint
