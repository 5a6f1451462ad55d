#include "heunint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "heunint/quadrature.hpp"
#include "heunint/special.hpp"

namespace heunint {

namespace {

constexpr double kDrawMargin = 0.2; // clearance from excluded parameter sets
constexpr int kVerifyJetOrder = 8;
constexpr int kMaxDrawAttempts = 400;

bool away_from_neg_ints(Cx z, double m = kDrawMargin) {
    if (std::abs(z.imag()) >= m) return true;
    const double r = std::round(z.real());
    return r >= -0.5 || std::abs(z.real() - r) >= m;
}

bool away_from_ints_leq(Cx z, double hi, double m = kDrawMargin) {
    if (std::abs(z.imag()) >= m) return true;
    const double r = std::round(z.real());
    return r > hi + 0.5 || std::abs(z.real() - r) >= m;
}

template <typename Pred>
Cx draw_until(Rng& rng, double box, Pred ok) {
    for (int i = 0; i < kMaxDrawAttempts; ++i) {
        const Cx z = rng.box(box);
        if (ok(z)) return z;
    }
    throw ConvergenceError("parameter draw rejection loop exhausted");
}

const char* reason_word(const std::exception& e) {
    if (dynamic_cast<const ResonanceError*>(&e)) return "resonant";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const InvalidInstance*>(&e)) return "constraint";
    if (dynamic_cast<const ConstraintError*>(&e)) return "constraint";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    return "domain";
}

void finalize(CheckReport& r, double tol) {
    if (!std::isfinite(r.max_abs_err) || !std::isfinite(r.max_rel_err)) {
        r.status = CheckStatus::Flagged;
        r.note = "non-finite residual";
        return;
    }
    r.status = (r.max_rel_err <= tol) ? CheckStatus::Pass : CheckStatus::Fail;
}

} // namespace

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Flagged: return "flagged";
    }
    return "?";
}

std::vector<double> make_grid(const Interval& dom, int n) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        g.push_back(dom.mid());
        return g;
    }
    for (int i = 0; i < n; ++i)
        g.push_back(dom.lo + dom.width() * i / (n - 1));
    return g;
}

CheckReport check_derivative(const IdentityInstance& inst,
                             const std::vector<double>& grid, double tol) {
    CheckReport r;
    r.subject = std::string(identity_name(inst.id())) + "/deriv";
    r.params = inst.params().values();
    r.grid = grid;
    try {
        double imax = 0.0, rmax = 0.0;
        std::vector<double> resid(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Cx x{grid[i], 0.0};
            const Jet F = antiderivative_jet(inst, x, kVerifyJetOrder);
            const Cx I = integrand(inst, x);
            resid[i] = std::abs(F.derivative(1) - I);
            imax = std::max(imax, std::abs(I));
        }
        for (double v : resid) rmax = std::max(rmax, v);
        r.scale = std::max(1.0, imax);
        r.max_abs_err = rmax;
        r.max_rel_err = rmax / r.scale;
        finalize(r, tol);
    } catch (const std::exception& e) {
        r.status = CheckStatus::Skipped;
        r.note = std::string(reason_word(e)) + ": " + e.what();
    }
    return r;
}

CheckReport check_quadrature(const IdentityInstance& inst, double a, double b,
                             double tol) {
    CheckReport r;
    r.subject = std::string(identity_name(inst.id())) + "/quad";
    r.params = inst.params().values();
    r.grid = {a, b};
    try {
        if (a == b) {
            r.scale = 1.0;
            finalize(r, tol);
            return r;
        }
        const Cx dF = antiderivative(inst, Cx{b, 0.0}) - antiderivative(inst, Cx{a, 0.0});
        const QuadResult q = integrate_adaptive(
            [&](double t) { return integrand(inst, Cx{t, 0.0}); }, a, b,
            std::min(1e-10, 0.01 * tol));
        r.scale = 1.0 + std::abs(dF);
        r.max_abs_err = std::abs(q.value - dF);
        r.max_rel_err = r.max_abs_err / r.scale;
        finalize(r, tol);
    } catch (const std::exception& e) {
        r.status = CheckStatus::Skipped;
        r.note = std::string(reason_word(e)) + ": " + e.what();
    }
    return r;
}

CheckReport check_formula(FormulaId id, const ParamSet& params,
                          const std::vector<double>& grid, double tol) {
    CheckReport r;
    r.subject = std::string(formula_name(id)) + "/formula";
    r.params = params.values();
    r.grid = grid;
    try {
        double omax = 0.0, rmax = 0.0;
        std::vector<std::pair<Cx, Cx>> pairs; // (closed form, jet oracle)
        if (id == FormulaId::DHC_AT0 || id == FormulaId::DHB_AT0) {
            Solution sol(params.family(), params);
            const Cx closed = (id == FormulaId::DHC_AT0) ? dHc_at0(params) : dHb_at0(params);
            pairs.emplace_back(closed, sol.coeffs0()[1]);
        } else {
            Solution sol(params.family(), params);
            for (double x : grid) {
                const Cx xc{x, 0.0};
                Cx closed;
                switch (id) {
                    case FormulaId::DHC_CASE1: closed = dHc_case1(params, xc); break;
                    case FormulaId::DHC_CASE2:
                        closed = dHc_case2(params, xc, SBranch::PlusOne);
                        break;
                    case FormulaId::DHB_HYP:
                        closed = dHb_hyp(params.alpha(), params.gamma(), xc);
                        break;
                    case FormulaId::DHB_CASE: closed = dHb_case(params, xc); break;
                    default: throw DomainError("unexpected formula id");
                }
                pairs.emplace_back(closed, sol.jet(xc, 1).coeff(1));
            }
        }
        for (const auto& [c, o] : pairs) omax = std::max(omax, std::abs(o));
        r.scale = std::max(1.0, omax);
        for (const auto& [c, o] : pairs) rmax = std::max(rmax, std::abs(c - o));
        r.max_abs_err = rmax;
        r.max_rel_err = rmax / r.scale;
        finalize(r, tol);
    } catch (const std::exception& e) {
        r.status = CheckStatus::Skipped;
        r.note = std::string(reason_word(e)) + ": " + e.what();
    }
    return r;
}

CheckReport check_transcription(const IdentityInstance& inst,
                                const std::vector<double>& grid, double tol) {
    CheckReport r;
    r.subject = std::string(identity_name(inst.id())) + "/transcription";
    r.params = inst.params().values();
    r.grid = grid;
    try {
        const Cx s = transcription_scale(inst);
        const bool conj = is_conjugate_entry(inst.id());
        HJetFn h;
        if (!conj) h = explicit_h(inst);
        double vmax = 1.0, rmax = 0.0;
        for (double xg : grid) {
            const Cx x{xg, 0.0};
            const Cx Ip = integrand(inst, x);
            const Cx Fp = antiderivative(inst, x);
            const auto [Ig, Fg] =
                conj ? conjugate_pair(inst.primary(), inst.secondary(), x, inst.branch())
                     : lagrangian_pair(inst.primary(), h, x, inst.branch());
            rmax = std::max({rmax, std::abs(Ip - s * Ig), std::abs(Fp - s * Fg)});
            vmax = std::max({vmax, std::abs(Ip), std::abs(Fp)});
        }
        r.scale = vmax;
        r.max_abs_err = rmax;
        r.max_rel_err = rmax / vmax;
        finalize(r, tol);
        if (r.status == CheckStatus::Fail) {
            // trust the generic construction: if the entry still satisfies
            // F' = I it is a suspected print issue, not a broken identity
            const CheckReport d = check_derivative(inst, grid, 1e-8);
            if (d.status == CheckStatus::Pass) {
                r.status = CheckStatus::Flagged;
                r.note = "suspected transcription mismatch; generic construction holds";
            }
        }
    } catch (const std::exception& e) {
        r.status = CheckStatus::Skipped;
        r.note = std::string(reason_word(e)) + ": " + e.what();
    }
    return r;
}

// ---------------------------------------------------------------------------
// draws

namespace {

HChoice draw_hchoice(int index, Rng& rng, double box) {
    HChoice hc;
    hc.m = rng.pick(4);
    hc.ell = rng.pick(4);
    hc.rho = rng.box(0.5 * box);
    hc.k = draw_until(rng, box, [](Cx z) { return std::abs(z) >= kDrawMargin; });
    hc.trig = (index % 2 == 0) ? HChoice::Trig::Sin : HChoice::Trig::Cos;
    return hc;
}

ParamSet draw_ch_generic(Rng& rng, double box) {
    const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
    return ParamSet::ch(rng.box(box), b, rng.box(box), rng.box(box), rng.box(box));
}

ParamSet draw_bc_generic(Rng& rng, double box) {
    const Cx a = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
    return ParamSet::bc(a, rng.box(box), rng.box(box), rng.box(box));
}

// real draws for the three-form kernels, cycling the case with the draw index
ParamSet draw_ch_h3(int index, Rng& rng, double box) {
    for (int t = 0; t < kMaxDrawAttempts; ++t) {
        const int want = index % 3;
        double a, b, g, d, e;
        if (want == 1) { // Delta > 0: negative alpha, small B
            a = rng.uniform(-0.75 * box, -0.3);
            b = rng.uniform(-0.8, 0.75 * box);
            const double eps = rng.uniform(-0.3, 0.3);
            g = a - b - 2.0 + eps;
            d = rng.uniform(-box, box);
            e = rng.uniform(-box, box);
        } else if (want == 2) { // Delta = 0: solve the tie for alpha
            b = rng.uniform(-0.8, 0.75 * box);
            g = rng.uniform(-box, box);
            const double B0 = b + g + 2.0;
            const double tr = 2.0 * B0 - 4.0 - 4.0 * b;
            const double disc = tr * tr - 4.0 * B0 * B0;
            if (disc < 0.01) continue;
            a = 0.5 * (tr + (rng.pick(2) ? 1.0 : -1.0) * std::sqrt(disc));
            d = rng.uniform(-box, box);
            e = rng.uniform(-box, box);
        } else {
            a = rng.uniform(-box, box);
            b = rng.uniform(-0.8 + kDrawMargin, 0.75 * box);
            g = rng.uniform(-box, box);
            d = rng.uniform(-box, box);
            e = rng.uniform(-box, box);
        }
        if (std::abs(a) < kDrawMargin || std::abs(a) > box) continue;
        if (!away_from_neg_ints(Cx{b, 0.0})) continue;
        ParamSet p = ParamSet::ch(a, b, g, d, e);
        const ValidityReport rep = validity(IdentityId::CH_H3, p);
        if (!rep.ok || rep.has_flag("resonant")) continue;
        return p;
    }
    throw ConvergenceError("CH_H3 draw exhausted");
}

ParamSet draw_bc_h3(int index, Rng& rng, double box) {
    for (int t = 0; t < kMaxDrawAttempts; ++t) {
        const int want = index % 3;
        double a, b;
        if (want == 1) { // Delta > 0 needs alpha < -1
            a = rng.uniform(-1.8, -1.2);
            const double cap = std::sqrt(std::max(0.0, -8.0 * (a + 1.0) - 0.4));
            if (cap < 0.1) continue;
            b = rng.uniform(-cap, cap);
        } else if (want == 2) { // Delta = 0 with x0 = -beta/4 left of the domain
            b = rng.uniform(1.3, box);
            a = -1.0 - b * b / 8.0;
        } else {
            a = rng.uniform(-0.8, box);
            b = rng.uniform(-box, box);
        }
        if (!away_from_neg_ints(Cx{a, 0.0})) continue;
        ParamSet p = ParamSet::bc(a, b, rng.uniform(-box, box), rng.uniform(-box, box));
        const ValidityReport rep = validity(IdentityId::BC_H3, p);
        if (!rep.ok || rep.has_flag("resonant")) continue;
        return p;
    }
    throw ConvergenceError("BC_H3 draw exhausted");
}

ParamSet draw_tc_h3(int index, Rng& rng, double box) {
    const int want = index % 3;
    double g;
    if (want == 1)
        g = 0.0;
    else if (want == 2)
        g = rng.uniform(-box, -kDrawMargin);
    else
        g = rng.uniform(kDrawMargin, box);
    return ParamSet::tc(rng.uniform(-box, box), rng.uniform(-box, box), g);
}

} // namespace

CatalogDraw draw_for_identity(IdentityId id, int index, Rng& rng, double box) {
    switch (id) {
        case IdentityId::CH_ELEM:
            return {draw_ch_generic(rng, box), draw_hchoice(index, rng, box), 0};
        case IdentityId::CH_ZERO:
            return {draw_ch_generic(rng, box), {}, 0};
        case IdentityId::CH_ZERO_DER1:
            for (int t = 0; t < kMaxDrawAttempts; ++t) {
                const Cx a = rng.box(box);
                const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
                const Cx g = rng.box(box), e = rng.box(box);
                ParamSet p = ParamSet::ch(a, b, g, -(b + g + 2.0) * a / 2.0, e);
                const Cx N = -(b + 1.0) * a + (g + 1.0) * b + 2.0 * e + g;
                if (std::abs(N) < kDrawMargin) continue;
                return {p, {}, 0};
            }
            throw ConvergenceError("CH_ZERO_DER1 draw exhausted");
        case IdentityId::CH_STANJEL: {
            const Cx d = draw_until(rng, box, [](Cx z) { return std::abs(z) >= kDrawMargin; });
            return {ParamSet::ch(0.0, -1.0, 0.0, d, 0.5), {}, 0};
        }
        case IdentityId::CH_HYP: {
            const Cx b = draw_until(rng, box, [](Cx z) {
                return away_from_neg_ints(z) && away_from_ints_leq(z, 4.0) &&
                       std::abs(z - Cx{1.0}) >= kDrawMargin;
            });
            return {ParamSet::ch(0.0, b, rng.box(box), rng.box(box), rng.box(box)), {}, 0};
        }
        case IdentityId::CH_H3:
            return {draw_ch_h3(index, rng, box), {}, 0};
        case IdentityId::CH_BESSEL:
            for (int t = 0; t < kMaxDrawAttempts; ++t) {
                const Cx a = rng.box(box);
                const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
                const Cx g = rng.box(box), d = rng.box(box);
                const Cx M = (b + g + 2.0) * a + 2.0 * d;
                if (std::abs(2.0 * M) < kDrawMargin) continue;
                const Cx e0 = (1.0 + b) * a / 2.0 - (1.0 + g) * b / 2.0 - g / 2.0;
                return {ParamSet::ch(a, b, g, d, e0), {}, index % 2};
            }
            throw ConvergenceError("CH_BESSEL draw exhausted");
        case IdentityId::CH_CONJ: {
            ParamSet p = draw_ch_generic(rng, box);
            const Cx e = draw_until(rng, box, [](Cx z) { return std::abs(z) >= kDrawMargin; });
            return {ParamSet::ch(p.alpha(), p.beta(), p.gamma(), p.delta(), e), {}, 0};
        }
        case IdentityId::BC_ELEM:
            return {draw_bc_generic(rng, box), draw_hchoice(index, rng, box), 0};
        case IdentityId::BC_ZERO:
            return {draw_bc_generic(rng, box), {}, 0};
        case IdentityId::BC_ZERO_SPC:
            for (int t = 0; t < kMaxDrawAttempts; ++t) {
                const Cx a = draw_until(rng, box, [](Cx z) {
                    return away_from_neg_ints(z) && std::abs(z - Cx{1.0}) >= kDrawMargin &&
                           std::abs(z + Cx{1.0}) >= kDrawMargin;
                });
                const Cx b = rng.box(box), d = rng.box(box);
                if (std::abs(d + b * (a + 1.0)) < kDrawMargin) continue;
                return {ParamSet::bc(a, b, a + 2.0, d), {}, 0};
            }
            throw ConvergenceError("BC_ZERO_SPC draw exhausted");
        case IdentityId::BC_ERFI:
            return {ParamSet::bc(-1.0, rng.box(box), rng.box(box), rng.box(box)), {}, 0};
        case IdentityId::BC_H3:
            return {draw_bc_h3(index, rng, box), {}, 0};
        case IdentityId::BC_CONJ:
            for (int t = 0; t < kMaxDrawAttempts; ++t) {
                ParamSet p = draw_bc_generic(rng, box);
                if (std::abs(p.gamma()) + std::abs(p.delta()) < kDrawMargin) continue;
                return {p, {}, 0};
            }
            throw ConvergenceError("BC_CONJ draw exhausted");
        case IdentityId::DC_ELEM:
            return {ParamSet::dc(rng.box(box), rng.box(box), rng.box(box), rng.box(box)),
                    draw_hchoice(index, rng, box), 0};
        case IdentityId::DC_ZERO:
            return {ParamSet::dc(rng.box(box), rng.box(box), rng.box(box), rng.box(box)),
                    {}, 0};
        case IdentityId::DC_LOG:
        case IdentityId::DC_H3:
            return {ParamSet::dc(0.0, rng.box(box), rng.box(box), rng.box(box)), {}, 0};
        case IdentityId::DC_CONJ: {
            const Cx g = draw_until(rng, box, [](Cx z) { return std::abs(z) >= kDrawMargin; });
            return {ParamSet::dc(rng.box(box), rng.box(box), g, rng.box(box)), {}, 0};
        }
        case IdentityId::TC_ELEM:
            return {ParamSet::tc(rng.box(box), rng.box(box), rng.box(box)),
                    draw_hchoice(index, rng, box), 0};
        case IdentityId::TC_GAMMA:
            return {ParamSet::tc(rng.box(box), rng.box(box), 0.0), {}, 0};
        case IdentityId::TC_H3:
            return {draw_tc_h3(index, rng, box), {}, 0};
        case IdentityId::TC_CONJ: {
            const Cx a = draw_until(rng, box, [](Cx z) { return std::abs(z) >= kDrawMargin; });
            return {ParamSet::tc(a, rng.box(box), rng.box(box)), {}, 0};
        }
    }
    throw DomainError("unknown identity id");
}

ParamSet draw_for_formula(FormulaId id, Rng& rng, double box) {
    switch (id) {
        case FormulaId::DHC_AT0: {
            const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
            return ParamSet::ch(rng.box(box), b, rng.box(box), rng.box(box), rng.box(box));
        }
        case FormulaId::DHC_CASE1: {
            const Cx a = rng.box(box);
            const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
            const Cx g = rng.box(box), e = rng.box(box);
            return ParamSet::ch(a, b, g, -(b + g + 2.0) * a / 2.0, e);
        }
        case FormulaId::DHC_CASE2: {
            const Cx a = rng.box(box);
            const Cx b = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
            const Cx g = rng.box(box), d = rng.box(box);
            const Cx e = (b + 1.0) * a / 2.0 - (g + 1.0) * b / 2.0 - g / 2.0;
            return ParamSet::ch(a, b, g, d, e);
        }
        case FormulaId::DHB_AT0: {
            const Cx a = draw_until(rng, box, [](Cx z) { return away_from_neg_ints(z); });
            return ParamSet::bc(a, rng.box(box), rng.box(box), rng.box(box));
        }
        case FormulaId::DHB_HYP: {
            const Cx a = draw_until(rng, box, [](Cx z) {
                return away_from_neg_ints(z) && std::abs(z + Cx{2.0}) >= kDrawMargin;
            });
            return ParamSet::bc(a, 0.0, rng.box(box), 0.0);
        }
        case FormulaId::DHB_CASE: {
            const Cx a = draw_until(rng, box, [](Cx z) {
                return away_from_neg_ints(z) && std::abs(z + Cx{1.0}) >= kDrawMargin;
            });
            return ParamSet::bc(a, rng.box(box), a + 2.0, rng.box(box));
        }
    }
    throw DomainError("unknown formula id");
}

// ---------------------------------------------------------------------------
// suite

namespace {

std::string two_digits(int i) {
    char b[16];
    std::snprintf(b, sizeof b, "%02d", i);
    return b;
}

void tally(SuiteReport& rep, CheckReport r, const std::string& subject) {
    r.subject = subject;
    switch (r.status) {
        case CheckStatus::Pass: ++rep.n_pass; break;
        case CheckStatus::Fail: ++rep.n_fail; break;
        case CheckStatus::Skipped: ++rep.n_skipped; break;
        case CheckStatus::Flagged: ++rep.n_flagged; break;
    }
    rep.checks.push_back(std::move(r));
}

CheckReport skipped_report(const ParamSet& params, const char* why) {
    CheckReport r;
    r.params = params.values();
    r.status = CheckStatus::Skipped;
    r.note = why;
    return r;
}

// rejects kernels whose magnitude leaves the comfortable double range
bool kernel_magnitude_ok(const IdentityInstance& inst) {
    if (!has_explicit_h(inst.id())) return true;
    const HJetFn h = explicit_h(inst);
    for (double x : {inst.domain().lo, inst.domain().mid(), inst.domain().hi}) {
        const Cx v = h(Cx{x, 0.0}, 0).value();
        const double m = std::abs(v);
        if (!std::isfinite(m) || m > 1e30 || m < 1e-30) return false;
    }
    return true;
}

struct DrawResult {
    CatalogDraw draw;
    std::optional<IdentityInstance> canonical;
    std::optional<IdentityInstance> arbitrary;
};

DrawResult make_instances(IdentityId id, int index, Rng& rng, double box) {
    for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
        CatalogDraw d = draw_for_identity(id, index, rng, box);
        const ValidityReport rep = validity(id, d.params, d.hchoice);
        if (!rep.ok) continue;
        const bool resonant = rep.has_flag("resonant");
        try {
            DrawResult out{std::move(d), {}, {}};
            if (!resonant)
                out.canonical = instantiate(id, out.draw.params, out.draw.hchoice,
                                            SeedMode::canonical(), {}, {},
                                            out.draw.variant);
            SeedMode sm = SeedMode::arbitrary(rng.box(1.0) + Cx{0.5, 0.0}, rng.box(1.0));
            sm.y0b = rng.box(1.0) + Cx{0.5, 0.0};
            sm.y1b = rng.box(1.0);
            out.arbitrary = instantiate(id, out.draw.params, out.draw.hchoice, sm, {},
                                        {}, out.draw.variant);
            const IdentityInstance& probe =
                out.canonical ? *out.canonical : *out.arbitrary;
            if (!kernel_magnitude_ok(probe)) continue;
            return out;
        } catch (const InvalidInstance&) {
            continue;
        } catch (const ResonanceError&) {
            continue;
        }
    }
    throw ConvergenceError(std::string("no valid draw found for ") + identity_name(id));
}

} // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    SuiteReport rep;
    rep.config = config;
    Rng rng(config.seed);
    const Tolerances& tol = config.tolerances;

    // catalog entries: both protocols, both seed modes, transcription
    for (const EntryInfo& entry : list_identities()) {
        const std::string name = identity_name(entry.id);
        for (int i = 0; i < config.draws_per_identity; ++i) {
            const std::string base = "catalog/" + name + "/draw" + two_digits(i);
            DrawResult dr = make_instances(entry.id, i, rng, config.param_box);

            if (dr.canonical) {
                const Interval dom = dr.canonical->domain();
                const auto grid = make_grid(dom, config.grid_points);
                tally(rep, check_derivative(*dr.canonical, grid, tol.deriv),
                      base + "/canonical/deriv");
                tally(rep,
                      check_quadrature(*dr.canonical, dom.lo + 0.25 * dom.width(),
                                       dom.lo + 0.75 * dom.width(), tol.quad),
                      base + "/canonical/quad");
            } else {
                tally(rep, skipped_report(dr.draw.params, "resonant"),
                      base + "/canonical/deriv");
                tally(rep, skipped_report(dr.draw.params, "resonant"),
                      base + "/canonical/quad");
            }

            const Interval dom = dr.arbitrary->domain();
            const auto grid = make_grid(dom, config.grid_points);
            tally(rep, check_derivative(*dr.arbitrary, grid, tol.deriv),
                  base + "/arbitrary/deriv");
            tally(rep,
                  check_quadrature(*dr.arbitrary, dom.lo + 0.25 * dom.width(),
                                   dom.lo + 0.75 * dom.width(), tol.quad),
                  base + "/arbitrary/quad");

            if (has_explicit_h(entry.id) || is_conjugate_entry(entry.id)) {
                const IdentityInstance& inst =
                    dr.canonical ? *dr.canonical : *dr.arbitrary;
                tally(rep,
                      check_transcription(inst, make_grid(inst.domain(), 7),
                                          tol.transcription),
                      base + "/transcription");
            }
        }
    }

    // closed-form derivative formulas
    for (FormulaId fid :
         {FormulaId::DHC_AT0, FormulaId::DHC_CASE1, FormulaId::DHC_CASE2,
          FormulaId::DHB_AT0, FormulaId::DHB_HYP, FormulaId::DHB_CASE}) {
        const bool bc = (fid == FormulaId::DHB_AT0 || fid == FormulaId::DHB_HYP ||
                         fid == FormulaId::DHB_CASE);
        const auto grid = make_grid(default_domain(bc ? Family::BC : Family::CH), 7);
        for (int i = 0; i < 30; ++i) {
            const ParamSet p = draw_for_formula(fid, rng, config.param_box);
            tally(rep, check_formula(fid, p, grid, tol.formula),
                  std::string("formula/") + formula_name(fid) + "/draw" + two_digits(i));
        }
    }

    // series engine vs Runge-Kutta continuation
    for (Family fam : {Family::CH, Family::BC, Family::DC, Family::TC}) {
        const auto pts = make_grid(default_domain(fam), 5);
        for (int i = 0; i < 20; ++i) {
            CheckReport r;
            try {
                ParamSet p = [&] {
                    switch (fam) {
                        case Family::CH: return draw_ch_generic(rng, config.param_box);
                        case Family::BC: return draw_bc_generic(rng, config.param_box);
                        case Family::DC:
                            return ParamSet::dc(rng.box(config.param_box),
                                                rng.box(config.param_box),
                                                rng.box(config.param_box),
                                                rng.box(config.param_box));
                        default:
                            return ParamSet::tc(rng.box(config.param_box),
                                                rng.box(config.param_box),
                                                rng.box(config.param_box));
                    }
                }();
                r.params = p.values();
                r.grid = pts;
                Solution sol(fam, p);
                const Cx c1 = sol.coeffs0()[1];
                double vmax = 1.0, rmax = 0.0;
                for (double x : pts) {
                    const auto [y, yp] = sol.eval(Cx{x, 0.0});
                    const auto [Y, Yp] = continue_solution(fam, p, 0.0, {Cx{1.0}, c1}, x);
                    rmax = std::max({rmax, std::abs(y - Y), std::abs(yp - Yp)});
                    vmax = std::max({vmax, std::abs(y), std::abs(yp)});
                }
                r.scale = vmax;
                r.max_abs_err = rmax;
                r.max_rel_err = rmax / vmax;
                finalize(r, 1e-9);
            } catch (const std::exception& e) {
                r.status = CheckStatus::Skipped;
                r.note = std::string(reason_word(e)) + ": " + e.what();
            }
            tally(rep, std::move(r),
                  std::string("engine/") + family_name(fam) + "/draw" + two_digits(i));
        }
    }

    // initial-condition closed forms vs the raw recurrence
    for (Family fam : {Family::CH, Family::BC}) {
        CheckReport r;
        double rmax = 0.0;
        for (int i = 0; i < 200; ++i) {
            ParamSet p = [&]() {
                if (fam == Family::CH) {
                    const Cx b = draw_until(rng, config.param_box, [](Cx z) {
                        return std::abs(z + Cx{1.0}) >= kDrawMargin;
                    });
                    return ParamSet::ch(rng.box(config.param_box), b,
                                        rng.box(config.param_box),
                                        rng.box(config.param_box),
                                        rng.box(config.param_box));
                }
                const Cx a = draw_until(rng, config.param_box, [](Cx z) {
                    return std::abs(z + Cx{1.0}) >= kDrawMargin;
                });
                return ParamSet::bc(a, rng.box(config.param_box),
                                    rng.box(config.param_box),
                                    rng.box(config.param_box));
            }();
            const auto c = taylor_coeffs(ode_from_family(fam, p), SeedPair{1.0, {}}, 1);
            const Cx closed = (fam == Family::CH) ? dHc_at0(p) : dHb_at0(p);
            rmax = std::max(rmax,
                            std::abs(c[1] - closed) / std::max(1.0, std::abs(closed)));
        }
        r.scale = 1.0;
        r.max_abs_err = rmax;
        r.max_rel_err = rmax;
        finalize(r, 1e-12);
        tally(rep, std::move(r), std::string("seeds/") + family_name(fam));
    }

    // hypergeometric reduction of the beta = delta = 0 BC solution
    {
        const auto pts = make_grid({-0.8, 0.8}, 9);
        for (int i = 0; i < 50; ++i) {
            CheckReport r;
            try {
                const Cx a = draw_until(rng, config.param_box,
                                        [](Cx z) { return away_from_neg_ints(z); });
                const Cx g = rng.box(config.param_box);
                const ParamSet p = ParamSet::bc(a, 0.0, g, 0.0);
                r.params = p.values();
                r.grid = pts;
                Solution sol(Family::BC, p);
                double vmax = 1.0, rmax = 0.0;
                for (double x : pts) {
                    const Cx y = sol.eval(Cx{x, 0.0}).first;
                    const Cx f = hyp1f1((a + 2.0 - g) / 4.0, 1.0 + a / 2.0, Cx{x * x, 0.0});
                    rmax = std::max(rmax, std::abs(y - f));
                    vmax = std::max(vmax, std::abs(f));
                }
                r.scale = vmax;
                r.max_abs_err = rmax;
                r.max_rel_err = rmax / vmax;
                finalize(r, 1e-10);
            } catch (const std::exception& e) {
                r.status = CheckStatus::Skipped;
                r.note = std::string(reason_word(e)) + ": " + e.what();
            }
            tally(rep, std::move(r), "hyp-reduction/draw" + two_digits(i));
        }
    }

    return rep;
}

// ---------------------------------------------------------------------------
// serialization (hand-rolled for byte-stable output)

namespace {

void put_num(std::string& out, double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", v);
    out += b;
}

void put_str(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

} // namespace

std::string serialize_report(const SuiteReport& rep) {
    std::string out;
    out.reserve(1 << 20);
    out += "{\n\"config\": {\"seed\": ";
    out += std::to_string(rep.config.seed);
    out += ", \"draws_per_identity\": ";
    out += std::to_string(rep.config.draws_per_identity);
    out += ", \"param_box\": ";
    put_num(out, rep.config.param_box);
    out += ", \"grid_points\": ";
    out += std::to_string(rep.config.grid_points);
    out += ", \"tolerances\": {\"deriv\": ";
    put_num(out, rep.config.tolerances.deriv);
    out += ", \"quad\": ";
    put_num(out, rep.config.tolerances.quad);
    out += ", \"formula\": ";
    put_num(out, rep.config.tolerances.formula);
    out += ", \"transcription\": ";
    put_num(out, rep.config.tolerances.transcription);
    out += "}},\n\"checks\": [\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const CheckReport& c = rep.checks[i];
        out += "{\"subject\": ";
        put_str(out, c.subject);
        out += ", \"params\": [";
        for (std::size_t j = 0; j < c.params.size(); ++j) {
            if (j) out += ", ";
            out += '[';
            put_num(out, c.params[j].real());
            out += ", ";
            put_num(out, c.params[j].imag());
            out += ']';
        }
        out += "], \"grid\": [";
        for (std::size_t j = 0; j < c.grid.size(); ++j) {
            if (j) out += ", ";
            put_num(out, c.grid[j]);
        }
        out += "], \"max_abs_err\": ";
        put_num(out, c.max_abs_err);
        out += ", \"max_rel_err\": ";
        put_num(out, c.max_rel_err);
        out += ", \"scale\": ";
        put_num(out, c.scale);
        out += ", \"status\": ";
        put_str(out, status_name(c.status));
        out += ", \"note\": ";
        put_str(out, c.note);
        out += '}';
        if (i + 1 < rep.checks.size()) out += ',';
        out += '\n';
    }
    out += "],\n\"summary\": {\"pass\": ";
    out += std::to_string(rep.n_pass);
    out += ", \"fail\": ";
    out += std::to_string(rep.n_fail);
    out += ", \"skipped\": ";
    out += std::to_string(rep.n_skipped);
    out += ", \"flagged\": ";
    out += std::to_string(rep.n_flagged);
    out += ", \"total\": ";
    out += std::to_string(rep.checks.size());
    out += "}\n}\n";
    return out;
}

} // namespace heunint
