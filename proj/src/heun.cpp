#include "heunint/heun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

namespace heunint {

namespace {

constexpr double kEffRadiusCap = 1.5;  // practical chart span for entire solutions
constexpr double kTrustFraction = 0.7; // summation allowed within this fraction
constexpr double kHopFraction = 0.25;  // continuation step vs singularity distance
constexpr int kMaxHops = 64;
constexpr int kChartCap = 500;

bool near_int_leq(Cx z, int hi, double tol = 1e-12) {
    // true when z is within tol of an integer <= hi
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= hi + 0.5 && std::abs(z.real() - r) <= tol;
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::CH: return "CH";
        case Family::BC: return "BC";
        case Family::DC: return "DC";
        case Family::TC: return "TC";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "CH") return Family::CH;
    if (s == "BC") return Family::BC;
    if (s == "DC") return Family::DC;
    if (s == "TC") return Family::TC;
    return std::nullopt;
}

std::size_t param_count(Family f) {
    switch (f) {
        case Family::CH: return 5;
        case Family::BC:
        case Family::DC: return 4;
        case Family::TC: return 3;
    }
    return 0;
}

ParamSet::ParamSet(Family f, std::vector<Cx> v) : fam_(f), v_(std::move(v)) {
    if (v_.size() != param_count(f))
        throw DomainError(std::string("parameter count does not match family ") +
                          family_name(f));
}

Cx ParamSet::delta() const {
    if (fam_ == Family::TC) throw DomainError("TC has no delta parameter");
    return v_[3];
}

Cx ParamSet::eta() const {
    if (fam_ != Family::CH) throw DomainError("only CH has an eta parameter");
    return v_[4];
}

PolyODE ode_from_family(Family f, const ParamSet& p) {
    if (p.family() != f) throw DomainError("parameter set family mismatch");
    const Cx a = p.alpha(), b = p.beta(), g = p.gamma();
    switch (f) {
        case Family::CH: {
            const Cx d = p.delta(), e = p.eta();
            const Cx M = (b + g + 2.0) * a + 2.0 * d;
            const Cx N = -(b + 1.0) * a + (g + 1.0) * b + 2.0 * e + g;
            return {{0.0, -2.0, 2.0},
                    {-2.0 * (1.0 + b), 2.0 * (2.0 + b + g - a), 2.0 * a},
                    {N, M},
                    {0.0, 1.0}};
        }
        case Family::BC: {
            const Cx d = p.delta();
            return {{0.0, 2.0},
                    {2.0 * (a + 1.0), -2.0 * b, -4.0},
                    {-(d + b * (a + 1.0)), 2.0 * (g - a - 2.0)},
                    {0.0}};
        }
        case Family::DC: {
            const Cx d = p.delta();
            return {{-1.0, 0.0, 3.0, 0.0, -3.0, 0.0, 1.0},
                    {a, 2.0, 0.0, -4.0, -a, 2.0},
                    {d, g + 2.0 * a, b},
                    {-1.0, 1.0}};
        }
        case Family::TC:
            return {{1.0}, {-g, 0.0, -3.0}, {a, b - 3.0}, {}};
    }
    throw DomainError("unknown family");
}

SeedPair seeds_for(Family f, const ParamSet& p) {
    switch (f) {
        case Family::CH:
            if (near_int_leq(p.beta(), -1))
                throw ResonanceError("CH local solution undefined: beta is a negative integer",
                                     static_cast<int>(-std::round(p.beta().real())));
            return {1.0, std::nullopt};
        case Family::BC:
            if (near_int_leq(p.alpha(), -1))
                throw ResonanceError("BC local solution undefined: alpha is a negative integer",
                                     static_cast<int>(-std::round(p.alpha().real())));
            return {1.0, std::nullopt};
        case Family::DC:
        case Family::TC:
            return {1.0, Cx{}};
    }
    throw DomainError("unknown family");
}

namespace {

// Generic term-by-term recurrence for A y'' + B y' + C y = 0 at basepoint 0.
// next_coeff(c, n) appends c_{n+K} from the x^n equation, K = 2 at an
// ordinary point and K = 1 at a simple zero of A with indicial exponent 0.
struct Recurrence {
    const Poly &A, &B, &C;
    bool singular;

    Recurrence(const PolyODE& ode) : A(ode.A), B(ode.B), C(ode.C) {
        if (A.empty() || poly_eval(A, Cx{}) != A[0])
            throw DomainError("bad ODE polynomials");
        singular = (A[0] == 0.0);
        if (singular && (A.size() < 2 || A[1] == 0.0))
            throw DomainError("basepoint is not a simple zero of the leading coefficient");
    }

    void append_next(std::vector<Cx>& c, int n) const {
        Cx s{};
        const int szA = static_cast<int>(A.size());
        const int szB = static_cast<int>(B.size());
        const int szC = static_cast<int>(C.size());
        const int have = static_cast<int>(c.size());
        const int skipA = singular ? 2 : 1; // terms already on the unknown side
        for (int i = skipA; i < szA; ++i) {
            const int k = n - i + 2;
            if (k >= 0 && k < have)
                s += A[static_cast<std::size_t>(i)] * static_cast<double>(k) *
                     static_cast<double>(k - 1) * c[static_cast<std::size_t>(k)];
        }
        for (int i = singular ? 1 : 0; i < szB; ++i) {
            const int k = n - i + 1;
            if (k >= 0 && k < have)
                s += B[static_cast<std::size_t>(i)] * static_cast<double>(k) *
                     c[static_cast<std::size_t>(k)];
        }
        for (int i = 0; i < szC; ++i) {
            const int k = n - i;
            if (k >= 0 && k < have)
                s += C[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k)];
        }
        Cx denom;
        if (singular) {
            // factor multiplying c_{n+1}: (n+1) (A1 n + B0)
            const Cx core = A[1] * static_cast<double>(n) + B[0];
            const double scale = std::abs(A[1]) * n + std::abs(B[0]) + 1.0;
            if (std::abs(core) <= 1e-10 * scale)
                throw ResonanceError("vanishing recurrence factor", n + 1);
            denom = static_cast<double>(n + 1) * core;
        } else {
            denom = A[0] * static_cast<double>(n + 2) * static_cast<double>(n + 1);
        }
        c.push_back(-s / denom);
    }
};

} // namespace

std::vector<Cx> taylor_coeffs(const PolyODE& ode, const SeedPair& seeds, int n) {
    Recurrence rec(ode);
    std::vector<Cx> c;
    c.reserve(static_cast<std::size_t>(n) + 1);
    c.push_back(seeds.y0);
    if (!rec.singular) {
        if (!seeds.y1)
            throw DomainError("ordinary basepoint needs both seed values");
        if (n >= 1) c.push_back(*seeds.y1);
        for (int k = 0; static_cast<int>(c.size()) <= n; ++k) rec.append_next(c, k);
    } else {
        for (int k = 0; static_cast<int>(c.size()) <= n; ++k) rec.append_next(c, k);
        if (seeds.y1 && n >= 1) {
            const double scale = std::max(1.0, std::abs(c[1]));
            if (std::abs(c[1] - *seeds.y1) > 1e-8 * scale)
                throw DomainError("seed derivative inconsistent with the analytic branch "
                                  "at a singular basepoint");
        }
    }
    c.resize(static_cast<std::size_t>(n) + 1);
    return c;
}

std::vector<Cx> taylor_coeffs_auto(const PolyODE& ode, const SeedPair& seeds,
                                   double xmax, int cap) {
    Recurrence rec(ode);
    std::vector<Cx> c;
    c.push_back(seeds.y0);
    if (!rec.singular) {
        if (!seeds.y1)
            throw DomainError("ordinary basepoint needs both seed values");
        c.push_back(*seeds.y1);
    }
    double scale = std::abs(c[0]);
    double pw = 1.0;
    int quiet = 0;
    for (int n = 0; static_cast<int>(c.size()) < cap; ++n) {
        rec.append_next(c, n);
        pw = std::pow(xmax, static_cast<double>(c.size() - 1));
        const double t = std::abs(c.back()) * pw;
        scale = std::max(scale, t);
        quiet = (t < 1e-16 * std::max(scale, 1.0)) ? quiet + 1 : 0;
        if (quiet >= 5) break;
    }
    if (rec.singular && seeds.y1 && c.size() >= 2) {
        const double s = std::max(1.0, std::abs(c[1]));
        if (std::abs(c[1] - *seeds.y1) > 1e-8 * s)
            throw DomainError("seed derivative inconsistent with the analytic branch "
                              "at a singular basepoint");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Solution

Solution::Solution(Family f, const ParamSet& p)
    : fam_(f), par_(p), ode_(ode_from_family(f, p)), anchor_(0.0) {
    radius0_ = dist_to_sing(anchor_, /*exclude_anchor=*/true);
    const double eff = std::min(radius0_, kEffRadiusCap);
    Chart ch;
    ch.bp = anchor_;
    ch.reach = kTrustFraction * eff;
    ch.c = taylor_coeffs_auto(ode_, seeds_for(f, p), ch.reach, kChartCap);
    charts_.push_back(std::move(ch));
}

Solution::Solution(Family f, const ParamSet& p, Cx anchor, Cx y0, Cx y1)
    : fam_(f), par_(p), ode_(ode_from_family(f, p)), anchor_(anchor) {
    if (dist_to_sing(anchor, false) < 1e-9)
        throw DomainError("arbitrary-seed anchor must be an ordinary point");
    radius0_ = dist_to_sing(anchor_, false);
    charts_.push_back(build_chart(anchor_, y0, y1));
}

const std::vector<Cx>& Solution::coeffs0() const { return charts_.front().c; }

double Solution::dist_to_sing(Cx z, bool exclude_anchor) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Cx& s : ode_.sing) {
        const double r = std::abs(z - s);
        if (exclude_anchor && r < 1e-12) continue;
        d = std::min(d, r);
    }
    return d;
}

Solution::Chart Solution::build_chart(Cx bp, Cx y0, Cx y1) const {
    Chart ch;
    ch.bp = bp;
    const double eff = std::min(dist_to_sing(bp, false), kEffRadiusCap);
    ch.reach = kTrustFraction * eff;
    PolyODE shifted{poly_shift(ode_.A, bp), poly_shift(ode_.B, bp),
                    poly_shift(ode_.C, bp), {}};
    ch.c = taylor_coeffs_auto(shifted, SeedPair{y0, y1}, ch.reach, kChartCap);
    return ch;
}

std::pair<Cx, Cx> Solution::sum_chart(const Chart& ch, Cx x) {
    const Cx t = x - ch.bp;
    Cx y{}, yp{};
    for (int n = static_cast<int>(ch.c.size()) - 1; n >= 1; --n) {
        y = y * t + ch.c[static_cast<std::size_t>(n)];
        yp = yp * t + static_cast<double>(n) * ch.c[static_cast<std::size_t>(n)];
    }
    y = y * t + ch.c[0];
    return {y, yp};
}

const Solution::Chart& Solution::chart_for(Cx x) const {
    std::lock_guard<std::mutex> lock(mu_);
    for (const Chart& ch : charts_)
        if (std::abs(x - ch.bp) <= ch.reach) return ch;

    // walk from the nearest chart toward x, spawning expansions as we go
    std::size_t best = 0;
    for (std::size_t i = 1; i < charts_.size(); ++i)
        if (std::abs(x - charts_[i].bp) < std::abs(x - charts_[best].bp)) best = i;

    Cx cur = charts_[best].bp;
    std::size_t cur_idx = best;
    for (int hop = 0; hop < kMaxHops; ++hop) {
        const bool at_anchor = std::abs(cur - anchor_) < 1e-12;
        const double d = dist_to_sing(cur, at_anchor);
        if (d < 1e-6)
            throw DomainError("evaluation path blocked by a singularity");
        const double step = std::min(kHopFraction * d, 0.5 * kEffRadiusCap);
        const Cx dir = (x - cur) / std::abs(x - cur);
        const Cx next = cur + std::min(step, std::abs(x - cur)) * dir;
        auto [y0, y1] = sum_chart(charts_[cur_idx], next);
        charts_.push_back(build_chart(next, y0, y1));
        cur_idx = charts_.size() - 1;
        cur = next;
        if (std::abs(x - cur) <= charts_[cur_idx].reach) return charts_[cur_idx];
    }
    throw ConvergenceError("continuation step budget exhausted");
}

std::pair<Cx, Cx> Solution::eval(Cx x) const {
    for (const Cx& s : ode_.sing)
        if (std::abs(x - s) < 1e-12 && std::abs(x - anchor_) > 1e-12)
            throw DomainError("evaluation at a singular point");
    return sum_chart(chart_for(x), x);
}

Jet Solution::jet(Cx x0, int order) const {
    const bool at_anchor = std::abs(x0 - anchor_) < 1e-12;
    if (!at_anchor && dist_to_sing(x0, false) < 1e-12)
        throw DomainError("jet basepoint is a singular point");
    PolyODE shifted{poly_shift(ode_.A, x0), poly_shift(ode_.B, x0),
                    poly_shift(ode_.C, x0), {}};
    SeedPair seeds;
    if (at_anchor && dist_to_sing(x0, false) < 1e-12) {
        // singular anchor: the exponent-zero recurrence regrows the expansion
        seeds = SeedPair{coeffs0()[0], std::nullopt};
    } else {
        auto [y0, y1] = eval(x0);
        seeds = SeedPair{y0, y1};
    }
    auto c = taylor_coeffs(shifted, seeds, order);
    Jet j(x0, order);
    for (int k = 0; k <= order; ++k) j.coeff(k) = c[static_cast<std::size_t>(k)];
    return j;
}

// ---------------------------------------------------------------------------
// Runge-Kutta continuation

std::pair<Cx, Cx> continue_solution(Family f, const ParamSet& p, double x0,
                                    std::pair<Cx, Cx> seeds, double x1) {
    const PolyODE ode = ode_from_family(f, p);

    const double lo = std::min(x0, x1), hi = std::max(x0, x1);
    bool start_singular = false;
    for (const Cx& s : ode.sing) {
        if (std::abs(s.imag()) > 1e-12) continue;
        const double sr = s.real();
        if (std::abs(sr - x0) < 1e-12) {
            start_singular = true;
            continue;
        }
        if (sr > lo + 1e-12 && sr < hi - 1e-12)
            throw DomainError("continue_solution: singularity inside the interval");
        if (std::abs(sr - x1) < 1e-12)
            throw DomainError("continue_solution: singular endpoint");
    }
    if (x0 == x1) return seeds;

    double t0 = x0;
    if (start_singular) {
        // bootstrap off the singular point with the exponent-zero expansion
        PolyODE shifted{poly_shift(ode.A, x0), poly_shift(ode.B, x0),
                        poly_shift(ode.C, x0), {}};
        auto c = taylor_coeffs_auto(shifted, SeedPair{seeds.first, seeds.second},
                                    0.2, kChartCap);
        double lim = std::numeric_limits<double>::infinity();
        for (const Cx& s : ode.sing)
            if (std::abs(s - Cx{x0, 0.0}) > 1e-12)
                lim = std::min(lim, std::abs(s - Cx{x0, 0.0}));
        const double h = std::min({0.1, 0.25 * lim, 0.5 * std::abs(x1 - x0)});
        t0 = x0 + (x1 > x0 ? h : -h);
        const Cx t{t0 - x0, 0.0};
        Cx y{}, yp{};
        for (int n = static_cast<int>(c.size()) - 1; n >= 1; --n) {
            y = y * t + c[static_cast<std::size_t>(n)];
            yp = yp * t + static_cast<double>(n) * c[static_cast<std::size_t>(n)];
        }
        y = y * t + c[0];
        seeds = {y, yp};
    }

    namespace ode_ns = boost::numeric::odeint;
    using State = std::array<Cx, 2>;
    State s{seeds.first, seeds.second};
    auto sys = [&](const State& y, State& dydt, double t) {
        const Cx A = poly_eval(ode.A, Cx{t, 0.0});
        const Cx B = poly_eval(ode.B, Cx{t, 0.0});
        const Cx C = poly_eval(ode.C, Cx{t, 0.0});
        dydt[0] = y[1];
        dydt[1] = -(B * y[1] + C * y[0]) / A;
    };
    auto stepper = ode_ns::make_controlled(1e-13, 1e-13,
                                           ode_ns::runge_kutta_fehlberg78<State>());
    const double dt = (x1 > t0 ? 1.0 : -1.0) * std::min(0.05, std::abs(x1 - t0));
    ode_ns::integrate_adaptive(stepper, sys, s, t0, x1, dt);
    return {s[0], s[1]};
}

Cx ode_residual(Family f, const ParamSet& p, const Jet& yjet) {
    if (yjet.order() < 2)
        throw DomainError("ode_residual needs a jet of order >= 2");
    const PolyODE ode = ode_from_family(f, p);
    const Cx x0 = yjet.basepoint();
    const Cx tA = poly_eval(ode.A, x0) * yjet.derivative(2);
    const Cx tB = poly_eval(ode.B, x0) * yjet.derivative(1);
    const Cx tC = poly_eval(ode.C, x0) * yjet.value();
    const double norm = std::max({1.0, std::abs(tA), std::abs(tB), std::abs(tC)});
    return (tA + tB + tC) / norm;
}

Jet family_p(Family f, const ParamSet& p, const Jet& x) {
    const PolyODE ode = ode_from_family(f, p);
    return poly_eval(ode.B, x) / poly_eval(ode.A, x);
}

Jet family_q(Family f, const ParamSet& p, const Jet& x) {
    const PolyODE ode = ode_from_family(f, p);
    return poly_eval(ode.C, x) / poly_eval(ode.A, x);
}

Jet family_f(Family f, const ParamSet& p, const Jet& x, Branch br) {
    const Cx a = p.alpha(), b = p.beta(), g = p.gamma();
    switch (f) {
        case Family::CH:
            return jpow(x, 1.0 + b, br) * jpow(x - Cx{1.0}, 1.0 + g, br) * jexp(a * x);
        case Family::BC:
            return jpow(x, a + 1.0, br) * jexp(-(x * x) - b * x);
        case Family::DC: {
            const Jet d = x * x - Cx{1.0};
            return d * jexp(a * x / d);
        }
        case Family::TC:
            return jexp(-(x * x * x) - g * x);
    }
    throw DomainError("unknown family");
}

} // namespace heunint
