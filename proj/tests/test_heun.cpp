#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "heunint/heun.hpp"
#include "heunint/quadrature.hpp"
#include "heunint/special.hpp"

using namespace heunint;

namespace {

std::mt19937_64 g_rng(2024);

double urand(double a, double b) {
    std::uniform_real_distribution<double> u(a, b);
    return u(g_rng);
}

Cx crand(double r) { return {urand(-r, r), urand(-r, r)}; }

// beta (CH) or alpha (BC) clear of the negative integers
Cx crand_nonresonant(double r, double margin = 0.2) {
    for (;;) {
        const Cx z = crand(r);
        const double rr = std::round(z.real());
        if (std::abs(z.imag()) >= margin) return z;
        if (rr >= -0.5 || std::abs(z.real() - rr) >= margin) return z;
    }
}

// the toy recurrence c_{n+1} = (n^2+n+1) c_n / (n+1)^2 of the reduced
// equation x(x-1) y'' + (2x-1) y' + y = 0
std::vector<Cx> toy_series(int n) {
    std::vector<Cx> c{Cx{1.0}};
    for (int m = 0; m < n; ++m)
        c.push_back(c.back() * static_cast<double>(m * m + m + 1) /
                    static_cast<double>((m + 1) * (m + 1)));
    return c;
}

ParamSet random_params(Family fam, double box = 2.0) {
    switch (fam) {
        case Family::CH:
            return ParamSet::ch(crand(box), crand_nonresonant(box), crand(box),
                                crand(box), crand(box));
        case Family::BC:
            return ParamSet::bc(crand_nonresonant(box), crand(box), crand(box),
                                crand(box));
        case Family::DC:
            return ParamSet::dc(crand(box), crand(box), crand(box), crand(box));
        case Family::TC:
            return ParamSet::tc(crand(box), crand(box), crand(box));
    }
    throw std::logic_error("family");
}

} // namespace

TEST_CASE("triconfluent equation is transcribed exactly") {
    const Cx a{0.7, -0.2}, b{1.3, 0.4}, g{-0.5, 0.1};
    const PolyODE ode = ode_from_family(Family::TC, ParamSet::tc(a, b, g));
    REQUIRE(ode.A.size() == 1);
    CHECK(ode.A[0] == Cx{1.0});
    REQUIRE(ode.B.size() == 3);
    CHECK(ode.B[0] == -g);
    CHECK(ode.B[1] == Cx{0.0});
    CHECK(ode.B[2] == Cx{-3.0});
    REQUIRE(ode.C.size() == 2);
    CHECK(ode.C[0] == a);
    CHECK(ode.C[1] == b - 3.0);
    CHECK(ode.sing.empty());
}

TEST_CASE("confluent toy equation reduces to x(x-1)y'' + (2x-1)y' + y = 0") {
    const PolyODE ode = ode_from_family(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    // cleared form is twice the reduced one
    REQUIRE(ode.A.size() == 3);
    CHECK(std::abs(ode.A[1] / 2.0 + Cx{1.0}) < 1e-15);
    CHECK(std::abs(ode.A[2] / 2.0 - Cx{1.0}) < 1e-15);
    CHECK(std::abs(ode.B[0] / 2.0 + Cx{1.0}) < 1e-15);
    CHECK(std::abs(ode.B[1] / 2.0 - Cx{2.0}) < 1e-15);
    CHECK(std::abs(ode.C[0] / 2.0 - Cx{1.0}) < 1e-15);
    REQUIRE(ode.sing.size() == 2);
    CHECK(ode.sing[0] == Cx{0.0});
    CHECK(ode.sing[1] == Cx{1.0});
}

TEST_CASE("doubly confluent equation is transcribed exactly") {
    const Cx a{0.3, 0.0}, b{0.7, 0.0}, g{-0.2, 0.0}, d{0.5, 0.0};
    const PolyODE ode = ode_from_family(Family::DC, ParamSet::dc(a, b, g, d));
    const Poly wantA{-1.0, 0.0, 3.0, 0.0, -3.0, 0.0, 1.0};
    REQUIRE(ode.A.size() == wantA.size());
    for (std::size_t i = 0; i < wantA.size(); ++i) CHECK(ode.A[i] == wantA[i]);
    const Poly wantB{a, 2.0, 0.0, -4.0, -a, 2.0};
    REQUIRE(ode.B.size() == wantB.size());
    for (std::size_t i = 0; i < wantB.size(); ++i) CHECK(ode.B[i] == wantB[i]);
    REQUIRE(ode.C.size() == 3);
    CHECK(ode.C[0] == d);
    CHECK(ode.C[1] == g + 2.0 * a);
    CHECK(ode.C[2] == b);
}

TEST_CASE("p and q reproduce the table entries wherever A is nonzero") {
    for (Family fam : {Family::CH, Family::BC, Family::DC, Family::TC}) {
        const ParamSet p = random_params(fam);
        const Cx a = p.alpha(), b = p.beta(), g = p.gamma();
        const Cx x{0.37, 0.11};
        const Jet X = Jet::variable(x, 0);
        Cx pw, qw;
        switch (fam) {
            case Family::CH: {
                pw = a + (1.0 + b) / x + (1.0 + g) / (x - 1.0);
                qw = (((b + g + 2.0) * a + 2.0 * p.delta()) * x - (b + 1.0) * a +
                      (g + 1.0) * b + 2.0 * p.eta() + g) /
                     (2.0 * x * (x - 1.0));
                break;
            }
            case Family::BC:
                pw = (a + 1.0) / x - b - 2.0 * x;
                qw = g - a - 2.0 - (p.delta() + b * (a + 1.0)) / (2.0 * x);
                break;
            case Family::DC: {
                const Cx den = (x - 1.0) * (x - 1.0) * (x + 1.0) * (x + 1.0);
                pw = (2.0 * x * x * x - a * x * x - 2.0 * x - a) / den;
                qw = (b * x * x + (g + 2.0 * a) * x + p.delta()) /
                     (den * (x - 1.0) * (x + 1.0));
                break;
            }
            case Family::TC:
                pw = -(g + 3.0 * x * x);
                qw = a + (b - 3.0) * x;
                break;
        }
        CHECK(std::abs(family_p(fam, p, X).value() - pw) < 1e-12 * std::max(1.0, std::abs(pw)));
        CHECK(std::abs(family_q(fam, p, X).value() - qw) < 1e-12 * std::max(1.0, std::abs(qw)));
    }
}

TEST_CASE("canonical seeds") {
    const SeedPair ch = seeds_for(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    CHECK(ch.y0 == Cx{1.0});
    CHECK(!ch.y1.has_value());
    const auto c = taylor_coeffs(ode_from_family(Family::CH, ParamSet::ch(0, 0, 0, 0, 1)),
                                 ch, 1);
    CHECK(std::abs(c[1] - Cx{1.0}) < 1e-15);

    const SeedPair tc = seeds_for(Family::TC, ParamSet::tc(1, 3, 0));
    CHECK(tc.y0 == Cx{1.0});
    REQUIRE(tc.y1.has_value());
    CHECK(*tc.y1 == Cx{0.0});

    const auto cb = taylor_coeffs(ode_from_family(Family::BC, ParamSet::bc(1, 2, 0, 0)),
                                  seeds_for(Family::BC, ParamSet::bc(1, 2, 0, 0)), 1);
    CHECK(std::abs(cb[1] - Cx{1.0}) < 1e-15);
}

TEST_CASE("resonant parameter sets are rejected") {
    CHECK_THROWS_AS((void)seeds_for(Family::CH, ParamSet::ch(0.3, -1.0, 0.1, 0.2, 0.4)),
                    ResonanceError);
    CHECK_THROWS_AS((void)seeds_for(Family::CH, ParamSet::ch(0.3, -2.0, 0.1, 0.2, 0.4)),
                    ResonanceError);
    CHECK_THROWS_AS((void)seeds_for(Family::BC, ParamSet::bc(-3.0, 0.1, 0.2, 0.4)),
                    ResonanceError);
    // the vanishing factor is reported with its index when hit mid-recurrence
    try {
        (void)taylor_coeffs(ode_from_family(Family::CH, ParamSet::ch(0.3, -2.0, 0.1, 0.2, 0.4)),
                            SeedPair{1.0, {}}, 5);
        CHECK(false);
    } catch (const ResonanceError& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("toy series matches the hand recurrence") {
    const auto hand = toy_series(20);
    const auto c = taylor_coeffs(ode_from_family(Family::CH, ParamSet::ch(0, 0, 0, 0, 1)),
                                 SeedPair{1.0, {}}, 20);
    CHECK(std::abs(hand[2] - Cx{0.75}) < 1e-15);
    CHECK(std::abs(hand[3] - Cx{7.0 / 12.0}) < 1e-15);
    CHECK(std::abs(hand[4] - Cx{91.0 / 192.0}) < 1e-15);
    for (int k = 0; k <= 20; ++k)
        CHECK(std::abs(c[static_cast<std::size_t>(k)] - hand[static_cast<std::size_t>(k)]) <
              1e-15);
}

TEST_CASE("constant solution of the triconfluent family") {
    const auto c = taylor_coeffs(ode_from_family(Family::TC, ParamSet::tc(0, 3, 0)),
                                 SeedPair{1.0, Cx{0.0}}, 10);
    CHECK(std::abs(c[0] - Cx{1.0}) < 1e-15);
    for (int k = 1; k <= 10; ++k) CHECK(std::abs(c[static_cast<std::size_t>(k)]) < 1e-15);

    Solution sol(Family::TC, ParamSet::tc(0, 3, 0));
    const auto [y, yp] = sol.eval(Cx{1.2, 0.0});
    CHECK(std::abs(y - Cx{1.0}) < 1e-13);
    CHECK(std::abs(yp) < 1e-13);
}

TEST_CASE("local solutions honor their initial conditions") {
    Solution t(Family::TC, ParamSet::tc(1, 3, 0));
    const auto [y, yp] = t.eval(Cx{0.0});
    CHECK(std::abs(y - Cx{1.0}) < 1e-15);
    CHECK(std::abs(yp) < 1e-15);
}

TEST_CASE("toy solution value by summing the hand recurrence") {
    Solution sol(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    const auto hand = toy_series(80);
    Cx want{};
    for (int k = 80; k >= 0; --k) want = want * 0.1 + hand[static_cast<std::size_t>(k)];
    const Cx got = sol.eval(Cx{0.1, 0.0}).first;
    CHECK(std::abs(got - want) < 1e-13);
    CHECK(std::abs(got - Cx{1.10813508627673}) < 1e-7);
}

TEST_CASE("biconfluent solution reduces to 1F1 when beta = delta = 0") {
    const Cx a{1.0}, g{0.5};
    Solution sol(Family::BC, ParamSet::bc(a, 0, g, 0));
    const Cx x{0.6, 0.0};
    const Cx got = sol.eval(x).first;
    const Cx want = hyp1f1((a + 2.0 - g) / 4.0, 1.0 + a / 2.0, x * x);
    CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
}

TEST_CASE("hypergeometric reduction across the interval") {
    for (int rep = 0; rep < 8; ++rep) {
        const Cx a = crand_nonresonant(2.0);
        const Cx g = crand(2.0);
        Solution sol(Family::BC, ParamSet::bc(a, 0, g, 0));
        for (double x = -0.8; x <= 0.81; x += 0.2) {
            const Cx got = sol.eval(Cx{x, 0.0}).first;
            const Cx want = hyp1f1((a + 2.0 - g) / 4.0, 1.0 + a / 2.0, Cx{x * x, 0.0});
            CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("solution jets replay the anchor coefficients and kill the residual") {
    Solution sol(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    const Jet j0 = sol.jet(Cx{0.0}, 6);
    const auto hand = toy_series(6);
    for (int k = 0; k <= 6; ++k)
        CHECK(std::abs(j0.coeff(k) - hand[static_cast<std::size_t>(k)]) < 1e-14);

    for (Family fam : {Family::CH, Family::BC, Family::DC, Family::TC}) {
        for (int rep = 0; rep < 6; ++rep) {
            const ParamSet p = random_params(fam);
            Solution s(fam, p);
            const double x = (fam == Family::CH) ? urand(0.1, 0.8)
                           : (fam == Family::DC) ? urand(-0.7, 0.7)
                                                 : urand(0.2, 1.4);
            const Jet j = s.jet(Cx{x, 0.0}, 8);
            CHECK(std::abs(ode_residual(fam, p, j)) < 1e-11);
        }
    }
}

TEST_CASE("constants are not solutions when the zeroth coefficient survives") {
    const ParamSet p = ParamSet::ch(0, 0, 0, 0, 1);
    Jet one = Jet::constant(1.0, Cx{0.5, 0.0}, 4);
    CHECK(std::abs(ode_residual(Family::CH, p, one)) > 1e-3);
}

TEST_CASE("the 1F1 reduction satisfies the biconfluent equation") {
    const Cx a{1.0}, g{0.5};
    const ParamSet p = ParamSet::bc(a, 0, g, 0);
    const Cx x0{0.4, 0.0};
    const Jet X = Jet::variable(x0, 6);
    const Jet f = hyp1f1_jet((a + 2.0 - g) / 4.0, 1.0 + a / 2.0, X * X);
    CHECK(std::abs(ode_residual(Family::BC, p, f)) < 1e-10);
}

TEST_CASE("jet derivative agrees with a central difference of eval") {
    Solution sol(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    const Cx x{0.3, 0.0};
    const Jet j = sol.jet(x, 4);
    const Cx fd = derivative_fd([&](Cx z) { return sol.eval(z).first; }, x, 1e-6);
    CHECK(std::abs(j.derivative(1) - fd) < 1e-6);
}

TEST_CASE("evaluation beyond the direct-summation radius recenters") {
    const ParamSet p = ParamSet::ch(Cx{0.4, 0.1}, Cx{0.3, -0.2}, Cx{-0.6, 0.0},
                                    Cx{0.2, 0.3}, Cx{0.7, 0.0});
    Solution sol(Family::CH, p);
    const auto far = sol.eval(Cx{0.84, 0.0});
    const auto c1 = sol.coeffs0()[1];
    const auto rk = continue_solution(Family::CH, p, 0.0, {Cx{1.0}, c1}, 0.84);
    CHECK(std::abs(far.first - rk.first) < 1e-9 * std::max(1.0, std::abs(rk.first)));
    CHECK(std::abs(far.second - rk.second) < 1e-9 * std::max(1.0, std::abs(rk.second)));
}

TEST_CASE("blocked paths and singular points raise domain errors") {
    Solution sol(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    CHECK_THROWS_AS((void)sol.eval(Cx{1.0, 0.0}), DomainError);
    CHECK_THROWS_AS((void)sol.eval(Cx{1.3, 0.0}), DomainError);
    CHECK_THROWS_AS((void)continue_solution(Family::CH, ParamSet::ch(0, 0, 0, 0, 1), 0.5,
                                            {Cx{1.0}, Cx{0.0}}, 1.5),
                    DomainError);
}

TEST_CASE("continuation propagates canonical seeds to the series values") {
    Solution sol(Family::CH, ParamSet::ch(0, 0, 0, 0, 1));
    const Cx c1 = sol.coeffs0()[1];
    const auto [y, yp] = continue_solution(Family::CH, ParamSet::ch(0, 0, 0, 0, 1), 0.0,
                                           {Cx{1.0}, c1}, 0.5);
    const auto [sy, syp] = sol.eval(Cx{0.5, 0.0});
    CHECK(std::abs(y - sy) < 1e-9 * std::abs(sy));
    CHECK(std::abs(yp - syp) < 1e-9 * std::abs(syp));
}

TEST_CASE("continuation of trivial seeds") {
    const auto [y, yp] = continue_solution(Family::BC, ParamSet::bc(0.5, 0.1, 0.2, 0.3),
                                           0.3, {Cx{0.0}, Cx{0.0}}, 1.5);
    CHECK(std::abs(y) < 1e-14);
    CHECK(std::abs(yp) < 1e-14);
    const auto [t, tp] = continue_solution(Family::TC, ParamSet::tc(0, 3, 0), 0.0,
                                           {Cx{1.0}, Cx{0.0}}, 1.2);
    CHECK(std::abs(t - Cx{1.0}) < 1e-12);
    CHECK(std::abs(tp) < 1e-12);
}

TEST_CASE("series engine against the Runge-Kutta oracle") {
    for (Family fam : {Family::CH, Family::BC, Family::DC, Family::TC}) {
        for (int rep = 0; rep < 6; ++rep) {
            const ParamSet p = random_params(fam);
            Solution sol(fam, p);
            const Cx c1 = sol.coeffs0()[1];
            const double lo = (fam == Family::CH) ? 0.05 : (fam == Family::DC) ? -0.8
                              : (fam == Family::BC) ? 0.1 : -1.5;
            const double hi = (fam == Family::CH) ? 0.85 : (fam == Family::DC) ? 0.8
                              : (fam == Family::BC) ? 2.0 : 1.5;
            for (int i = 0; i < 5; ++i) {
                const double x = lo + (hi - lo) * (i + 0.5) / 5.0;
                const auto [y, yp] = sol.eval(Cx{x, 0.0});
                const auto [Y, Yp] = continue_solution(fam, p, 0.0, {Cx{1.0}, c1}, x);
                const double scale = std::max({1.0, std::abs(y), std::abs(yp)});
                CHECK(std::abs(y - Y) <= 1e-9 * scale);
                CHECK(std::abs(yp - Yp) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("recurrence seed matches the closed forms over random draws") {
    for (int rep = 0; rep < 60; ++rep) {
        Cx b = crand(2.0);
        if (std::abs(b + 1.0) < 0.2) b += 0.5;
        const ParamSet p = ParamSet::ch(crand(2.0), b, crand(2.0), crand(2.0), crand(2.0));
        const auto c = taylor_coeffs(ode_from_family(Family::CH, p), SeedPair{1.0, {}}, 1);
        const Cx a = p.alpha(), g = p.gamma(), e = p.eta();
        const Cx closed = ((1.0 + g - a) * b + g - a + 2.0 * e) / (2.0 * (1.0 + b));
        CHECK(std::abs(c[1] - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    }
    for (int rep = 0; rep < 60; ++rep) {
        Cx a = crand(2.0);
        if (std::abs(a + 1.0) < 0.2) a += 0.5;
        const ParamSet p = ParamSet::bc(a, crand(2.0), crand(2.0), crand(2.0));
        const auto c = taylor_coeffs(ode_from_family(Family::BC, p), SeedPair{1.0, {}}, 1);
        const Cx closed = (p.delta() + p.beta() * (a + 1.0)) / (2.0 * (1.0 + a));
        CHECK(std::abs(c[1] - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("arbitrary-seed solutions evaluate consistently with the oracle") {
    const ParamSet p = ParamSet::bc(-1.0, 0.4, 0.7, 0.5); // resonant canonical corner
    Solution sol(Family::BC, p, Cx{1.0, 0.0}, Cx{0.8, 0.0}, Cx{-0.3, 0.0});
    const auto [y, yp] = sol.eval(Cx{1.6, 0.0});
    const auto [Y, Yp] = continue_solution(Family::BC, p, 1.0,
                                           {Cx{0.8, 0.0}, Cx{-0.3, 0.0}}, 1.6);
    CHECK(std::abs(y - Y) < 1e-9 * std::max(1.0, std::abs(Y)));
    CHECK(std::abs(yp - Yp) < 1e-9 * std::max(1.0, std::abs(Yp)));
    CHECK_THROWS_AS(Solution(Family::BC, p, Cx{0.0, 0.0}, Cx{1.0}, Cx{0.0}), DomainError);
}

TEST_CASE("concurrent evaluation of one solution object") {
    const ParamSet p = ParamSet::ch(Cx{0.4, 0.1}, Cx{0.3, -0.2}, Cx{-0.6, 0.0},
                                    Cx{0.2, 0.3}, Cx{0.7, 0.0});
    Solution sol(Family::CH, p);
    const auto want = sol.eval(Cx{0.82, 0.0});
    std::vector<std::thread> pool;
    std::atomic<int> bad{0};
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&] {
            for (int i = 0; i < 200; ++i) {
                const double x = 0.05 + 0.8 * ((i * 37 + 11) % 100) / 100.0;
                const auto [y, yp] = sol.eval(Cx{x, 0.0});
                if (!is_finite(y) || !is_finite(yp)) ++bad;
            }
            const auto again = sol.eval(Cx{0.82, 0.0});
            if (std::abs(again.first - want.first) > 1e-15) ++bad;
        });
    for (auto& th : pool) th.join();
    CHECK(bad == 0);
}

TEST_CASE("continuation rejects seeds off the analytic branch at a singular start") {
    // at the regular singular origin the derivative is recurrence-determined;
    // a contradictory seed cannot define an analytic solution
    CHECK_THROWS_AS((void)continue_solution(Family::CH, ParamSet::ch(0, 0, 0, 0, 1), 0.0,
                                            {Cx{1.0}, Cx{5.0}}, 0.5),
                    DomainError);
}

TEST_CASE("anchor radius is the distance to the nearest other singularity") {
    CHECK(Solution(Family::CH, ParamSet::ch(0, 0, 0, 0, 1)).radius() ==
          doctest::Approx(1.0));
    CHECK(Solution(Family::DC, ParamSet::dc(0.3, 0.7, -0.2, 0.5)).radius() ==
          doctest::Approx(1.0));
    CHECK(std::isinf(Solution(Family::BC, ParamSet::bc(1, 2, 0, 0)).radius()));
    CHECK(std::isinf(Solution(Family::TC, ParamSet::tc(1, 3, 0)).radius()));
}
