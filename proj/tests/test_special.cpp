#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunint/quadrature.hpp"
#include "heunint/special.hpp"

using namespace heunint;

namespace {

std::mt19937_64 g_rng(31);

Cx crand(double r) {
    std::uniform_real_distribution<double> u(-r, r);
    return {u(g_rng), u(g_rng)};
}

} // namespace

TEST_CASE("1F1 basics") {
    CHECK(std::abs(hyp1f1(Cx{0.7, 0.3}, Cx{1.1, -0.2}, Cx{0.0}) - Cx{1.0}) < 1e-15);
    // 1F1(a; a; z) = e^z
    const Cx a{0.8, -0.4}, z{1.3, 0.7};
    CHECK(std::abs(hyp1f1(a, a, z) - std::exp(z)) < 1e-13 * std::abs(std::exp(z)));
    // 1F1(1; 2; z) = (e^z - 1)/z
    CHECK(std::abs(hyp1f1(1.0, 2.0, 1.0) - Cx{std::exp(1.0) - 1.0}) < 1e-13);
    // reference value at complex arguments
    CHECK(std::abs(hyp1f1(Cx{0.5, 0.2}, Cx{1.3, -0.1}, Cx{0.7, 0.4}) -
                   Cx{1.1622958464555631, 0.3776197568693310}) < 1e-13);
    CHECK_THROWS_AS((void)hyp1f1(1.0, Cx{-2.0, 0.0}, 0.5), DomainError);
    CHECK_THROWS_AS((void)hyp1f1(1.0, 2.0, Cx{5.0, 0.0}), DomainError);
}

TEST_CASE("2F1 basics") {
    CHECK(std::abs(hyp2f1(Cx{0.7}, Cx{-0.3}, Cx{1.1}, Cx{0.0}) - Cx{1.0}) < 1e-15);
    // 2F1(1,1;2;z) = -log(1-z)/z
    const Cx got = hyp2f1(1.0, 1.0, 2.0, 0.5);
    CHECK(std::abs(got - Cx{2.0 * std::log(2.0)}) < 1e-13);
    CHECK(std::abs(hyp2f1(-0.7, 1.5, 0.3, 0.3) - Cx{-0.16452798093402379}) < 1e-13);
    CHECK_THROWS_AS((void)hyp2f1(1.0, 1.0, Cx{0.0}, 0.5), DomainError);
    CHECK_THROWS_AS((void)hyp2f1(1.0, 1.0, 2.0, Cx{0.95, 0.0}), DomainError);
}

TEST_CASE("2F1 derivative contiguity via central differences") {
    const Cx a{-0.7}, b{1.5}, c{0.3}, z{0.3};
    const Cx fd = derivative_fd([&](Cx t) { return hyp2f1(a, b, c, t); }, z, 1e-5);
    const Cx want = (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
    CHECK(std::abs(fd - want) < 1e-9);
}

TEST_CASE("Bessel J and Y at standard points") {
    CHECK(std::abs(bessel(BesselKind::J, 0, Cx{0.0}) - Cx{1.0}) < 1e-15);
    CHECK(std::abs(bessel(BesselKind::J, 1, Cx{0.0})) < 1e-15);
    CHECK(std::abs(bessel(BesselKind::J, 0, Cx{1.0}) - Cx{0.76519768655796655}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::J, 1, Cx{1.0}) - Cx{0.44005058574493352}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::Y, 0, Cx{1.0}) - Cx{0.08825696421567696}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::Y, 1, Cx{1.0}) - Cx{-0.78121282130028872}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::Y, 1, Cx{2.2}) - Cx{0.00148778928976327584}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::J, 0, Cx{0.5, 0.3}) -
                   Cx{0.95901068765245545, -0.07349836486673361}) < 1e-14);
    CHECK(std::abs(bessel(BesselKind::Y, 0, Cx{0.5, 0.3}) -
                   Cx{-0.34840690029967516, 0.40691542161032265}) < 1e-13);
    CHECK_THROWS_AS((void)bessel(BesselKind::Y, 0, Cx{0.0}), DomainError);
    CHECK_THROWS_AS((void)bessel(BesselKind::J, 0, Cx{25.0, 0.0}), DomainError);
}

TEST_CASE("Bessel derivative relation and Wronskian") {
    const Cx z{1.3};
    const Cx fd = derivative_fd([](Cx t) { return bessel(BesselKind::J, 0, t); }, z, 1e-5);
    CHECK(std::abs(fd + bessel(BesselKind::J, 1, z)) < 1e-10);

    const Cx w{0.7};
    const Cx wr = bessel(BesselKind::J, 1, w) * bessel(BesselKind::Y, 0, w) -
                  bessel(BesselKind::J, 0, w) * bessel(BesselKind::Y, 1, w);
    CHECK(std::abs(wr - 2.0 / (M_PI * w)) < 1e-10);

    // complex argument, same Wronskian
    const Cx wc{0.4, 0.9};
    const Cx wrc = bessel(BesselKind::J, 1, wc) * bessel(BesselKind::Y, 0, wc) -
                   bessel(BesselKind::J, 0, wc) * bessel(BesselKind::Y, 1, wc);
    CHECK(std::abs(wrc - 2.0 / (M_PI * wc)) < 1e-12);
}

TEST_CASE("erfi is odd and differentiates to a Gaussian") {
    CHECK(std::abs(erfi(Cx{0.0})) < 1e-15);
    const Cx z{0.8, 0.1};
    CHECK(std::abs(erfi(-z) + erfi(z)) < 1e-14);
    CHECK(std::abs(erfi(Cx{0.8}) - Cx{1.1386707899473707}) < 1e-13);
    CHECK(std::abs(erfi(z) - Cx{1.1216727555118737, 0.2123773431649976}) < 1e-13);
    const Cx fd = derivative_fd([](Cx t) { return erfi(t); }, Cx{0.5}, 1e-5);
    CHECK(std::abs(fd - (2.0 / std::sqrt(M_PI)) * std::exp(Cx{0.25})) < 1e-10);
    CHECK_THROWS_AS((void)erfi(Cx{7.0, 0.0}), DomainError);
}

TEST_CASE("upper incomplete gamma at one third") {
    // independent route: Gamma(1/3) = 3 int_0^inf e^{-u^3} du
    const QuadResult q = integrate_adaptive(
        [](double u) { return Cx{std::exp(-u * u * u), 0.0}; }, 0.0, 10.0, 1e-12);
    CHECK(std::abs(3.0 * q.value - Cx{kGammaOneThird}) < 1e-11);
    CHECK(std::abs(inc_gamma_upper_one_third(Cx{0.0}) - Cx{kGammaOneThird}) < 1e-15);
    CHECK(std::abs(inc_gamma_upper_one_third(Cx{1.1}) - Cx{0.22248482365601186}) < 1e-13);
    CHECK(std::abs(inc_gamma_upper_one_third(Cx{5.0}) - Cx{0.00206658708489995369}) < 1e-12);

    // monotone decay along the real axis
    double prev = std::abs(inc_gamma_upper_one_third(Cx{5.0}));
    for (double w = 5.5; w <= 10.0; w += 0.5) {
        const double cur = std::abs(inc_gamma_upper_one_third(Cx{w, 0.0}));
        CHECK(cur < prev);
        prev = cur;
    }

    const Cx fd = derivative_fd([](Cx t) { return inc_gamma_upper_one_third(t); },
                                Cx{1.1}, 1e-5);
    const Cx want = -pow_b(Cx{1.1}, Cx{-2.0 / 3.0}) * std::exp(Cx{-1.1});
    CHECK(std::abs(fd - want) < 1e-9);
    CHECK_THROWS_AS((void)inc_gamma_upper_one_third(Cx{11.0, 0.0}), DomainError);
}

TEST_CASE("jet lifts agree with central differences at random interior points") {
    for (int rep = 0; rep < 5; ++rep) {
        const Cx z = crand(0.6) + Cx{1.2, 0.0};
        const Jet x1 = Jet::variable(z, 3);

        const Cx a{0.6, 0.1}, b{1.4, -0.2};
        const Jet f1 = hyp1f1_jet(a, b, x1);
        Cx fd = derivative_fd([&](Cx t) { return hyp1f1(a, b, t); }, z, 1e-5);
        CHECK(std::abs(f1.derivative(1) - fd) <=
              1e-6 * std::max(1.0, std::abs(fd)));

        const Jet f3 = bessel_jet(BesselKind::J, 0, x1);
        fd = derivative_fd([&](Cx t) { return bessel(BesselKind::J, 0, t); }, z, 1e-5);
        CHECK(std::abs(f3.derivative(1) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));

        const Jet f4 = bessel_jet(BesselKind::Y, 1, x1);
        fd = derivative_fd([&](Cx t) { return bessel(BesselKind::Y, 1, t); }, z, 1e-5);
        CHECK(std::abs(f4.derivative(1) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));

        const Jet f5 = erfi_jet(x1);
        fd = derivative_fd([](Cx t) { return erfi(t); }, z, 1e-5);
        CHECK(std::abs(f5.derivative(1) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));

        const Jet f6 = inc_gamma_upper_one_third_jet(x1);
        fd = derivative_fd([](Cx t) { return inc_gamma_upper_one_third(t); }, z, 1e-5);
        CHECK(std::abs(f6.derivative(1) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
    for (int rep = 0; rep < 5; ++rep) {
        const Cx z = crand(0.3) + Cx{0.45, 0.0};
        const Jet x1 = Jet::variable(z, 3);
        const Cx a{-0.7}, b{1.5}, c{0.3};
        const Jet f2 = hyp2f1_jet(a, b, c, x1);
        const Cx fd = derivative_fd([&](Cx t) { return hyp2f1(a, b, c, t); }, z, 1e-5);
        CHECK(std::abs(f2.derivative(1) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("series summation matches a brute-force partial sum") {
    // same series summed with a plain loop and no early exit
    const Cx a{0.5, 0.2}, b{1.3, -0.1}, z{0.7, 0.4};
    Cx term{1.0}, sum{};
    for (int n = 0; n < 300; ++n) {
        sum += term;
        term *= (a + static_cast<double>(n)) /
                ((b + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
    }
    CHECK(std::abs(hyp1f1(a, b, z) - sum) < 1e-14 * std::abs(sum));
}
