#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "heunint/verify.hpp"

using namespace heunint;

namespace {

SuiteConfig small_config() {
    SuiteConfig cfg;
    cfg.seed = 42;
    cfg.draws_per_identity = 2;
    return cfg;
}

} // namespace

TEST_CASE("grids cover the interval endpoints") {
    const auto g = make_grid({0.1, 0.9}, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(0.1));
    CHECK(g.back() == doctest::Approx(0.9));
    CHECK(g[2] == doctest::Approx(0.5));
    CHECK(make_grid({0.2, 0.6}, 1).front() == doctest::Approx(0.4));
}

TEST_CASE("derivative protocol passes a healthy entry and fails a perturbed one") {
    const IdentityInstance inst =
        instantiate(IdentityId::CH_ZERO, ParamSet::ch(0, 0, 0, 0, 1));
    const auto grid = make_grid(inst.domain(), 21);
    const CheckReport ok = check_derivative(inst, grid, 1e-8);
    CHECK(ok.status == CheckStatus::Pass);
    CHECK(ok.max_rel_err <= 1e-8);
    CHECK(ok.max_rel_err == ok.max_abs_err / ok.scale);

    // scaling the antiderivative by 1.01 must break the identity
    double worst = 0.0, imax = 0.0;
    for (double x : grid) {
        const Jet F = antiderivative_jet(inst, Cx{x, 0.0}, 8);
        const Cx I = integrand(inst, Cx{x, 0.0});
        worst = std::max(worst, std::abs(1.01 * F.derivative(1) - I));
        imax = std::max(imax, std::abs(I));
    }
    CHECK(worst / std::max(1.0, imax) > 1e-8);
}

TEST_CASE("quadrature protocol on a triconfluent entry and the degenerate interval") {
    HChoice hc;
    hc.m = 1;
    hc.ell = 1;
    hc.rho = Cx{0.0};
    hc.k = Cx{1.0};
    const IdentityInstance inst =
        instantiate(IdentityId::TC_ELEM, ParamSet::tc(1, 3, 0), hc);
    const CheckReport a = check_quadrature(inst, 0.1, 0.6, 1e-7);
    CHECK(a.status == CheckStatus::Pass);
    const CheckReport b = check_quadrature(inst, 0.3, 0.3, 1e-7);
    CHECK(b.status == CheckStatus::Pass);
    CHECK(b.max_abs_err == 0.0);
}

TEST_CASE("the Bessel-kernel entry passes the quadrature protocol") {
    const Cx a{0.5}, b{0.3}, g{-0.2}, d{0.4};
    const Cx e0 = (1.0 + b) * a / 2.0 - (1.0 + g) * b / 2.0 - g / 2.0;
    const IdentityInstance inst =
        instantiate(IdentityId::CH_BESSEL, ParamSet::ch(a, b, g, d, e0));
    const CheckReport r = check_quadrature(inst, 0.1, 0.6, 1e-7);
    CHECK(r.status == CheckStatus::Pass);
}

TEST_CASE("formula protocol skips on violated preconditions with the constraint word") {
    const auto grid = make_grid(default_domain(Family::CH), 7);
    const CheckReport r =
        check_formula(FormulaId::DHC_CASE1, ParamSet::ch(1, 0.2, 0.3, 99.0, 0.5), grid);
    CHECK(r.status == CheckStatus::Skipped);
    CHECK(r.note.rfind("constraint", 0) == 0);
}

TEST_CASE("draws respect the entry constraints") {
    Rng rng(7);
    for (const EntryInfo& e : list_identities()) {
        for (int i = 0; i < 6; ++i) {
            const CatalogDraw d = draw_for_identity(e.id, i, rng, 2.0);
            const ValidityReport v = validity(e.id, d.params, d.hchoice);
            CAPTURE(identity_name(e.id));
            CHECK(v.ok);
        }
    }
    // the conjugate draws stay clear of the excluded reflection value
    for (int i = 0; i < 10; ++i) {
        const CatalogDraw d = draw_for_identity(IdentityId::CH_CONJ, i, rng, 2.0);
        CHECK(std::abs(d.params.eta()) >= 0.2);
    }
    for (FormulaId f : {FormulaId::DHC_AT0, FormulaId::DHC_CASE1, FormulaId::DHC_CASE2,
                        FormulaId::DHB_AT0, FormulaId::DHB_HYP, FormulaId::DHB_CASE}) {
        for (int i = 0; i < 6; ++i) {
            const ParamSet p = draw_for_formula(f, rng, 2.0);
            CHECK(p.values().size() == param_count(p.family()));
        }
    }
}

TEST_CASE("suite structure: every entry carries at least two protocol results per draw") {
    const SuiteReport rep = run_suite(small_config());
    std::map<std::string, int> per_entry;
    for (const CheckReport& c : rep.checks) {
        if (c.subject.rfind("catalog/", 0) == 0) {
            const auto second = c.subject.find('/', 8);
            per_entry[c.subject.substr(8, second - 8)]++;
        }
    }
    CHECK(per_entry.size() == 23);
    for (const auto& [name, count] : per_entry) {
        CAPTURE(name);
        CHECK(count >= 2 * 2 * small_config().draws_per_identity);
    }
    CHECK(rep.n_fail == 0);
    CHECK(rep.n_flagged == 0);
}

TEST_CASE("skips always carry a machine-readable reason") {
    const SuiteReport rep = run_suite(small_config());
    const std::set<std::string> reasons{"resonant", "constraint", "convergence", "domain"};
    int skips = 0;
    for (const CheckReport& c : rep.checks) {
        if (c.status != CheckStatus::Skipped) continue;
        ++skips;
        const std::string head = c.note.substr(0, c.note.find(':'));
        CHECK(reasons.count(head) == 1);
    }
    CHECK(skips == 2 * 2 * small_config().draws_per_identity); // two resonant-only entries
}

TEST_CASE("identical configurations serialize byte-identically") {
    const SuiteReport a = run_suite(small_config());
    const SuiteReport b = run_suite(small_config());
    CHECK(serialize_report(a) == serialize_report(b));

    SuiteConfig other = small_config();
    other.seed = 43;
    CHECK(serialize_report(run_suite(other)) != serialize_report(a));
}

TEST_CASE("an impossible tolerance reports failures in an orderly run") {
    SuiteConfig cfg = small_config();
    cfg.tolerances.deriv = 1e-30;
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.n_fail > 0);
    CHECK(rep.n_pass > 0);
    CHECK(rep.checks.size() ==
          static_cast<std::size_t>(rep.n_pass + rep.n_fail + rep.n_skipped + rep.n_flagged));
}

TEST_CASE("reports parse back with bit-identical parameter echoes") {
    SuiteConfig cfg = small_config();
    cfg.draws_per_identity = 1;
    const SuiteReport rep = run_suite(cfg);
    const std::string doc = serialize_report(rep);
    const nlohmann::json j = nlohmann::json::parse(doc);
    CHECK(j["summary"]["total"] == rep.checks.size());
    CHECK(j["config"]["seed"] == cfg.seed);
    CHECK(j["checks"].size() == rep.checks.size());
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const auto& jc = j["checks"][i];
        CHECK(jc["subject"].get<std::string>() == rep.checks[i].subject);
        const auto& params = jc["params"];
        REQUIRE(params.size() == rep.checks[i].params.size());
        for (std::size_t k = 0; k < rep.checks[i].params.size(); ++k) {
            CHECK(params[k][0].get<double>() == rep.checks[i].params[k].real());
            CHECK(params[k][1].get<double>() == rep.checks[i].params[k].imag());
        }
        CHECK(jc["max_rel_err"].get<double>() == rep.checks[i].max_rel_err);
    }
}

TEST_CASE("transcription protocol passes the explicit-kernel entries") {
    Rng rng(11);
    for (const EntryInfo& e : list_identities()) {
        if (!has_explicit_h(e.id) && !is_conjugate_entry(e.id)) continue;
        const CatalogDraw d = draw_for_identity(e.id, 0, rng, 2.0);
        const ValidityReport v = validity(e.id, d.params, d.hchoice);
        REQUIRE(v.ok);
        const SeedMode sm = v.has_flag("resonant")
                                ? SeedMode::arbitrary(Cx{0.9, 0.1}, Cx{-0.2, 0.3})
                                : SeedMode::canonical();
        const IdentityInstance inst =
            instantiate(e.id, d.params, d.hchoice, sm, {}, {}, d.variant);
        const CheckReport r =
            check_transcription(inst, make_grid(inst.domain(), 7), 1e-12);
        CAPTURE(identity_name(e.id));
        CHECK(r.status == CheckStatus::Pass);
    }
}

TEST_CASE("a tied-away formula degenerates to zero on both sides") {
    // gamma = alpha + 2 with beta = delta = 0 turns the solution constant
    const auto grid = make_grid(default_domain(Family::BC), 7);
    const CheckReport r =
        check_formula(FormulaId::DHB_HYP, ParamSet::bc(0.7, 0.0, 2.7, 0.0), grid);
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.max_abs_err < 1e-13);
}
