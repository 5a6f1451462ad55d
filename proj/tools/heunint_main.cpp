// heunint: evaluate confluent Heun functions, inspect the indefinite-integral
// catalog, run single identity checks, or run the whole verification suite.
//
// exit codes: 0 success / all checks pass, 1 verification failure,
//             2 usage or domain error
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heunint/catalog.hpp"
#include "heunint/verify.hpp"

namespace {

using namespace heunint;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Cx parse_cx(const std::string& tok) {
    const std::string s = tok;
    if (s.empty()) throw UsageError("empty parameter token");
    auto parse_double = [](const std::string& t) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            throw UsageError("malformed number '" + t + "'");
        }
        if (pos != t.size()) throw UsageError("malformed number '" + t + "'");
        return v;
    };
    if (s.back() != 'i' && s.back() != 'I') return {parse_double(s), 0.0};
    // re+imi with the split at the last sign not belonging to an exponent
    const std::string body = s.substr(0, s.size() - 1);
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            const std::string re = body.substr(0, i);
            std::string im = body.substr(i);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return {parse_double(re), parse_double(im)};
        }
    }
    std::string im = body;
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {0.0, parse_double(im)};
}

std::string format_cx(Cx z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

ParamSet parse_params(Family fam, const std::string& csv) {
    std::vector<Cx> vals;
    std::string tok;
    std::istringstream in(csv);
    while (std::getline(in, tok, ',')) vals.push_back(parse_cx(tok));
    if (vals.size() != param_count(fam))
        throw UsageError(std::string("family ") + family_name(fam) + " takes " +
                         std::to_string(param_count(fam)) + " parameters");
    return {fam, std::move(vals)};
}

void print_report(const CheckReport& r) {
    std::printf("subject:      %s\n", r.subject.c_str());
    std::printf("status:       %s\n", status_name(r.status));
    std::printf("max_abs_err:  %.17g\n", r.max_abs_err);
    std::printf("max_rel_err:  %.17g\n", r.max_rel_err);
    std::printf("scale:        %.17g\n", r.scale);
    std::printf("grid:        ");
    for (double g : r.grid) std::printf(" %.17g", g);
    std::printf("\nparams:      ");
    for (const Cx& p : r.params) std::printf(" %s", format_cx(p).c_str());
    std::printf("\n");
    if (!r.note.empty()) std::printf("note:         %s\n", r.note.c_str());
}

SuiteConfig load_config(const std::string& path) {
    SuiteConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    nlohmann::json j;
    in >> j;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.draws_per_identity = j.value("draws_per_identity", cfg.draws_per_identity);
    cfg.param_box = j.value("param_box", cfg.param_box);
    cfg.grid_points = j.value("grid_points", cfg.grid_points);
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        cfg.tolerances.deriv = t.value("deriv", cfg.tolerances.deriv);
        cfg.tolerances.quad = t.value("quad", cfg.tolerances.quad);
        cfg.tolerances.formula = t.value("formula", cfg.tolerances.formula);
        cfg.tolerances.transcription = t.value("transcription", cfg.tolerances.transcription);
    }
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"confluent Heun functions and their verified indefinite integrals"};
    app.require_subcommand(1);

    std::string family_s, params_s, x_s, id_s, seed_mode_s = "canonical";
    std::string config_path, out_path, rho_s = "0", k_s = "1", trig_s = "sin";
    int n_coeffs = 8, hm = 1, hl = 1, variant = 0;

    auto* c_eval = app.add_subcommand("eval", "evaluate y and y' of a local solution");
    c_eval->add_option("--family", family_s, "CH | BC | DC | TC")->required();
    c_eval->add_option("--params", params_s, "comma-separated values, re or re+imi")->required();
    c_eval->add_option("--x", x_s, "evaluation point")->required();

    auto* c_list = app.add_subcommand("list", "print the identity catalog");

    auto* c_check = app.add_subcommand("check", "run the derivative protocol on one entry");
    c_check->add_option("--id", id_s, "identity id, e.g. CH_ZERO")->required();
    c_check->add_option("--params", params_s, "family parameters")->required();
    c_check->add_option("--seed-mode", seed_mode_s, "canonical | arbitrary");
    c_check->add_option("--m", hm, "elementary kernel power m");
    c_check->add_option("--l", hl, "elementary kernel exponent l");
    c_check->add_option("--rho", rho_s, "elementary kernel rho");
    c_check->add_option("--k", k_s, "elementary kernel wave number");
    c_check->add_option("--trig", trig_s, "sin | cos");
    c_check->add_option("--variant", variant, "row selector for two-row entries");

    auto* c_suite = app.add_subcommand("suite", "run the full verification suite");
    c_suite->add_option("--config", config_path, "JSON file mirroring the suite config");
    c_suite->add_option("--out", out_path, "report destination (default stdout)");

    auto* c_dump = app.add_subcommand("dump-series", "print Taylor coefficients at 0");
    c_dump->add_option("--family", family_s, "CH | BC | DC | TC")->required();
    c_dump->add_option("--params", params_s, "family parameters")->required();
    c_dump->add_option("--n", n_coeffs, "highest coefficient index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << (e.get_exit_code() == 0 ? "" : "error: ") << e.what() << "\n";
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return 0;
        }
        return 2;
    }

    if (c_eval->parsed()) {
        const auto fam = family_from_name(family_s);
        if (!fam) throw UsageError("unknown family " + family_s);
        const ParamSet p = parse_params(*fam, params_s);
        Solution sol(*fam, p);
        const auto [y, yp] = sol.eval(parse_cx(x_s));
        std::printf("y  = %s\n", format_cx(y).c_str());
        std::printf("y' = %s\n", format_cx(yp).c_str());
        return 0;
    }

    if (c_list->parsed()) {
        for (const EntryInfo& e : list_identities())
            std::printf("%-13s %s  %s\n    constraints: %s\n", identity_name(e.id),
                        family_name(e.family), e.label.c_str(), e.constraints.c_str());
        return 0;
    }

    if (c_check->parsed()) {
        const auto id = identity_from_name(id_s);
        if (!id) throw UsageError("unknown identity id " + id_s);
        const Family fam = identity_family(*id);
        const ParamSet p = parse_params(fam, params_s);

        std::optional<HChoice> hc;
        const bool elem = (*id == IdentityId::CH_ELEM || *id == IdentityId::BC_ELEM ||
                           *id == IdentityId::DC_ELEM || *id == IdentityId::TC_ELEM);
        if (elem) {
            HChoice h;
            h.m = hm;
            h.ell = hl;
            h.rho = parse_cx(rho_s);
            h.k = parse_cx(k_s);
            if (trig_s == "sin")
                h.trig = HChoice::Trig::Sin;
            else if (trig_s == "cos")
                h.trig = HChoice::Trig::Cos;
            else
                throw UsageError("--trig takes sin or cos");
            hc = h;
        }

        SeedMode sm = SeedMode::canonical();
        if (seed_mode_s == "arbitrary")
            sm = SeedMode::arbitrary(Cx{1.0, 0.0}, Cx{0.3, 0.0});
        else if (seed_mode_s != "canonical")
            throw UsageError("--seed-mode takes canonical or arbitrary");

        const IdentityInstance inst = instantiate(*id, p, hc, sm, {}, {}, variant);
        const CheckReport r =
            check_derivative(inst, make_grid(inst.domain(), 21), 1e-8);
        print_report(r);
        if (r.status == CheckStatus::Pass) return 0;
        if (r.status == CheckStatus::Skipped) return 2;
        return 1;
    }

    if (c_suite->parsed()) {
        const SuiteConfig cfg = load_config(config_path);
        const SuiteReport rep = run_suite(cfg);
        const std::string doc = serialize_report(rep);
        if (out_path.empty()) {
            std::fwrite(doc.data(), 1, doc.size(), stdout);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw UsageError("cannot open report destination " + out_path);
            out << doc;
        }
        std::fprintf(stderr, "suite: %d pass, %d fail, %d skipped, %d flagged\n",
                     rep.n_pass, rep.n_fail, rep.n_skipped, rep.n_flagged);
        return rep.n_fail == 0 ? 0 : 1;
    }

    if (c_dump->parsed()) {
        const auto fam = family_from_name(family_s);
        if (!fam) throw UsageError("unknown family " + family_s);
        if (n_coeffs < 0) throw UsageError("--n must be non-negative");
        const ParamSet p = parse_params(*fam, params_s);
        const auto c =
            taylor_coeffs(ode_from_family(*fam, p), seeds_for(*fam, p), n_coeffs);
        for (int k = 0; k <= n_coeffs; ++k)
            std::printf("c[%d] = %s\n", k, format_cx(c[static_cast<std::size_t>(k)]).c_str());
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const heunint::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
