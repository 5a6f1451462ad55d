#ifndef HEUNINT_VERIFY_HPP
#define HEUNINT_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "heunint/catalog.hpp"
#include "heunint/formulas.hpp"

namespace heunint {

enum class CheckStatus { Pass, Fail, Skipped, Flagged };
const char* status_name(CheckStatus s);

struct CheckReport {
    std::string subject;
    std::vector<Cx> params; // parameter values the check ran on
    std::vector<double> grid;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double scale = 1.0;
    CheckStatus status = CheckStatus::Pass;
    std::string note; // skip reason from {resonant, constraint, convergence, domain}
};

struct Tolerances {
    double deriv = 1e-8;
    double quad = 1e-7;
    double formula = 1e-9;
    double transcription = 1e-12;
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    int draws_per_identity = 20;
    double param_box = 2.0;
    int grid_points = 21;
    Tolerances tolerances;
};

// Equally spaced points covering the interval endpoints (the interval itself
// already carries the margins).
std::vector<double> make_grid(const Interval& dom, int n);

// |jet(F)'(x) - I(x)| over the grid against scale = max(1, max |I|).
CheckReport check_derivative(const IdentityInstance& inst,
                             const std::vector<double>& grid, double tol = 1e-8);

// compares the adaptive quadrature of I over [a, b] with F(b) - F(a),
// scale = 1 + |F(b) - F(a)|.
CheckReport check_quadrature(const IdentityInstance& inst, double a, double b,
                             double tol = 1e-7);

// closed-form derivative vs solution-jet coefficient 1 over the grid.
CheckReport check_formula(FormulaId id, const ParamSet& params,
                          const std::vector<double>& grid, double tol = 1e-9);

// printed (I, F) vs scale * generic pair over the grid. A mismatch while the
// entry itself still satisfies F' = I is reported as flagged, not failed.
CheckReport check_transcription(const IdentityInstance& inst,
                                const std::vector<double>& grid, double tol = 1e-12);

struct SuiteReport {
    SuiteConfig config;
    std::vector<CheckReport> checks;
    int n_pass = 0, n_fail = 0, n_skipped = 0, n_flagged = 0;
};

// All catalog entries x {canonical where legal, arbitrary seeds} x both
// protocols, transcription checks, the six derivative formulas, the series
// seed-consistency sweep, the engine cross-check and the hypergeometric
// reduction. Deterministic for a fixed config.
SuiteReport run_suite(const SuiteConfig& config = {});

std::string serialize_report(const SuiteReport& report);

// Deterministic uniform generator with an implementation-independent mapping
// from engine output to doubles.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    Cx box(double r) { return {uniform(-r, r), uniform(-r, r)}; }
    int pick(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 g_;
};

struct CatalogDraw {
    ParamSet params;
    std::optional<HChoice> hchoice;
    int variant = 0;
};

// One valid parameter draw for the entry: ties applied, excluded sets kept at
// distance >= 0.2, three-form entries cycled through their cases.
CatalogDraw draw_for_identity(IdentityId id, int index, Rng& rng, double box);
// Precondition-satisfying draw for a derivative formula.
ParamSet draw_for_formula(FormulaId id, Rng& rng, double box);

} // namespace heunint

#endif
