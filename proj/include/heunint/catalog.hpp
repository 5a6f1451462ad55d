#ifndef HEUNINT_CATALOG_HPP
#define HEUNINT_CATALOG_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heunint/cx.hpp"
#include "heunint/heun.hpp"
#include "heunint/jet.hpp"

namespace heunint {

// The indefinite-integral catalog. Every entry binds a validity predicate,
// an integrand evaluator I(x) and an antiderivative evaluator F(x) with the
// integration constant fixed to zero, so that F' = I on the entry's domain.
enum class IdentityId {
    CH_ELEM, CH_ZERO, CH_ZERO_DER1, CH_STANJEL, CH_HYP, CH_H3, CH_BESSEL, CH_CONJ,
    BC_ELEM, BC_ZERO, BC_ZERO_SPC, BC_ERFI, BC_H3, BC_CONJ,
    DC_ELEM, DC_ZERO, DC_LOG, DC_H3, DC_CONJ,
    TC_ELEM, TC_GAMMA, TC_H3, TC_CONJ,
};

inline constexpr int kIdentityCount = 23;

const char* identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(const std::string& s);
Family identity_family(IdentityId id);
// entries built from the conjugate-equation construction
bool is_conjugate_entry(IdentityId id);
// entries whose auxiliary kernel h has a printed closed form
bool has_explicit_h(IdentityId id);

// Elementary kernel h = x^m e^{rho x^ell} {sin(kx) | cos(kx)} of the *_ELEM
// entries.
struct HChoice {
    int m = 1;
    int ell = 1;
    Cx rho{};
    Cx k{1.0, 0.0};
    enum class Trig { Sin, Cos } trig = Trig::Sin;
};

struct Interval {
    double lo = 0.0, hi = 0.0;
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Which solution(s) the identity is evaluated on: the canonical local
// solution, or one with arbitrary seeds planted at an interior anchor.
// (y0b, y1b) seed the second solution of conjugate-pair entries.
struct SeedMode {
    enum class Kind { Canonical, Arbitrary } kind = Kind::Canonical;
    Cx y0{1.0, 0.0}, y1{};
    Cx y0b{0.8, 0.0}, y1b{-0.3, 0.0};
    double anchor = 0.0; // 0 means "use the domain midpoint"

    static SeedMode canonical() { return {}; }
    static SeedMode arbitrary(Cx y0, Cx y1, double anchor = 0.0) {
        SeedMode m;
        m.kind = Kind::Arbitrary;
        m.y0 = y0;
        m.y1 = y1;
        m.anchor = anchor;
        return m;
    }
};

struct ValidityReport {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> violations; // (constraint, detail)
    std::vector<std::string> flags; // e.g. "resonant"
    bool has_flag(const std::string& f) const;
};

struct EntryInfo {
    IdentityId id;
    Family family;
    std::string label;       // what the kernel is
    std::string constraints; // validity constraints, human readable
};

// All 23 entries in catalog order.
const std::vector<EntryInfo>& list_identities();

// Checks every printed constraint of the entry; reports, never throws.
ValidityReport validity(IdentityId id, const ParamSet& params,
                        const std::optional<HChoice>& hchoice = {});

class IdentityInstance {
public:
    IdentityId id() const { return id_; }
    Family family() const { return family_; }
    const ParamSet& params() const { return params_; }
    const std::optional<HChoice>& hchoice() const { return hchoice_; }
    const SeedMode& seed_mode() const { return seed_; }
    const Interval& domain() const { return domain_; }
    Branch branch() const { return branch_; }
    // row selector for two-row entries (CH_BESSEL: 0 = J, 1 = Y)
    int variant() const { return variant_; }
    // case index of the three-form kernels (0 arctan, 1 double-root, 2 ratio-power)
    int hcase() const { return hcase_; }

    const Solution& primary() const { return *y_; }
    bool has_secondary() const { return static_cast<bool>(h_); }
    const Solution& secondary() const { return *h_; }

private:
    friend IdentityInstance instantiate(IdentityId, const ParamSet&,
                                        std::optional<HChoice>, SeedMode,
                                        std::optional<Interval>, Branch, int);
    IdentityInstance(IdentityId id, ParamSet p)
        : id_(id), family_(p.family()), params_(std::move(p)) {}

    IdentityId id_;
    Family family_;
    ParamSet params_;
    std::optional<HChoice> hchoice_;
    SeedMode seed_;
    Interval domain_{};
    Branch branch_{};
    int variant_ = 0;
    int hcase_ = 2;
    std::shared_ptr<const Solution> y_;
    std::shared_ptr<const Solution> h_;
};

Interval default_domain(Family f);

// Binds evaluators. The domain is the family default (or the one supplied)
// minus the entry's exclusion zones, kept to its widest connected component
// with 0.05 margins. Throws InvalidInstance when validity fails, when a
// canonical instance is requested for a resonant parameter set, or when no
// usable domain remains.
IdentityInstance instantiate(IdentityId id, const ParamSet& params,
                             std::optional<HChoice> hchoice = {},
                             SeedMode seed = SeedMode::canonical(),
                             std::optional<Interval> domain = {},
                             Branch br = {}, int variant = 0);

// The printed left-hand integrand at x.
Cx integrand(const IdentityInstance& inst, Cx x);
// The printed right-hand side at x with integration constant 0. Derivative
// factors of Heun solutions always come from solution jets, except the two
// entries that exist to exercise the closed-form derivative route
// (CH_ZERO_DER1, BC_ZERO_SPC) in canonical mode.
Cx antiderivative(const IdentityInstance& inst, Cx x);
// Jet of the antiderivative at x; coefficient 1 is the F' used by the
// derivative protocol.
Jet antiderivative_jet(const IdentityInstance& inst, Cx x, int order);

// jet-producing evaluator of an auxiliary kernel: (basepoint, order) -> jet
using HJetFn = std::function<Jet(Cx, int)>;

// I = f (h'' + p h' + q h) y and F = f (y h' - h y') for any twice
// differentiable h; the master construction every entry reduces to.
std::pair<Cx, Cx> lagrangian_pair(Family f, const ParamSet& params,
                                  const HJetFn& h, Cx x, Branch br = {});
std::pair<Cx, Cx> lagrangian_pair(const Solution& y, const HJetFn& h, Cx x,
                                  Branch br = {});

// Per-family conjugate partner: same p, reflected q.
// CH: eta -> -eta; BC: (gamma, delta) -> (-gamma, -delta); DC: gamma -> -gamma;
// TC: alpha -> -alpha.
ParamSet conjugate_params(const ParamSet& params);

// I = f (q - qbar) h y and F = f (h' y - h y') with h a solution of the
// conjugate equation. Throws ConstraintError if params_bar is not the legal
// conjugate of params.
std::pair<Cx, Cx> conjugate_pair(Family f, const ParamSet& params,
                                 const ParamSet& params_bar, Cx x, Branch br = {});
std::pair<Cx, Cx> conjugate_pair(const Solution& y, const Solution& h, Cx x,
                                 Branch br = {});

// The kernel h of an explicit-h entry as a jet evaluator.
HJetFn explicit_h(const IdentityInstance& inst);

// Constant relating the printed (I, F) pair to the generic construction:
// printed = scale * generic, the transcription oracle's target.
Cx transcription_scale(const IdentityInstance& inst);

} // namespace heunint

#endif
