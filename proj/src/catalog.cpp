#include "qhj/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qhj {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter: return "invalid_parameter";
        case ErrorCode::UnknownFamily: return "unknown_family";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Singularity: return "singularity";
        case ErrorCode::NoClassicalRegion: return "no_classical_region";
        case ErrorCode::NoSuchLevel: return "no_such_level";
        case ErrorCode::NoBoundState: return "no_bound_state";
        case ErrorCode::Window: return "window";
        case ErrorCode::BranchSelection: return "branch_selection";
        case ErrorCode::DegenerateResidue: return "degenerate_residue";
        case ErrorCode::BranchInconsistency: return "branch_inconsistency";
        case ErrorCode::BranchCrossing: return "branch_crossing";
        case ErrorCode::Convergence: return "convergence";
        case ErrorCode::OracleFailure: return "oracle_failure";
        case ErrorCode::NearNode: return "near_node";
        case ErrorCode::Contract: return "contract";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyInfo {
    Family family;
    std::string_view name;
    std::vector<std::string_view> aliases;
};

const std::vector<FamilyInfo>& family_table() {
    static const std::vector<FamilyInfo> table = {
        {Family::HarmonicOscillator, "harmonic", {"oscillator", "harmonic-oscillator"}},
        {Family::HalfLineOscillator, "half-harmonic", {"half-line", "halfline", "half-oscillator"}},
        {Family::SquareWell, "square-well", {"squarewell", "well"}},
        {Family::Eckart, "eckart", {}},
        {Family::ScarfII, "scarf2", {"scarf-ii", "scarfii"}},
        {Family::RosenMorseII, "rosen-morse2", {"rosenmorse2", "rosen-morse-ii"}},
        {Family::GenPoschlTeller, "gen-poschl-teller", {"poschl-teller", "gpt"}},
        {Family::ScarfI, "scarf1", {"scarf-i", "scarfi"}},
        {Family::RosenMorseI, "rosen-morse1", {"rosenmorse1", "rosen-morse-i"}},
    };
    return table;
}

double sq(double v) { return v * v; }

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

}  // namespace

bool is_susy(Family f) {
    switch (f) {
        case Family::Eckart:
        case Family::ScarfII:
        case Family::RosenMorseII:
        case Family::GenPoschlTeller:
        case Family::ScarfI:
        case Family::RosenMorseI: return true;
        default: return false;
    }
}

bool is_hyperbolic(Family f) {
    return f == Family::Eckart || f == Family::ScarfII || f == Family::RosenMorseII ||
           f == Family::GenPoschlTeller;
}

bool is_trigonometric(Family f) { return f == Family::ScarfI || f == Family::RosenMorseI; }

std::string_view family_name(Family f) {
    for (const auto& info : family_table())
        if (info.family == f) return info.name;
    return "unknown";
}

Family parse_family(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& info : family_table()) {
        if (info.name == lowered) return info.family;
        for (auto alias : info.aliases)
            if (alias == lowered) return info.family;
    }
    throw Error(ErrorCode::UnknownFamily, "unknown potential family '" + std::string(name) + "'",
                std::string(name));
}

std::vector<std::string> family_parameters(Family f) {
    switch (f) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator: return {"omega"};
        case Family::SquareWell: return {"L"};
        default: return {"A", "B", "alpha"};
    }
}

std::vector<ParameterViolation> PotentialSpec::check(Family family, const Params& params,
                                                     const UnitSystem& units) {
    std::vector<ParameterViolation> out;
    if (!(units.hbar > 0.0) || !std::isfinite(units.hbar))
        out.push_back({"hbar", "hbar > 0"});
    if (!(units.mass > 0.0) || !std::isfinite(units.mass))
        out.push_back({"mass", "mass > 0"});

    const auto names = family_parameters(family);
    for (const auto& [key, value] : params) {
        if (std::find(names.begin(), names.end(), key) == names.end())
            out.push_back({key, "not a parameter of " + std::string(family_name(family))});
        else if (!std::isfinite(value))
            out.push_back({key, "finite value"});
    }
    bool missing = false;
    for (const auto& n : names) {
        if (!params.contains(n)) {
            out.push_back({n, "required"});
            missing = true;
        }
    }
    if (missing || !out.empty()) return out;

    auto get = [&](const char* k) { return params.at(k); };
    switch (family) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator:
            if (!(get("omega") > 0.0)) out.push_back({"omega", "omega > 0"});
            return out;
        case Family::SquareWell:
            if (!(get("L") > 0.0)) out.push_back({"L", "L > 0"});
            return out;
        default: break;
    }

    const double A = get("A"), B = get("B"), alpha = get("alpha");
    if (!(alpha > 0.0)) out.push_back({"alpha", "alpha > 0"});
    if (!(A > 0.0)) out.push_back({"A", "A > 0"});
    if (!out.empty()) return out;
    const double k = alpha * units.hbar / std::sqrt(2.0 * units.mass);

    switch (family) {
        case Family::Eckart:
            if (!(B > A * A)) out.push_back({"B", "B > A^2"});
            if (!(A > 0.5 * k)) out.push_back({"A", "A > alpha*hbar/(2 sqrt(2m))"});
            break;
        case Family::ScarfII: break;
        case Family::RosenMorseII:
            if (!(std::abs(B) < A * A)) out.push_back({"B", "|B| < A^2"});
            break;
        case Family::GenPoschlTeller:
            if (!(B > A + 0.5 * k)) out.push_back({"B", "B > A + alpha*hbar/(2 sqrt(2m))"});
            break;
        case Family::ScarfI:
            if (!(A > std::abs(B) + 0.5 * k))
                out.push_back({"A", "A > |B| + alpha*hbar/(2 sqrt(2m))"});
            break;
        case Family::RosenMorseI:
            if (!(A > 0.5 * k)) out.push_back({"A", "A > alpha*hbar/(2 sqrt(2m))"});
            break;
        default: break;
    }
    return out;
}

PotentialSpec PotentialSpec::make(Family family, Params params, UnitSystem units) {
    auto violations = check(family, params, units);
    if (!violations.empty()) {
        std::string msg = "invalid parameters for " + std::string(family_name(family)) + ":";
        std::string ctx;
        for (const auto& v : violations) {
            msg += " " + v.parameter + " (" + v.constraint + ")";
            if (!ctx.empty()) ctx += ";";
            ctx += v.parameter + ":" + v.constraint;
        }
        throw Error(ErrorCode::InvalidParameter, msg, ctx);
    }
    return PotentialSpec(family, std::move(params), units);
}

PotentialSpec PotentialSpec::harmonic(double omega, UnitSystem units) {
    return make(Family::HarmonicOscillator, {{"omega", omega}}, units);
}

PotentialSpec PotentialSpec::half_line(double omega, UnitSystem units) {
    return make(Family::HalfLineOscillator, {{"omega", omega}}, units);
}

PotentialSpec PotentialSpec::square_well(double width, UnitSystem units) {
    return make(Family::SquareWell, {{"L", width}}, units);
}

PotentialSpec PotentialSpec::susy(Family family, double A, double B, double alpha,
                                  UnitSystem units) {
    if (!is_susy(family))
        throw Error(ErrorCode::Contract, "susy() needs one of the A/B/alpha families");
    return make(family, {{"A", A}, {"B", B}, {"alpha", alpha}}, units);
}

double PotentialSpec::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end())
        throw Error(ErrorCode::Contract, "family has no parameter '" + name + "'", name);
    return it->second;
}

double PotentialSpec::root2m() const { return std::sqrt(2.0 * units_.mass); }

double PotentialSpec::kappa() const { return param("alpha") * units_.hbar / root2m(); }

Domain PotentialSpec::domain() const {
    switch (family_) {
        case Family::HarmonicOscillator:
        case Family::ScarfII:
        case Family::RosenMorseII: return {DomainKind::FullLine, -kInf, kInf};
        case Family::HalfLineOscillator:
        case Family::Eckart:
        case Family::GenPoschlTeller: return {DomainKind::HalfLine, 0.0, kInf};
        case Family::SquareWell: return {DomainKind::Interval, 0.0, param("L")};
        case Family::ScarfI: {
            const double h = 0.5 * kPi / param("alpha");
            return {DomainKind::Interval, -h, h};
        }
        case Family::RosenMorseI: return {DomainKind::Interval, 0.0, kPi / param("alpha")};
    }
    return {DomainKind::FullLine, -kInf, kInf};
}

namespace {

void require_interior(const PotentialSpec& spec, double x) {
    const Domain d = spec.domain();
    if (std::isnan(x) || x < d.lo || x > d.hi)
        throw Error(ErrorCode::Domain,
                    "x = " + fmt_num(x) + " lies outside the domain of " +
                        std::string(family_name(spec.family())),
                    fmt_num(x));
    if (x == d.lo || x == d.hi)
        throw Error(ErrorCode::Singularity,
                    "x = " + fmt_num(x) + " is a singular point of " +
                        std::string(family_name(spec.family())),
                    fmt_num(x));
}

template <typename T>
T superpotential_impl(const PotentialSpec& spec, T x) {
    const double s = spec.root2m();
    const double hbar = spec.hbar();
    const double m = spec.mass();
    switch (spec.family()) {
        case Family::HarmonicOscillator:
            return std::sqrt(0.5 * m) * spec.param("omega") * x;
        case Family::HalfLineOscillator:
            return (m * spec.param("omega") * x - hbar / x) / s;
        case Family::SquareWell: {
            const double L = spec.param("L");
            const T t = kPi * x / L;
            return -(hbar * kPi / (s * L)) * std::cos(t) / std::sin(t);
        }
        default: break;
    }
    const double A = spec.param("A"), B = spec.param("B"), alpha = spec.param("alpha");
    const T ax = alpha * x;
    switch (spec.family()) {
        case Family::Eckart: return -A / std::tanh(ax) + B / A;
        case Family::ScarfII: return A * std::tanh(ax) + B / std::cosh(ax);
        case Family::RosenMorseII: return A * std::tanh(ax) + B / A;
        case Family::GenPoschlTeller: return A / std::tanh(ax) - B / std::sinh(ax);
        case Family::ScarfI: return A * std::tan(ax) - B / std::cos(ax);
        case Family::RosenMorseI: return -A / std::tan(ax) - B / A;
        default: break;
    }
    return T{};
}

}  // namespace

double potential_value(const PotentialSpec& spec, double x) {
    require_interior(spec, x);
    switch (spec.family()) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator: {
            const double w = spec.param("omega");
            return 0.5 * spec.mass() * w * w * x * x;
        }
        case Family::SquareWell: return 0.0;
        default: break;
    }
    const double A = spec.param("A"), B = spec.param("B"), alpha = spec.param("alpha");
    const double k = spec.kappa();
    const double ax = alpha * x;
    switch (spec.family()) {
        case Family::Eckart: {
            const double csch = 1.0 / std::sinh(ax);
            return A * A + B * B / (A * A) + A * (A - k) * csch * csch - 2.0 * B / std::tanh(ax);
        }
        case Family::ScarfII: {
            const double sech = 1.0 / std::cosh(ax);
            return A * A + (B * B - A * A - A * k) * sech * sech +
                   B * (2.0 * A + k) * sech * std::tanh(ax);
        }
        case Family::RosenMorseII: {
            const double sech = 1.0 / std::cosh(ax);
            return A * A + B * B / (A * A) - A * (A + k) * sech * sech + 2.0 * B * std::tanh(ax);
        }
        case Family::GenPoschlTeller: {
            const double csch = 1.0 / std::sinh(ax);
            return A * A + (A * A + B * B + A * k) * csch * csch -
                   B * (2.0 * A + k) * csch / std::tanh(ax);
        }
        case Family::ScarfI: {
            const double sec = 1.0 / std::cos(ax);
            return -A * A + (A * A + B * B - A * k) * sec * sec -
                   B * (2.0 * A - k) * sec * std::tan(ax);
        }
        case Family::RosenMorseI: {
            const double csc = 1.0 / std::sin(ax);
            return A * (A - k) * csc * csc - A * A + B * B / (A * A) + 2.0 * B / std::tan(ax);
        }
        default: break;
    }
    return 0.0;
}

double superpotential_value(const PotentialSpec& spec, double x) {
    require_interior(spec, x);
    return superpotential_impl<double>(spec, x);
}

cplx superpotential_value(const PotentialSpec& spec, cplx x) {
    return superpotential_impl<cplx>(spec, x);
}

double superpotential_derivative(const PotentialSpec& spec, double x) {
    require_interior(spec, x);
    const double s = spec.root2m();
    const double hbar = spec.hbar();
    switch (spec.family()) {
        case Family::HarmonicOscillator:
            return std::sqrt(0.5 * spec.mass()) * spec.param("omega");
        case Family::HalfLineOscillator:
            return (spec.mass() * spec.param("omega") + hbar / (x * x)) / s;
        case Family::SquareWell: {
            const double L = spec.param("L");
            const double csc = 1.0 / std::sin(kPi * x / L);
            return hbar * kPi * kPi / (s * L * L) * csc * csc;
        }
        default: break;
    }
    const double A = spec.param("A"), B = spec.param("B"), alpha = spec.param("alpha");
    const double ax = alpha * x;
    switch (spec.family()) {
        case Family::Eckart: {
            const double csch = 1.0 / std::sinh(ax);
            return A * alpha * csch * csch;
        }
        case Family::ScarfII: {
            const double sech = 1.0 / std::cosh(ax);
            return alpha * (A * sech * sech - B * sech * std::tanh(ax));
        }
        case Family::RosenMorseII: {
            const double sech = 1.0 / std::cosh(ax);
            return A * alpha * sech * sech;
        }
        case Family::GenPoschlTeller: {
            const double csch = 1.0 / std::sinh(ax);
            return alpha * (-A * csch * csch + B * csch / std::tanh(ax));
        }
        case Family::ScarfI: {
            const double sec = 1.0 / std::cos(ax);
            return alpha * (A * sec * sec - B * sec * std::tan(ax));
        }
        case Family::RosenMorseI: {
            const double csc = 1.0 / std::sin(ax);
            return A * alpha * csc * csc;
        }
        default: break;
    }
    return 0.0;
}

double ground_shift(const PotentialSpec& spec) {
    switch (spec.family()) {
        case Family::HarmonicOscillator: return 0.5 * spec.hbar() * spec.param("omega");
        case Family::HalfLineOscillator: return 1.5 * spec.hbar() * spec.param("omega");
        case Family::SquareWell: {
            const double L = spec.param("L");
            return kPi * kPi * spec.hbar() * spec.hbar() / (2.0 * spec.mass() * L * L);
        }
        default: return 0.0;
    }
}

double classical_momentum_sq(const PotentialSpec& spec, double E, double x) {
    return 2.0 * spec.mass() * (E - potential_value(spec, x));
}

std::pair<double, double> scan_interval(const PotentialSpec& spec) {
    const Domain d = spec.domain();
    double scale = 1.0;
    double reach = 40.0;
    switch (spec.family()) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator:
            scale = std::sqrt(spec.hbar() / (spec.mass() * spec.param("omega")));
            reach = 60.0;
            break;
        case Family::SquareWell: scale = spec.param("L"); break;
        default: scale = 1.0 / spec.param("alpha"); break;
    }
    const double lo = std::isfinite(d.lo) ? d.lo + 1e-9 * scale : -reach * scale;
    const double hi = std::isfinite(d.hi) ? d.hi - 1e-9 * scale : reach * scale;
    return {lo, hi};
}

namespace {

double bisect_sign_change(const auto& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if ((fm > 0) == (fa > 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Location of the minimum of V on the scan interval, by grid scan and
// golden-section polish.
std::pair<double, double> locate_minimum(const PotentialSpec& spec) {
    const auto [lo, hi] = scan_interval(spec);
    constexpr int kN = 20000;
    const double h = (hi - lo) / kN;
    int best = 0;
    double vbest = kInf;
    for (int i = 0; i <= kN; ++i) {
        const double v = potential_value(spec, lo + i * h);
        if (v < vbest) {
            vbest = v;
            best = i;
        }
    }
    double a = lo + std::max(best - 1, 0) * h;
    double b = lo + std::min(best + 1, kN) * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), e = a + g * (b - a);
    double fc = potential_value(spec, c), fe = potential_value(spec, e);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc < fe) {
            b = e; e = c; fe = fc;
            c = b - g * (b - a);
            fc = potential_value(spec, c);
        } else {
            a = c; c = e; fc = fe;
            e = a + g * (b - a);
            fe = potential_value(spec, e);
        }
    }
    const double xm = 0.5 * (a + b);
    const double vm = potential_value(spec, xm);
    if (vm < vbest) return {xm, vm};
    return {lo + best * h, vbest};
}

}  // namespace

double potential_infimum(const PotentialSpec& spec) {
    switch (spec.family()) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator:
        case Family::SquareWell: return 0.0;
        default: return locate_minimum(spec).second;
    }
}

double continuum_threshold(const PotentialSpec& spec) {
    if (!is_hyperbolic(spec.family())) return kInf;
    const double A = spec.param("A"), B = spec.param("B");
    switch (spec.family()) {
        case Family::Eckart: return sq(B / A - A);
        case Family::ScarfII: return A * A;
        case Family::RosenMorseII: return std::min(sq(A - B / A), sq(A + B / A));
        case Family::GenPoschlTeller: return A * A;
        default: return kInf;
    }
}

std::vector<double> turning_points(const PotentialSpec& spec, double E) {
    const double vinf = potential_infimum(spec);
    if (!(E > vinf))
        throw Error(ErrorCode::NoClassicalRegion,
                    "E = " + fmt_num(E) + " does not exceed the potential infimum " +
                        fmt_num(vinf),
                    fmt_num(E));
    switch (spec.family()) {
        case Family::HarmonicOscillator: {
            const double w = spec.param("omega");
            const double x = std::sqrt(2.0 * E / (spec.mass() * w * w));
            return {-x, x};
        }
        case Family::HalfLineOscillator: {
            const double w = spec.param("omega");
            return {0.0, std::sqrt(2.0 * E / (spec.mass() * w * w))};
        }
        case Family::SquareWell: return {0.0, spec.param("L")};
        default: break;
    }

    const auto [lo, hi] = scan_interval(spec);
    const Domain d = spec.domain();
    auto f = [&](double x) { return E - potential_value(spec, x); };

    constexpr int kN = 20000;
    std::vector<double> xs;
    xs.reserve(kN + 2);
    for (int i = 0; i <= kN; ++i) xs.push_back(lo + (hi - lo) * i / kN);
    xs.push_back(locate_minimum(spec).first);
    std::sort(xs.begin(), xs.end());

    std::vector<double> out;
    if (std::isfinite(d.lo) && f(lo) > 0.0) out.push_back(d.lo);
    double prev = f(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = f(xs[i]);
        if ((prev > 0.0) != (cur > 0.0)) out.push_back(bisect_sign_change(f, xs[i - 1], xs[i]));
        prev = cur;
    }
    if (std::isfinite(d.hi) && f(hi) > 0.0) out.push_back(d.hi);
    if (out.empty())
        throw Error(ErrorCode::NoClassicalRegion, "no turning points found", fmt_num(E));
    return out;
}

std::optional<unsigned> max_level(const PotentialSpec& spec) {
    if (!is_hyperbolic(spec.family())) return std::nullopt;
    const double A = spec.param("A"), B = spec.param("B"), k = spec.kappa();
    auto bound = [&](unsigned n) {
        switch (spec.family()) {
            case Family::Eckart: return sq(A + n * k) < B;
            case Family::ScarfII:
            case Family::GenPoschlTeller: return A - n * k > 0.0;
            case Family::RosenMorseII: {
                const double u = A - n * k;
                return u > 0.0 && u * u > std::abs(B);
            }
            default: return true;
        }
    };
    unsigned n = 0;
    while (bound(n + 1)) {
        ++n;
        if (n > 100000000u)
            throw Error(ErrorCode::Convergence, "bound-state count exceeds 1e8");
    }
    return n;
}

double closed_form_energy(const PotentialSpec& spec, unsigned n) {
    if (auto top = max_level(spec); top && n > *top)
        throw Error(ErrorCode::NoSuchLevel,
                    "level " + std::to_string(n) + " exceeds the bound-state count (max n = " +
                        std::to_string(*top) + ")",
                    std::to_string(n));
    const double hbar = spec.hbar();
    switch (spec.family()) {
        case Family::HarmonicOscillator: return (n + 0.5) * hbar * spec.param("omega");
        case Family::HalfLineOscillator: return (2.0 * n + 1.5) * hbar * spec.param("omega");
        case Family::SquareWell: {
            const double L = spec.param("L");
            return kPi * kPi * hbar * hbar / (2.0 * spec.mass() * L * L) * sq(n + 1.0);
        }
        default: break;
    }
    // Zero ground state by construction; avoid cancellation noise.
    if (n == 0) return 0.0;
    const double A = spec.param("A"), B = spec.param("B"), k = spec.kappa();
    switch (spec.family()) {
        case Family::Eckart: {
            const double u = A + n * k;
            return A * A + B * B / (A * A) - B * B / (u * u) - u * u;
        }
        case Family::ScarfII:
        case Family::GenPoschlTeller: return A * A - sq(A - n * k);
        case Family::RosenMorseII: {
            const double u = A - n * k;
            return A * A + B * B / (A * A) - u * u - B * B / (u * u);
        }
        case Family::ScarfI: return sq(A + n * k) - A * A;
        case Family::RosenMorseI: {
            const double u = A + n * k;
            return u * u - A * A + B * B / (A * A) - B * B / (u * u);
        }
        default: break;
    }
    return 0.0;
}

}  // namespace qhj
