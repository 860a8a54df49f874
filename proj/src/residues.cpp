#include "qhj/residues.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qhj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Laurent coefficient of f at `center` of the given order (-1 residue,
// 0 constant term) from the trapezoidal rule on a small circle. Exact to
// rounding for functions meromorphic in a disc a few radii wide.
cplx circle_coefficient(const auto& f, cplx center, double radius, int order) {
    constexpr int kN = 64;
    cplx acc{0.0, 0.0};
    for (int j = 0; j < kN; ++j) {
        const cplx u = std::polar(radius, 2.0 * kPi * (j + 0.5) / kN);
        acc += f(center + u) * std::pow(u, -order);
    }
    return acc / static_cast<double>(kN);
}

bool is_oscillator(Family f) {
    return f == Family::HarmonicOscillator || f == Family::HalfLineOscillator;
}

double anchor_energy(const PotentialSpec& spec) { return ground_shift(spec); }

bool is_wall(const FixedPole& p) { return p.kind == PoleKind::BoundaryWall; }

bool has_residue_quadratic(const FixedPole& pole, const PotentialSpec& spec) {
    return !(pole.kind == PoleKind::Infinity && !is_oscillator(spec.family()));
}

std::array<cplx, 2> quadratic_roots(const FixedPole& pole, const PotentialSpec& spec, double E) {
    const cplx lin = kI * spec.hbar() * pole.sigma;  // b^2 + lin b - c2 = 0
    const cplx c2 = pole.double_pole_coeff(E);
    const cplx disc = std::sqrt(lin * lin + 4.0 * c2);
    return {(-lin + disc) * 0.5, (-lin - disc) * 0.5};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace

std::string_view to_string(PoleKind kind) {
    switch (kind) {
        case PoleKind::PotentialSingularity: return "potential_singularity";
        case PoleKind::BoundaryWall: return "boundary_wall";
        case PoleKind::Infinity: return "infinity";
    }
    return "unknown";
}

VariableMapping variable_mapping(const PotentialSpec& spec) {
    switch (spec.family()) {
        case Family::HarmonicOscillator: return {MappingKind::Inversion, 1.0};
        case Family::HalfLineOscillator: return {MappingKind::Identity, 1.0};
        case Family::SquareWell: return {MappingKind::ExpSquareWell, 2.0 * kPi / spec.param("L")};
        default: break;
    }
    const double alpha = spec.param("alpha");
    if (is_trigonometric(spec.family())) return {MappingKind::ExpImag, alpha};
    return {MappingKind::ExpReal, alpha};
}

cplx mapped_superpotential(const PotentialSpec& spec, const VariableMapping& mapping, cplx y) {
    const double s = spec.root2m();
    switch (mapping.kind) {
        case MappingKind::Identity: return superpotential_value(spec, y);
        case MappingKind::Inversion: return superpotential_value(spec, 1.0 / y);
        case MappingKind::ExpSquareWell: {
            const double L = spec.param("L");
            return -(spec.hbar() * kPi / (s * L)) * kI * (y + 1.0) / (y - 1.0);
        }
        default: break;
    }
    const double A = spec.param("A"), B = spec.param("B");
    const cplx y2 = y * y;
    switch (spec.family()) {
        case Family::Eckart: return -A * (y2 + 1.0) / (y2 - 1.0) + B / A;
        case Family::ScarfII: return (A * (y2 - 1.0) + 2.0 * B * y) / (y2 + 1.0);
        case Family::RosenMorseII: return A * (y2 - 1.0) / (y2 + 1.0) + B / A;
        case Family::GenPoschlTeller: return (A * (y2 + 1.0) - 2.0 * B * y) / (y2 - 1.0);
        case Family::ScarfI: return (-kI * A * (y2 - 1.0) - 2.0 * B * y) / (y2 + 1.0);
        case Family::RosenMorseI: return -kI * A * (y2 + 1.0) / (y2 - 1.0) - B / A;
        default: break;
    }
    return {};
}

std::vector<FixedPole> fixed_poles(const PotentialSpec& spec) {
    const double m = spec.mass();
    const double two_m = 2.0 * m;
    const VariableMapping map = variable_mapping(spec);
    std::vector<FixedPole> out;

    auto finite = [&](cplx loc, PoleKind kind, cplx c2, cplx sigma) {
        out.push_back({loc, false, kind, map, c2, 0.0, sigma});
    };
    // y = 0 and infinity carry c2(E) = 2m (E - V(point)).
    auto asymptotic = [&](cplx v_at_zero, cplx v_at_inf) {
        out.push_back({0.0, false, PoleKind::PotentialSingularity, map, -two_m * v_at_zero,
                       two_m, 0.0});
        out.push_back({0.0, true, PoleKind::Infinity, map, -two_m * v_at_inf, two_m, 0.0});
    };

    switch (spec.family()) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator: {
            const double w = spec.param("omega");
            if (spec.family() == Family::HalfLineOscillator)
                out.push_back({0.0, false, PoleKind::BoundaryWall, {MappingKind::Identity, 1.0},
                               0.0, 0.0, 1.0});
            out.push_back({0.0, true, PoleKind::Infinity, {MappingKind::Inversion, 1.0},
                           -m * m * w * w, 0.0, 0.0});
            return out;
        }
        case Family::SquareWell: {
            finite(1.0, PoleKind::BoundaryWall, 0.0, kI * map.scale);
            asymptotic(0.0, 0.0);
            return out;
        }
        default: break;
    }

    const double A = spec.param("A"), B = spec.param("B"), alpha = spec.param("alpha");
    const double k = spec.kappa();
    const auto S = PoleKind::PotentialSingularity;
    switch (spec.family()) {
        case Family::Eckart: {
            const double c2 = -two_m * A * (A - k);
            finite(1.0, S, c2, alpha);
            finite(-1.0, S, c2, -alpha);
            asymptotic(A * A + B * B / (A * A) + 2.0 * B, A * A + B * B / (A * A) - 2.0 * B);
            break;
        }
        case Family::ScarfII: {
            const double re = B * B - A * A - A * k, im = B * (2.0 * A + k);
            finite(kI, S, -two_m * cplx(re, im), kI * alpha);
            finite(-kI, S, -two_m * cplx(re, -im), -kI * alpha);
            asymptotic(A * A, A * A);
            break;
        }
        case Family::RosenMorseII: {
            const double c2 = two_m * A * (A + k);
            finite(kI, S, c2, kI * alpha);
            finite(-kI, S, c2, -kI * alpha);
            asymptotic(A * A + B * B / (A * A) - 2.0 * B, A * A + B * B / (A * A) + 2.0 * B);
            break;
        }
        case Family::GenPoschlTeller: {
            finite(1.0, S, -two_m * ((A - B) * (A - B) + k * (A - B)), alpha);
            finite(-1.0, S, -two_m * ((A + B) * (A + B) + k * (A + B)), -alpha);
            asymptotic(A * A, A * A);
            break;
        }
        case Family::ScarfI: {
            // sigma = dy/dx = i alpha y at y = +-i
            finite(kI, S, -two_m * ((A - B) * (A - B) - k * (A - B)), -alpha);
            finite(-kI, S, -two_m * ((A + B) * (A + B) - k * (A + B)), alpha);
            asymptotic(-A * A, -A * A);
            break;
        }
        case Family::RosenMorseI: {
            const double c2 = two_m * A * (A - k);
            finite(1.0, S, c2, kI * alpha);
            finite(-1.0, S, c2, -kI * alpha);
            const double re = -A * A + B * B / (A * A);
            asymptotic(cplx(re, -2.0 * B), cplx(re, 2.0 * B));
            break;
        }
        default: break;
    }
    return out;
}

cplx superpotential_anchor(const FixedPole& pole, const PotentialSpec& spec) {
    const auto& map = pole.mapping;
    auto w = [&](cplx y) { return mapped_superpotential(spec, map, y); };
    cplx coef;
    if (pole.at_infinity && map.kind == MappingKind::Inversion) {
        coef = circle_coefficient(w, 0.0, 1e-2, -1);
    } else if (pole.at_infinity) {
        coef = circle_coefficient([&](cplx z) { return w(1.0 / z); }, 0.0, 1e-2, 0);
    } else if (pole.energy_dependent()) {
        coef = circle_coefficient(w, pole.location, 1e-2, 0);
    } else {
        coef = circle_coefficient(w, pole.location, 1e-2, -1);
    }
    return kI * spec.root2m() * coef;
}

std::array<cplx, 2> residue_candidates(const FixedPole& pole, const PotentialSpec& spec,
                                       double E) {
    if (!has_residue_quadratic(pole, spec))
        throw Error(ErrorCode::Contract,
                    "the point at infinity has no residue here; use infinity_contribution");
    auto roots = quadratic_roots(pole, spec, E);
    if (!pole.energy_dependent() &&
        std::abs(roots[0] - roots[1]) <= 1e-12 * (1.0 + std::abs(roots[0])))
        throw Error(ErrorCode::DegenerateResidue,
                    "residue candidates coincide; branch selection is ill-posed");
    return roots;
}

std::array<cplx, 2> residue_candidates(const FixedPole& pole, const PotentialSpec& spec) {
    return residue_candidates(pole, spec, anchor_energy(spec));
}

cplx select_branch(const FixedPole& pole, const std::array<cplx, 2>& candidates,
                   const PotentialSpec& spec) {
    if (is_wall(pole)) {
        const double scale = spec.hbar() * std::abs(pole.sigma);
        const bool zero0 = std::abs(candidates[0]) <= 1e-12 * scale;
        const bool zero1 = std::abs(candidates[1]) <= 1e-12 * scale;
        if (zero0 == zero1)
            throw Error(ErrorCode::BranchSelection, "wall pole needs exactly one zero root");
        return zero0 ? candidates[1] : candidates[0];
    }
    const cplx anchor = superpotential_anchor(pole, spec);
    const double tol = 1e-9 * (1.0 + std::abs(anchor));
    const double d0 = std::abs(candidates[0] - anchor);
    const double d1 = std::abs(candidates[1] - anchor);
    if (std::min(d0, d1) > tol)
        throw Error(ErrorCode::BranchSelection,
                    "no residue candidate matches the superpotential anchor",
                    fmt(anchor.real()) + "," + fmt(anchor.imag()));
    return d0 <= d1 ? candidates[0] : candidates[1];
}

LaurentBranch laurent_branch(const FixedPole& pole, const PotentialSpec& spec, double E) {
    LaurentBranch lb{};
    if (!pole.energy_dependent()) {
        lb.candidates = pole.kind == PoleKind::Infinity ? quadratic_roots(pole, spec, E)
                                                        : residue_candidates(pole, spec, E);
        const cplx chosen = select_branch(pole, lb.candidates, spec);
        lb.selected = chosen == lb.candidates[0] ? 0 : 1;
        if (pole.at_infinity && pole.mapping.kind == MappingKind::Inversion) {
            // -i hbar b1 + 2 a1 b1 + a0^2 = 2mE with a0 = 0
            const cplx b1 = chosen;
            lb.a0 = 0.0;
            lb.a1 = (2.0 * spec.mass() * E + kI * spec.hbar() * b1) / (2.0 * b1);
        }
        return lb;
    }

    // Energy-dependent constant term: anchor at the ground-shift energy, then
    // follow the root continuously along the real energy axis.
    const double e0 = anchor_energy(spec);
    const cplx w0 = pole.double_pole_coeff(e0);
    const cplx w1 = pole.double_pole_coeff(E);
    const cplx anchor = superpotential_anchor(pole, spec);
    if (std::abs(anchor * anchor - w0) > 1e-9 * (1.0 + std::abs(w0)))
        throw Error(ErrorCode::BranchSelection,
                    "superpotential anchor does not solve the constant-term equation");

    const double im_scale = 1e-14 * (1.0 + std::abs(w0));
    if (std::abs(w0.imag()) <= im_scale && ((w0.real() > 0.0 && w1.real() < 0.0) ||
                                            (w0.real() < 0.0 && w1.real() > 0.0)))
        throw Error(ErrorCode::Window,
                    "energy " + fmt(E) + " lies beyond the square-root branch point at " +
                        fmt(e0 - w0.real() / pole.c2_slope),
                    fmt(E));

    cplx root = anchor;
    constexpr int kSteps = 256;
    for (int j = 1; j <= kSteps; ++j) {
        const cplx w = w0 + (w1 - w0) * (static_cast<double>(j) / kSteps);
        const cplx r = std::sqrt(w);
        root = std::abs(r - root) <= std::abs(-r - root) ? r : -r;
    }
    lb.candidates = {root, -root};
    lb.selected = 0;
    return lb;
}

namespace {

cplx contribution_from(const FixedPole& pole, const LaurentBranch& lb) {
    const cplx b = lb.value();
    const double scale = pole.mapping.scale;
    switch (pole.mapping.kind) {
        case MappingKind::Identity: return kI * b;
        case MappingKind::Inversion: return kI * lb.a1;
        case MappingKind::ExpReal:
            if (pole.at_infinity || pole.energy_dependent()) return kI * b / scale;
            return kI * b / (scale * pole.location);
        case MappingKind::ExpImag:
        case MappingKind::ExpSquareWell:
            if (pole.at_infinity || pole.energy_dependent()) return b / scale;
            return b / (scale * pole.location);
    }
    return {};
}

}  // namespace

cplx gamma_contribution(const FixedPole& pole, const PotentialSpec& spec, double E) {
    if (pole.kind == PoleKind::Infinity)
        throw Error(ErrorCode::Contract, "use infinity_contribution for the point at infinity");
    return contribution_from(pole, laurent_branch(pole, spec, E));
}

cplx infinity_contribution(const PotentialSpec& spec, double E) {
    for (const auto& pole : fixed_poles(spec))
        if (pole.kind == PoleKind::Infinity) return contribution_from(pole, laurent_branch(pole, spec, E));
    throw Error(ErrorCode::Contract, "family has no point at infinity");
}

std::pair<double, double> branch_window(const PotentialSpec& spec) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const double e0 = anchor_energy(spec);
    for (const auto& pole : fixed_poles(spec)) {
        if (!pole.energy_dependent()) continue;
        if (std::abs(pole.c2_constant.imag()) > 1e-14 * (1.0 + std::abs(pole.c2_constant)))
            continue;
        const double eb = -pole.c2_constant.real() / pole.c2_slope;
        if (eb > e0) hi = std::min(hi, eb);
        else lo = std::max(lo, eb);
    }
    return {lo, hi};
}

std::vector<PoleRecord> describe_poles(const PotentialSpec& spec, double E) {
    std::vector<PoleRecord> out;
    for (const auto& pole : fixed_poles(spec)) {
        const LaurentBranch lb = laurent_branch(pole, spec, E);
        PoleRecord rec{pole, lb.candidates, lb.value(), contribution_from(pole, lb)};
        if (pole.mapping.kind == MappingKind::ExpReal || pole.mapping.kind == MappingKind::ExpImag)
            rec.gamma *= pole.mapping.scale;
        out.push_back(rec);
    }
    return out;
}

}  // namespace qhj
