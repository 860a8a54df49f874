#include "qhj/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qhj {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Rough size of a level spacing, used only to seed the bracket search.
double energy_scale(const PotentialSpec& spec) {
    if (is_susy(spec.family())) return spec.kappa() * spec.kappa();
    return ground_shift(spec);
}

}  // namespace

ContourScheme contour_scheme(const PotentialSpec& spec) {
    const auto poles = fixed_poles(spec);
    ContourScheme scheme;
    scheme.multiplicity = spec.family() == Family::HarmonicOscillator ||
                                  spec.family() == Family::SquareWell
                              ? 1
                              : 2;
    for (const auto& p : poles) scheme.gamma_signs.push_back(p.kind == PoleKind::Infinity ? 0 : 1);
    return scheme;
}

EnergyWindow action_window(const PotentialSpec& spec) {
    auto [lo, hi] = branch_window(spec);
    lo = std::max(lo, potential_infimum(spec));
    hi = std::min(hi, continuum_threshold(spec));
    return {lo, hi};
}

double action_variable(const PotentialSpec& spec, double E) {
    const EnergyWindow w = action_window(spec);
    if (!(E >= w.lo && E <= w.hi))
        throw Error(ErrorCode::Window,
                    "energy " + fmt(E) + " is outside the real-action window [" + fmt(w.lo) +
                        ", " + fmt(w.hi) + "]",
                    fmt(E));
    const ContourScheme scheme = contour_scheme(spec);
    const auto poles = fixed_poles(spec);
    cplx sum = static_cast<double>(scheme.infinity_sign) * infinity_contribution(spec, E);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (scheme.gamma_signs[i] == 0) continue;
        sum -= static_cast<double>(scheme.gamma_signs[i]) * gamma_contribution(poles[i], spec, E);
    }
    const cplx J = sum / static_cast<double>(scheme.multiplicity) + scheme.extra_constant;
    if (std::abs(J.imag()) > 1e-10 * (spec.hbar() + std::abs(J.real())))
        throw Error(ErrorCode::BranchInconsistency,
                    "assembled action has imaginary part " + fmt(J.imag()), fmt(E));
    return J.real();
}

EnergyWindow energy_window(const PotentialSpec& spec, unsigned n) {
    if (auto top = max_level(spec); top && n > *top)
        throw Error(ErrorCode::NoBoundState,
                    "level " + std::to_string(n) + " is above the highest bound state " +
                        std::to_string(*top),
                    std::to_string(n));
    const EnergyWindow w = action_window(spec);
    const double target = n * spec.hbar();
    auto J = [&](double E) { return action_variable(spec, E); };

    double a = w.lo;
    if (J(a) >= target)
        throw Error(ErrorCode::NoBoundState, "action at the window floor already exceeds n hbar",
                    std::to_string(n));
    double step = 0.05 * energy_scale(spec);
    for (int i = 0; i < 2000; ++i) {
        double b = a + step;
        const bool last = b >= w.hi;
        if (last) b = w.hi;
        if (J(b) > target) return {a, b};
        if (last) break;
        a = b;
        step *= 1.5;
    }
    throw Error(ErrorCode::NoBoundState,
                "no bracket for level " + std::to_string(n) + " below " + fmt(w.hi),
                std::to_string(n));
}

EnergyLevel solve_level(const PotentialSpec& spec, unsigned n, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
    const EnergyWindow br = energy_window(spec, n);
    const double target = n * spec.hbar();
    auto f = [&](double E) { return action_variable(spec, E) - target; };
    EnergyLevel lvl;
    lvl.n = n;
    lvl.e_qhj = find_root(f, br.lo, br.hi, tol);
    lvl.e_closed = closed_form_energy(spec, n);
    lvl.j_residual = std::abs(f(lvl.e_qhj));
    return lvl;
}

Spectrum spectrum(const PotentialSpec& spec, unsigned n_levels, double tol) {
    if (n_levels < 1) throw Error(ErrorCode::InvalidParameter, "levels must be at least 1");
    Spectrum out;
    for (unsigned n = 0; n < n_levels; ++n) {
        try {
            out.levels.push_back(solve_level(spec, n, tol));
        } catch (const Error& e) {
            if (e.is_validation()) throw;
            out.notices.push_back({n, e.code(), e.what()});
        }
    }
    for (std::size_t i = 1; i < out.levels.size(); ++i)
        if (!(out.levels[i].e_qhj > out.levels[i - 1].e_qhj))
            throw Error(ErrorCode::Convergence, "solved levels are not strictly increasing");
    return out;
}

}  // namespace qhj
