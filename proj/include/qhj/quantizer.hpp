#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhj/catalog.hpp"
#include "qhj/detail/find_root.hpp"
#include "qhj/residues.hpp"

namespace qhj {

/// How the large contour and the pole circles combine into J(E):
///     J = (1/mu) [s_Gamma I_Gamma - sum_p s_p I_gamma_p] + extra_constant
struct ContourScheme {
    int multiplicity = 1;
    std::vector<int> gamma_signs;  // aligned with fixed_poles(); 0 skips a pole
    int infinity_sign = 1;
    double extra_constant = 0.0;
};

ContourScheme contour_scheme(const PotentialSpec& spec);

struct EnergyWindow {
    double lo;
    double hi;
};

/// Real-J window: above the potential infimum and inside the anchored
/// branch of every energy-dependent square root.
EnergyWindow action_window(const PotentialSpec& spec);

double action_variable(const PotentialSpec& spec, double E);

/// Bracket [lo, hi] with J(lo) < n hbar < J(hi).
EnergyWindow energy_window(const PotentialSpec& spec, unsigned n);

struct EnergyLevel {
    unsigned n = 0;
    double e_qhj = 0.0;
    double e_closed = 0.0;
    std::optional<double> e_oracle;
    std::optional<double> e_wkb;
    std::optional<double> e_swkb;
    double j_residual = 0.0;
};

EnergyLevel solve_level(const PotentialSpec& spec, unsigned n, double tol = 1e-12);

/// A level that could not be produced, with the reason.
struct LevelNotice {
    unsigned n;
    ErrorCode code;
    std::string message;
};

struct Spectrum {
    std::vector<EnergyLevel> levels;
    std::vector<LevelNotice> notices;
};

Spectrum spectrum(const PotentialSpec& spec, unsigned n_levels, double tol = 1e-12);

}  // namespace qhj
