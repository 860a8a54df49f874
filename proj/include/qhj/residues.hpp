#pragma once

#include <array>
#include <string>
#include <vector>

#include "qhj/catalog.hpp"

namespace qhj {

enum class MappingKind {
    Identity,       // x itself (wall of the half-line oscillator)
    ExpReal,        // y = exp(alpha x)
    ExpImag,        // y = exp(i alpha x)
    ExpSquareWell,  // z = exp(2 pi i x / L)
    Inversion,      // y = 1/x, the oscillator's point at infinity
};

struct VariableMapping {
    MappingKind kind;
    double scale;  // alpha, 2 pi / L, or 1
};

/// Coordinate in which the family's fixed poles are located.
VariableMapping variable_mapping(const PotentialSpec& spec);

enum class PoleKind { PotentialSingularity, BoundaryWall, Infinity };

std::string_view to_string(PoleKind kind);

/// A singular point of the mapped quantum momentum function.
///
/// Near the pole the mapped QHJ equation reduces to the quadratic
///     b^2 + i hbar sigma b - c2(E) = 0
/// for the coefficient b that feeds the contour term: the residue of the
/// momentum function at a finite pole, the constant term a0 at y = 0 and at
/// the point at infinity, or b1 for the oscillator's pole at x = infinity.
/// c2(E) = c2_constant + c2_slope * E; only the y = 0 and infinity points of
/// the exponential mappings depend on E.
struct FixedPole {
    cplx location;
    bool at_infinity = false;
    PoleKind kind = PoleKind::PotentialSingularity;
    VariableMapping mapping{MappingKind::Identity, 1.0};
    cplx c2_constant;
    double c2_slope = 0.0;
    cplx sigma;

    cplx double_pole_coeff(double E) const { return c2_constant + c2_slope * E; }
    bool energy_dependent() const { return c2_slope != 0.0; }
};

/// Laurent data at one pole for one energy.
struct LaurentBranch {
    std::array<cplx, 2> candidates;
    int selected = 0;
    cplx a0;  // constant term (oscillator pole at infinity), else 0
    cplx a1;  // linear term (oscillator pole at infinity), else 0

    cplx value() const { return candidates[static_cast<std::size_t>(selected)]; }
};

/// Every fixed pole of the family, the point at infinity included, in the
/// order finite poles first, then y = 0, then infinity.
std::vector<FixedPole> fixed_poles(const PotentialSpec& spec);

/// Both roots of the pole's quadratic at energy E (defaults to the anchor
/// energy, the family's ground shift). The SUSY and square-well infinity
/// points have no residue; use infinity_contribution for those.
std::array<cplx, 2> residue_candidates(const FixedPole& pole, const PotentialSpec& spec);
std::array<cplx, 2> residue_candidates(const FixedPole& pole, const PotentialSpec& spec,
                                       double E);

/// Physical root: the one matching i sqrt(2m) w at the pole (superpotential
/// anchor), or the nonzero root at a wall.
cplx select_branch(const FixedPole& pole, const std::array<cplx, 2>& candidates,
                   const PotentialSpec& spec);

/// Full Laurent data at energy E with the anchored branch continued from the
/// anchor energy. Throws Error(Window) if the continuation would cross the
/// square-root branch point.
LaurentBranch laurent_branch(const FixedPole& pole, const PotentialSpec& spec, double E);

/// I_gamma(E) = (1/2 pi) times the counter-clockwise integral of p dx around
/// the pole, in action units.
cplx gamma_contribution(const FixedPole& pole, const PotentialSpec& spec, double E);

/// I_Gamma(E) for the large contour enclosing every singular point.
cplx infinity_contribution(const PotentialSpec& spec, double E);

/// Open energy interval on which every square root in the contour terms keeps
/// its anchored branch. Infinite ends are +-inf.
std::pair<double, double> branch_window(const PotentialSpec& spec);

/// i sqrt(2m) times the Laurent coefficient of the superpotential that the
/// pole's anchor compares against: residue at finite poles, constant term at
/// y = 0 and infinity.
cplx superpotential_anchor(const FixedPole& pole, const PotentialSpec& spec);

/// Mapped superpotential w(y) for the family's coordinate.
cplx mapped_superpotential(const PotentialSpec& spec, const VariableMapping& mapping, cplx y);

struct PoleRecord {
    FixedPole pole;
    std::array<cplx, 2> candidates;
    cplx selected;
    cplx gamma;  // scale * I: the alpha I_gamma column for the SUSY families
};

/// Per-pole report at energy E; the infinity record carries I_Gamma.
std::vector<PoleRecord> describe_poles(const PotentialSpec& spec, double E);

}  // namespace qhj
