#pragma once

#include <vector>

#include "qhj/catalog.hpp"

namespace qhj {

/// Uniform grid for the Numerov solver. An end that sits on a domain wall is
/// seeded with the regular solution there; any other end is a truncated
/// asymptote with psi = 0.
struct GridSpec {
    double x_min;
    double x_max;
    int n_points = 20001;

    double step() const { return (x_max - x_min) / (n_points - 1); }
    double x(int j) const { return x_min + j * step(); }
};

/// Grid wide enough for every level with energy up to e_top: soft ends are
/// cut where the decaying tail has picked up e^-36 beyond the outer turning
/// point, singular walls are approached to within a few steps.
GridSpec default_grid(const PotentialSpec& spec, double e_top, int n_points = 20001);

enum class MatchPoint { RightTurningPoint, MidDomain };

struct OracleConfig {
    double energy_tol = 1e-12;
    int max_bisections = 200;
    MatchPoint match_point = MatchPoint::RightTurningPoint;
    int n_points = 20001;
};

/// psi on the grid: shot in from both ends and joined at the match point,
/// the right piece scaled onto the left. At an eigenvalue the two pieces
/// agree; elsewhere the derivative jumps at the join.
std::vector<double> integrate_wavefunction(const PotentialSpec& spec, double E,
                                           const GridSpec& grid,
                                           MatchPoint match = MatchPoint::RightTurningPoint);

/// Sign changes of the solution shot from the left end across the whole
/// grid. By Sturm oscillation this is the number of eigenvalues below E.
unsigned count_nodes(const PotentialSpec& spec, double E, const GridSpec& grid);

/// Normalized Wronskian of the left and right solutions at the match point;
/// vanishes exactly at the eigenvalues.
double matching_mismatch(const PotentialSpec& spec, double E, const GridSpec& grid,
                         MatchPoint match = MatchPoint::RightTurningPoint);

double oracle_eigenvalue(const PotentialSpec& spec, unsigned n, const OracleConfig& cfg = {});

/// (hbar/i) psi'/psi at x, from a five-point Lagrange fit to the samples.
cplx momentum_function_on_axis(const PotentialSpec& spec, double E, double x,
                               const GridSpec& grid);

/// Interior zeros of integrate_wavefunction, by linear interpolation.
std::vector<double> wavefunction_nodes(const PotentialSpec& spec, double E, const GridSpec& grid);

/// Coefficient c of c/(x - x0) in a least-squares fit c/(x-x0) + d + e(x-x0)
/// to the momentum function at x0 +- {2,3,4} grid steps.
cplx moving_pole_residue(const PotentialSpec& spec, double E, double x0, const GridSpec& grid);

}  // namespace qhj
