#pragma once

#include <vector>

#include "qhj/catalog.hpp"
#include "qhj/residues.hpp"

namespace qhj {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int n_evals = 0;
};

/// Integral of sqrt(2m(E - V)) between the outer classical turning points.
/// WKB quantizes it to (n + 1/2) pi hbar.
QuadratureResult wkb_integral(const PotentialSpec& spec, double E);

/// Integral of sqrt(2m(E - w^2)) between the roots of E = w^2.
/// SWKB quantizes it to n pi hbar; E = 0 gives 0 (collapsed interval).
QuadratureResult swkb_integral(const PotentialSpec& spec, double E);

/// Roots of E = w(x)^2 bounding the SWKB interval, ascending.
std::vector<double> swkb_turning_points(const PotentialSpec& spec, double E);

/// Energy with swkb_integral = n pi hbar; n = 0 returns 0 exactly.
double swkb_level(const PotentialSpec& spec, unsigned n, double tol = 1e-12);

/// Energy with wkb_integral = (n + 1/2) pi hbar, measured from the same zero
/// as the potential.
double wkb_level(const PotentialSpec& spec, unsigned n, double tol = 1e-12);

/// (1/2 pi) times the counter-clockwise integral of sqrt(2m(E - w^2)) on the
/// circle |x - pole_x| = radius, trapezoidal in the angle with the root
/// continued sample to sample from the one nearest i sqrt(2m) w.
cplx classical_integrand_residue(const PotentialSpec& spec, cplx pole_x, double E, double radius,
                                 int samples = 1024);

/// Location in x of a finite fixed pole of the exponential mappings.
cplx pole_position(const FixedPole& pole);

struct PoleProbe {
    cplx x;
    double radius;
    cplx classical;  // circle integral of the classical SWKB integrand
    cplx quantum;    // I_gamma from the residue engine
};

/// Circle integrals around every E-independent finite fixed pole of a SUSY
/// family at the default radius (5% of the distance to the nearest other
/// singular feature), halving up to four times on a branch crossing.
std::vector<PoleProbe> probe_fixed_poles(const PotentialSpec& spec, double E);

}  // namespace qhj
