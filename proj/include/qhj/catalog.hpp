#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhj/errors.hpp"

namespace qhj {

using cplx = std::complex<double>;

enum class Family {
    HarmonicOscillator,
    HalfLineOscillator,
    SquareWell,
    Eckart,
    ScarfII,
    RosenMorseII,
    GenPoschlTeller,
    ScarfI,
    RosenMorseI,
};

inline constexpr Family kAllFamilies[] = {
    Family::HarmonicOscillator, Family::HalfLineOscillator, Family::SquareWell,
    Family::Eckart,             Family::ScarfII,            Family::RosenMorseII,
    Family::GenPoschlTeller,    Family::ScarfI,             Family::RosenMorseI,
};

/// Families written as V = w^2 - (hbar/sqrt(2m)) w' with a zero ground state.
bool is_susy(Family f);
/// Hyperbolic families use y = exp(alpha x), trigonometric ones y = exp(i alpha x).
bool is_hyperbolic(Family f);
bool is_trigonometric(Family f);

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
/// Parameter names the family reads, in display order.
std::vector<std::string> family_parameters(Family f);

struct UnitSystem {
    double hbar = 1.0;
    double mass = 1.0;
    bool operator==(const UnitSystem&) const = default;
};

enum class DomainKind { FullLine, HalfLine, Interval };

struct Domain {
    DomainKind kind;
    double lo;  // -inf for the full line
    double hi;  // +inf for full and half line
};

struct ParameterViolation {
    std::string parameter;
    std::string constraint;
};

/// One catalog entry. Construction validates; an invalid spec cannot exist.
class PotentialSpec {
public:
    using Params = std::map<std::string, double>;

    static PotentialSpec make(Family family, Params params, UnitSystem units = {});
    /// Empty when the parameters are valid for the family.
    static std::vector<ParameterViolation> check(Family family, const Params& params,
                                                 const UnitSystem& units);

    static PotentialSpec harmonic(double omega, UnitSystem units = {});
    static PotentialSpec half_line(double omega, UnitSystem units = {});
    static PotentialSpec square_well(double width, UnitSystem units = {});
    static PotentialSpec susy(Family family, double A, double B, double alpha,
                              UnitSystem units = {});

    Family family() const { return family_; }
    const Params& params() const { return params_; }
    const UnitSystem& units() const { return units_; }
    double param(const std::string& name) const;
    Domain domain() const;

    double hbar() const { return units_.hbar; }
    double mass() const { return units_.mass; }
    /// sqrt(2m)
    double root2m() const;
    /// alpha hbar / sqrt(2m), the level spacing unit of the SUSY families.
    double kappa() const;

    bool operator==(const PotentialSpec& other) const = default;

private:
    PotentialSpec(Family f, Params p, UnitSystem u)
        : family_(f), params_(std::move(p)), units_(u) {}

    Family family_;
    Params params_;
    UnitSystem units_;
};

double potential_value(const PotentialSpec& spec, double x);

/// w(x) with V = w^2 - (hbar/sqrt(2m)) w' + ground_shift(spec).
double superpotential_value(const PotentialSpec& spec, double x);
cplx superpotential_value(const PotentialSpec& spec, cplx x);
double superpotential_derivative(const PotentialSpec& spec, double x);
/// Constant separating V from its superpotential form: zero for the SUSY
/// families, hbar*omega/2 (harmonic), 3 hbar*omega/2 (half line), E_0 (well).
double ground_shift(const PotentialSpec& spec);

/// p_c^2 = 2m (E - V(x)).
double classical_momentum_sq(const PotentialSpec& spec, double E, double x);

/// Interior points where p_c^2 changes sign, ascending. A finite wall that
/// bounds the allowed region is reported as a turning point.
std::vector<double> turning_points(const PotentialSpec& spec, double E);

/// Greatest lower bound of V over the domain interior.
double potential_infimum(const PotentialSpec& spec);

/// Lowest limit of V at an open (infinite) end of the domain; +inf when
/// every end is confining.
double continuum_threshold(const PotentialSpec& spec);

/// Largest bound-state index; nullopt when the spectrum is unbounded.
std::optional<unsigned> max_level(const PotentialSpec& spec);

double closed_form_energy(const PotentialSpec& spec, unsigned n);

/// Finite interval that stands in for the domain when scanning numerically.
/// Walls are pulled in by a relative offset; infinite ends are cut where the
/// potential has reached its asymptote to double precision.
std::pair<double, double> scan_interval(const PotentialSpec& spec);

}  // namespace qhj
