#include "qhj/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qhj/detail/find_root.hpp"

namespace qhj {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Integral of sqrt(p2(x)) over [x1, x2] where p2 vanishes like a square root
// at one or both ends: x = x1 + t^2 on the left half, x = x2 - t^2 on the right.
QuadratureResult sqrt_endpoint_integral(const auto& p2, double x1, double x2) {
    using boost::math::quadrature::gauss_kronrod;
    QuadratureResult out;
    const double T = std::sqrt(0.5 * (x2 - x1));
    auto left = [&](double t) {
        ++out.n_evals;
        return 2.0 * t * std::sqrt(std::max(0.0, p2(x1 + t * t)));
    };
    auto right = [&](double t) {
        ++out.n_evals;
        return 2.0 * t * std::sqrt(std::max(0.0, p2(x2 - t * t)));
    };
    double e1 = 0.0, e2 = 0.0;
    out.value = gauss_kronrod<double, 15>::integrate(left, 0.0, T, 15, 1e-13, &e1) +
                gauss_kronrod<double, 15>::integrate(right, 0.0, T, 15, 1e-13, &e2);
    out.abs_error_estimate = std::abs(e1) + std::abs(e2);
    return out;
}

double bisect(const auto& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double level_scale(const PotentialSpec& spec) {
    return is_susy(spec.family()) ? spec.kappa() * spec.kappa() : ground_shift(spec);
}

// Smallest E above e0 where g(E) > 0, for g increasing; stays below thr.
double increasing_root(const auto& g, double e0, double step, double thr, double tol,
                       unsigned n) {
    double lo = e0, hi = e0 + step;
    for (int i = 0;; ++i) {
        if (std::isfinite(thr) && hi >= thr) hi = lo + 0.5 * (thr - lo);
        if (g(hi) > 0.0) break;
        if (i > 200)
            throw Error(ErrorCode::NoBoundState,
                        "no semiclassical level " + std::to_string(n) + " below " + fmt(hi),
                        std::to_string(n));
        lo = hi;
        hi = lo + 2.0 * (hi - e0);
    }
    return find_root(g, lo, hi, tol);
}

}  // namespace

QuadratureResult wkb_integral(const PotentialSpec& spec, double E) {
    const auto tp = turning_points(spec, E);
    if (tp.size() < 2)
        throw Error(ErrorCode::NoClassicalRegion,
                    "E = " + fmt(E) + " has fewer than two turning points", fmt(E));
    return sqrt_endpoint_integral(
        [&](double x) { return classical_momentum_sq(spec, E, x); }, tp.front(), tp.back());
}

std::vector<double> swkb_turning_points(const PotentialSpec& spec, double E) {
    const auto [lo, hi] = scan_interval(spec);
    auto w = [&](double x) { return superpotential_value(spec, x); };
    auto g = [&](double x) { const double v = w(x); return E - v * v; };

    constexpr int kN = 20000;
    std::vector<double> xs;
    xs.reserve(kN + 2);
    for (int i = 0; i <= kN; ++i) xs.push_back(lo + (hi - lo) * i / kN);
    // the zero of w, where the allowed region opens first
    for (int i = 1; i <= kN; ++i)
        if ((w(xs[i - 1]) > 0.0) != (w(xs[i]) > 0.0)) {
            xs.push_back(bisect(w, xs[i - 1], xs[i]));
            break;
        }
    std::sort(xs.begin(), xs.end());

    std::vector<double> out;
    double prev = g(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = g(xs[i]);
        if ((prev > 0.0) != (cur > 0.0)) out.push_back(bisect(g, xs[i - 1], xs[i]));
        prev = cur;
    }
    return out;
}

QuadratureResult swkb_integral(const PotentialSpec& spec, double E) {
    if (E < 0.0)
        throw Error(ErrorCode::NoClassicalRegion, "SWKB needs E >= 0, got " + fmt(E), fmt(E));
    if (E == 0.0) return {};
    const auto tp = swkb_turning_points(spec, E);
    if (tp.size() < 2)
        throw Error(ErrorCode::NoClassicalRegion,
                    "E = " + fmt(E) + " has fewer than two roots of E = w^2", fmt(E));
    const double two_m = 2.0 * spec.mass();
    return sqrt_endpoint_integral(
        [&](double x) {
            const double w = superpotential_value(spec, x);
            return two_m * (E - w * w);
        },
        tp.front(), tp.back());
}

double swkb_level(const PotentialSpec& spec, unsigned n, double tol) {
    if (auto top = max_level(spec); top && n > *top)
        throw Error(ErrorCode::NoBoundState,
                    "level " + std::to_string(n) + " is above the highest bound state",
                    std::to_string(n));
    if (n == 0) return 0.0;
    const double target = n * kPi * spec.hbar();
    auto g = [&](double E) { return swkb_integral(spec, E).value - target; };
    return increasing_root(g, 0.0, level_scale(spec), continuum_threshold(spec), tol, n);
}

double wkb_level(const PotentialSpec& spec, unsigned n, double tol) {
    if (auto top = max_level(spec); top && n > *top)
        throw Error(ErrorCode::NoBoundState,
                    "level " + std::to_string(n) + " is above the highest bound state",
                    std::to_string(n));
    const double target = (n + 0.5) * kPi * spec.hbar();
    const double vmin = potential_infimum(spec);
    auto g = [&](double E) {
        if (!(E > vmin)) return -target;
        return wkb_integral(spec, E).value - target;
    };
    return increasing_root(g, vmin, level_scale(spec), continuum_threshold(spec), tol, n);
}

cplx classical_integrand_residue(const PotentialSpec& spec, cplx pole_x, double E, double radius,
                                 int samples) {
    if (!(radius > 0.0) || samples < 512)
        throw Error(ErrorCode::InvalidParameter,
                    "circle integral needs a positive radius and at least 512 samples");
    const double s = spec.root2m();
    auto root = [&](cplx x) { const cplx w = superpotential_value(spec, x); return std::sqrt(s * s * (E - w * w)); };
    auto point = [&](int j) { return pole_x + std::polar(radius, 2.0 * kPi * j / samples); };

    const cplx anchor = cplx(0.0, s) * superpotential_value(spec, point(0));
    cplx f = root(point(0));
    if (std::abs(-f - anchor) < std::abs(f - anchor)) f = -f;
    const cplx f0 = f;

    cplx acc{0.0, 0.0};
    for (int j = 0; j < samples; ++j) {
        const cplx x = point(j);
        if (j > 0) {
            const cplx r = root(x);
            const cplx next = std::abs(r - f) <= std::abs(-r - f) ? r : -r;
            if (std::abs(next - f) > 0.5 * std::abs(f))
                throw Error(ErrorCode::BranchCrossing, "square root jumps along the circle",
                            fmt(radius));
            f = next;
        }
        acc += f * (x - pole_x) * cplx(0.0, 1.0);
    }
    const cplx r = root(point(0));
    const cplx closing = std::abs(r - f) <= std::abs(-r - f) ? r : -r;
    if (std::abs(closing - f0) > 1e-6 * std::abs(f0))
        throw Error(ErrorCode::BranchCrossing, "circle encloses a square-root branch point",
                    fmt(radius));
    return acc / static_cast<double>(samples);
}

cplx pole_position(const FixedPole& pole) {
    const double a = pole.mapping.scale;
    switch (pole.mapping.kind) {
        case MappingKind::Identity: return pole.location;
        case MappingKind::ExpReal: return std::log(pole.location) / a;
        case MappingKind::ExpImag:
        case MappingKind::ExpSquareWell: return cplx(0.0, -1.0) * std::log(pole.location) / a;
        case MappingKind::Inversion: break;
    }
    throw Error(ErrorCode::Contract, "the point at infinity has no finite position");
}

std::vector<PoleProbe> probe_fixed_poles(const PotentialSpec& spec, double E) {
    if (!is_susy(spec.family()))
        throw Error(ErrorCode::Contract, "pole probing is defined for the SUSY families");
    const double alpha = spec.param("alpha");
    std::vector<double> turns;
    if (E > 0.0) turns = swkb_turning_points(spec, E);

    std::vector<PoleProbe> out;
    for (const auto& pole : fixed_poles(spec)) {
        if (pole.at_infinity || pole.energy_dependent()) continue;
        const cplx x = pole_position(pole);
        double dist = kPi / alpha;  // spacing of the periodic pole lattice
        for (double t : turns) dist = std::min(dist, std::abs(x - t));
        double radius = 0.05 * dist;
        for (int attempt = 0;; ++attempt) {
            try {
                const cplx c = classical_integrand_residue(spec, x, E, radius);
                out.push_back({x, radius, c, gamma_contribution(pole, spec, E)});
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::BranchCrossing || attempt == 4) throw;
                radius *= 0.5;
            }
        }
    }
    return out;
}

}  // namespace qhj
