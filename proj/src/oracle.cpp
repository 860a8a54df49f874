#include "qhj/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "qhj/detail/find_root.hpp"

namespace qhj {

namespace {

constexpr double kRescale = 1e100;
constexpr double kTailAction = 36.0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

double length_scale(const PotentialSpec& spec) {
    switch (spec.family()) {
        case Family::HarmonicOscillator:
        case Family::HalfLineOscillator:
            return std::sqrt(spec.hbar() / (spec.mass() * spec.param("omega")));
        case Family::SquareWell: return spec.param("L");
        default: return 1.0 / spec.param("alpha");
    }
}

enum class EndKind { Soft, Hard, Singular };

constexpr int kSeries = 9;

struct End {
    EndKind kind = EndKind::Soft;
    double wall = 0.0;
    double lambda = 1.0;  // psi ~ r^lambda, r = |x - wall|
    // r^2 2m V / hbar^2 = sum_k g[k] r^k near the wall
    std::array<double, kSeries> g{};
};

// Taylor coefficients of r^2 2m V(wall + inward r) / hbar^2 from a
// polynomial interpolant on Chebyshev nodes in r.
std::array<double, kSeries> wall_series(const PotentialSpec& spec, double wall, double inward) {
    const double R = 0.2 * length_scale(spec);
    const double k = 2.0 * spec.mass() / (spec.hbar() * spec.hbar());
    double M[kSeries][kSeries + 1];
    for (int i = 0; i < kSeries; ++i) {
        const double t = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / kSeries));
        const double r = R * t;
        double tp = 1.0;
        for (int j = 0; j < kSeries; ++j, tp *= t) M[i][j] = tp;
        M[i][kSeries] = r * r * k * potential_value(spec, wall + inward * r);
    }
    for (int p = 0; p < kSeries; ++p) {
        int piv = p;
        for (int r = p + 1; r < kSeries; ++r)
            if (std::abs(M[r][p]) > std::abs(M[piv][p])) piv = r;
        std::swap(M[p], M[piv]);
        for (int r = p + 1; r < kSeries; ++r) {
            const double f = M[r][p] / M[p][p];
            for (int c = p; c <= kSeries; ++c) M[r][c] -= f * M[p][c];
        }
    }
    std::array<double, kSeries> a{};
    for (int r = kSeries - 1; r >= 0; --r) {
        double acc = M[r][kSeries];
        for (int c = r + 1; c < kSeries; ++c) acc -= M[r][c] * a[c];
        a[r] = acc / M[r][r];
    }
    double Rk = 1.0;
    for (int j = 0; j < kSeries; ++j, Rk *= R) a[j] /= Rk;
    return a;
}

End classify(const PotentialSpec& spec, double wall, double inward, bool finite) {
    if (!finite) return {};
    End e{EndKind::Hard, wall, 1.0, wall_series(spec, wall, inward)};
    if (std::abs(e.g[0]) < 1e-8) return e;
    e.kind = EndKind::Singular;
    e.lambda = 0.5 + std::sqrt(0.25 + e.g[0]);
    return e;
}

// Frobenius series r^lambda sum c_k r^k of the regular solution at energy E.
double regular_solution(const End& e, double E, double two_m_over_hbar2, double r) {
    std::array<double, kSeries> g = e.g;
    g[2] -= two_m_over_hbar2 * E;
    std::array<double, kSeries> c{};
    c[0] = 1.0;
    double sum = 1.0, rk = 1.0;
    for (int k = 1; k < kSeries; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += g[j] * c[k - j];
        const double lk = e.lambda + k;
        c[k] = acc / (lk * (lk - 1.0) - g[0]);
        rk *= r;
        sum += c[k] * rk;
    }
    return std::pow(r, e.lambda) * sum;
}

struct Ends {
    End left, right;
};

Ends ends_of(const PotentialSpec& spec, const GridSpec& grid) {
    const Domain d = spec.domain();
    const double near = std::max(1e-3 * (grid.x_max - grid.x_min), 0.05 * length_scale(spec));
    Ends e;
    if (std::isfinite(d.lo) && grid.x_min - d.lo <= near) e.left = classify(spec, d.lo, 1.0, true);
    if (std::isfinite(d.hi) && d.hi - grid.x_max <= near)
        e.right = classify(spec, d.hi, -1.0, true);
    return e;
}

// Potential and Numerov weights precomputed on a grid.
struct Layout {
    GridSpec grid;
    Ends ends;
    std::vector<double> V;
    double two_m_over_hbar2;
};

Layout make_layout(const PotentialSpec& spec, const GridSpec& grid) {
    if (!(grid.x_min < grid.x_max) || grid.n_points < 1001 || grid.n_points % 2 == 0)
        throw Error(ErrorCode::InvalidParameter,
                    "grid needs x_min < x_max and an odd point count of at least 1001");
    Layout lay{grid, ends_of(spec, grid), {}, 2.0 * spec.mass() / (spec.hbar() * spec.hbar())};
    lay.V.resize(static_cast<std::size_t>(grid.n_points));
    const Domain d = spec.domain();
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.x(j);
        lay.V[j] = (x <= d.lo || x >= d.hi) ? 0.0 : potential_value(spec, x);
    }
    return lay;
}

std::pair<double, double> seeds(const Layout& lay, const End& end, double E, double x0,
                                double x1) {
    if (end.kind != EndKind::Singular) return {0.0, 1.0};
    const double k = lay.two_m_over_hbar2;
    const double s0 = regular_solution(end, E, k, std::abs(x0 - end.wall));
    const double s1 = regular_solution(end, E, k, std::abs(x1 - end.wall));
    return {1.0, s1 / s0};
}

// Numerov recursion from index `from` toward `to` (either direction), in the
// summed form phi_{j+1} = phi_j + D_j, D_j = D_{j-1} + 12 t_j psi_j with
// phi = (1 - t) psi and t = h^2 f / 12. The three-term form loses the energy
// dependence to rounding once t drops near machine epsilon.
// Calls visit(j, psi_j, 1 - t_j) for every index in order; rescales on
// growth and reports it through rescale(factor).
template <class Visit, class Rescale>
void shoot(const Layout& lay, double E, int from, int to, std::pair<double, double> seed,
           Visit&& visit, Rescale&& rescale) {
    const double h = lay.grid.step();
    const double c = h * h / 12.0 * lay.two_m_over_hbar2;
    auto t = [&](int j) { return c * (lay.V[j] - E); };
    const int dir = to >= from ? 1 : -1;
    double t0 = t(from), t1 = t(from + dir);
    visit(from, seed.first, 1.0 - t0);
    double phi = (1.0 - t1) * seed.second;
    double delta = phi - (1.0 - t0) * seed.first;
    double tj = t1;
    for (int j = from + dir;; j += dir) {
        const double psi = phi / (1.0 - tj);
        visit(j, psi, 1.0 - tj);
        if (j == to) break;
        delta += 12.0 * tj * psi;
        phi += delta;
        if (!std::isfinite(phi))
            throw Error(ErrorCode::OracleFailure, "Numerov recursion overflowed", fmt(E));
        if (std::abs(phi) > kRescale) {
            phi /= kRescale;
            delta /= kRescale;
            rescale(kRescale);
        }
        tj = t(j + dir);
    }
}

int match_index(const Layout& lay, double E, MatchPoint match) {
    const int n = lay.grid.n_points;
    int m = n / 2;
    if (match == MatchPoint::RightTurningPoint) {
        m = -1;
        for (int j = n - 1; j >= 0; --j)
            if (lay.V[j] < E) {
                m = j;
                break;
            }
        if (m < 0) m = n / 2;
    }
    return std::clamp(m, 2, n - 4);
}

unsigned count_sign_changes(const Layout& lay, double E) {
    const int n = lay.grid.n_points;
    unsigned count = 0;
    int last = 0;
    shoot(
        lay, E, 0, n - 1, seeds(lay, lay.ends.left, E, lay.grid.x(0), lay.grid.x(1)),
        [&](int, double p, double) {
            const int s = (p > 0.0) - (p < 0.0);
            if (s != 0) {
                if (last != 0 && s != last) ++count;
                last = s;
            }
        },
        [](double) {});
    return count;
}

double mismatch(const Layout& lay, double E, MatchPoint match) {
    const int n = lay.grid.n_points;
    const int m = match_index(lay, E, match);
    double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    shoot(
        lay, E, 0, m + 1, seeds(lay, lay.ends.left, E, lay.grid.x(0), lay.grid.x(1)),
        [&](int j, double p, double u) {
            if (j == m) l0 = u * p;
            if (j == m + 1) l1 = u * p;
        },
        [&](double f) { l0 /= f; });
    shoot(
        lay, E, n - 1, m, seeds(lay, lay.ends.right, E, lay.grid.x(n - 1), lay.grid.x(n - 2)),
        [&](int j, double p, double u) {
            if (j == m + 1) r1 = u * p;
            if (j == m) r0 = u * p;
        },
        [&](double f) { r1 /= f; });
    const double w = l1 * r0 - l0 * r1;
    return w / (std::hypot(l0, l1) * std::hypot(r0, r1));
}

std::vector<double> matched_wavefunction(const Layout& lay, double E, MatchPoint match) {
    const int n = lay.grid.n_points;
    const int m = match_index(lay, E, match);
    std::vector<double> psi(static_cast<std::size_t>(n), 0.0);
    auto fill = [&](int from, int to, const End& end, int next) {
        shoot(
            lay, E, from, to, seeds(lay, end, E, lay.grid.x(from), lay.grid.x(next)),
            [&](int j, double p, double) { psi[j] = p; },
            [&](double f) {
                const int lo = std::min(from, to), hi = std::max(from, to);
                for (int j = lo; j <= hi; ++j) psi[j] /= f;
            });
    };
    fill(0, m, lay.ends.left, 1);
    const double left_at_m = psi[m];
    std::vector<double> left(psi.begin(), psi.begin() + m + 1);
    fill(n - 1, m, lay.ends.right, n - 2);
    const double right_at_m = psi[m];
    if (right_at_m == 0.0 || left_at_m == 0.0)
        throw Error(ErrorCode::OracleFailure, "wavefunction vanishes at the match point", fmt(E));
    const double k = left_at_m / right_at_m;
    for (int j = m; j < n; ++j) psi[j] *= k;
    std::copy(left.begin(), left.end(), psi.begin());
    return psi;
}

// Outer edge of a soft end: march from the turning point until the tail
// action reaches kTailAction or the cap.
double soft_edge(const PotentialSpec& spec, double E, double turn, double dir, double cap) {
    const double dx = length_scale(spec) / 200.0;
    const double k = 2.0 * spec.mass() / (spec.hbar() * spec.hbar());
    double x = turn, action = 0.0;
    while (action < kTailAction && std::abs(x - turn) < cap) {
        x += dir * dx;
        action += std::sqrt(std::max(0.0, k * (potential_value(spec, x) - E))) * dx;
    }
    return x;
}

// Eigenvalue n on a fixed grid: node bisection brackets the root of the
// matching mismatch, which is then polished.
double solve_on_layout(const Layout& lay, unsigned n, double vmin, double e_top,
                       const OracleConfig& cfg) {
    auto bisect_count = [&](unsigned above, double lo, double hi) {
        // smallest energy with at least `above` nodes, to tolerance
        for (int i = 0; i < cfg.max_bisections; ++i) {
            if (hi - lo <= cfg.energy_tol * (1.0 + std::abs(hi))) return hi;
            const double mid = 0.5 * (lo + hi);
            if (count_sign_changes(lay, mid) >= above) hi = mid;
            else lo = mid;
        }
        throw Error(ErrorCode::OracleFailure, "node bisection did not converge",
                    std::to_string(n));
    };

    const double hi = bisect_count(n + 1, vmin, e_top);
    const double lo = n == 0 ? vmin : bisect_count(n, vmin, hi);
    auto f = [&](double E) { return mismatch(lay, E, cfg.match_point); };
    const double flo = f(lo), fhi = f(hi);
    if ((flo < 0.0) == (fhi < 0.0)) return hi;  // the node jump already sits on the root
    try {
        return find_root(f, lo, hi, cfg.energy_tol);
    } catch (const Error& e) {
        throw Error(ErrorCode::OracleFailure, e.what(), std::to_string(n));
    }
}

}  // namespace

GridSpec default_grid(const PotentialSpec& spec, double e_top, int n_points) {
    const Domain d = spec.domain();
    const double scale = length_scale(spec);
    const double cap = (is_susy(spec.family()) ? 400.0 : 60.0) * scale;

    std::vector<double> turns;
    try {
        turns = turning_points(spec, e_top);
    } catch (const Error&) {
    }
    const auto [scan_lo, scan_hi] = scan_interval(spec);
    const double center = 0.5 * (scan_lo + scan_hi);
    const double x_left_turn = turns.empty() ? center : turns.front();
    const double x_right_turn = turns.empty() ? center : turns.back();

    GridSpec g{std::isfinite(d.lo) ? d.lo : soft_edge(spec, e_top, x_left_turn, -1.0, cap),
               std::isfinite(d.hi) ? d.hi : soft_edge(spec, e_top, x_right_turn, 1.0, cap),
               n_points};

    // A few hundred steps per radian of the fastest local oscillation.
    const double kmax =
        std::sqrt(2.0 * spec.mass() * std::max(e_top - potential_infimum(spec), 0.0)) /
        spec.hbar();
    const double h_max = 0.02 / std::max(kmax, 1.0 / scale);
    g.n_points = std::max(n_points, static_cast<int>(std::ceil((g.x_max - g.x_min) / h_max)) + 1);
    if (g.n_points % 2 == 0) ++g.n_points;

    // Singular walls are replaced by the Frobenius seed over the first 2% of
    // the length scale, and never closer than the Numerov weight allows.
    const double h = g.step();
    auto standoff = [&](const End& e) {
        const double gw = e.lambda * (e.lambda - 1.0);
        return std::max(0.02 * scale, h * std::max(1.0, std::sqrt(std::abs(gw) / 3.0)));
    };
    if (std::isfinite(d.lo))
        if (const End e = classify(spec, d.lo, 1.0, true); e.kind == EndKind::Singular)
            g.x_min = d.lo + standoff(e);
    if (std::isfinite(d.hi))
        if (const End e = classify(spec, d.hi, -1.0, true); e.kind == EndKind::Singular)
            g.x_max = d.hi - standoff(e);
    return g;
}

std::vector<double> integrate_wavefunction(const PotentialSpec& spec, double E,
                                           const GridSpec& grid, MatchPoint match) {
    return matched_wavefunction(make_layout(spec, grid), E, match);
}

unsigned count_nodes(const PotentialSpec& spec, double E, const GridSpec& grid) {
    return count_sign_changes(make_layout(spec, grid), E);
}

double matching_mismatch(const PotentialSpec& spec, double E, const GridSpec& grid,
                         MatchPoint match) {
    return mismatch(make_layout(spec, grid), E, match);
}

double oracle_eigenvalue(const PotentialSpec& spec, unsigned n, const OracleConfig& cfg) {
    if (!(cfg.energy_tol > 0.0))
        throw Error(ErrorCode::InvalidParameter, "oracle energy tolerance must be positive");
    if (auto top = max_level(spec); top && n > *top)
        throw Error(ErrorCode::NoBoundState,
                    "level " + std::to_string(n) + " is above the highest bound state",
                    std::to_string(n));

    const double vmin = potential_infimum(spec);
    const double thr = continuum_threshold(spec);
    double scale = is_susy(spec.family()) ? spec.kappa() * spec.kappa() : ground_shift(spec);

    // Grow the top energy until the grid holds more than n nodes below it.
    double e_top = vmin + scale;
    Layout lay;
    for (int i = 0;; ++i) {
        if (std::isfinite(thr) && e_top >= thr) e_top = thr - 1e-9 * (1.0 + std::abs(thr));
        lay = make_layout(spec, default_grid(spec, e_top, cfg.n_points));
        if (count_sign_changes(lay, e_top) >= n + 1) break;
        if (i > 60 || (std::isfinite(thr) && e_top >= thr - 2e-9 * (1.0 + std::abs(thr))))
            throw Error(ErrorCode::OracleFailure,
                        "no bracket for level " + std::to_string(n) + " below " + fmt(e_top),
                        std::to_string(n));
        e_top = vmin + 2.0 * (e_top - vmin);
    }

    // The first grid is sized for e_top, which can sit at the continuum
    // threshold; redo the search on a grid sized for the level itself.
    const double first = solve_on_layout(lay, n, vmin, e_top, cfg);
    const double e_hi = first + 0.5 * (e_top - first);
    Layout tight = make_layout(spec, default_grid(spec, e_hi, cfg.n_points));
    if (tight.grid.step() >= lay.grid.step() || count_sign_changes(tight, e_hi) < n + 1)
        return first;
    return solve_on_layout(tight, n, vmin, e_hi, cfg);
}

cplx momentum_function_on_axis(const PotentialSpec& spec, double E, double x,
                               const GridSpec& grid) {
    const double h = grid.step();
    if (!(x > grid.x_min + 2.0 * h && x < grid.x_max - 2.0 * h))
        throw Error(ErrorCode::Domain, "x = " + fmt(x) + " is not inside the grid", fmt(x));
    const auto psi = integrate_wavefunction(spec, E, grid);
    const int j0 = static_cast<int>(std::lround((x - grid.x_min) / h));
    double value = 0.0, slope = 0.0;
    for (int a = -2; a <= 2; ++a) {
        const double xa = grid.x(j0 + a);
        double la = 1.0, dla = 0.0;
        for (int b = -2; b <= 2; ++b) {
            if (b == a) continue;
            const double xb = grid.x(j0 + b);
            const double t = (x - xb) / (xa - xb);
            dla = dla * t + la / (xa - xb);
            la *= t;
        }
        value += psi[j0 + a] * la;
        slope += psi[j0 + a] * dla;
    }
    double peak = 0.0;
    for (double p : psi) peak = std::max(peak, std::abs(p));
    if (std::abs(value) < 1e-12 * peak)
        throw Error(ErrorCode::NearNode, "x = " + fmt(x) + " sits on a node of psi", fmt(x));
    return cplx(0.0, -spec.hbar()) * (slope / value);
}

std::vector<double> wavefunction_nodes(const PotentialSpec& spec, double E, const GridSpec& grid) {
    const auto psi = integrate_wavefunction(spec, E, grid);
    double peak = 0.0;
    for (double p : psi) peak = std::max(peak, std::abs(p));
    std::vector<double> out;
    for (int j = 1; j < grid.n_points; ++j) {
        const double a = psi[j - 1], b = psi[j];
        // ignore sign flips of the numerically dead tails
        if (std::max(std::abs(a), std::abs(b)) < 1e-8 * peak) continue;
        if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
            out.push_back(grid.x(j - 1) + grid.step() * a / (a - b));
    }
    return out;
}

cplx moving_pole_residue(const PotentialSpec& spec, double E, double x0, const GridSpec& grid) {
    const double h = grid.step();
    // Normal equations for q(x) = c/t + d + e t, t = x - x0, complex samples.
    double M[3][3] = {};
    cplx rhs[3] = {};
    for (int sgn : {-1, 1})
        for (int k : {2, 3, 4}) {
            const double t = sgn * k * h;
            const cplx q = momentum_function_on_axis(spec, E, x0 + t, grid);
            const double basis[3] = {1.0 / t, 1.0, t};
            for (int r = 0; r < 3; ++r) {
                rhs[r] += basis[r] * q;
                for (int c = 0; c < 3; ++c) M[r][c] += basis[r] * basis[c];
            }
        }
    // Gaussian elimination on the 3x3 system
    for (int p = 0; p < 3; ++p)
        for (int r = p + 1; r < 3; ++r) {
            const double f = M[r][p] / M[p][p];
            for (int c = p; c < 3; ++c) M[r][c] -= f * M[p][c];
            rhs[r] -= f * rhs[p];
        }
    cplx sol[3];
    for (int r = 2; r >= 0; --r) {
        cplx acc = rhs[r];
        for (int c = r + 1; c < 3; ++c) acc -= M[r][c] * sol[c];
        sol[r] = acc / M[r][r];
    }
    return sol[0];
}

}  // namespace qhj
