#include <doctest.h>

#include <cmath>

#include "matrix.hpp"
#include "qhj/errors.hpp"
#include "qhj/residues.hpp"

using namespace qhj;

namespace {
const cplx I(0.0, 1.0);

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

const FixedPole& pole_at(const std::vector<FixedPole>& poles, cplx loc) {
    for (const auto& p : poles)
        if (!p.at_infinity && std::abs(p.location - loc) < 1e-12) return p;
    throw std::runtime_error("pole not found");
}

const FixedPole& infinity_of(const std::vector<FixedPole>& poles) {
    for (const auto& p : poles)
        if (p.at_infinity) return p;
    throw std::runtime_error("no pole at infinity");
}
}  // namespace

TEST_SUITE("residues") {

TEST_CASE("fixed pole locations") {
    auto locs = [](const PotentialSpec& sp) {
        std::vector<cplx> out;
        int inf = 0;
        for (const auto& p : fixed_poles(sp)) {
            if (p.at_infinity) ++inf;
            else out.push_back(p.location);
        }
        CHECK(inf == 1);
        return out;
    };
    auto eck = locs(PotentialSpec::susy(Family::Eckart, 1.0, 4.0, 1.0));
    REQUIRE(eck.size() == 3);
    for (cplx z : {cplx(0.0), cplx(1.0), cplx(-1.0)})
        CHECK(std::any_of(eck.begin(), eck.end(), [&](cplx w) { return std::abs(w - z) < 1e-15; }));
    auto s2 = locs(PotentialSpec::susy(Family::ScarfII, 2.0, 1.0, 1.0));
    REQUIRE(s2.size() == 3);
    for (cplx z : {cplx(0.0), I, -I})
        CHECK(std::any_of(s2.begin(), s2.end(), [&](cplx w) { return std::abs(w - z) < 1e-15; }));
    CHECK(locs(PotentialSpec::harmonic(1.0)).empty());
}

TEST_CASE("both candidates solve the pole quadratic") {
    for (const auto& sp : testing::family_matrix()) {
        const double E = closed_form_energy(sp, 0);
        for (const auto& p : fixed_poles(sp)) {
            if (p.kind == PoleKind::Infinity && sp.family() != Family::HarmonicOscillator &&
                sp.family() != Family::HalfLineOscillator && p.sigma == cplx(0.0))
                continue;
            std::array<cplx, 2> c;
            try {
                c = residue_candidates(p, sp, E);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::Contract);
                continue;
            }
            for (cplx b : c) {
                const cplx q = b * b + I * sp.hbar() * p.sigma * b - p.double_pole_coeff(E);
                CHECK(std::abs(q) <= 1e-12 * (1.0 + std::abs(p.double_pole_coeff(E))));
            }
        }
    }
}

TEST_CASE("Eckart y = 1 candidates and anchored branch") {
    const auto sp = PotentialSpec::susy(Family::Eckart, 1.0, 4.0, 1.0);
    const auto poles = fixed_poles(sp);
    const auto& p = pole_at(poles, 1.0);
    const auto c = residue_candidates(p, sp);
    const cplx a = -I * std::sqrt(2.0), b = I * (std::sqrt(2.0) - 1.0);
    CHECK(((near(c[0], a, 1e-12) && near(c[1], b, 1e-12)) || (near(c[0], b, 1e-12) && near(c[1], a, 1e-12))));
    CHECK(near(select_branch(p, c, sp), a, 1e-12));
    CHECK(near(superpotential_anchor(p, sp), a, 1e-10));
    CHECK(near(sp.param("alpha") * gamma_contribution(p, sp, 3.0), std::sqrt(2.0), 1e-12));
}

TEST_CASE("oscillator branches") {
    const auto ho = PotentialSpec::harmonic(1.0);
    const auto& inf = infinity_of(fixed_poles(ho));
    CHECK(near(select_branch(inf, residue_candidates(inf, ho), ho), I, 1e-14));
    for (double E : {0.5, 2.0, 3.5})
        CHECK(near(infinity_contribution(ho, E), (2.0 * E - 1.0) / 2.0, 1e-14));

    const auto hl = PotentialSpec::half_line(1.0);
    for (const auto& p : fixed_poles(hl)) {
        if (p.kind != PoleKind::BoundaryWall) continue;
        const auto c = residue_candidates(p, hl);
        CHECK(((near(c[0], 0.0, 1e-15) && near(c[1], -I, 1e-15)) ||
               (near(c[1], 0.0, 1e-15) && near(c[0], -I, 1e-15))));
        CHECK(near(select_branch(p, c, hl), -I, 1e-15));
        CHECK(near(gamma_contribution(p, hl, 2.0), 1.0, 1e-15));
    }
}

TEST_CASE("Eckart energy-dependent terms") {
    // magnitudes sqrt(2m(A^2 + B^2/A^2 +- 2B - E)); signs follow the anchor
    // i sqrt(2m) w at y = 0 (w -> A + B/A) and at infinity (w -> B/A - A)
    const auto sp = PotentialSpec::susy(Family::Eckart, 1.0, 4.0, 1.0);
    const auto poles = fixed_poles(sp);
    const auto& y0 = pole_at(poles, 0.0);
    for (double E : {0.0, 4.0, 8.5}) {
        CHECK(near(gamma_contribution(y0, sp, E), -std::sqrt(2.0 * (25.0 - E)), 1e-12));
        CHECK(near(infinity_contribution(sp, E), -std::sqrt(2.0 * (9.0 - E)), 1e-12));
    }
}

TEST_CASE("Scarf II y = i selected residue gives the table value") {
    const auto sp = PotentialSpec::susy(Family::ScarfII, 2.0, 1.0, 1.0);
    for (const auto& rec : describe_poles(sp, 0.0))
        if (!rec.pole.at_infinity && std::abs(rec.pole.location - I) < 1e-12)
            CHECK(near(rec.gamma, std::sqrt(2.0) * (I * 1.0 - 2.0), 1e-12));
}

TEST_CASE("contract and window errors") {
    const auto sp = PotentialSpec::susy(Family::Eckart, 1.0, 4.0, 1.0);
    const auto poles = fixed_poles(sp);
    CHECK_THROWS_AS(gamma_contribution(infinity_of(poles), sp, 1.0), Error);
    const auto [lo, hi] = branch_window(sp);
    CHECK(hi == doctest::Approx(9.0));
    CHECK_NOTHROW(gamma_contribution(pole_at(poles, 0.0), sp, hi + 1.0));
    try {
        infinity_contribution(sp, hi + 1.0);
        FAIL("window not enforced");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Window);
    }
}

TEST_CASE("gamma values scale with hbar as the residues do") {
    const auto a = PotentialSpec::half_line(1.0, {0.3, 1.0});
    for (const auto& p : fixed_poles(a))
        if (p.kind == PoleKind::BoundaryWall) CHECK(near(gamma_contribution(p, a, 1.0), 0.3, 1e-15));
}

}
