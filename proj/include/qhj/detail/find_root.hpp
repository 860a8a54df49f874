#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qhj/errors.hpp"

namespace qhj {

/// Bracketed root of f on [lo, hi] to |dE| <= tol (1 + |E|).
double find_root(const auto& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw Error(ErrorCode::NoBoundState, "root is not bracketed");
    std::uintmax_t iters = 200;
    auto done = [tol](double a, double b) {
        return std::abs(b - a) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
    };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iters);
    if (iters >= 200 && !done(a, b))
        throw Error(ErrorCode::Convergence, "root finder hit its iteration cap");
    return 0.5 * (a + b);
}

}  // namespace qhj
