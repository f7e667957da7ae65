#pragma once

#include <cmath>
#include <stdexcept>

namespace qel {

/// Bisection for a sign change of `f` on [lo, hi]. Stops once the bracket is
/// narrower than `x_tol` or |f(mid)| <= f_tol.
/// Throws std::invalid_argument when f(lo) and f(hi) have the same strict sign.
template <typename F>
double bisect(F&& f, double lo, double hi, double x_tol, double f_tol = 0.0, int max_iter = 200) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) throw std::invalid_argument("bisect: root not bracketed");
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (std::abs(f_mid) <= f_tol) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qel
