#pragma once

#include <cmath>
#include <stdexcept>

namespace cskct {

/// Adaptive Simpson integration with an embedded |S_fine - S_coarse|/15 error
/// estimate.  The tolerance is split across bisections, so the returned value
/// carries an absolute error of about abs_tol on smooth integrands.
template <typename F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: abs_tol must be > 0");
    if (a == b) return 0.0;

    struct Impl {
        const F& f;
        int max_depth;

        double simpson(double x0, double x2, double f0, double f1, double f2) const {
            return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
        }

        double recurse(double x0, double x2, double f0, double f1, double f2,
                       double whole, double tol, int depth) const {
            double xm = 0.5 * (x0 + x2);
            double xl = 0.5 * (x0 + xm);
            double xr = 0.5 * (xm + x2);
            double fl = f(xl);
            double fr = f(xr);
            double left = simpson(x0, xm, f0, fl, f1);
            double right = simpson(xm, x2, f1, fr, f2);
            double err = (left + right - whole) / 15.0;
            if (depth >= max_depth || std::abs(err) <= tol) {
                return left + right + err;  // Richardson extrapolation
            }
            return recurse(x0, xm, f0, fl, f1, left, 0.5 * tol, depth + 1) +
                   recurse(xm, x2, f1, fr, f2, right, 0.5 * tol, depth + 1);
        }
    };

    Impl impl{f, 60};
    double fa = f(a);
    double fm = f(0.5 * (a + b));
    double fb = f(b);
    double whole = impl.simpson(a, b, fa, fm, fb);
    return impl.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
}

} // namespace cskct
