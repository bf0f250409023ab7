#include "cskct/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace cskct {

namespace {

// Tail of the Stirling series for log(k!), i.e. log(k!) minus the
// (k+1/2)log(k+1) - (k+1) + log(sqrt(2*pi)) approximation.
double stirling_tail(double k) {
    static const double table[] = {
        0.0810614667953272,  0.0413406959554092,  0.0276779256849983, 0.02079067210376509,
        0.0166446911898211,  0.0138761288230707,  0.0118967099458917, 0.0104112652619720,
        0.00925546218271273, 0.00833056343336287,
    };
    if (k <= 9.0) return table[static_cast<int>(k)];
    double kp1sq = (k + 1.0) * (k + 1.0);
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / 1260.0 / kp1sq) / kp1sq) / (k + 1.0);
}

// Exact inversion: walk the CDF with the pmf recurrence.  Intended for
// small n*p where the walk is short.
std::int64_t binomial_inversion(SplitRng& rng, std::int64_t n, double p) {
    const double q = 1.0 - p;
    const double log_q = std::log1p(-p);
    double pmf = std::exp(static_cast<double>(n) * log_q); // P(X = 0)
    double u = rng.next_double();
    std::int64_t x = 0;
    const double ratio = p / q;
    while (u > pmf) {
        u -= pmf;
        if (x >= n) return n; // fp leftovers
        pmf *= ratio * static_cast<double>(n - x) / static_cast<double>(x + 1);
        ++x;
    }
    return x;
}

// Transformed rejection with squeeze (Hormann's BTRS); requires
// n*p >= 10 and p <= 1/2.
std::int64_t binomial_btrs(SplitRng& rng, std::int64_t n, double p) {
    const double nd = static_cast<double>(n);
    const double q = 1.0 - p;
    const double spq = std::sqrt(nd * p * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = nd * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double r = p / q;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double m = std::floor((nd + 1.0) * p);

    for (;;) {
        double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        double us = 0.5 - std::abs(u);
        double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > nd) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kd);

        v = std::log(v * alpha / (a / (us * us) + b));
        double upper =
            (m + 0.5) * std::log((m + 1.0) / (r * (nd - m + 1.0))) +
            (nd + 1.0) * std::log((nd - m + 1.0) / (nd - kd + 1.0)) +
            (kd + 0.5) * std::log(r * (nd - kd + 1.0) / (kd + 1.0)) +
            stirling_tail(m) + stirling_tail(nd - m) - stirling_tail(kd) - stirling_tail(nd - kd);
        if (v <= upper) return static_cast<std::int64_t>(kd);
    }
}

} // namespace

std::int64_t sample_binomial(SplitRng& rng, std::int64_t n, double p) {
    if (n < 0) throw std::domain_error("sample_binomial: n must be >= 0");
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("sample_binomial: p must be in [0,1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - sample_binomial(rng, n, 1.0 - p);
    if (static_cast<double>(n) * p < 30.0) return binomial_inversion(rng, n, p);
    return binomial_btrs(rng, n, p);
}

std::int64_t sample_binomial_gaussian(SplitRng& rng, std::int64_t n, double p) {
    if (n < 0) throw std::domain_error("sample_binomial_gaussian: n must be >= 0");
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::domain_error("sample_binomial_gaussian: p must be in [0,1]");
    }
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(mean * (1.0 - p));
    const double draw = mean + sd * rng.next_normal();
    return std::clamp<std::int64_t>(std::llround(draw), 0, n);
}

} // namespace cskct
