#pragma once

// Real-argument special functions: log-gamma, digamma, polygamma, log Barnes G,
// plus closed forms for partial sums of polygamma at half-integer-spaced arguments.
// Everything works in log/double domain; arguments are shifted upward by the
// functional equation until an asymptotic expansion with Bernoulli coefficients
// applies.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace betadel {

inline constexpr int kMaxPolygammaOrder = 12;

namespace detail {

// B_2, B_4, ..., B_24
inline constexpr double kBernoulli2n[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

[[noreturn]] inline void domain_fail(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

} // namespace detail

// log Gamma(x) for x > 0. Relative error below 1e-14 for x >= 0.5.
inline double log_gamma(double x) {
    if (!(x > 0.0)) detail::domain_fail("log_gamma", x);
    // Shift into the asymptotic region, collecting the product in log space.
    double shift = 0.0;
    while (x < 12.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    double series = 0.0;
    double xpow = 1.0 / x; // x^{-(2n-1)}
    for (int n = 1; n <= 9; ++n) {
        series += detail::kBernoulli2n[n - 1] / (2.0 * n * (2.0 * n - 1.0)) * xpow;
        xpow *= x2;
    }
    constexpr double half_log_2pi = 0.91893853320467274178;
    return shift + (x - 0.5) * std::log(x) - x + half_log_2pi + series;
}

// psi(x) = d/dx log Gamma(x), x > 0.
inline double digamma(double x) {
    if (!(x > 0.0)) detail::domain_fail("digamma", x);
    double acc = 0.0;
    while (x < 16.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    double series = 0.0;
    double xpow = x2;
    for (int n = 1; n <= 9; ++n) {
        series += detail::kBernoulli2n[n - 1] / (2.0 * n) * xpow;
        xpow *= x2;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

// psi^{(m)}(x) for 0 <= m <= kMaxPolygammaOrder, x > 0.
inline double polygamma(int m, double x) {
    if (m < 0 || m > kMaxPolygammaOrder)
        throw std::invalid_argument("polygamma: order " + std::to_string(m) +
                                    " outside supported range [0, " +
                                    std::to_string(kMaxPolygammaOrder) + "]");
    if (!(x > 0.0)) detail::domain_fail("polygamma", x);
    if (m == 0) return digamma(x);

    // Recurrence psi^{(m)}(x) = psi^{(m)}(x+1) + (-1)^m m!/x^{m+1}, applied in
    // the "sum of reflections" direction so we can add the pole terms directly.
    const double threshold = 16.0 + m;
    double acc = 0.0;
    while (x < threshold) {
        acc += std::pow(x, -(m + 1));
        x += 1.0;
    }
    // Asymptotic expansion of (-1)^{m+1} psi^{(m)}(x): all terms positive.
    // (m-1)!/x^m + m!/(2 x^{m+1}) + sum_n B_{2n} (2n+m-1)!/((2n)! x^{2n+m})
    double mfac = 1.0; // (m-1)!
    for (int j = 2; j < m; ++j) mfac *= j;
    const double xm = std::pow(x, -m);
    double series = mfac * xm * (1.0 + 0.5 * m / x);
    const double x2 = 1.0 / (x * x);
    double coef = mfac; // becomes (2n+m-1)!/(2n)! as the loop multiplies ratios in
    double xpow = xm * x2;
    for (int n = 1; n <= 9; ++n) {
        // coef = (2n+m-1)! / (2n)!
        coef *= (2.0 * n + m - 1.0) / (2.0 * n);
        coef *= (2.0 * n + m - 2.0) / (2.0 * n - 1.0);
        series += detail::kBernoulli2n[n - 1] * coef * xpow;
        xpow *= x2;
    }
    const double total = m * mfac * acc + series;
    return (m % 2 == 0) ? -total : total;
}

// log G(x) for the Barnes G-function, x > 0. G(1) = 1, G(x+1) = Gamma(x) G(x).
inline double log_barnes_g(double x) {
    if (!(x > 0.0)) detail::domain_fail("log_barnes_g", x);
    // Climb until x - 1 >= 20, where the asymptotic expansion is accurate,
    // then subtract the collected log Gamma factors.
    double acc = 0.0;
    while (x < 21.0) {
        acc -= log_gamma(x);
        x += 1.0;
    }
    const double z = x - 1.0;
    constexpr double log_glaisher = 0.24875447703378425881; // log A, A = Glaisher-Kinkelin
    const double z2 = 1.0 / (z * z);
    // sum_k B_{2k+2} / (2k (2k+1) (2k+2) z^{2k})
    double series = 0.0;
    double zpow = z2;
    for (int k = 1; k <= 8; ++k) {
        series += detail::kBernoulli2n[k] /
                  (2.0 * k * (2.0 * k + 1.0) * (2.0 * k + 2.0)) * zpow;
        zpow *= z2;
    }
    const double logz = std::log(z);
    return acc + 0.25 * z * z + z * log_gamma(z + 1.0) -
           (0.5 * z * (z + 1.0) + 1.0 / 12.0) * logz - log_glaisher + series;
}

namespace detail {

inline void halfsum_check_args(const char* fn, int k, double a) {
    if (k < 2) throw std::invalid_argument(std::string(fn) + ": k must be >= 2");
    if (!(a > 0.0)) domain_fail(fn, a);
}

} // namespace detail

// Closed form for (1/2) sum_{j=1}^{k} psi((j+a)/2), k >= 2, a > 0.
inline double digamma_halfsum(int k, double a) {
    detail::halfsum_check_args("digamma_halfsum", k, a);
    const int c = k % 2;
    constexpr double log2 = 0.69314718055994530942;
    return (0.5 * (k - c) + 0.5 * a - 0.5) * digamma(a + k - c - 1.0) +
           0.5 * c * digamma(k + a - 1.0) + 0.25 * digamma(0.5 * (k + a)) -
           (0.5 * a - 0.5) * digamma(a + 1.0) - 0.25 * digamma(0.5 * a + 1.0) -
           0.5 * k * (1.0 + log2) + 1.0 + 0.5 * c;
}

// Closed form for (1/4) sum_{j=1}^{k} psi'((j+a)/2), k >= 2, a > 0.
inline double trigamma_halfsum(int k, double a) {
    detail::halfsum_check_args("trigamma_halfsum", k, a);
    const int c = k % 2;
    const double K = k + a - c + 1.0;
    return 0.5 * (digamma(K) - digamma(a + 1.0)) +
           0.5 * a * (polygamma(1, K) - polygamma(1, a + 1.0)) -
           0.125 * (polygamma(1, 0.5 * K) - polygamma(1, 0.5 * (a + 1.0))) +
           0.5 * (k - c) * polygamma(1, K) + 0.25 * c * polygamma(1, 0.5 * (k + a));
}

} // namespace betadel
