#pragma once

// Closed-form constants, volume moments, cumulants, and limit-theorem
// quantities for the nu-weighted typical cell. Everything is assembled in log
// domain: the gamma arguments reach order d^2/2 and would overflow otherwise.

#include <betadel/params.hpp>
#include <betadel/specfun.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace betadel {

namespace detail {
inline constexpr double kLogPi = 1.1447298858494001741;
inline constexpr double kHalfLogPi = 0.57236494292470008707;
}

// The radial factor of the typical-cell density is r^{A-1} exp(-m r^c) with
// A = 2 d beta + d^2 + nu (d-1) + 1 and c = d + 1 + 2 beta.
inline double radius_shape(const ModelParams& p) {
    return 2.0 * p.d * p.beta + double(p.d) * p.d + p.nu * (p.d - 1.0) + 1.0;
}

inline double radius_power(const ModelParams& p) {
    return p.d + 1.0 + 2.0 * p.beta;
}

// Decay constant of the radial density, m = gamma Gamma(d/2+beta+1) / (sqrt(pi)
// Gamma((d+1)/2+beta+1)).
inline double log_m_const(const ModelParams& p) {
    validate(p);
    return std::log(p.gamma) + log_gamma(0.5 * p.d + p.beta + 1.0) -
           detail::kHalfLogPi - log_gamma(0.5 * (p.d + 1.0) + p.beta + 1.0);
}

inline double m_const(const ModelParams& p) { return std::exp(log_m_const(p)); }

// Normalizing constant of the height intensity: c_{d,beta} =
// Gamma(d/2+beta+1) / (pi^{d/2} Gamma(beta+1)).
inline double c_const(const ModelParams& p) {
    validate(p);
    return std::exp(log_gamma(0.5 * p.d + p.beta + 1.0) -
                    0.5 * p.d * detail::kLogPi - log_gamma(p.beta + 1.0));
}

namespace detail {

// sum_{i=1}^{k} log Gamma((i+x)/2), x > -1. Direct for small k; for large k the
// even/odd interleave collapses to four Barnes-G evaluations.
inline double lgamma_halfstep_sum(int k, double x) {
    if (k <= 0) return 0.0;
    if (k <= 256) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += log_gamma(0.5 * (i + x));
        return s;
    }
    const int n_odd = (k + 1) / 2, n_even = k / 2;
    const double a_odd = 0.5 * (x - 1.0), a_even = 0.5 * x;
    return log_barnes_g(a_odd + n_odd + 1.0) - log_barnes_g(a_odd + 1.0) +
           log_barnes_g(a_even + n_even + 1.0) - log_barnes_g(a_even + 1.0);
}

} // namespace detail

// log of the density normalizer alpha_{d,beta,nu} of the typical-cell
// representation (radius times d points in the unit ball).
inline double log_alpha(const ModelParams& p) {
    validate(p);
    const double d = p.d, b = p.beta, nu = p.nu;
    const double expo = d + (nu - 1.0) * (d - 1.0) / (d + 2.0 * b + 1.0);
    double sum_i = 0.0;
    for (int i = 1; i < p.d; ++i)
        sum_i += log_gamma(0.5 * i) - log_gamma(0.5 * (i + nu + 1.0));
    return -0.5 * d * (d - 1.0) * detail::kLogPi + (nu + 1.0) * log_gamma(d) +
           std::log(d + 1.0 + 2.0 * b) +
           log_gamma(0.5 * (d * (d + nu + 2.0 * b) - nu + 1.0)) -
           log_gamma(0.5 * d * (d + nu + 2.0 * b) + 1.0) - log_gamma(expo) +
           expo * log_m_const(p) +
           d * (log_gamma(0.5 * (d + nu) + b + 1.0) - log_gamma(b + 1.0)) + sum_i;
}

// log E[Vol^s] of the nu-weighted typical cell. Domain: s > -nu-1, with the
// boundary s = -nu-1 admitted only when every gamma argument stays positive.
inline double log_volume_moment(const ModelParams& p, double s) {
    validate(p);
    const double d = p.d, b = p.beta, nu = p.nu;
    if (s < -nu - 1.0)
        throw std::domain_error("log_volume_moment: s = " + std::to_string(s) +
                                " below the admissible range (s >= " +
                                std::to_string(-nu - 1.0) + ")");
    const double q = d + 2.0 * b + 1.0;
    const double args[] = {
        0.5 * (d * (d + 2.0 * b) + nu * (d - 1.0) + 1.0),
        0.5 * (d * (d + 2.0 * b) + (nu + s) * (d - 1.0) + 1.0),
        0.5 * d * (d + 2.0 * b + nu + s) + 1.0,
        0.5 * d * (d + 2.0 * b + nu) + 1.0,
        d + (nu + s - 1.0) * (d - 1.0) / q,
        d + (nu - 1.0) * (d - 1.0) / q,
        0.5 * (d + nu) + b + 1.0,
        0.5 * (d + nu + s) + b + 1.0,
        0.5 * (nu + s + 2.0),
    };
    for (double a : args)
        if (!(a > 0.0))
            throw std::domain_error(
                "log_volume_moment: gamma argument " + std::to_string(a) +
                " non-positive at s = " + std::to_string(s));
    const double t1 = -s * log_gamma(d);
    const double t2 = s * (d - 1.0) / q *
                      (detail::kHalfLogPi + log_gamma(0.5 * (d + 1.0) + b + 1.0) -
                       std::log(p.gamma) - log_gamma(0.5 * d + b + 1.0));
    const double t3 = log_gamma(args[0]) - log_gamma(args[1]);
    const double t4 = log_gamma(args[2]) - log_gamma(args[3]);
    const double t5 = log_gamma(args[4]) - log_gamma(args[5]);
    const double t6 = d * (log_gamma(args[6]) - log_gamma(args[7]));
    const double t7 = detail::lgamma_halfstep_sum(p.d - 1, nu + s + 1.0) -
                      detail::lgamma_halfstep_sum(p.d - 1, nu + 1.0);
    return t1 + t2 + t3 + t4 + t5 + t6 + t7;
}

struct CumulantReport {
    int order = 1;
    double value = 0.0;
    std::optional<double> bound; // Corollary bound, populated when applicable
};

// Upper bound on |c_m| for m >= 3 and d > max(4, 1-2beta-nu).
inline double corollary_cumulant_bound(const ModelParams& p, int m) {
    double fac = 1.0;
    for (int j = 2; j < m; ++j) fac *= j;
    return 18.0 * std::pow(p.beta + 2.0, m - 1) * fac /
           std::pow(p.nu + 2.0, m - 2);
}

// The general bound: valid for d >= 3, nu + 2 beta + d > 1, m >= 3.
inline double proposition_cumulant_bound(const ModelParams& p, int m) {
    double fac = 1.0;
    for (int j = 2; j < m; ++j) fac *= j;
    const double s = p.d + 2.0 * p.beta + p.nu;
    return (11.0 * p.d + 3.0 + 6.0 * std::pow(p.beta + 2.0, m - 1)) * fac /
               (4.0 * std::pow(s, m - 1)) +
           4.0 * fac / std::pow(p.nu + 2.0, m - 2);
}

// m-th cumulant of log Vol of the nu-weighted typical cell, via the explicit
// polygamma form of the derivative of log_volume_moment at s = 0.
inline CumulantReport cumulant(const ModelParams& p, int m) {
    validate(p);
    if (m < 1 || m > 10)
        throw std::invalid_argument("cumulant: order " + std::to_string(m) +
                                    " outside supported range [1, 10]");
    const double d = p.d, b = p.beta, nu = p.nu;
    const double q = d + 2.0 * b + 1.0;
    const double D = d + 2.0 * b + nu;
    const double x1 = 0.5 * d * D;
    const double x2 = (d * D - (nu - 1.0)) / q;
    const double x3 = 0.5 * (d * D - (nu - 1.0));
    const double x4 = 0.5 * D;
    for (double x : {x1, x2, x3, x4})
        if (!(x > 0.0))
            throw std::domain_error("cumulant: polygamma argument " +
                                    std::to_string(x) + " non-positive");
    double value = std::pow(0.5 * d, m) * polygamma(m - 1, x1) +
                   std::pow((d - 1.0) / q, m) * polygamma(m - 1, x2) -
                   std::pow(0.5 * (d - 1.0), m) * polygamma(m - 1, x3) -
                   d * std::pow(0.5, m) * polygamma(m - 1, x4);
    // (1/2^m) sum_{i=1}^{d-1} psi^{(m-1)}((i+nu+1)/2); closed forms for m = 1, 2
    // when the shift stays positive, direct summation otherwise.
    if (m == 1 && nu + 1.0 > 0.0 && p.d >= 3) {
        value += digamma_halfsum(p.d - 1, nu + 1.0);
    } else if (m == 2 && nu + 1.0 > 0.0 && p.d >= 3) {
        value += trigamma_halfsum(p.d - 1, nu + 1.0);
    } else {
        double s5 = 0.0;
        for (int i = 1; i < p.d; ++i) s5 += polygamma(m - 1, 0.5 * (i + nu + 1.0));
        value += std::pow(0.5, m) * s5;
    }
    double fac = 1.0;
    for (int j = 2; j < m; ++j) fac *= j;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0; // -(-1)^{m+1}
    value += -sign * fac * (d - 1.0) / std::pow(D, m);
    if (m == 1)
        value += (d - 1.0) / q *
                     (detail::kHalfLogPi + log_gamma(0.5 * (d + 2.0 * b + 3.0)) -
                      log_gamma(0.5 * (d + 2.0 * b + 2.0)) - std::log(p.gamma)) -
                 log_gamma(d);
    CumulantReport rep;
    rep.order = m;
    rep.value = value;
    if (m >= 3 && d > std::max(4.0, 1.0 - 2.0 * b - nu))
        rep.bound = corollary_cumulant_bound(p, m);
    return rep;
}

// C_nu, the constant term of the variance expansion.
inline double c_nu(double nu) {
    if (!(nu >= -1.0))
        throw std::domain_error("c_nu: nu must be >= -1, got " + std::to_string(nu));
    return -0.5 * digamma(nu + 2.0) - 0.5 * (nu + 1.0) * polygamma(1, nu + 2.0) +
           0.125 * polygamma(1, 0.5 * (nu + 2.0));
}

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;
};

// Leading-order expectation and variance of log Vol for large d (O(1) and
// O(1/d) remainders dropped).
inline MeanVariance mean_variance_asymptotic(const ModelParams& p) {
    validate(p);
    const double logd = std::log(double(p.d));
    MeanVariance mv;
    mv.mean = -p.d * logd + 0.25 * (11.0 + 2.0 * p.nu) * logd + 0.5 * p.d -
              std::log(p.gamma);
    mv.variance = 0.5 * logd + c_nu(p.nu);
    return mv;
}

// Berry-Esseen scale 2(beta+2)/((nu+2) sqrt(log d)). The real-d overload
// exists so tests can evaluate at d = e, e^4 where the scale is rational.
inline double berry_esseen_scale(double d, double beta, double nu) {
    if (!(d > 1.0))
        throw std::domain_error("berry_esseen_scale: need d > 1 for log d > 0");
    return 2.0 * (beta + 2.0) / ((nu + 2.0) * std::sqrt(std::log(d)));
}

inline double berry_esseen_scale(const ModelParams& p) {
    validate(p);
    return berry_esseen_scale(double(p.d), p.beta, p.nu);
}

struct ModGaussianFrame {
    double m_d = 0.0;        // centering
    double w_d = 0.0;        // variance parameter
    double strip_lower = 0.0; // admissible t range is (strip_lower, inf)
};

inline ModGaussianFrame mod_gaussian_frame(const ModelParams& p) {
    validate(p);
    if (p.d < 3)
        throw std::domain_error("mod_gaussian_frame: d >= 3 required");
    const double d = p.d, b = p.beta, nu = p.nu;
    ModGaussianFrame f;
    f.m_d = (2.25 + 0.5 * nu) * std::log(0.5 * d) - 0.5 * (d + nu + 2.0 * b) - 0.5 +
            std::log(4.0 * std::numbers::pi / p.gamma) -
            3.0 * (b + 1.0) * std::log(d) / (d + 2.0 * b + 1.0) - log_gamma(d);
    f.w_d = 0.5 * std::log(0.5 * d) - 0.5;
    f.strip_lower = -nu - 1.0;
    return f;
}

// log of the limiting function at real t: a ratio of four Barnes-G values.
inline double mod_gaussian_limit(double nu, double t) {
    if (!(t > -nu - 1.0))
        throw std::domain_error("mod_gaussian_limit: t = " + std::to_string(t) +
                                " outside the strip (" + std::to_string(-nu - 1.0) +
                                ", inf)");
    return log_barnes_g(0.5 * (nu + 2.0)) + log_barnes_g(0.5 * (nu + 3.0)) -
           log_barnes_g(0.5 * (nu + 2.0 + t)) - log_barnes_g(0.5 * (nu + 3.0 + t));
}

// Deviation of the exact MGF from the mod-Gaussian frame; tends to 0 as d grows.
inline double mod_gaussian_residual(const ModelParams& p, double t) {
    const ModGaussianFrame f = mod_gaussian_frame(p);
    if (t == 0.0) return 0.0;
    return log_volume_moment(p, t) - f.m_d * t - 0.5 * f.w_d * t * t -
           mod_gaussian_limit(p.nu, t);
}

// Scaled cumulant generating function of the centered log-volume at speed
// log(d/2); converges to t^2/2 as d grows. The admissible t range is the MGF
// strip (-nu-1, inf) with the boundary allowed when the moment formula is.
inline double ldp_scaled_cgf(const ModelParams& p, double t) {
    validate(p);
    if (p.d < 3)
        throw std::domain_error("ldp_scaled_cgf: d >= 3 required");
    const double L = std::log(0.5 * p.d);
    return 2.0 / L * (log_volume_moment(p, t) - t * cumulant(p, 1).value);
}

} // namespace betadel
