#pragma once

// Verification experiments over the cell model: Monte Carlo tail and CLT
// runners plus deterministic asymptotic sweeps, all reporting through one
// table/fit/verdict structure. Scheduling is deterministic: the task split
// and the RNG stream assignment depend only on (seed, budget), never on the
// worker count, and reductions run in task order, so reports are reproducible
// byte for byte from (config, seed).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <betadel/geometry.hpp>
#include <betadel/model.hpp>
#include <betadel/params.hpp>
#include <betadel/rng.hpp>
#include <betadel/sampler.hpp>

namespace betadel {

// One configuration drives every runner; grids a runner does not use are
// ignored, empty grids and a zero budget select per-runner defaults.
struct ExperimentConfig {
    ModelParams params;
    std::uint64_t seed = 1;
    std::int64_t budget = 0;
    std::vector<double> a_grid;
    std::vector<double> eps_grid;
    std::vector<double> t_grid;
    std::vector<int> d_grid;
    std::string out_dir;
};

struct ReportRow {
    std::string series;
    double x = 0.0;
    double x2 = 0.0; // secondary coordinate (eps, d, or order); 0 when unused
    double value = 0.0;
    double se = 0.0;  // 0 for deterministic rows
    double ess = 0.0; // effective sample size behind the value; 0 = exact
    bool informative = true;
    std::string note;
};

struct FitResult {
    std::string series;
    std::string name;
    double value = 0.0;
    double se = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct Verdict {
    std::string criterion;
    std::string statement;
    bool pass = false;
    bool hard = true; // hard verdicts gate the exit status, soft are advisory
};

struct ExperimentReport {
    std::string name;
    ExperimentConfig config; // the resolved config actually used
    std::vector<ReportRow> rows;
    std::vector<FitResult> fits;
    std::vector<Verdict> verdicts;

    bool passed() const {
        for (const auto& v : verdicts)
            if (v.hard && !v.pass) return false;
        return true;
    }
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline void require_increasing(const char* name, const std::vector<double>& g) {
    require(!g.empty(), std::string(name) + ": grid must be non-empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        require(g[i - 1] < g[i],
                std::string(name) + ": grid must be strictly increasing");
}

inline void require_increasing(const char* name, const std::vector<int>& g) {
    require(!g.empty(), std::string(name) + ": grid must be non-empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        require(g[i - 1] < g[i],
                std::string(name) + ": grid must be strictly increasing");
}

inline int thread_count() {
    if (const char* env = std::getenv("BDL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// The task count is a function of the budget alone so that per-task RNG
// streams, and therefore every estimate, do not depend on BDL_THREADS.
inline int task_count(std::int64_t budget) {
    return int(std::clamp<std::int64_t>(budget / 25'000, 1, 4096));
}

// Parallel map over a fixed task decomposition. work(n, rng) consumes n draws
// from its own stream and returns an accumulator; the caller reduces the
// returned vector in task order. Worker threads race over tasks, which is
// harmless because task t always gets stream (phase << 32 | t).
template <class Acc, class Work>
std::vector<Acc> map_streams(std::uint64_t seed, std::uint64_t phase,
                             std::int64_t budget, Work&& work) {
    const int ntasks = task_count(budget);
    std::vector<Acc> out(ntasks);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (int t = next.fetch_add(1); t < ntasks; t = next.fetch_add(1)) {
            try {
                const std::int64_t lo = budget * t / ntasks;
                const std::int64_t hi = budget * (t + 1) / ntasks;
                RngStream rng(seed, (phase << 32) | std::uint64_t(t));
                out[std::size_t(t)] = work(hi - lo, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const int nworkers = std::min(thread_count(), ntasks);
    if (nworkers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

inline double gamma_upper_q(double s, double x);

// Regularized lower incomplete gamma P(s, x); series below s+1, complement of
// the continued fraction above. Relative accuracy ~1e-13, and the series
// branch keeps tiny P accurate in absolute and relative terms.
inline double gamma_lower_p(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0))
        throw std::invalid_argument("gamma_lower_p: need s > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x >= s + 1.0) return 1.0 - gamma_upper_q(s, x);
    double ap = s, del = 1.0 / s, sum = del;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
}

// Regularized upper incomplete gamma Q(s, x) via the Lentz continued
// fraction; underflows cleanly to 0 for large x.
inline double gamma_upper_q(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0))
        throw std::invalid_argument("gamma_upper_q: need s > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_lower_p(s, x);
    const double lead = -x + s * std::log(x) - log_gamma(s);
    double b = x + 1.0 - s, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i <= 300; ++i) {
        const double an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return std::exp(lead) * h;
}

// log Q(s, x) tabulated on a log-x grid with linear interpolation. The tail
// runners evaluate Q once per grid threshold per draw; the table turns that
// into a lerp and one exp. Worst-case lerp error in log Q is x (du)^2 / 8,
// which at 16384 cells stays below 2e-5 over the region that carries mass.
class LogQTable {
  public:
    LogQTable(double shape, double x_lo, double x_hi, int cells = 16384)
        : shape_(shape),
          u_lo_(std::log(x_lo)),
          u_hi_(std::log(x_hi)),
          inv_du_(cells / (std::log(x_hi) - std::log(x_lo))),
          logq_(std::size_t(cells) + 1) {
        if (!(x_lo > 0.0) || !(x_hi > x_lo))
            throw std::invalid_argument("LogQTable: need 0 < x_lo < x_hi");
        for (int i = 0; i <= cells; ++i) {
            const double u = u_lo_ + (u_hi_ - u_lo_) * i / cells;
            const double q = gamma_upper_q(shape_, std::exp(u));
            // past the representable range the lerp only has to keep falling
            logq_[std::size_t(i)] = q > 0.0 ? std::log(q) : -800.0 - u;
        }
    }

    // log Q at x = e^{logx}; +inf below the table is impossible by
    // construction of x_lo, but fall back to the exact evaluation anyway.
    double log_q(double logx) const {
        if (logx <= u_lo_) return std::log(gamma_upper_q(shape_, std::exp(logx)));
        if (logx >= u_hi_) return -750.0; // Q underflows; exp() gives 0
        const double f = (logx - u_lo_) * inv_du_;
        const auto i = std::size_t(f);
        const double w = f - double(i);
        return logq_[i] + w * (logq_[i + 1] - logq_[i]);
    }

  private:
    double shape_, u_lo_, u_hi_, inv_du_;
    std::vector<double> logq_;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
};

// Weighted least squares with known per-point variances; standard errors are
// the exact Gaussian ones for those variances.
inline LineFit weighted_line_fit(const std::vector<double>& x,
                                 const std::vector<double>& y,
                                 const std::vector<double>& var) {
    if (x.size() != y.size() || x.size() != var.size() || x.size() < 2)
        throw std::invalid_argument("weighted_line_fit: need >= 2 points");
    double W = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(var[i] > 0.0))
            throw std::invalid_argument("weighted_line_fit: variance <= 0");
        W += 1.0 / var[i];
        mx += x[i] / var[i];
    }
    mx /= W;
    double sxx = 0.0, sxy = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = 1.0 / var[i];
        sxx += w * (x[i] - mx) * (x[i] - mx);
        sxy += w * (x[i] - mx) * y[i];
        my += w * y[i];
    }
    my /= W;
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.slope_se = std::sqrt(1.0 / sxx);
    f.intercept_se = std::sqrt(1.0 / W + mx * mx / sxx);
    return f;
}

// Volume of the simplex on d points stored row-major in a flat buffer of
// d x (d-1) doubles; direct determinants up to d = 4 keep the Monte Carlo
// loops allocation-free on the dimensions the tail experiments target.
inline double flat_simplex_volume(const double* v, int d) {
    switch (d - 1) {
        case 1:
            return std::fabs(v[1] - v[0]);
        case 2: {
            const double ax = v[2] - v[0], ay = v[3] - v[1];
            const double bx = v[4] - v[0], by = v[5] - v[1];
            return 0.5 * std::fabs(ax * by - ay * bx);
        }
        case 3: {
            const double a0 = v[3] - v[0], a1 = v[4] - v[1], a2 = v[5] - v[2];
            const double b0 = v[6] - v[0], b1 = v[7] - v[1], b2 = v[8] - v[2];
            const double c0 = v[9] - v[0], c1 = v[10] - v[1], c2 = v[11] - v[2];
            const double det = a0 * (b1 * c2 - b2 * c1) -
                               a1 * (b0 * c2 - b2 * c0) +
                               a2 * (b0 * c1 - b1 * c0);
            return std::fabs(det) / 6.0;
        }
        default: {
            std::vector<Point> pts(std::size_t(d), Point(std::size_t(d - 1)));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j + 1 < d; ++j)
                    pts[std::size_t(i)][std::size_t(j)] =
                        v[std::size_t(i) * (d - 1) + j];
            return simplex_volume(Simplex::of(std::move(pts)));
        }
    }
}

// d points with density proportional to (1-|x|^2)^beta, written into buf
// (row-major d x (d-1)); returns the simplex volume they span.
inline double sample_raw_simplex(const ModelParams& p, RngStream& rng,
                                 double* buf) {
    const int n = p.d - 1;
    for (int i = 0; i < p.d; ++i) {
        double* x = buf + std::size_t(i) * n;
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int j = 0; j < n; ++j) {
                x[j] = rng.normal();
                norm2 += x[j] * x[j];
            }
        } while (norm2 == 0.0);
        // Beta(1, beta+1) degenerates to a uniform at beta = 0
        const double b2 = (n == 2 && p.beta == 0.0)
                              ? rng.uniform()
                              : rng.beta_variate(0.5 * n, p.beta + 1.0);
        const double r = std::sqrt(b2 / norm2);
        for (int j = 0; j < n; ++j) x[j] *= r;
    }
    return flat_simplex_volume(buf, p.d);
}

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

inline double finite_or_throw(double v, const char* where) {
    if (!std::isfinite(v))
        throw std::logic_error(std::string(where) + ": non-finite value");
    return v;
}

inline void push_row(ExperimentReport& rep, std::string series, double x,
                     double x2, double value, double se = 0.0, double ess = 0.0,
                     bool informative = true, std::string note = "") {
    finite_or_throw(value, "report row");
    rep.rows.push_back({std::move(series), x, x2, value, se, ess, informative,
                        std::move(note)});
}

inline void push_verdict(ExperimentReport& rep, std::string criterion,
                         std::string statement, bool pass, bool hard = true) {
    if (criterion.empty())
        throw std::logic_error("verdict without a criterion id");
    rep.verdicts.push_back(
        {std::move(criterion), std::move(statement), pass, hard});
}

} // namespace detail

// ---------------------------------------------------------------------------
// Kendall-type roundness: conditioned on Vol >= a, the probability that the
// cell's shape deviation exceeds eps decays like exp of the volume exponent,
// so -log p(eps, a) against a^{(d+1+2beta)/(d-1)} fits a positive slope.
inline ExperimentReport run_kendall(ExperimentConfig cfg) {
    const ModelParams p = validate(cfg.params);
    detail::require(p.d == 3 || p.d == 4,
                    "kendall: supported dimensions are d = 3 and d = 4");
    if (cfg.budget == 0) cfg.budget = 40'000'000;
    detail::require(cfg.budget >= 100'000, "kendall: budget must be >= 1e5");
    if (cfg.a_grid.empty()) cfg.a_grid = {2.0, 3.0, 4.0, 5.0};
    if (cfg.eps_grid.empty()) cfg.eps_grid = {0.1, 0.2};
    detail::require_increasing("kendall a_grid", cfg.a_grid);
    detail::require_increasing("kendall eps_grid", cfg.eps_grid);
    detail::require(cfg.a_grid.front() > 0.0, "kendall: thresholds must be > 0");
    detail::require(cfg.eps_grid.front() > 0.0, "kendall: eps must be > 0");

    ExperimentReport rep;
    rep.name = "kendall";
    rep.config = cfg;

    const std::size_t na = cfg.a_grid.size(), ne = cfg.eps_grid.size();
    struct Acc {
        std::vector<std::int64_t> above, rough;
        std::int64_t attempts = 0;
    };
    const double bound = tau(p.d - 1);
    const double wexp = p.nu + 1.0;
    const double a_min = cfg.a_grid.front();
    const auto parts = detail::map_streams<Acc>(
        cfg.seed, 0, cfg.budget,
        [&](std::int64_t n, RngStream& rng) {
            Acc acc;
            acc.above.assign(na, 0);
            acc.rough.assign(na * ne, 0);
            std::vector<double> buf(std::size_t(p.d) * (p.d - 1));
            for (std::int64_t i = 0; i < n; ++i) {
                double delta = 0.0;
                std::int64_t attempt = 1;
                for (;; ++attempt) {
                    if (attempt > kDefaultAttemptCap)
                        throw std::runtime_error(
                            "kendall: cell rejection sampler exceeded the "
                            "attempt cap");
                    delta = detail::sample_raw_simplex(p, rng, buf.data());
                    if (wexp == 0.0) break;
                    if (rng.uniform() < std::pow(delta / bound, wexp)) break;
                }
                acc.attempts += attempt;
                const double radius = sample_radius(p, rng);
                const double vol =
                    std::exp((p.d - 1) * std::log(radius) + std::log(delta));
                if (vol < a_min) continue;
                std::vector<Point> pts(std::size_t(p.d), Point(std::size_t(p.d - 1)));
                for (int r = 0; r < p.d; ++r)
                    for (int c = 0; c + 1 < p.d; ++c)
                        pts[std::size_t(r)][std::size_t(c)] =
                            buf[std::size_t(r) * (p.d - 1) + c];
                const double rho = rho_shape(Simplex::of(std::move(pts)));
                for (std::size_t j = 0; j < na; ++j) {
                    if (vol < cfg.a_grid[j]) break;
                    ++acc.above[j];
                    for (std::size_t e = 0; e < ne; ++e)
                        if (rho >= cfg.eps_grid[e]) ++acc.rough[e * na + j];
                }
            }
            return acc;
        });
    std::vector<std::int64_t> above(na, 0), rough(na * ne, 0);
    std::int64_t attempts = 0;
    for (const auto& acc : parts) {
        attempts += acc.attempts;
        for (std::size_t j = 0; j < na; ++j) above[j] += acc.above[j];
        for (std::size_t k = 0; k < na * ne; ++k) rough[k] += acc.rough[k];
    }
    detail::push_row(rep, "acceptance_rate", 0, 0,
                     double(cfg.budget) / double(attempts));

    // grid points with fewer than 200 conditioning hits cannot support a
    // verdict; drop them, and fail loudly when too few points survive
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < na; ++j) {
        detail::push_row(rep, "cells_above", cfg.a_grid[j], 0,
                         double(above[j]), 0, double(above[j]),
                         above[j] >= 200,
                         above[j] >= 200 ? "" : "fewer than 200 cells, dropped");
        if (above[j] >= 200) keep.push_back(j);
    }
    if (keep.size() < 3)
        throw std::runtime_error(
            "kendall: fewer than 3 threshold grid points reached 200 "
            "conditioning cells; widen the grid downward or raise the budget");

    const double expo = (p.d + 1.0 + 2.0 * p.beta) / (p.d - 1.0);
    detail::push_row(rep, "volume_exponent", 0, 0, expo);
    for (std::size_t e = 0; e < ne; ++e) {
        const double eps = cfg.eps_grid[e];
        std::vector<double> fx, fy, fvar;
        std::vector<double> phat(na, 0.0), pse(na, 0.0);
        for (std::size_t j = 0; j < na; ++j) {
            const double n_j = double(above[j]);
            const double h = double(rough[e * na + j]);
            const bool kept =
                std::find(keep.begin(), keep.end(), j) != keep.end();
            const double pj = kept && n_j > 0 ? h / n_j : 0.0;
            const double sj =
                kept ? std::sqrt(std::max(pj * (1.0 - pj), 1.0 / n_j) / n_j)
                     : 0.0;
            phat[j] = pj;
            pse[j] = sj;
            detail::push_row(rep, "phat", cfg.a_grid[j], eps, pj, sj, n_j,
                             kept && h > 0,
                             !kept          ? "insufficient cells"
                             : h == 0       ? "no rough cells observed"
                                            : "");
            if (kept && h > 0) {
                // half-count correction keeps the variance positive at p = 1
                const double pf = std::min(pj, 1.0 - 0.5 / n_j);
                fx.push_back(std::pow(cfg.a_grid[j], expo));
                fy.push_back(-std::log(pf));
                fvar.push_back((1.0 - pf) / (pf * n_j));
            }
        }
        if (fx.size() >= 2) {
            const auto fit = detail::weighted_line_fit(fx, fy, fvar);
            const std::string tag = "(eps=" + detail::fmt4(eps) + ")";
            rep.fits.push_back({"phat", "slope" + tag, fit.slope, fit.slope_se,
                                fit.slope - 1.96 * fit.slope_se,
                                fit.slope + 1.96 * fit.slope_se});
            rep.fits.push_back({"phat", "intercept" + tag, fit.intercept,
                                fit.intercept_se,
                                fit.intercept - 1.96 * fit.intercept_se,
                                fit.intercept + 1.96 * fit.intercept_se});
            const double lo = fit.slope - 1.96 * fit.slope_se;
            detail::push_verdict(
                rep, "kendall-slope-positive" + tag,
                "-log p vs a^" + detail::fmt4(expo) + " slope " +
                    detail::fmt4(fit.slope) + ", 95% CI above 0: [" +
                    detail::fmt4(lo) + ", " +
                    detail::fmt4(fit.slope + 1.96 * fit.slope_se) + "]",
                fit.slope > 0.0 && lo > 0.0);
        } else {
            detail::push_verdict(rep, "kendall-slope-positive(eps=" +
                                          detail::fmt4(eps) + ")",
                                 "fewer than 2 usable grid points", false);
        }
        bool mono = true;
        for (std::size_t k = 0; k + 1 < keep.size(); ++k) {
            const std::size_t j0 = keep[k], j1 = keep[k + 1];
            const double slack =
                2.0 * std::sqrt(pse[j0] * pse[j0] + pse[j1] * pse[j1]);
            if (phat[j1] > phat[j0] + slack) mono = false;
        }
        detail::push_verdict(
            rep, "kendall-phat-decreasing(eps=" + detail::fmt4(eps) + ")",
            "p(eps, a) nonincreasing in a within 2 combined standard errors",
            mono);
        const double first = phat[keep.front()], last = phat[keep.back()];
        detail::push_verdict(
            rep, "kendall-vanishing-trend(eps=" + detail::fmt4(eps) + ")",
            "p at the largest threshold (" + detail::fmt4(last) +
                ") is below half its smallest-threshold value (" +
                detail::fmt4(first) + ")",
            last < 0.5 * first, /*hard=*/false);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Upper volume tail. Conditional on the simplex shape, Vol exceeds a exactly
// when the radial Gamma variate exceeds m (a/Delta)^{c/(d-1)}, so each draw
// contributes the exact conditional tail Q(A/c, .) instead of an indicator.
inline ExperimentReport run_upper_tail(ExperimentConfig cfg) {
    const ModelParams p = validate(cfg.params);
    if (cfg.budget == 0) cfg.budget = 800'000'000;
    detail::require(cfg.budget >= 1'000'000,
                    "tail-upper: budget must be >= 1e6");
    if (cfg.a_grid.empty()) cfg.a_grid = {6.0, 10.0, 14.0, 18.0, 20.0};
    detail::require_increasing("tail-upper a_grid", cfg.a_grid);
    detail::require(cfg.a_grid.front() > 0.0,
                    "tail-upper: thresholds must be > 0");

    ExperimentReport rep;
    rep.name = "tail-upper";
    rep.config = cfg;

    const double m = m_const(p);
    const double c = radius_power(p);
    const double expo = c / (p.d - 1.0);
    const double shape = radius_shape(p) / c;
    const double bound = tau(p.d - 1);
    const double limit = -m * std::pow(bound, -expo);
    const std::size_t na = cfg.a_grid.size();

    const double x_min = m * std::pow(cfg.a_grid.front() / bound, expo);
    const detail::LogQTable table(shape, 0.5 * std::min(x_min, 1.0e3),
                                  std::max(1200.0, 30.0 * shape));
    std::vector<double> logk(na);
    for (std::size_t j = 0; j < na; ++j)
        logk[j] = std::log(m) + expo * std::log(cfg.a_grid[j]);

    struct Acc {
        double w1 = 0.0, w2 = 0.0;
        std::vector<double> s1, s2;
    };
    const double wexp = p.nu + 1.0;
    const auto parts = detail::map_streams<Acc>(
        cfg.seed, 0, cfg.budget, [&](std::int64_t n, RngStream& rng) {
            Acc acc;
            acc.s1.assign(na, 0.0);
            acc.s2.assign(na, 0.0);
            std::vector<double> buf(std::size_t(p.d) * (p.d - 1));
            for (std::int64_t i = 0; i < n; ++i) {
                const double delta =
                    detail::sample_raw_simplex(p, rng, buf.data());
                const double w = wexp == 0.0 ? 1.0 : std::pow(delta, wexp);
                acc.w1 += w;
                acc.w2 += w * w;
                const double logd = std::log(delta);
                for (std::size_t j = 0; j < na; ++j) {
                    const double lq = table.log_q(logk[j] - expo * logd);
                    // contributions this far below the tail scale are noise
                    if (lq < -700.0) break;
                    const double wq = w * std::exp(lq);
                    acc.s1[j] += wq;
                    acc.s2[j] += wq * wq;
                }
            }
            return acc;
        });
    double w1 = 0.0, w2 = 0.0;
    std::vector<double> s1(na, 0.0), s2(na, 0.0);
    for (const auto& acc : parts) {
        w1 += acc.w1;
        w2 += acc.w2;
        for (std::size_t j = 0; j < na; ++j) {
            s1[j] += acc.s1[j];
            s2[j] += acc.s2[j];
        }
    }

    detail::push_row(rep, "exponent", 0, 0, expo);
    detail::push_row(rep, "limit", 0, 0, limit);
    std::vector<double> gap(na, 0.0), gapse(na, 0.0);
    std::vector<bool> usable(na, false);
    std::vector<double> fx, fy, fvar;
    for (std::size_t j = 0; j < na; ++j) {
        const double a = cfg.a_grid[j];
        if (s1[j] <= 0.0) {
            detail::push_row(rep, "phat", a, 0, 0.0, 0, 0, false,
                             "no effective tail mass at this threshold");
            continue;
        }
        const double phat = s1[j] / w1;
        const double n = double(cfg.budget);
        const double se =
            std::sqrt(std::max(s2[j] - s1[j] * s1[j] / n, 0.0)) / w1;
        const double ess = s1[j] * s1[j] / s2[j];
        usable[j] = ess >= 200.0;
        detail::push_row(rep, "phat", a, 0, phat, se, ess, usable[j],
                         usable[j] ? "" : "effective sample size below 200");
        const double norm = std::log(phat) / std::pow(a, expo);
        const double nse = se / phat / std::pow(a, expo);
        detail::push_row(rep, "normalized", a, 0, norm, nse, ess, usable[j]);
        gap[j] = std::fabs(norm - limit) / std::fabs(limit);
        gapse[j] = nse / std::fabs(limit);
        detail::push_row(rep, "relative_gap", a, 0, gap[j], gapse[j], ess,
                         usable[j]);
        if (usable[j]) {
            const double rel = se / phat;
            fx.push_back(std::pow(a, expo));
            fy.push_back(std::log(phat));
            fvar.push_back(rel * rel);
        }
    }
    if (fx.size() >= 2) {
        const auto fit = detail::weighted_line_fit(fx, fy, fvar);
        rep.fits.push_back({"phat", "slope", fit.slope, fit.slope_se,
                            fit.slope - 1.96 * fit.slope_se,
                            fit.slope + 1.96 * fit.slope_se});
    }

    bool monotone = true;
    for (std::size_t j = 0; j + 1 < na; ++j)
        if (s1[j + 1] > s1[j]) monotone = false; // per-draw dominance is exact
    detail::push_verdict(rep, "upper-tail-phat-monotone",
                         "tail estimates nonincreasing in a", monotone);

    bool shrinking = true;
    std::size_t prev = na;
    for (std::size_t j = 0; j < na; ++j) {
        if (!usable[j]) continue;
        if (prev < na) {
            const double slack = 2.0 * std::sqrt(gapse[prev] * gapse[prev] +
                                                 gapse[j] * gapse[j]);
            if (gap[j] > gap[prev] + slack) shrinking = false;
        }
        prev = j;
    }
    detail::push_verdict(rep, "upper-tail-gap-shrinking",
                         "relative gap to the limit nonincreasing along the "
                         "threshold grid within 2 combined standard errors",
                         shrinking);

    std::size_t last = na;
    for (std::size_t j = na; j-- > 0;)
        if (usable[j]) {
            last = j;
            break;
        }
    if (last == na) {
        detail::push_verdict(rep, "upper-tail-final-gap",
                             "no grid point reached 200 effective samples",
                             false);
    } else {
        detail::push_verdict(
            rep, "upper-tail-final-gap",
            "a=" + detail::fmt4(cfg.a_grid[last]) + ": relative gap " +
                detail::fmt4(gap[last]) + " <= 0.15 against the limit " +
                detail::fmt4(limit),
            gap[last] <= 0.15);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Lower volume tail: P(Vol <= a) scales like a^{nu+2}. Same conditional
// trick with the lower incomplete gamma; the log-log slope and the ratio
// P(a)/a^{nu+2} carry the verdicts.
inline ExperimentReport run_lower_tail(ExperimentConfig cfg) {
    const ModelParams p = validate(cfg.params);
    detail::require(p.d >= 2.0 * (1.0 - p.beta),
                    "tail-lower: requires d >= 2(1 - beta)");
    if (cfg.budget == 0) cfg.budget = 20'000'000;
    detail::require(cfg.budget >= 1'000'000,
                    "tail-lower: budget must be >= 1e6");
    if (cfg.a_grid.empty()) cfg.a_grid = {0.01, 0.02, 0.04, 0.08};
    detail::require_increasing("tail-lower a_grid", cfg.a_grid);
    detail::require(cfg.a_grid.front() > 0.0,
                    "tail-lower: thresholds must be > 0");

    ExperimentReport rep;
    rep.name = "tail-lower";
    rep.config = cfg;

    const double m = m_const(p);
    const double c = radius_power(p);
    const double expo = c / (p.d - 1.0);
    const double shape = radius_shape(p) / c;
    const std::size_t na = cfg.a_grid.size();
    std::vector<double> logk(na);
    for (std::size_t j = 0; j < na; ++j)
        logk[j] = std::log(m) + expo * std::log(cfg.a_grid[j]);

    struct Acc {
        double w1 = 0.0;
        std::vector<double> s1, s2;
    };
    const double wexp = p.nu + 1.0;
    const auto parts = detail::map_streams<Acc>(
        cfg.seed, 0, cfg.budget, [&](std::int64_t n, RngStream& rng) {
            Acc acc;
            acc.s1.assign(na, 0.0);
            acc.s2.assign(na, 0.0);
            std::vector<double> buf(std::size_t(p.d) * (p.d - 1));
            for (std::int64_t i = 0; i < n; ++i) {
                const double delta =
                    detail::sample_raw_simplex(p, rng, buf.data());
                const double w = wexp == 0.0 ? 1.0 : std::pow(delta, wexp);
                acc.w1 += w;
                const double logd = std::log(delta);
                for (std::size_t j = na; j-- > 0;) {
                    const double x = std::exp(logk[j] - expo * logd);
                    const double wp = w * detail::gamma_lower_p(shape, x);
                    if (wp <= 0.0) break; // smaller thresholds only shrink it
                    acc.s1[j] += wp;
                    acc.s2[j] += wp * wp;
                }
            }
            return acc;
        });
    double w1 = 0.0;
    std::vector<double> s1(na, 0.0), s2(na, 0.0);
    for (const auto& acc : parts) {
        w1 += acc.w1;
        for (std::size_t j = 0; j < na; ++j) {
            s1[j] += acc.s1[j];
            s2[j] += acc.s2[j];
        }
    }

    const double target = p.nu + 2.0;
    std::vector<double> fx, fy, fvar, ratio, ratio_ok;
    for (std::size_t j = 0; j < na; ++j) {
        const double a = cfg.a_grid[j];
        if (s1[j] <= 0.0) {
            detail::push_row(rep, "phat", a, 0, 0.0, 0, 0, false,
                             "no effective mass at this threshold");
            continue;
        }
        const double phat = s1[j] / w1;
        const double n = double(cfg.budget);
        const double se =
            std::sqrt(std::max(s2[j] - s1[j] * s1[j] / n, 0.0)) / w1;
        const double ess = s1[j] * s1[j] / s2[j];
        const bool ok = ess >= 200.0;
        detail::push_row(rep, "phat", a, 0, phat, se, ess, ok,
                         ok ? "" : "effective sample size below 200");
        const double r = phat / std::pow(a, target);
        detail::push_row(rep, "ratio", a, 0, r, se / std::pow(a, target), ess,
                         ok);
        if (ok) {
            const double rel = se / phat;
            fx.push_back(std::log(a));
            fy.push_back(std::log(phat));
            fvar.push_back(rel * rel);
            ratio.push_back(r);
        }
    }
    detail::require(fx.size() >= 2,
                    "tail-lower: fewer than 2 informative grid points");
    const auto fit = detail::weighted_line_fit(fx, fy, fvar);
    rep.fits.push_back({"phat", "slope", fit.slope, fit.slope_se,
                        fit.slope - 1.96 * fit.slope_se,
                        fit.slope + 1.96 * fit.slope_se});
    rep.fits.push_back({"phat", "intercept", fit.intercept, fit.intercept_se,
                        fit.intercept - 1.96 * fit.intercept_se,
                        fit.intercept + 1.96 * fit.intercept_se});
    detail::push_verdict(
        rep, "lower-tail-slope",
        "log-log slope " + detail::fmt4(fit.slope) + " within " +
            detail::fmt4(target) + " +- 0.15",
        std::fabs(fit.slope - target) <= 0.15);
    const double rr = ratio.back() / ratio[ratio.size() - 2];
    detail::push_verdict(rep, "lower-tail-ratio-stabilizing",
                         "P(a)/a^" + detail::fmt4(target) +
                             " changes by " + detail::fmt4(100.0 * std::fabs(rr - 1.0)) +
                             "% over the last two thresholds (<= 20%)",
                         std::fabs(rr - 1.0) <= 0.2);
    (void)ratio_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Central limit behaviour of standardized log Vol across dimensions, using
// the exact factor sampler; the Kolmogorov-Smirnov distance against the
// normal must fall as d grows.
inline ExperimentReport run_clt(ExperimentConfig cfg) {
    validate(cfg.params);
    if (cfg.budget == 0) cfg.budget = 200'000;
    detail::require(cfg.budget >= 1, "clt: budget must be >= 1");
    if (cfg.d_grid.empty())
        cfg.d_grid = cfg.params.nu == -1.0 ? std::vector<int>{4, 16, 64, 256}
                                           : std::vector<int>{4, 6, 8, 10, 12};
    detail::require_increasing("clt d_grid", cfg.d_grid);
    detail::require(cfg.d_grid.size() >= 2, "clt: need at least 2 dimensions");
    detail::require(cfg.d_grid.front() >= 2, "clt: dimensions must be >= 2");

    ExperimentReport rep;
    rep.name = "clt";
    rep.config = cfg;

    const double n = double(cfg.budget);
    const double noise_floor = 3.0 / std::sqrt(n);
    std::vector<double> ks(cfg.d_grid.size()), ksse(cfg.d_grid.size());
    std::vector<bool> info(cfg.d_grid.size());
    bool standardized_ok = true;
    for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
        ModelParams pd = cfg.params;
        pd.d = cfg.d_grid[di];
        const LogVolumeSampler sampler(pd);
        const double c1 = cumulant(pd, 1).value;
        const double c2 = cumulant(pd, 2).value;
        auto parts = detail::map_streams<std::vector<double>>(
            cfg.seed, di, cfg.budget, [&](std::int64_t nn, RngStream& rng) {
                std::vector<double> out;
                out.reserve(std::size_t(nn));
                for (std::int64_t i = 0; i < nn; ++i) out.push_back(sampler(rng));
                return out;
            });
        std::vector<double> z;
        z.reserve(std::size_t(cfg.budget));
        const double sd = std::sqrt(c2);
        for (auto& part : parts)
            for (double v : part) z.push_back((v - c1) / sd);
        std::sort(z.begin(), z.end());

        double mean = 0.0;
        for (double v : z) mean += v;
        mean /= n;
        double var = 0.0, m4 = 0.0;
        for (double v : z) {
            const double dvi = v - mean;
            var += dvi * dvi;
            m4 += dvi * dvi * dvi * dvi;
        }
        var /= (n - 1.0);
        m4 /= n;

        double dist = 0.0, f_at_max = 0.5;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double F = detail::normal_cdf(z[i]);
            const double lo = std::fabs(F - double(i) / n);
            const double hi = std::fabs(F - double(i + 1) / n);
            if (lo > dist) { dist = lo; f_at_max = F; }
            if (hi > dist) { dist = hi; f_at_max = F; }
        }
        const double fcl = std::clamp(f_at_max, 1.0 / n, 1.0 - 1.0 / n);
        ks[di] = dist;
        ksse[di] = std::sqrt(fcl * (1.0 - fcl) / n);
        info[di] = dist >= noise_floor && n >= 200.0;

        const double x = double(pd.d);
        detail::push_row(rep, "ks", x, 0, dist, ksse[di], n, info[di],
                         info[di]      ? ""
                         : n < 200.0   ? "fewer than 200 samples"
                                       : "below the Monte Carlo noise floor");
        detail::push_row(rep, "ks_over_scale", x, 0,
                         dist / berry_esseen_scale(pd), 0, n);
        const double mean_se = std::sqrt(var / n);
        const double var_se = std::sqrt(std::max(m4 - var * var, 0.0) / n);
        detail::push_row(rep, "standardized_mean", x, 0, mean, mean_se, n);
        detail::push_row(rep, "standardized_variance", x, 0, var, var_se, n);
        if (std::fabs(mean) > 4.0 * mean_se || std::fabs(var - 1.0) > 4.0 * var_se)
            standardized_ok = false;

        const double a_d = std::pow(std::log(x), 0.25);
        const std::int64_t hits =
            z.end() - std::lower_bound(z.begin(), z.end(), a_d);
        const double tail = 1.0 - detail::normal_cdf(a_d);
        const double ph = double(hits) / n;
        detail::push_row(rep, "moderate_deviation_ratio", x, a_d, ph / tail,
                         std::sqrt(std::max(ph * (1.0 - ph), 1.0 / n) / n) / tail,
                         n);
    }

    detail::push_verdict(rep, "clt-standardization",
                         "standardized mean within 4 se of 0 and variance "
                         "within 4 se of 1 at every dimension",
                         standardized_ok);
    bool decreasing = true;
    std::size_t first = cfg.d_grid.size(), last = cfg.d_grid.size();
    std::size_t prev = cfg.d_grid.size();
    for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
        if (!info[di]) continue;
        if (first == cfg.d_grid.size()) first = di;
        last = di;
        if (prev < cfg.d_grid.size()) {
            const double slack =
                2.0 * std::sqrt(ksse[prev] * ksse[prev] + ksse[di] * ksse[di]);
            if (ks[di] > ks[prev] + slack) decreasing = false;
        }
        prev = di;
    }
    if (first == last) {
        detail::push_verdict(rep, "clt-ks-decreasing",
                             "fewer than 2 informative dimensions", false);
    } else {
        const double slack = 2.0 * std::sqrt(ksse[first] * ksse[first] +
                                             ksse[last] * ksse[last]);
        const bool endpoint = ks[last] < ks[first] - slack;
        detail::push_verdict(
            rep, "clt-ks-decreasing",
            "KS " + detail::fmt4(ks[first]) + " at d=" +
                detail::fmt4(double(cfg.d_grid[first])) + " falls to " +
                detail::fmt4(ks[last]) + " at d=" +
                detail::fmt4(double(cfg.d_grid[last])) +
                " beyond 2 se, with no step rising beyond 2 se",
            decreasing && endpoint);
    }
    const auto& md = rep.rows; // moderate deviation ratio at the largest d
    for (auto it = md.rbegin(); it != md.rend(); ++it)
        if (it->series == "moderate_deviation_ratio") {
            detail::push_verdict(rep, "clt-moderate-deviation",
                                 "tail ratio at x = 1, a_d = (log d)^{1/4}: " +
                                     detail::fmt4(it->value),
                                 std::fabs(it->value - 1.0) <= 0.5,
                                 /*hard=*/false);
            break;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Mod-Gaussian residuals: deterministic evaluation of the difference between
// the exact MGF and its Gaussian frame plus limit, across the t-strip and a
// dimension ladder.
inline ExperimentReport run_modphi(ExperimentConfig cfg) {
    validate(cfg.params);
    if (cfg.d_grid.empty()) cfg.d_grid = {100, 1000, 10000};
    if (cfg.t_grid.empty())
        cfg.t_grid = {-0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    detail::require_increasing("modphi d_grid", cfg.d_grid);
    detail::require_increasing("modphi t_grid", cfg.t_grid);
    detail::require(cfg.d_grid.front() >= 3, "modphi: dimensions must be >= 3");

    ExperimentReport rep;
    rep.name = "modphi";
    rep.config = cfg;

    const double strip_lo = -cfg.params.nu - 1.0 + 0.1;
    auto admissible = [&](double t) {
        return t == 0.0 || (t >= strip_lo - 1e-12 && t <= 3.0 + 1e-12);
    };

    bool zero_exact = true;
    bool any_zero = false;
    for (double t : cfg.t_grid) {
        if (!admissible(t)) {
            for (int d : cfg.d_grid)
                detail::push_row(rep, "residual", t, double(d), 0.0, 0, 0,
                                 false, "outside the admissible strip");
            continue;
        }
        std::vector<double> res(cfg.d_grid.size());
        for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
            ModelParams pd = cfg.params;
            pd.d = cfg.d_grid[di];
            res[di] = mod_gaussian_residual(pd, t);
            detail::push_row(rep, "residual", t, double(pd.d), res[di]);
        }
        if (t == 0.0) {
            any_zero = true;
            for (double r : res)
                if (r != 0.0) zero_exact = false;
            continue;
        }
        bool shrink = true;
        for (std::size_t di = 1; di < res.size(); ++di)
            if (std::fabs(res[di]) >
                std::fabs(res[di - 1]) + 1e-12 + 1e-9 * std::fabs(res[di - 1]))
                shrink = false;
        const double final_res = std::fabs(res.back());
        if (std::fabs(t) <= 2.0) {
            detail::push_verdict(
                rep, "modphi-residual-shrinks(t=" + detail::fmt4(t) + ")",
                "|residual| nonincreasing along the dimension ladder and " +
                    detail::fmt4(final_res) + " <= 0.02 at d=" +
                    detail::fmt4(double(cfg.d_grid.back())),
                shrink && final_res <= 0.02);
        }
        if (res.size() >= 2 && final_res > 1e-12) {
            const double dr = double(cfg.d_grid.back()) /
                              double(cfg.d_grid[cfg.d_grid.size() - 2]);
            if (dr > 9.5 && dr < 10.5) {
                const double rr = res[res.size() - 2] / res.back();
                detail::push_verdict(
                    rep, "modphi-decay-rate(t=" + detail::fmt4(t) + ")",
                    "residual ratio across the last decade " +
                        detail::fmt4(rr) + " within [5, 20]",
                    rr >= 5.0 && rr <= 20.0, /*hard=*/false);
            }
        }
    }
    if (any_zero)
        detail::push_verdict(rep, "modphi-zero-at-origin",
                             "residual identically 0 at t = 0", zero_exact);
    return rep;
}

// ---------------------------------------------------------------------------
// Large deviations: the scaled cumulant generating function at speed
// log(d/2) approaches t^2/2; its Legendre transform approaches x^2/2.
inline ExperimentReport run_ldp(ExperimentConfig cfg) {
    validate(cfg.params);
    if (cfg.d_grid.empty()) cfg.d_grid = {1000, 10000, 100000, 1000000};
    if (cfg.t_grid.empty()) cfg.t_grid = {-1.0, -0.5, 0.5, 1.0, 1.5};
    detail::require_increasing("ldp d_grid", cfg.d_grid);
    detail::require_increasing("ldp t_grid", cfg.t_grid);
    detail::require(cfg.d_grid.front() >= 3, "ldp: dimensions must be >= 3");

    // the whole grid must be admissible; probing is cheap and deterministic
    for (int d : cfg.d_grid)
        for (double t : cfg.t_grid) {
            ModelParams pd = cfg.params;
            pd.d = d;
            try {
                (void)ldp_scaled_cgf(pd, t);
            } catch (const std::domain_error& e) {
                throw std::invalid_argument(
                    std::string("ldp: grid point outside the admissible "
                                "domain: ") +
                    e.what());
            }
        }

    ExperimentReport rep;
    rep.name = "ldp";
    rep.config = cfg;

    std::vector<std::vector<double>> cgf(
        cfg.d_grid.size(), std::vector<double>(cfg.t_grid.size()));
    for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
        ModelParams pd = cfg.params;
        pd.d = cfg.d_grid[di];
        for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
            cgf[di][ti] = ldp_scaled_cgf(pd, cfg.t_grid[ti]);
            detail::push_row(rep, "scaled_cgf", cfg.t_grid[ti],
                             double(pd.d), cgf[di][ti]);
            detail::push_row(
                rep, "gap", cfg.t_grid[ti], double(pd.d),
                std::fabs(cgf[di][ti] - 0.5 * cfg.t_grid[ti] * cfg.t_grid[ti]));
        }
    }

    for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
        const double t = cfg.t_grid[ti];
        if (std::fabs(t) > 1.5) continue;
        const double g_first = std::fabs(cgf.front()[ti] - 0.5 * t * t);
        const double g_last = std::fabs(cgf.back()[ti] - 0.5 * t * t);
        detail::push_verdict(
            rep, "ldp-gap(t=" + detail::fmt4(t) + ")",
            "|cgf - t^2/2| = " + detail::fmt4(g_last) + " <= 0.05 at d=" +
                detail::fmt4(double(cfg.d_grid.back())) +
                " and not above its value at d=" +
                detail::fmt4(double(cfg.d_grid.front())),
            g_last <= 0.05 && g_last <= g_first + 1e-12);
    }

    // convexity of the scaled CGF at the largest dimension, by divided
    // second differences (the t-grid need not be uniform)
    bool convex = true;
    const auto& top = cgf.back();
    for (std::size_t ti = 0; ti + 2 < cfg.t_grid.size(); ++ti) {
        const double t0 = cfg.t_grid[ti], t1 = cfg.t_grid[ti + 1],
                     t2 = cfg.t_grid[ti + 2];
        const double dd = (top[ti + 2] - top[ti + 1]) / (t2 - t1) -
                          (top[ti + 1] - top[ti]) / (t1 - t0);
        if (dd < -1e-9) convex = false;
    }
    detail::push_verdict(rep, "ldp-convexity",
                         "scaled CGF convex over the t-grid at the largest "
                         "dimension",
                         convex);

    // quadratic coefficient of the fitted limit and its Legendre transform
    double stt = 0.0, sct = 0.0;
    for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
        const double t = cfg.t_grid[ti];
        stt += t * t * t * t;
        sct += t * t * top[ti];
    }
    const double ahat = sct / stt;
    rep.fits.push_back({"scaled_cgf", "quadratic_coeff", ahat, 0, ahat, ahat});
    for (double xx : {0.5, 1.0}) {
        const double legendre = xx * xx / (4.0 * ahat);
        detail::push_row(rep, "legendre", xx, 0, legendre);
        if (xx == 1.0)
            detail::push_verdict(
                rep, "ldp-legendre",
                "Legendre transform of the fitted quadratic at x=1: " +
                    detail::fmt4(legendre) + " vs 1/2",
                std::fabs(legendre - 0.5) <= 0.05, /*hard=*/false);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cumulant sweep: explicit cumulants against both growth bounds, the
// variance expansion 0.5 log d + C_nu, and the mean expansion, across a
// dimension ladder.
inline ExperimentReport run_cumulant_sweep(ExperimentConfig cfg) {
    validate(cfg.params);
    if (cfg.d_grid.empty()) cfg.d_grid = {5, 10, 100, 1000, 10000};
    detail::require_increasing("sweep d_grid", cfg.d_grid);
    detail::require(cfg.d_grid.front() >= 2, "sweep: dimensions must be >= 2");

    ExperimentReport rep;
    rep.name = "sweep";
    rep.config = cfg;

    const double b = cfg.params.beta, nu = cfg.params.nu;
    bool bounds_ok = true, var_pos = true;
    std::vector<double> c1_gap, c2_gap;
    std::vector<int> trend_d;
    for (int d : cfg.d_grid) {
        ModelParams pd = cfg.params;
        pd.d = d;
        std::vector<double> cm(9, 0.0);
        for (int m = 1; m <= 8; ++m) {
            const auto rep_m = cumulant(pd, m);
            cm[std::size_t(m)] = rep_m.value;
            detail::push_row(rep, "cumulant", double(d), double(m),
                             rep_m.value);
        }
        if (!(cm[2] > 0.0)) var_pos = false;
        const bool coro_ok = double(d) > std::max(4.0, 1.0 - 2.0 * b - nu);
        const bool prop_ok = d >= 3 && nu + 2.0 * b + d > 1.0;
        for (int m = 3; m <= 8; ++m) {
            if (coro_ok) {
                const double bd = corollary_cumulant_bound(pd, m);
                detail::push_row(rep, "corollary_bound", double(d), double(m),
                                 bd);
                if (std::fabs(cm[std::size_t(m)]) > bd) bounds_ok = false;
            }
            if (prop_ok) {
                const double bd = proposition_cumulant_bound(pd, m);
                detail::push_row(rep, "proposition_bound", double(d),
                                 double(m), bd);
                if (std::fabs(cm[std::size_t(m)]) > bd) bounds_ok = false;
            }
        }
        const auto mv = mean_variance_asymptotic(pd);
        const double g1 = std::fabs(cm[1] - mv.mean);
        const double g2 = std::fabs(cm[2] - (0.5 * std::log(double(d)) +
                                             c_nu(nu)));
        detail::push_row(rep, "c1_asymptotic_gap", double(d), 0, g1);
        detail::push_row(rep, "c2_asymptotic_gap", double(d), 0, g2);
        if (d >= 1000) {
            c1_gap.push_back(g1);
            c2_gap.push_back(g2);
            trend_d.push_back(d);
        }
    }
    detail::push_verdict(rep, "sweep-bounds-hold",
                         "|c_m| within both growth bounds for m = 3..8 "
                         "wherever the bounds apply",
                         bounds_ok);
    detail::push_verdict(rep, "sweep-variance-positive",
                         "c_2 > 0 at every dimension", var_pos);
    if (cfg.d_grid.back() >= 10000 && !c2_gap.empty())
        detail::push_verdict(
            rep, "sweep-c2-asymptotic",
            "|c_2 - (log(d)/2 + C_nu)| = " + detail::fmt4(c2_gap.back()) +
                " <= 0.05 at d=" + detail::fmt4(double(cfg.d_grid.back())),
            c2_gap.back() <= 0.05);
    if (c1_gap.size() >= 2) {
        bool nongrow = true;
        for (std::size_t i = 1; i < c1_gap.size(); ++i)
            if (c1_gap[i] > c1_gap[i - 1] + 1e-9) nongrow = false;
        detail::push_verdict(rep, "sweep-c1-trend",
                             "mean-expansion gap non-growing over d >= 1000",
                             nongrow);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Report writers. Both formats are deterministic given the report.

inline void write_report_csv(std::ostream& os, const ExperimentReport& rep) {
    const auto& c = rep.config;
    auto grid_field = [](const auto& g) {
        std::string out;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) out += ';';
            out += detail::fmt17(double(g[i]));
        }
        return out;
    };
    os << "# experiment-report/1\n";
    os << "# name," << rep.name << '\n';
    os << "# d," << c.params.d << '\n';
    os << "# beta," << detail::fmt17(c.params.beta) << '\n';
    os << "# nu," << detail::fmt17(c.params.nu) << '\n';
    os << "# gamma," << detail::fmt17(c.params.gamma) << '\n';
    os << "# seed," << c.seed << '\n';
    os << "# budget," << c.budget << '\n';
    os << "# a_grid," << grid_field(c.a_grid) << '\n';
    os << "# eps_grid," << grid_field(c.eps_grid) << '\n';
    os << "# t_grid," << grid_field(c.t_grid) << '\n';
    os << "# d_grid," << grid_field(c.d_grid) << '\n';
    os << "# passed," << (rep.passed() ? "true" : "false") << '\n';
    os << "kind,series,name,x,x2,value,se,ci_lo,ci_hi,ess,informative,pass,"
          "hard,criterion,note\n";
    for (const auto& r : rep.rows)
        os << "row," << r.series << ",," << detail::fmt17(r.x) << ','
           << detail::fmt17(r.x2) << ',' << detail::fmt17(r.value) << ','
           << detail::fmt17(r.se) << ",,," << detail::fmt17(r.ess) << ','
           << (r.informative ? "true" : "false") << ",,,," << r.note << '\n';
    for (const auto& f : rep.fits)
        os << "fit," << f.series << ',' << f.name << ",,,"
           << detail::fmt17(f.value) << ',' << detail::fmt17(f.se) << ','
           << detail::fmt17(f.ci_lo) << ',' << detail::fmt17(f.ci_hi)
           << ",,,,,,\n";
    for (const auto& v : rep.verdicts) {
        if (v.criterion.empty())
            throw std::logic_error("report: verdict without a criterion id");
        os << "verdict,,,,,,,,,,," << (v.pass ? "true" : "false") << ','
           << (v.hard ? "true" : "false") << ',' << v.criterion << ','
           << v.statement << '\n';
    }
}

inline void write_report_json(std::ostream& os, const ExperimentReport& rep) {
    const auto& c = rep.config;
    auto num_array = [](const auto& g) {
        std::string out = "[";
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) out += ',';
            out += detail::fmt17(double(g[i]));
        }
        return out + "]";
    };
    os << "{\n";
    os << "  \"schema\": \"experiment-report/1\",\n";
    os << "  \"name\": " << detail::json_string(rep.name) << ",\n";
    os << "  \"passed\": " << (rep.passed() ? "true" : "false") << ",\n";
    os << "  \"config\": {\"d\": " << c.params.d
       << ", \"beta\": " << detail::fmt17(c.params.beta)
       << ", \"nu\": " << detail::fmt17(c.params.nu)
       << ", \"gamma\": " << detail::fmt17(c.params.gamma)
       << ", \"seed\": " << c.seed << ", \"budget\": " << c.budget
       << ", \"a_grid\": " << num_array(c.a_grid)
       << ", \"eps_grid\": " << num_array(c.eps_grid)
       << ", \"t_grid\": " << num_array(c.t_grid)
       << ", \"d_grid\": " << num_array(c.d_grid)
       << ", \"out_dir\": " << detail::json_string(c.out_dir) << "},\n";
    os << "  \"rows\": [";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << (i ? ",\n    " : "\n    ");
        os << "{\"series\": " << detail::json_string(r.series)
           << ", \"x\": " << detail::fmt17(r.x)
           << ", \"x2\": " << detail::fmt17(r.x2)
           << ", \"value\": " << detail::fmt17(r.value)
           << ", \"se\": " << detail::fmt17(r.se)
           << ", \"ess\": " << detail::fmt17(r.ess)
           << ", \"informative\": " << (r.informative ? "true" : "false")
           << ", \"note\": " << detail::json_string(r.note) << "}";
    }
    os << "\n  ],\n";
    os << "  \"fits\": [";
    for (std::size_t i = 0; i < rep.fits.size(); ++i) {
        const auto& f = rep.fits[i];
        os << (i ? ",\n    " : "\n    ");
        os << "{\"series\": " << detail::json_string(f.series)
           << ", \"name\": " << detail::json_string(f.name)
           << ", \"value\": " << detail::fmt17(f.value)
           << ", \"se\": " << detail::fmt17(f.se)
           << ", \"ci_lo\": " << detail::fmt17(f.ci_lo)
           << ", \"ci_hi\": " << detail::fmt17(f.ci_hi) << "}";
    }
    os << "\n  ],\n";
    os << "  \"verdicts\": [";
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
        const auto& v = rep.verdicts[i];
        if (v.criterion.empty())
            throw std::logic_error("report: verdict without a criterion id");
        os << (i ? ",\n    " : "\n    ");
        os << "{\"criterion\": " << detail::json_string(v.criterion)
           << ", \"statement\": " << detail::json_string(v.statement)
           << ", \"pass\": " << (v.pass ? "true" : "false")
           << ", \"hard\": " << (v.hard ? "true" : "false") << "}";
    }
    os << "\n  ]\n}\n";
}

enum class ReportFormat { csv, json };

// Writes <dir>/<name>.<ext> and returns the path.
inline std::filesystem::path save_report(const ExperimentReport& rep,
                                         const std::string& dir,
                                         ReportFormat format) {
    if (dir.empty())
        throw std::invalid_argument("save_report: output directory is empty");
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) /
                      (rep.name + (format == ReportFormat::csv ? ".csv" : ".json"));
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_report: cannot open " + path.string());
    if (format == ReportFormat::csv)
        write_report_csv(os, rep);
    else
        write_report_json(os, rep);
    os.flush();
    if (!os) throw std::runtime_error("save_report: write failed for " + path.string());
    return path;
}

} // namespace betadel
