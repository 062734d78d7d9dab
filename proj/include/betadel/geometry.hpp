#pragma once

// Simplex geometry in R^{dim}: volume, circumsphere, the directed
// vertex-matching distance rho, shape deviation from the regular simplex, and
// the regular-simplex volume tau.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace betadel {

using Point = std::vector<double>;

struct Simplex {
    int dim = 0;                      // ambient dimension
    std::vector<Point> vertices;      // dim + 1 points

    static Simplex of(std::vector<Point> pts) {
        Simplex s;
        if (pts.empty()) throw std::invalid_argument("simplex: no vertices");
        s.dim = int(pts.size()) - 1;
        for (const auto& p : pts)
            if (int(p.size()) != s.dim)
                throw std::invalid_argument("simplex: vertex dimension mismatch");
        s.vertices = std::move(pts);
        return s;
    }
};

struct Circumsphere {
    Point center;
    double radius = 0.0;
};

namespace detail {

// In-place LU solve with partial pivoting; returns false when singular to
// working precision. A is row-major n x n.
inline bool lu_solve(std::vector<double>& A, std::vector<double>& b, int n) {
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int arg = k;
        double best = std::abs(A[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(A[i * n + k]);
            if (v > best) { best = v; arg = i; }
        }
        if (best < 1e-300) return false;
        if (arg != k) {
            for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[arg * n + j]);
            std::swap(b[k], b[arg]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = A[i * n + k] / A[k * n + k];
            A[i * n + k] = f;
            for (int j = k + 1; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * b[j];
        b[i] = s / A[i * n + i];
    }
    return true;
}

// log |det A| via LU; -inf for singular. A destroyed.
inline double log_abs_det(std::vector<double>& A, int n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        int arg = k;
        double best = std::abs(A[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(A[i * n + k]);
            if (v > best) { best = v; arg = i; }
        }
        if (best == 0.0) return -std::numeric_limits<double>::infinity();
        if (arg != k)
            for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[arg * n + j]);
        acc += std::log(best);
        for (int i = k + 1; i < n; ++i) {
            const double f = A[i * n + k] / A[k * n + k];
            for (int j = k + 1; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
        }
    }
    return acc;
}

inline double sq_dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace detail

// log of the simplex volume; -inf for degenerate input. Stays finite where
// the plain volume would underflow (high-dimensional thin cells).
inline double log_simplex_volume(const Simplex& s) {
    const int n = s.dim;
    if (n == 0) return -std::numeric_limits<double>::infinity();
    std::vector<double> A(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A[size_t(i) * n + j] = s.vertices[i + 1][j] - s.vertices[0][j];
    const double logdet = detail::log_abs_det(A, n);
    double logfac = 0.0;
    for (int j = 2; j <= n; ++j) logfac += std::log(double(j));
    return logdet - logfac;
}

inline double simplex_volume(const Simplex& s) {
    const double lv = log_simplex_volume(s);
    return lv == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(lv);
}

inline Circumsphere circumsphere(const Simplex& s) {
    const int n = s.dim;
    if (n < 1) throw std::invalid_argument("circumsphere: dimension must be >= 1");
    // 2 (v_i - v_0) . z = |v_i|^2 - |v_0|^2
    std::vector<double> A(size_t(n) * n), b(n);
    double n0 = 0.0;
    for (int j = 0; j < n; ++j) n0 += s.vertices[0][j] * s.vertices[0][j];
    for (int i = 0; i < n; ++i) {
        double ni = 0.0;
        for (int j = 0; j < n; ++j) {
            A[size_t(i) * n + j] = 2.0 * (s.vertices[i + 1][j] - s.vertices[0][j]);
            ni += s.vertices[i + 1][j] * s.vertices[i + 1][j];
        }
        b[i] = ni - n0;
    }
    if (!detail::lu_solve(A, b, n))
        throw std::domain_error("circumsphere: degenerate simplex (singular system)");
    Circumsphere c;
    c.center = Point(b.begin(), b.end());
    c.radius = std::sqrt(detail::sq_dist(c.center, s.vertices[0]));
    const double vol = simplex_volume(s);
    if (vol < 1e-12 * std::pow(c.radius, n))
        throw std::domain_error("circumsphere: degenerate simplex (flat)");
    return c;
}

// Directed vertex distance: max over vertices of s1 of the distance to the
// nearest vertex of s2. This is the exact infimum in the matching definition.
inline double rho_pair(const Simplex& s1, const Simplex& s2) {
    if (s1.dim != s2.dim)
        throw std::invalid_argument("rho_pair: dimension mismatch");
    double worst = 0.0;
    for (const auto& v : s1.vertices) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& w : s2.vertices)
            nearest = std::min(nearest, detail::sq_dist(v, w));
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

// Volume of the regular dim-simplex inscribed in the unit sphere.
inline double tau(int dim) {
    if (dim < 1) throw std::invalid_argument("tau: dimension must be >= 1");
    double fac = 1.0;
    for (int j = 2; j <= dim; ++j) fac *= j;
    return std::sqrt(dim + 1.0) / fac *
           std::pow((dim + 1.0) / dim, 0.5 * dim);
}

namespace detail {

// Vertices of a reference regular simplex inscribed in the unit sphere of R^n:
// start from the n+1 basis vertices of the (n+1)-simplex centered, then
// orthonormalize down. Classic construction: vertices v_i with
// v_i . v_j = -1/n for i != j.
inline std::vector<Point> regular_simplex_vertices(int n) {
    // Build in R^{n+1}: e_i shifted by centroid, scaled onto the sphere, then
    // rotated into the first n coordinates. Simpler equivalent recursion:
    std::vector<Point> v(n + 1, Point(n, 0.0));
    // iterative construction: v_0 ... v_k span R^k
    // v_i[j] coordinates follow the standard telescoping formula.
    for (int j = 0; j < n; ++j) {
        // all vertices i <= j have been fixed in coordinates < j
        double sumsq = 0.0;
        for (int t = 0; t < j; ++t) sumsq += v[j][t] * v[j][t];
        v[j][j] = std::sqrt(std::max(0.0, 1.0 - sumsq));
        // remaining vertices share coordinate j so that dot(v_j, v_i) = -1/n
        for (int i = j + 1; i <= n; ++i) {
            double dot = 0.0;
            for (int t = 0; t < j; ++t) dot += v[j][t] * v[i][t];
            v[i][j] = (-1.0 / n - dot) / v[j][j];
        }
    }
    return v;
}

// max_i min_j || R u_i - t_j || for row-major rotation R (n x n).
inline double rotated_rho(const std::vector<Point>& u,
                          const std::vector<Point>& t,
                          const std::vector<double>& R, int n) {
    double worst = 0.0;
    Point ru(n);
    for (const auto& p : u) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += R[size_t(i) * n + j] * p[j];
            ru[i] = s;
        }
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& q : t) nearest = std::min(nearest, sq_dist(ru, q));
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

// Orthogonal polar factor of M by Newton iteration: X <- (X + X^{-T})/2.
// Returns identity when M is singular.
inline std::vector<double> polar_orthogonal(std::vector<double> M, int n) {
    auto inverse_transpose = [n](const std::vector<double>& X,
                                 std::vector<double>& out) {
        // Gauss-Jordan inverse, then transpose into out; false if singular.
        std::vector<double> A = X;
        std::vector<double> I(size_t(n) * n, 0.0);
        for (int i = 0; i < n; ++i) I[size_t(i) * n + i] = 1.0;
        for (int k = 0; k < n; ++k) {
            int arg = k;
            double best = std::abs(A[size_t(k) * n + k]);
            for (int i = k + 1; i < n; ++i)
                if (std::abs(A[size_t(i) * n + k]) > best) {
                    best = std::abs(A[size_t(i) * n + k]);
                    arg = i;
                }
            if (best < 1e-14) return false;
            if (arg != k)
                for (int j = 0; j < n; ++j) {
                    std::swap(A[size_t(k) * n + j], A[size_t(arg) * n + j]);
                    std::swap(I[size_t(k) * n + j], I[size_t(arg) * n + j]);
                }
            const double pivot = A[size_t(k) * n + k];
            for (int j = 0; j < n; ++j) {
                A[size_t(k) * n + j] /= pivot;
                I[size_t(k) * n + j] /= pivot;
            }
            for (int i = 0; i < n; ++i) {
                if (i == k) continue;
                const double f = A[size_t(i) * n + k];
                if (f == 0.0) continue;
                for (int j = 0; j < n; ++j) {
                    A[size_t(i) * n + j] -= f * A[size_t(k) * n + j];
                    I[size_t(i) * n + j] -= f * I[size_t(k) * n + j];
                }
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[size_t(i) * n + j] = I[size_t(j) * n + i];
        return true;
    };
    std::vector<double> X = std::move(M), Y(size_t(n) * n);
    for (int it = 0; it < 60; ++it) {
        if (!inverse_transpose(X, Y)) {
            std::vector<double> id(size_t(n) * n, 0.0);
            for (int i = 0; i < n; ++i) id[size_t(i) * n + i] = 1.0;
            return id;
        }
        double delta = 0.0;
        for (size_t i = 0; i < X.size(); ++i) {
            const double nx = 0.5 * (X[i] + Y[i]);
            delta += std::abs(nx - X[i]);
            X[i] = nx;
        }
        if (delta < 1e-14 * X.size()) break;
    }
    return X;
}

} // namespace detail

// Shape deviation: distance (in the directed vertex metric) from the
// circumsphere-normalized simplex to the nearest regular simplex inscribed in
// the unit sphere. Exact to 1e-6 for dim = 2; a refined upper bound for
// dim >= 3.
inline double rho_shape(const Simplex& s) {
    const Circumsphere cs = circumsphere(s); // throws on degeneracy
    const int n = s.dim;
    std::vector<Point> u(s.vertices.size(), Point(n));
    for (size_t i = 0; i < s.vertices.size(); ++i)
        for (int j = 0; j < n; ++j)
            u[i][j] = (s.vertices[i][j] - cs.center[j]) / cs.radius;

    if (n == 1) {
        // targets are {-1, +1}: nothing to rotate
        double worst = 0.0;
        for (const auto& p : u)
            worst = std::max(worst, std::min(std::abs(p[0] - 1.0),
                                             std::abs(p[0] + 1.0)));
        return worst;
    }

    if (n == 2) {
        // Reflected equilateral targets are rotations of the same vertex set,
        // so a search over the rotation angle modulo 2*pi/3 is exhaustive.
        std::vector<double> theta(3);
        for (int i = 0; i < 3; ++i) theta[i] = std::atan2(u[i][1], u[i][0]);
        constexpr double period = 2.0943951023931954923; // 2 pi / 3
        auto objective = [&theta](double phi) {
            double worst = 0.0;
            for (double th : theta) {
                double delta = std::fmod(th - phi, period);
                if (delta < -0.5 * period) delta += period;
                if (delta > 0.5 * period) delta -= period;
                worst = std::max(worst, std::abs(2.0 * std::sin(0.5 * delta)));
            }
            return worst;
        };
        constexpr double invphi = 0.61803398874989484820;
        double best = std::numeric_limits<double>::infinity();
        const int seeds = 64;
        for (int k = 0; k < seeds; ++k) {
            double lo = period * k / seeds, hi = period * (k + 1) / seeds;
            double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
            double f1 = objective(x1), f2 = objective(x2);
            while (hi - lo > 1e-9) {
                if (f1 < f2) {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - invphi * (hi - lo);
                    f1 = objective(x1);
                } else {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + invphi * (hi - lo);
                    f2 = objective(x2);
                }
            }
            best = std::min(best, objective(0.5 * (lo + hi)));
        }
        return best;
    }

    // dim >= 3: Procrustes alignment over a set of vertex assignments, then
    // cyclic plane-rotation refinement. Upper bound by construction.
    const std::vector<Point> target = detail::regular_simplex_vertices(n);
    std::vector<int> perm(n + 1);
    for (int i = 0; i <= n; ++i) perm[i] = i;
    std::vector<std::vector<int>> assignments;
    if (n == 3) {
        do assignments.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        assignments.push_back(perm);
        // deterministic shuffled assignments as extra seeds
        uint64_t state = 0x9e3779b97f4a7c15ull;
        for (int k = 0; k < 48; ++k) {
            for (int i = n; i > 0; --i) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                std::swap(perm[i], perm[(state >> 33) % (i + 1)]);
            }
            assignments.push_back(perm);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_r;
    for (const auto& a : assignments) {
        std::vector<double> M(size_t(n) * n, 0.0);
        for (int v = 0; v <= n; ++v)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    M[size_t(i) * n + j] += target[a[v]][i] * u[v][j];
        std::vector<double> R = detail::polar_orthogonal(std::move(M), n);
        const double val = detail::rotated_rho(u, target, R, n);
        if (val < best) {
            best = val;
            best_r = std::move(R);
        }
    }
    // local refinement in rotation planes
    std::vector<double> R = best_r;
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double lo = -0.3, hi = 0.3;
                auto rotated = [&](double ang) {
                    std::vector<double> G = R;
                    const double c = std::cos(ang), s2 = std::sin(ang);
                    for (int j = 0; j < n; ++j) {
                        const double rp = R[size_t(p) * n + j],
                                     rq = R[size_t(q) * n + j];
                        G[size_t(p) * n + j] = c * rp - s2 * rq;
                        G[size_t(q) * n + j] = s2 * rp + c * rq;
                    }
                    return G;
                };
                constexpr double invphi = 0.61803398874989484820;
                double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
                double f1 = detail::rotated_rho(u, target, rotated(x1), n);
                double f2 = detail::rotated_rho(u, target, rotated(x2), n);
                while (hi - lo > 1e-7) {
                    if (f1 < f2) {
                        hi = x2; x2 = x1; f2 = f1;
                        x1 = hi - invphi * (hi - lo);
                        f1 = detail::rotated_rho(u, target, rotated(x1), n);
                    } else {
                        lo = x1; x1 = x2; f1 = f2;
                        x2 = lo + invphi * (hi - lo);
                        f2 = detail::rotated_rho(u, target, rotated(x2), n);
                    }
                }
                const double mid = 0.5 * (lo + hi);
                const double fm = detail::rotated_rho(u, target, rotated(mid), n);
                if (fm < best) {
                    best = fm;
                    R = rotated(mid);
                }
            }
        }
    }
    return best;
}

} // namespace betadel
