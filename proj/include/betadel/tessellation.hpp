#pragma once

// Window-based construction of the tessellation for d-1 in {1, 2}: Poisson
// input with power-law heights, the dual triangulation via the lifted lower
// hull (incremental insertion with power-sphere conflicts), a posteriori
// soundness certificate for the height cap, and the ergodic cell-moment
// estimator with apex-in-window minus-sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <betadel/geometry.hpp>
#include <betadel/model.hpp>
#include <betadel/params.hpp>
#include <betadel/rng.hpp>

namespace betadel {

struct Box {
    Point lo, hi;

    static Box of(Point lo, Point hi) {
        if (lo.size() != hi.size() || lo.empty())
            throw std::invalid_argument("box: dimension mismatch");
        for (size_t j = 0; j < lo.size(); ++j)
            if (!(lo[j] < hi[j]))
                throw std::invalid_argument("box: degenerate extent");
        return {std::move(lo), std::move(hi)};
    }

    double volume() const {
        double v = 1.0;
        for (size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
        return v;
    }

    bool contains(const Point& p) const {
        for (size_t j = 0; j < lo.size(); ++j)
            if (p[j] < lo[j] || p[j] >= hi[j]) return false;
        return true;
    }

    Box padded(double margin) const {
        Box b = *this;
        for (size_t j = 0; j < lo.size(); ++j) {
            b.lo[j] -= margin;
            b.hi[j] += margin;
        }
        return b;
    }
};

struct WeightedPoint {
    Point position;
    double height = 0.0;
};

struct WeightedPointSet {
    std::vector<WeightedPoint> points;
    Box window;
    Box sampling_box; // window padded by the margin
    double h_max = 0.0;
    double margin = 0.0;
    ModelParams params;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

struct TriCell {
    std::vector<int> indices; // d point indices
    Point apex;               // Laguerre vertex z
    double power = 0.0;       // common power value K at the apex
};

struct RegularTriangulation {
    WeightedPointSet input;
    std::vector<TriCell> cells;
};

struct ErgodicEstimate {
    double s = 0.0;
    double nu = 0.0;
    double estimate = 0.0;
    std::int64_t cells_used = 0;
    std::int64_t boundary_discarded = 0;
};

// margin covering the reach of window cells: three diameters of the typical
// cell, whose circumradius scale comes from the radius density
inline double default_margin(const ModelParams& p) {
    ModelParams q = p;
    q.nu = 0.0;
    const double a = radius_shape(q), c = radius_power(q);
    const double mean_radius = std::exp(
        -log_m_const(q) / c + std::lgamma((a + 1) / c) - std::lgamma(a / c));
    return 6.0 * mean_radius;
}

inline WeightedPointSet sample_poisson(const ModelParams& p, const Box& window,
                                       double h_max, RngStream& rng,
                                       double margin = -1.0) {
    validate(p);
    if (!(h_max > 0.0))
        throw std::invalid_argument("sample_poisson: h_max must be positive");
    if (int(window.lo.size()) != p.d - 1)
        throw std::invalid_argument("sample_poisson: window dimension != d-1");
    if (margin < 0.0) margin = default_margin(p);

    WeightedPointSet out;
    out.window = window;
    out.sampling_box = window.padded(margin);
    out.h_max = h_max;
    out.margin = margin;
    out.params = p;
    out.seed = rng.seed();
    out.stream_id = rng.stream_id();

    const double lambda = p.gamma * c_const(p) *
                          std::pow(h_max, p.beta + 1.0) / (p.beta + 1.0) *
                          out.sampling_box.volume();
    // exponential race: exact Poisson(lambda) count
    std::size_t n = 0;
    for (double acc = rng.exponential(); acc <= lambda;
         acc += rng.exponential())
        ++n;

    out.points.reserve(n);
    const int dim = p.d - 1;
    for (std::size_t i = 0; i < n; ++i) {
        WeightedPoint wp;
        wp.position.resize(dim);
        for (int j = 0; j < dim; ++j)
            wp.position[j] = out.sampling_box.lo[j] +
                             rng.uniform() * (out.sampling_box.hi[j] -
                                              out.sampling_box.lo[j]);
        wp.height = h_max * std::pow(rng.uniform(), 1.0 / (p.beta + 1.0));
        out.points.push_back(std::move(wp));
    }
    return out;
}

namespace detail {

using exact_rational = boost::multiprecision::cpp_rational;

[[noreturn]] inline void degenerate_tie() {
    throw std::runtime_error(
        "degenerate configuration: exact power/orientation tie (not perturbing "
        "silently; resample the input)");
}

// sign of (b-a) x (c-a); float filter with exact rational fallback
inline int orient2d_sign(double ax, double ay, double bx, double by, double cx,
                         double cy) {
    const double l = (bx - ax) * (cy - ay), r = (by - ay) * (cx - ax);
    const double det = l - r;
    const double bound = std::abs(l) + std::abs(r);
    if (std::abs(det) > 1e-10 * bound) return det > 0 ? 1 : -1;
    const exact_rational el = (exact_rational(bx) - exact_rational(ax)) *
                              (exact_rational(cy) - exact_rational(ay));
    const exact_rational er = (exact_rational(by) - exact_rational(ay)) *
                              (exact_rational(cx) - exact_rational(ax));
    const int cmp = el.compare(er);
    return cmp;
}

// conflict predicate: sign of ((B-A) x (C-A)) . (P-A) for lifted points
// (x, y, x^2+y^2+h); negative means P lies strictly below the plane of the
// counterclockwise triangle (a, b, c), i.e. inside its power sphere.
// Lifted differences are expanded as dz = dx(x1+x0) + dy(y1+y0) + dh so the
// float error scales with the difference terms the filter bound sees.
inline int lifted_orient_sign(const double* xs, const double* ys,
                              const double* hs, int a, int b, int c, int p) {
    double row[3][3], mag[3][3];
    const int idx[3] = {b, c, p};
    for (int i = 0; i < 3; ++i) {
        const int q = idx[i];
        const double dx = xs[q] - xs[a], dy = ys[q] - ys[a];
        row[i][0] = dx;
        row[i][1] = dy;
        row[i][2] = dx * (xs[q] + xs[a]) + dy * (ys[q] + ys[a]) +
                    (hs[q] - hs[a]);
        mag[i][0] = std::abs(dx);
        mag[i][1] = std::abs(dy);
        mag[i][2] = mag[i][0] * (std::abs(xs[q]) + std::abs(xs[a])) +
                    mag[i][1] * (std::abs(ys[q]) + std::abs(ys[a])) +
                    std::abs(hs[q] - hs[a]);
    }
    double det = 0.0, bound = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        det += row[0][i] * (row[1][j] * row[2][k] - row[1][k] * row[2][j]);
        bound += mag[0][i] * (mag[1][j] * mag[2][k] + mag[1][k] * mag[2][j]);
    }
    if (std::abs(det) > 1e-10 * bound) return det > 0 ? 1 : -1;

    exact_rational erow[3][3];
    for (int i = 0; i < 3; ++i) {
        const int q = idx[i];
        const exact_rational dx = exact_rational(xs[q]) - exact_rational(xs[a]);
        const exact_rational dy = exact_rational(ys[q]) - exact_rational(ys[a]);
        erow[i][0] = dx;
        erow[i][1] = dy;
        erow[i][2] = dx * (exact_rational(xs[q]) + exact_rational(xs[a])) +
                     dy * (exact_rational(ys[q]) + exact_rational(ys[a])) +
                     (exact_rational(hs[q]) - exact_rational(hs[a]));
    }
    exact_rational edet = 0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        edet += erow[0][i] *
                (erow[1][j] * erow[2][k] - erow[1][k] * erow[2][j]);
    }
    return edet.compare(exact_rational(0));
}

struct HullTri {
    int v[3];  // counterclockwise
    int nb[3]; // nb[k] across edge (v[k], v[(k+1)%3]); -1 outside
    bool alive = true;
};

// incremental regular triangulation of the lifted points in the plane;
// returns cells over the real points (hidden points appear nowhere)
inline std::vector<std::vector<int>> regular_triangulation_2d(
    const std::vector<WeightedPoint>& pts) {
    const int n = int(pts.size());
    std::vector<double> xs(n + 3), ys(n + 3), hs(n + 3);
    double m = 1.0;
    for (int i = 0; i < n; ++i) {
        xs[i] = pts[i].position[0];
        ys[i] = pts[i].position[1];
        hs[i] = pts[i].height;
        m = std::max({m, std::abs(xs[i]), std::abs(ys[i]),
                      std::sqrt(std::abs(hs[i]))});
    }
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < n; ++i) {
        cx += xs[i] / n;
        cy += ys[i] / n;
    }
    const double big = 1e6 * m;
    xs[n] = cx - 3 * big; ys[n] = cy - big;     hs[n] = 0.0;
    xs[n + 1] = cx + 3 * big; ys[n + 1] = cy - big; hs[n + 1] = 0.0;
    xs[n + 2] = cx; ys[n + 2] = cy + 3 * big;   hs[n + 2] = 0.0;

    std::vector<HullTri> tris;
    tris.push_back({{n, n + 1, n + 2}, {-1, -1, -1}, true});

    const auto conflicts = [&](int t, int p) {
        const int s =
            lifted_orient_sign(xs.data(), ys.data(), hs.data(), tris[t].v[0],
                               tris[t].v[1], tris[t].v[2], p);
        if (s == 0) degenerate_tie(); // exactly copower: refuse to pick a side
        return s < 0;
    };
    const auto edge_of = [&](int t, int a, int b) {
        for (int k = 0; k < 3; ++k)
            if (tris[t].v[k] == a && tris[t].v[(k + 1) % 3] == b) return k;
        throw std::logic_error("triangulation: broken adjacency");
    };

    // deterministic insertion shuffle
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::uint64_t shuffle_state = 0x9e3779b97f4a7c15ull ^ std::uint64_t(n);
    for (int i = n - 1; i > 0; --i) {
        const int j = int(splitmix64_next(shuffle_state) % std::uint64_t(i + 1));
        std::swap(order[i], order[j]);
    }

    int hint = 0;
    std::vector<int> conflict, stack;
    std::vector<char> mark; // grown lazily, reset per insertion via `conflict`
    for (const int p : order) {
        // walk to a triangle containing p
        int t = hint;
        while (t > 0 && !tris[t].alive) --t;
        for (std::size_t step = 0, cap = 4 * tris.size() + 64;; ++step) {
            if (step >= cap) { // stalled walk: scan (degenerate layouts)
                t = -1;
                for (int i = 0; i < int(tris.size()); ++i) {
                    if (!tris[i].alive) continue;
                    bool inside = true;
                    for (int k = 0; k < 3 && inside; ++k)
                        inside = orient2d_sign(xs[tris[i].v[k]], ys[tris[i].v[k]],
                                               xs[tris[i].v[(k + 1) % 3]],
                                               ys[tris[i].v[(k + 1) % 3]], xs[p],
                                               ys[p]) >= 0;
                    if (inside) { t = i; break; }
                }
                if (t < 0) throw std::logic_error("triangulation: point escaped hull");
                break;
            }
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                const int a = tris[t].v[k], b = tris[t].v[(k + 1) % 3];
                if (orient2d_sign(xs[a], ys[a], xs[b], ys[b], xs[p], ys[p]) < 0) {
                    next = tris[t].nb[k];
                    break;
                }
            }
            if (next < 0) break;
            t = next;
        }

        // conflict region (BFS over neighbors); an on-edge landing can put the
        // walk on the non-conflicting side, so probe the one-ring too
        int seedTri = -1;
        if (conflicts(t, p)) {
            seedTri = t;
        } else {
            for (int k = 0; k < 3 && seedTri < 0; ++k) {
                const int nbk = tris[t].nb[k];
                if (nbk >= 0 && conflicts(nbk, p)) seedTri = nbk;
            }
        }
        if (seedTri < 0) continue; // hidden point: appears in no cell

        conflict.clear();
        stack.assign(1, seedTri);
        if (mark.size() < tris.size()) mark.resize(tris.size(), 0);
        mark[seedTri] = 1;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            conflict.push_back(cur);
            for (int k = 0; k < 3; ++k) {
                const int nbk = tris[cur].nb[k];
                if (nbk >= 0 && !mark[nbk] && conflicts(nbk, p)) {
                    mark[nbk] = 1;
                    stack.push_back(nbk);
                }
            }
        }

        // cavity boundary: directed edges whose outside is not in conflict
        std::unordered_map<int, std::pair<int, int>> fan_at; // u -> (v, outer)
        for (const int ct : conflict) {
            tris[ct].alive = false;
            for (int k = 0; k < 3; ++k) {
                const int nbk = tris[ct].nb[k];
                if (nbk < 0 || !mark[nbk]) {
                    const bool fresh =
                        fan_at.emplace(tris[ct].v[k],
                                       std::make_pair(tris[ct].v[(k + 1) % 3],
                                                      nbk))
                            .second;
                    if (!fresh) detail::degenerate_tie(); // pinched cavity
                }
            }
        }
        for (const int ct : conflict) mark[ct] = 0;

        std::unordered_map<int, int> tri_starting_at;
        tri_starting_at.reserve(fan_at.size());
        for (const auto& [u, edge] : fan_at) {
            const int id = int(tris.size());
            tris.push_back({{u, edge.first, p}, {edge.second, -1, -1}, true});
            tri_starting_at[u] = id;
            if (edge.second >= 0)
                tris[edge.second].nb[edge_of(edge.second, edge.first, u)] = id;
        }
        for (const auto& [u, id] : tri_starting_at) {
            const int v = tris[id].v[1];
            tris[id].nb[1] = tri_starting_at.at(v); // across (v, p)
            tris[tri_starting_at.at(v)].nb[2] = id; // their (p, v) side
        }
        hint = int(tris.size()) - 1;
    }

    std::vector<std::vector<int>> cells;
    for (const auto& t : tris) {
        if (!t.alive) continue;
        if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
        cells.push_back({t.v[0], t.v[1], t.v[2]});
    }
    return cells;
}

// 1-D case: lower envelope of (x, x^2 + h) by monotone chain
inline std::vector<std::vector<int>> regular_triangulation_1d(
    const std::vector<WeightedPoint>& pts) {
    const int n = int(pts.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pts[a].position[0] != pts[b].position[0])
            return pts[a].position[0] < pts[b].position[0];
        return pts[a].height < pts[b].height;
    });

    const auto lift = [&](int i) {
        const double x = pts[i].position[0];
        return x * x + pts[i].height;
    };
    std::vector<int> hull;
    for (const int i : order) {
        if (!hull.empty() &&
            pts[hull.back()].position[0] == pts[i].position[0])
            continue; // same position: the lower lift wins, the rest hide
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            const int turn = orient2d_sign(pts[a].position[0], lift(a),
                                           pts[b].position[0], lift(b),
                                           pts[i].position[0], lift(i));
            if (turn == 0) degenerate_tie();
            if (turn > 0) break; // b stays strictly below chord a--i
            hull.pop_back();
        }
        hull.push_back(i);
    }
    std::vector<std::vector<int>> cells;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k)
        cells.push_back({hull[k], hull[k + 1]});
    return cells;
}

} // namespace detail

inline RegularTriangulation build_triangulation(const WeightedPointSet& pts) {
    const int dim = pts.params.d - 1;
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("build_triangulation: d-1 must be 1 or 2");
    if (int(pts.points.size()) < pts.params.d)
        throw std::invalid_argument("build_triangulation: not enough points");

    RegularTriangulation tri;
    tri.input = pts;
    const auto raw = dim == 2 ? detail::regular_triangulation_2d(pts.points)
                              : detail::regular_triangulation_1d(pts.points);

    tri.cells.reserve(raw.size());
    for (const auto& cell : raw) {
        TriCell c;
        c.indices = cell;
        // apex: solve pow(z, (v_i, h_i)) equal across the cell's points
        const auto& v0 = pts.points[cell[0]].position;
        const double w0 = detail::sq_dist(v0, Point(v0.size(), 0.0)) +
                          pts.points[cell[0]].height;
        std::vector<double> A(size_t(dim) * dim), b(dim);
        for (int i = 0; i < dim; ++i) {
            const auto& vi = pts.points[cell[i + 1]].position;
            double ni = 0.0;
            for (int j = 0; j < dim; ++j) {
                A[size_t(i) * dim + j] = 2.0 * (vi[j] - v0[j]);
                ni += vi[j] * vi[j];
            }
            b[i] = ni + pts.points[cell[i + 1]].height - w0;
        }
        if (!detail::lu_solve(A, b, dim))
            throw std::runtime_error("apex solve: singular cell");
        c.apex = b;
        c.power = detail::sq_dist(c.apex, v0) + pts.points[cell[0]].height;
        tri.cells.push_back(std::move(c));
    }
    return tri;
}

// certificate that the h_max truncation did not distort the window: every
// window apex must have power below h_max, so points above the cap can never
// win a power comparison there
inline bool verify_height_cap(const RegularTriangulation& tri) {
    for (const auto& c : tri.cells)
        if (tri.input.window.contains(c.apex) && !(c.power < tri.input.h_max))
            return false;
    return true;
}

inline ErgodicEstimate estimate_typical_moment(const RegularTriangulation& tri,
                                               double nu, double s,
                                               const Box& window) {
    ErgodicEstimate est;
    est.s = s;
    est.nu = nu;
    double num = 0.0, den = 0.0;
    for (const auto& c : tri.cells) {
        if (!window.contains(c.apex)) {
            ++est.boundary_discarded;
            continue;
        }
        std::vector<Point> verts;
        verts.reserve(c.indices.size());
        for (const int i : c.indices)
            verts.push_back(tri.input.points[i].position);
        const double vol = simplex_volume(Simplex::of(std::move(verts)));
        num += std::pow(vol, nu + s);
        den += std::pow(vol, nu);
        ++est.cells_used;
    }
    if (est.cells_used == 0 || !(den > 0.0))
        throw std::runtime_error(
            "typical-moment estimate: no cells with apex in the window");
    est.estimate = num / den;
    return est;
}

namespace detail {

// Liang-Barsky segment clip against the window; false if fully outside
inline bool clip_segment(const Box& w, Point& a, Point& b) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a[0] - w.lo[0], w.hi[0] - a[0], a[1] - w.lo[1],
                         w.hi[1] - a[1]};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return false;
            continue;
        }
        const double r = q[k] / p[k];
        if (p[k] < 0.0) {
            if (r > t1) return false;
            t0 = std::max(t0, r);
        } else {
            if (r < t0) return false;
            t1 = std::min(t1, r);
        }
    }
    if (t0 > t1) return false;
    const Point a0 = a;
    a = {a0[0] + t0 * dx, a0[1] + t0 * dy};
    b = {a0[0] + t1 * dx, a0[1] + t1 * dy};
    return true;
}

} // namespace detail

inline void render_svg(const RegularTriangulation& tri, const Box& window,
                       std::ostream& os) {
    if (tri.input.params.d - 1 != 2)
        throw std::invalid_argument("render_svg: requires d-1 = 2");
    const double w = window.hi[0] - window.lo[0];
    const double h = window.hi[1] - window.lo[1];
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
                  "height=\"%.0f\" viewBox=\"0 0 %.6f %.6f\">\n",
                  800.0 * h / w, w, h);
    os << buf;
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<g stroke=\"black\" stroke-width=\"%.6f\" "
                  "stroke-linecap=\"round\">\n",
                  0.003 * w);
    os << buf;

    std::vector<std::pair<int, int>> edges;
    for (const auto& c : tri.cells)
        for (size_t i = 0; i < c.indices.size(); ++i)
            for (size_t j = i + 1; j < c.indices.size(); ++j)
                edges.emplace_back(std::min(c.indices[i], c.indices[j]),
                                   std::max(c.indices[i], c.indices[j]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    for (const auto& [i, j] : edges) {
        Point a = tri.input.points[i].position;
        Point b = tri.input.points[j].position;
        if (!detail::clip_segment(window, a, b)) continue;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n",
                      a[0] - window.lo[0], window.hi[1] - a[1],
                      b[0] - window.lo[0], window.hi[1] - b[1]);
        os << buf;
    }
    os << "</g>\n</svg>\n";
}

inline void render_svg(const RegularTriangulation& tri, const Box& window,
                       const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("render_svg: cannot open " + path);
    render_svg(tri, window, os);
    os.flush();
    if (!os) throw std::runtime_error("render_svg: write failed for " + path);
}

inline void write_cells_csv(std::ostream& os, const RegularTriangulation& tri) {
    const int dim = tri.input.params.d - 1;
    os << "cell";
    for (int i = 0; i <= dim; ++i)
        for (int j = 0; j < dim; ++j) os << ",v" << i << char('x' + j);
    os << ",volume";
    for (int j = 0; j < dim; ++j) os << ",apex" << char('x' + j);
    os << ",power\n";
    os << std::setprecision(17);
    for (size_t k = 0; k < tri.cells.size(); ++k) {
        const auto& c = tri.cells[k];
        os << k;
        std::vector<Point> verts;
        for (const int i : c.indices) {
            verts.push_back(tri.input.points[i].position);
            for (int j = 0; j < dim; ++j)
                os << ',' << tri.input.points[i].position[j];
        }
        os << ',' << simplex_volume(Simplex::of(std::move(verts)));
        for (int j = 0; j < dim; ++j) os << ',' << c.apex[j];
        os << ',' << c.power << '\n';
    }
}

namespace detail {

inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_array(const Point& p) {
    std::string s = "[";
    for (size_t j = 0; j < p.size(); ++j) {
        if (j) s += ", ";
        s += num17(p[j]);
    }
    return s + "]";
}

} // namespace detail

inline void write_run_manifest(std::ostream& os, const WeightedPointSet& pts) {
    using detail::num17;
    os << "{\n"
       << "  \"schema\": \"run-manifest/1\",\n"
       << "  \"params\": {\"d\": " << pts.params.d
       << ", \"beta\": " << num17(pts.params.beta)
       << ", \"nu\": " << num17(pts.params.nu)
       << ", \"gamma\": " << num17(pts.params.gamma) << "},\n"
       << "  \"window\": {\"lo\": " << detail::json_array(pts.window.lo)
       << ", \"hi\": " << detail::json_array(pts.window.hi) << "},\n"
       << "  \"h_max\": " << num17(pts.h_max) << ",\n"
       << "  \"margin\": " << num17(pts.margin) << ",\n"
       << "  \"seed\": " << pts.seed << ",\n"
       << "  \"stream\": " << pts.stream_id << ",\n"
       << "  \"points\": " << pts.points.size() << "\n"
       << "}\n";
}

} // namespace betadel
