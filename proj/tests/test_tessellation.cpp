// Construction of the weighted tessellation checked against brute-force
// duality, pinned hand examples, coupled cap-thinning, and the window
// moment estimator against the closed-form model moments.

#include <catch2/catch_amalgamated.hpp>

#include <betadel/geometry.hpp>
#include <betadel/model.hpp>
#include <betadel/tessellation.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace betadel;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

WeightedPointSet make_set(int d, std::vector<WeightedPoint> pts, Box window,
                          double h_max) {
    WeightedPointSet s;
    s.points = std::move(pts);
    s.window = window;
    s.sampling_box = window;
    s.h_max = h_max;
    s.params.d = d;
    return s;
}

std::vector<std::array<int, 3>> sorted_cells(const RegularTriangulation& t) {
    std::vector<std::array<int, 3>> v;
    for (const auto& c : t.cells) {
        std::array<int, 3> a{c.indices[0], c.indices[1], c.indices[2]};
        std::sort(a.begin(), a.end());
        v.push_back(a);
    }
    std::sort(v.begin(), v.end());
    return v;
}

double power_at(const Point& z, const WeightedPoint& p) {
    double s = 0.0;
    for (size_t j = 0; j < z.size(); ++j) {
        const double d = z[j] - p.position[j];
        s += d * d;
    }
    return s + p.height;
}

int count_window_cells(const RegularTriangulation& t) {
    int n = 0;
    for (const auto& c : t.cells)
        if (t.input.window.contains(c.apex)) ++n;
    return n;
}

} // namespace

TEST_CASE("box geometry") {
    const Box b = Box::of({0.0, -1.0}, {2.0, 3.0});
    CHECK(b.volume() == Approx(8.0));
    CHECK(b.contains({0.0, -1.0}));
    CHECK(b.contains({1.999, 2.999}));
    CHECK_FALSE(b.contains({2.0, 0.0})); // hi side is open
    CHECK_FALSE(b.contains({-0.001, 0.0}));
    const Box p = b.padded(0.5);
    CHECK(p.lo[0] == Approx(-0.5));
    CHECK(p.hi[1] == Approx(3.5));
    CHECK_THROWS_AS(Box::of({0.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(Box::of({0.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("poisson sample matches its intensity") {
    const ModelParams p{3, 0.5, 0.0, 2.0};
    const Box win = Box::of({0.0, 0.0}, {4.0, 4.0});
    const double h_max = 1.5;
    const double lambda = p.gamma * c_const(p) *
                          std::pow(h_max, p.beta + 1.0) / (p.beta + 1.0) *
                          win.volume();

    const int reps = 1000;
    double total = 0.0, top_height = 0.0;
    bool inside = true;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream rng(501, rep);
        const auto s = sample_poisson(p, win, h_max, rng, 0.0);
        total += double(s.points.size());
        for (const auto& wp : s.points) {
            inside = inside && s.sampling_box.contains(wp.position);
            top_height = std::max(top_height, wp.height);
        }
    }
    const double se = std::sqrt(lambda / reps);
    CHECK(std::abs(total / reps - lambda) < 3.5 * se);
    CHECK(inside);
    CHECK(top_height <= h_max);
    CHECK(top_height > 0.8 * h_max);

    // margin 0 keeps the sampling box equal to the window
    RngStream rng(501);
    const auto s = sample_poisson(p, win, h_max, rng, 0.0);
    CHECK(s.sampling_box.lo == win.lo);
    CHECK(s.sampling_box.hi == win.hi);
    CHECK(s.margin == 0.0);
}

TEST_CASE("height marginal distribution") {
    for (const double beta : {0.0, 1.2}) {
        const ModelParams p{3, beta, 0.0, 1.0};
        const double per_area =
            c_const(p) * std::pow(1.0, beta + 1.0) / (beta + 1.0);
        const double L = std::sqrt(1e5 / per_area);
        RngStream rng(502 + int(10 * beta));
        const auto s =
            sample_poisson(p, Box::of({0.0, 0.0}, {L, L}), 1.0, rng, 0.0);
        const size_t n = s.points.size();
        REQUIRE(n > 90000);

        std::vector<double> h(n);
        for (size_t i = 0; i < n; ++i) h[i] = s.points[i].height;
        std::sort(h.begin(), h.end());
        double ks = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double cdf = std::pow(h[i], beta + 1.0);
            ks = std::max(ks, std::abs(cdf - double(i) / n));
            ks = std::max(ks, std::abs(cdf - double(i + 1) / n));
        }
        CHECK(ks < 0.0065);
    }
}

TEST_CASE("equal heights reduce to the classical dual") {
    RngStream rng(503);
    std::vector<WeightedPoint> pts(60);
    for (auto& wp : pts) {
        wp.position = {rng.uniform(), rng.uniform()};
        wp.height = 0.3;
    }
    const Box win = Box::of({-1.0, -1.0}, {2.0, 2.0});
    const auto t1 = build_triangulation(make_set(3, pts, win, 1.0));
    for (auto& wp : pts) wp.height = 0.0;
    const auto t2 = build_triangulation(make_set(3, pts, win, 1.0));

    REQUIRE(t1.cells.size() > 50);
    CHECK(sorted_cells(t1) == sorted_cells(t2));

    // with equal heights the apex is the circumcenter and every cell has an
    // empty circumdisk
    int crowded = 0;
    for (const auto& c : t1.cells) {
        std::vector<Point> verts;
        for (const int i : c.indices) verts.push_back(pts[i].position);
        const auto cs = circumsphere(Simplex::of(verts));
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(c.apex[j] - cs.center[j]) < 1e-9);
        CHECK(c.power == Approx(cs.radius * cs.radius + 0.3).margin(1e-9));
        const double r2 = cs.radius * cs.radius;
        for (int q = 0; q < int(pts.size()); ++q) {
            if (q == c.indices[0] || q == c.indices[1] || q == c.indices[2])
                continue;
            if (detail::sq_dist(pts[q].position, cs.center) < r2 * (1 - 1e-9))
                ++crowded;
        }
    }
    CHECK(crowded == 0);
}

TEST_CASE("a heavy interior point is hidden, a heavy extreme point is not") {
    const Box win = Box::of({-5.0, -5.0}, {5.0, 5.0});
    std::vector<WeightedPoint> tri_pts = {
        {{0.0, 0.0}, 0.1}, {{2.0, 0.0}, 0.2}, {{1.0, 2.0}, 0.15}};

    auto heavy = tri_pts;
    heavy.push_back({{1.0, 0.7}, 50.0});
    const auto hidden = build_triangulation(make_set(3, heavy, win, 100.0));
    REQUIRE(hidden.cells.size() == 1);
    CHECK(sorted_cells(hidden)[0] == std::array<int, 3>{0, 1, 2});

    auto light = tri_pts;
    light.push_back({{1.0, 0.7}, 0.001});
    const auto fan = build_triangulation(make_set(3, light, win, 100.0));
    CHECK(fan.cells.size() == 3);

    // a projection-extreme point stays a vertex no matter its weight, and
    // its weight decides the diagonal of the square
    std::vector<WeightedPoint> square = {{{0.0, 0.0}, 0.1},
                                         {{1.0, 0.0}, 0.2},
                                         {{1.0, 1.0}, 0.15},
                                         {{0.0, 1.0}, 50.0}};
    const auto flipped = build_triangulation(make_set(3, square, win, 100.0));
    const auto cells = sorted_cells(flipped);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == std::array<int, 3>{0, 1, 2});
    CHECK(cells[1] == std::array<int, 3>{0, 2, 3});
}

TEST_CASE("duality against brute force, planar") {
    for (const int n : {20, 80, 200}) {
        RngStream rng(900 + n);
        std::vector<WeightedPoint> pts(n);
        for (auto& wp : pts) {
            wp.position = {4.0 * rng.uniform(), 4.0 * rng.uniform()};
            wp.height = 0.2 * rng.uniform();
        }
        const auto tri = build_triangulation(
            make_set(3, pts, Box::of({0.0, 0.0}, {4.0, 4.0}), 1.0));

        const auto apex_of = [&](int i, int j, int k, Point& z, double& K) {
            const auto &a = pts[i].position, &b = pts[j].position,
                       &c = pts[k].position;
            const double a11 = 2 * (b[0] - a[0]), a12 = 2 * (b[1] - a[1]);
            const double a21 = 2 * (c[0] - a[0]), a22 = 2 * (c[1] - a[1]);
            const double det = a11 * a22 - a12 * a21;
            if (std::abs(det) < 1e-12) return false;
            const double wa = a[0] * a[0] + a[1] * a[1] + pts[i].height;
            const double r1 =
                b[0] * b[0] + b[1] * b[1] + pts[j].height - wa;
            const double r2 =
                c[0] * c[0] + c[1] * c[1] + pts[k].height - wa;
            z = {(r1 * a22 - r2 * a12) / det, (a11 * r2 - a21 * r1) / det};
            K = power_at(z, pts[i]);
            return true;
        };
        const auto clearance = [&](int i, int j, int k, const Point& z,
                                   double K) {
            double m = std::numeric_limits<double>::infinity();
            for (int q = 0; q < n; ++q) {
                if (q == i || q == j || q == k) continue;
                m = std::min(m, power_at(z, pts[q]) - K);
            }
            return m;
        };

        std::set<std::array<int, 3>> expected;
        int borderline = 0;
        Point z;
        double K;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    if (!apex_of(i, j, k, z, K)) continue;
                    const double m = clearance(i, j, k, z, K);
                    if (m > 1e-7)
                        expected.insert({i, j, k});
                    else if (m > -1e-7)
                        ++borderline;
                }

        const auto got_list = sorted_cells(tri);
        const std::set<std::array<int, 3>> got(got_list.begin(),
                                               got_list.end());
        int missing = 0;
        for (const auto& t : expected) missing += got.count(t) == 0;
        int bogus = 0;
        for (const auto& t : got) {
            REQUIRE(apex_of(t[0], t[1], t[2], z, K));
            bogus += clearance(t[0], t[1], t[2], z, K) <= -1e-7;
        }
        INFO("n=" << n);
        CHECK(missing == 0);
        CHECK(bogus == 0);
        CHECK(got.size() >= expected.size());
        CHECK(got.size() <= expected.size() + borderline);

        for (const auto& c : tri.cells) {
            const auto &a = pts[c.indices[0]].position,
                       &b = pts[c.indices[1]].position,
                       &cc = pts[c.indices[2]].position;
            const double cross = (b[0] - a[0]) * (cc[1] - a[1]) -
                                 (b[1] - a[1]) * (cc[0] - a[0]);
            CHECK(cross > 0.0); // cells come out counterclockwise
            for (const int i : c.indices)
                CHECK(std::abs(power_at(c.apex, pts[i]) - c.power) <
                      1e-9 * std::max(1.0, std::abs(c.power)));
        }
    }
}

TEST_CASE("duality against brute force, line") {
    const int n = 40;
    RngStream rng(940);
    std::vector<WeightedPoint> pts(n);
    for (auto& wp : pts) {
        wp.position = {3.0 * rng.uniform()};
        wp.height = 0.5 * rng.uniform();
    }
    const auto tri =
        build_triangulation(make_set(2, pts, Box::of({0.0}, {3.0}), 1.0));

    std::set<std::array<int, 2>> expected;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double xi = pts[i].position[0], xj = pts[j].position[0];
            if (std::abs(xj - xi) < 1e-12) continue;
            const double z = (xj * xj + pts[j].height - xi * xi -
                              pts[i].height) /
                             (2 * (xj - xi));
            const double K = (z - xi) * (z - xi) + pts[i].height;
            double m = std::numeric_limits<double>::infinity();
            for (int q = 0; q < n; ++q) {
                if (q == i || q == j) continue;
                const double dq = z - pts[q].position[0];
                m = std::min(m, dq * dq + pts[q].height - K);
            }
            if (m > 1e-7) expected.insert({i, j});
        }

    std::set<std::array<int, 2>> got;
    for (const auto& c : tri.cells) {
        std::array<int, 2> e{c.indices[0], c.indices[1]};
        std::sort(e.begin(), e.end());
        got.insert(e);
    }
    CHECK(got == expected);
}

TEST_CASE("hand-checked line tessellation") {
    std::vector<WeightedPoint> pts = {{{0.0}, 0.0}, {{1.0}, 0.0}, {{2.0}, 0.0}};
    const Box win = Box::of({0.2}, {1.8});
    const auto tri = build_triangulation(make_set(2, pts, win, 1.0));
    REQUIRE(tri.cells.size() == 2);
    CHECK(tri.cells[0].apex[0] == Approx(0.5));
    CHECK(tri.cells[1].apex[0] == Approx(1.5));
    CHECK(tri.cells[0].power == Approx(0.25));

    const auto est = estimate_typical_moment(tri, 0.0, 1.0, win);
    CHECK(est.estimate == 1.0); // both cells have unit length
    CHECK(est.cells_used == 2);

    // a co-located point and a towering interior point both vanish
    auto more = pts;
    more.push_back({{1.0}, 30.0});
    more.push_back({{0.5}, 30.0});
    const auto tri2 = build_triangulation(make_set(2, more, win, 100.0));
    REQUIRE(tri2.cells.size() == 2);
    CHECK(tri2.cells[0].indices == std::vector<int>{0, 1});
    CHECK(tri2.cells[1].indices == std::vector<int>{1, 2});
}

TEST_CASE("exact ties are refused") {
    const Box win = Box::of({-5.0, -5.0}, {5.0, 5.0});
    // cocircular corners with one shared weight: exactly copower
    std::vector<WeightedPoint> square = {{{0.0, 0.0}, 0.7},
                                         {{1.0, 0.0}, 0.7},
                                         {{1.0, 1.0}, 0.7},
                                         {{0.0, 1.0}, 0.7}};
    CHECK_THROWS_WITH(build_triangulation(make_set(3, square, win, 1.0)),
                      ContainsSubstring("degenerate"));

    // lifted line points placed exactly on a common chord
    std::vector<WeightedPoint> line = {
        {{0.0}, 0.0}, {{1.0}, 1.25}, {{2.0}, 0.5}};
    CHECK_THROWS_WITH(
        build_triangulation(make_set(2, line, Box::of({0.0}, {2.0}), 2.0)),
        ContainsSubstring("degenerate"));
}

TEST_CASE("construction determinism") {
    const ModelParams p{3, 1.0, 0.0, 1.0};
    const Box win = Box::of({0.0, 0.0}, {6.0, 6.0});
    RngStream r1(97, 5), r2(97, 5);
    const auto s1 = sample_poisson(p, win, 2.0, r1);
    const auto s2 = sample_poisson(p, win, 2.0, r2);
    REQUIRE(s1.points.size() == s2.points.size());
    for (size_t i = 0; i < s1.points.size(); ++i) {
        CHECK(s1.points[i].position == s2.points[i].position);
        CHECK(s1.points[i].height == s2.points[i].height);
    }

    const auto t1 = build_triangulation(s1);
    const auto t2 = build_triangulation(s2);
    REQUIRE(t1.cells.size() == t2.cells.size());
    bool same = true;
    for (size_t i = 0; i < t1.cells.size(); ++i)
        same = same && t1.cells[i].indices == t2.cells[i].indices &&
               t1.cells[i].apex == t2.cells[i].apex &&
               t1.cells[i].power == t2.cells[i].power;
    CHECK(same);

    std::ostringstream c1, c2, m1, m2;
    write_cells_csv(c1, t1);
    write_cells_csv(c2, t2);
    CHECK(c1.str() == c2.str());
    CHECK(c1.str().substr(0, 5) == "cell,");
    write_run_manifest(m1, s1);
    write_run_manifest(m2, s2);
    CHECK(m1.str() == m2.str());

    RngStream r3(97, 6);
    const auto s3 = sample_poisson(p, win, 2.0, r3);
    CHECK((s3.points.size() != s1.points.size() ||
           s3.points[0].position != s1.points[0].position));
}

TEST_CASE("input validation") {
    const Box w1 = Box::of({0.0}, {1.0});
    const Box w2 = Box::of({0.0, 0.0}, {1.0, 1.0});
    RngStream rng(7);
    const ModelParams p3{3, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(sample_poisson(p3, w2, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_poisson(p3, w1, 1.0, rng), std::invalid_argument);

    std::vector<WeightedPoint> two = {{{0.0, 0.0}, 0.1}, {{1.0, 0.0}, 0.1}};
    CHECK_THROWS_AS(build_triangulation(make_set(3, two, w2, 1.0)),
                    std::invalid_argument);
    std::vector<WeightedPoint> cube = {{{0.0, 0.0, 0.0}, 0.1},
                                       {{1.0, 0.0, 0.0}, 0.1},
                                       {{0.0, 1.0, 0.0}, 0.1},
                                       {{0.0, 0.0, 1.0}, 0.1}};
    WeightedPointSet s;
    s.points = cube;
    s.window = Box::of({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    s.sampling_box = s.window;
    s.h_max = 1.0;
    s.params.d = 4;
    CHECK_THROWS_AS(build_triangulation(s), std::invalid_argument);
}

TEST_CASE("orientation predicate near degeneracy") {
    const double eps = std::ldexp(1.0, -40);
    CHECK(detail::orient2d_sign(0, 0, 256, 256, 128 + eps, 128) == -1);
    CHECK(detail::orient2d_sign(0, 0, 128 + eps, 128, 256, 256) == 1);
    CHECK(detail::orient2d_sign(0, 0, 1, 1, 2, 2) == 0);
    const double big = std::ldexp(1.0, 53);
    CHECK(detail::orient2d_sign(0, 0, big, big, big + 2, big) == -1);
}

TEST_CASE("height cap certificate") {
    const ModelParams p{3, 0.0, 0.0, 1.0};
    const Box win = Box::of({0.0, 0.0}, {16.0, 16.0});
    RngStream rng(601);
    const auto s = sample_poisson(p, win, 14.0, rng);
    const auto tri = build_triangulation(s);
    REQUIRE(verify_height_cap(tri));
    CHECK(count_window_cells(tri) > 100);

    auto tampered = tri;
    tampered.input.h_max = 1e-6;
    CHECK_FALSE(verify_height_cap(tampered));

    // growing the cap from far too small settles at a certified sample
    double h = 0.05;
    bool settled = false;
    int iters = 0;
    for (; iters < 13 && !settled; ++iters) {
        RngStream r2(602, iters);
        const auto s2 = sample_poisson(p, win, h, r2);
        if (int(s2.points.size()) >= 3) {
            const auto t2 = build_triangulation(s2);
            settled = count_window_cells(t2) > 0 && verify_height_cap(t2);
        }
        if (!settled) h *= 2;
    }
    CHECK(settled);
    CHECK(iters <= 13);
}

TEST_CASE("window cell edges are interior") {
    const ModelParams p{3, 0.0, 0.0, 1.0};
    const Box win = Box::of({0.0, 0.0}, {16.0, 16.0});
    RngStream rng(601);
    const auto tri = build_triangulation(sample_poisson(p, win, 14.0, rng));

    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& c : tri.cells)
        for (int k = 0; k < 3; ++k) {
            const int a = c.indices[k], b = c.indices[(k + 1) % 3];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
    int open_edges = 0;
    for (const auto& c : tri.cells) {
        if (!win.contains(c.apex)) continue;
        for (int k = 0; k < 3; ++k) {
            const int a = c.indices[k], b = c.indices[(k + 1) % 3];
            open_edges += edge_count[{std::min(a, b), std::max(a, b)}] != 2;
        }
    }
    CHECK(open_edges == 0);
}

TEST_CASE("cap increase leaves window cells unchanged") {
    const ModelParams p{3, 0.5, 0.0, 1.0};
    const Box win = Box::of({0.0, 0.0}, {12.0, 12.0});
    const double cap = 6.0;
    RngStream rng(603);
    const auto full = sample_poisson(p, win, 2 * cap, rng, 8.0);

    WeightedPointSet thin = full;
    thin.h_max = cap;
    std::erase_if(thin.points,
                  [&](const WeightedPoint& wp) { return wp.height > cap; });
    REQUIRE(thin.points.size() < full.points.size());

    const auto tri_thin = build_triangulation(thin);
    const auto tri_full = build_triangulation(full);
    REQUIRE(verify_height_cap(tri_thin));

    // compare in a window shrunk clear of the strip where outside apexes
    // could still matter
    const Box inner = Box::of({2.0, 2.0}, {10.0, 10.0});
    const auto keys = [&](const RegularTriangulation& t) {
        std::vector<std::array<double, 6>> out;
        for (const auto& c : t.cells) {
            if (!inner.contains(c.apex)) continue;
            std::array<std::array<double, 2>, 3> vs;
            for (int i = 0; i < 3; ++i)
                vs[i] = {t.input.points[c.indices[i]].position[0],
                         t.input.points[c.indices[i]].position[1]};
            std::sort(vs.begin(), vs.end());
            out.push_back({vs[0][0], vs[0][1], vs[1][0], vs[1][1], vs[2][0],
                           vs[2][1]});
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto kt = keys(tri_thin), kf = keys(tri_full);
    REQUIRE(kt.size() > 50);
    CHECK(kt == kf);
}

TEST_CASE("window moment estimator") {
    RngStream rng(604);
    std::vector<WeightedPoint> pts(300);
    for (auto& wp : pts) {
        wp.position = {4.0 * rng.uniform(), 4.0 * rng.uniform()};
        wp.height = rng.uniform();
    }
    const Box win = Box::of({0.0, 0.0}, {4.0, 4.0});
    const auto tri = build_triangulation(make_set(3, pts, win, 1.0));

    const auto one = estimate_typical_moment(tri, 0.7, 0.0, win);
    CHECK(one.estimate == 1.0); // s = 0 is exact by construction
    CHECK(one.cells_used > 0);
    CHECK(one.boundary_discarded > 0);

    // translating the whole configuration moves nothing that matters
    auto shifted = pts;
    for (auto& wp : shifted) {
        wp.position[0] += 128.0;
        wp.position[1] -= 64.0;
    }
    const Box win2 = Box::of({128.0, -64.0}, {132.0, -60.0});
    const auto tri2 = build_triangulation(make_set(3, shifted, win2, 1.0));
    for (const double nu : {0.0, 1.0}) {
        const auto e1 = estimate_typical_moment(tri, nu, 1.0, win);
        const auto e2 = estimate_typical_moment(tri2, nu, 1.0, win2);
        CHECK(e1.cells_used == e2.cells_used);
        CHECK(e1.estimate == Approx(e2.estimate).epsilon(1e-9));
    }

    CHECK_THROWS_WITH(
        estimate_typical_moment(tri, 0.0, 1.0,
                                Box::of({50.0, 50.0}, {51.0, 51.0})),
        ContainsSubstring("no cells"));
}

TEST_CASE("window estimates converge to the model moment") {
    const ModelParams p{3, 0.0, 0.0, 1.0};
    const double truth = std::exp(log_volume_moment(p, 1.0));
    const double sizes[3] = {8.0, 20.0, 48.0};
    double err_sum[3] = {0.0, 0.0, 0.0};
    for (int rep = 0; rep < 3; ++rep) {
        RngStream rng(700 + rep);
        const auto s =
            sample_poisson(p, Box::of({0.0, 0.0}, {48.0, 48.0}), 14.0, rng);
        const auto tri = build_triangulation(s);
        REQUIRE(verify_height_cap(tri));
        for (int li = 0; li < 3; ++li) {
            const double half = sizes[li] / 2;
            const Box w = Box::of({24 - half, 24 - half}, {24 + half, 24 + half});
            const auto est = estimate_typical_moment(tri, 0.0, 1.0, w);
            err_sum[li] += std::abs(est.estimate - truth);
            if (li == 2) CHECK(std::abs(est.estimate - truth) < 0.10 * truth);
        }
    }
    CHECK(err_sum[1] < err_sum[0]);
    CHECK(err_sum[2] < err_sum[1]);
}

TEST_CASE("rendering and manifests") {
    struct Preset {
        double beta, side, h_max;
    };
    const Preset presets[2] = {{5.0, 10.0, 2.0}, {15.0, 6.0, 1.35}};
    double means[2];
    std::string svgs[2];

    for (int i = 0; i < 2; ++i) {
        const ModelParams p{3, presets[i].beta, 0.0, 1.0};
        const Box win =
            Box::of({0.0, 0.0}, {presets[i].side, presets[i].side});
        RngStream rng(800 + i);
        const auto s = sample_poisson(p, win, presets[i].h_max, rng);
        const auto tri = build_triangulation(s);
        REQUIRE(verify_height_cap(tri));

        const double m1 = estimate_typical_moment(tri, 0.0, 1.0, win).estimate;
        const double m2 = estimate_typical_moment(tri, 0.0, 2.0, win).estimate;
        means[i] = m1;
        const double cv_hat = std::sqrt(m2 / (m1 * m1) - 1.0);
        const double cv_model = std::sqrt(
            std::exp(log_volume_moment(p, 2.0) - 2 * log_volume_moment(p, 1.0)) -
            1.0);
        CHECK(m1 == Approx(std::exp(log_volume_moment(p, 1.0))).epsilon(0.10));
        CHECK(std::abs(cv_hat - cv_model) < 0.15);

        std::ostringstream os1, os2;
        render_svg(tri, win, os1);
        render_svg(tri, win, os2);
        svgs[i] = os1.str();
        CHECK(svgs[i] == os2.str());
        CHECK(svgs[i].substr(0, 4) == "<svg");
        CHECK(svgs[i].find("</svg>") != std::string::npos);

        size_t lines = 0, pos = 0;
        while ((pos = svgs[i].find("<line", pos)) != std::string::npos) {
            ++lines;
            pos += 5;
        }
        CHECK(lines >= 100);

        std::ostringstream empty;
        render_svg(tri, Box::of({50.0, 50.0}, {51.0, 51.0}), empty);
        CHECK(empty.str().find("<line") == std::string::npos);

        std::ostringstream man1, man2;
        write_run_manifest(man1, s);
        write_run_manifest(man2, s);
        CHECK(man1.str() == man2.str());
        CHECK(man1.str().find("\"run-manifest/1\"") != std::string::npos);
        CHECK(man1.str().find("\"points\": " +
                              std::to_string(s.points.size())) !=
              std::string::npos);

        if (i == 0) {
            render_svg(tri, win, std::string("render_roundtrip.svg"));
            std::ifstream in("render_roundtrip.svg", std::ios::binary);
            REQUIRE(in.good());
            std::ostringstream back;
            back << in.rdbuf();
            CHECK(back.str() == svgs[i]);
            CHECK_THROWS_AS(
                render_svg(tri, win, std::string("/nonexistent-dir-zz/x.svg")),
                std::runtime_error);
        }
    }

    // denser packing at the larger shape parameter: visibly smaller cells
    CHECK(means[1] < 0.6 * means[0]);
}
