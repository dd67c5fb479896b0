#include "doctest.h"

#include "zzl/complex.hpp"
#include "zzl/grid.hpp"
#include "zzl/homology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <vector>

using zzl::f2::BitMatrix;
using namespace zzl::grid;

namespace {

// Reachability over single covering steps; the order relation must be its
// transitive closure.
bool reachable(GridPoint a, GridPoint b, Index cols, Index rows) {
    if (a == b) return true;
    std::set<GridPoint> seen{a};
    std::queue<GridPoint> q;
    q.push(a);
    auto push = [&](GridPoint n) {
        if (n.col < 0 || n.col >= cols || n.row < 0 || n.row >= rows) return;
        if (seen.insert(n).second) q.push(n);
    };
    while (!q.empty()) {
        const GridPoint n = q.front();
        q.pop();
        if (n == b) return true;
        push({n.col, n.row + 1});
        if (n.col % 2 == 0) {
            push({n.col - 1, n.row});
            push({n.col + 1, n.row});
        }
    }
    return false;
}

struct Rect {
    Index c0, c1, r0, r1;

    bool contains_point(GridPoint p) const {
        return c0 <= p.col && p.col <= c1 && r0 <= p.row && p.row <= r1;
    }
    bool contains_square(GridPoint center, Index radius) const {
        return c0 <= center.col - radius && center.col + radius <= c1 &&
               r0 <= center.row - radius && center.row + radius <= r1;
    }
    std::vector<GridPoint> points() const {
        std::vector<GridPoint> out;
        for (Index c = c0; c <= c1; ++c)
            for (Index r = r0; r <= r1; ++r) out.push_back({c, r});
        return out;
    }
};

BitMatrix random_invertible(Index n, std::mt19937_64& rng) {
    if (n == 0) return BitMatrix(0, 0);
    for (;;) {
        BitMatrix m(n, n);
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < n; ++c)
                if (rng() & 1u) m.set(r, c, true);
        if (zzl::f2::rank(m) == n) return m;
    }
}

// Random change of basis at every node; ranks over regions must not move.
BifiltrationGrid conjugate_grid(const BifiltrationGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<BitMatrix>> p(std::size_t(g.cols())),
        p_inv(std::size_t(g.cols()));
    for (Index c = 0; c < g.cols(); ++c)
        for (Index r = 0; r < g.rows(); ++r) {
            BitMatrix m = random_invertible(g.dim_at({c, r}), rng);
            p_inv[std::size_t(c)].push_back(zzl::f2::inverse(m).value());
            p[std::size_t(c)].push_back(std::move(m));
        }
    auto conj = [&](const BitMatrix& map, GridPoint src, GridPoint dst) {
        return zzl::f2::mul(p[std::size_t(dst.col)][std::size_t(dst.row)],
                            zzl::f2::mul(map, p_inv[std::size_t(src.col)][std::size_t(src.row)]));
    };

    std::vector<std::vector<Index>> dims(std::size_t(g.cols()),
                                         std::vector<Index>(std::size_t(g.rows()), 0));
    for (Index c = 0; c < g.cols(); ++c)
        for (Index r = 0; r < g.rows(); ++r) dims[std::size_t(c)][std::size_t(r)] = g.dim_at({c, r});

    std::vector<std::vector<BitMatrix>> fl(std::size_t(g.rows())), fr(std::size_t(g.rows()));
    for (Index r = 0; r < g.rows(); ++r)
        for (Index i = 0; 2 * i + 1 < g.cols(); ++i) {
            fl[std::size_t(r)].push_back(conj(g.h_from_left(r, i), {2 * i, r}, {2 * i + 1, r}));
            fr[std::size_t(r)].push_back(
                conj(g.h_from_right(r, i), {2 * i + 2, r}, {2 * i + 1, r}));
        }
    std::vector<std::vector<BitMatrix>> v(std::size_t(g.cols()));
    for (Index c = 0; c < g.cols(); ++c)
        for (Index r = 0; r + 1 < g.rows(); ++r)
            v[std::size_t(c)].push_back(conj(g.vertical(c, r), {c, r}, {c, r + 1}));

    return BifiltrationGrid(std::move(dims), std::move(fl), std::move(fr), std::move(v));
}

void check_path_shape(GridPoint center, Index radius) {
    const BoundaryPath p = boundary_path(center, radius);
    REQUIRE(Index(p.seg_first.size()) == radius + 1);
    REQUIRE(Index(p.seg_last.size()) == radius + 1);

    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        const GridPoint a = p.nodes[i], b = p.nodes[i + 1];
        CHECK(a != b);
        const bool horizontal = a.row == b.row && std::abs(a.col - b.col) == 1;
        const bool vertical_up = a.col == b.col && b.row == a.row + 1;
        CHECK((horizontal || vertical_up));
        CHECK((poset_leq(a, b) || poset_leq(b, a)));
    }

    for (Index eps = 0; eps <= radius; ++eps) {
        const Index s = p.seg_first[std::size_t(eps)], e = p.seg_last[std::size_t(eps)];
        REQUIRE(s <= e);
        if (eps > 0) {
            CHECK(s <= p.seg_first[std::size_t(eps - 1)]);
            CHECK(p.seg_last[std::size_t(eps - 1)] <= e);
        }
        for (Index i = s; i <= e; ++i) {
            const GridPoint n = p.nodes[std::size_t(i)];
            CHECK(std::abs(n.col - center.col) <= eps);
            CHECK(std::abs(n.row - center.row) <= eps);
        }
        CHECK(p.nodes[std::size_t(s)].row == center.row - eps);
        CHECK(p.nodes[std::size_t(e)].row == center.row + eps);
        if (eps > 0) {
            CHECK(p.nodes[std::size_t(s)].col % 2 == 0);
            CHECK(p.nodes[std::size_t(e)].col % 2 != 0);
        }
    }
}

std::vector<zzl::signal::PointCloud> random_clouds(std::mt19937_64& rng, Index t,
                                                   Index min_pts, Index max_pts) {
    std::vector<zzl::signal::PointCloud> out;
    for (Index i = 0; i < t; ++i) {
        const Index n = min_pts + Index(rng() % std::uint64_t(max_pts - min_pts + 1));
        Eigen::MatrixXd pc(n, 2);
        for (Index p = 0; p < n; ++p)
            for (Index d = 0; d < 2; ++d)
                pc(p, d) = double(rng() >> 11) * 0x1.0p-53;
        out.push_back(std::move(pc));
    }
    return out;
}

Eigen::MatrixXd polygon(Index sides, double phase) {
    Eigen::MatrixXd pc(sides, 2);
    for (Index i = 0; i < sides; ++i) {
        const double a = phase + 2.0 * M_PI * double(i) / double(sides);
        pc(i, 0) = std::cos(a);
        pc(i, 1) = std::sin(a);
    }
    return pc;
}

} // namespace

TEST_SUITE("grid") {

TEST_CASE("order relation is the transitive closure of the covering steps") {
    const Index cols = 7, rows = 5;
    for (Index ac = 0; ac < cols; ++ac)
        for (Index ar = 0; ar < rows; ++ar)
            for (Index bc = 0; bc < cols; ++bc)
                for (Index br = 0; br < rows; ++br) {
                    const GridPoint a{ac, ar}, b{bc, br};
                    CHECK(poset_leq(a, b) == reachable(a, b, cols, rows));
                }
}

TEST_CASE("boundary path around (2,2) at radius 1 takes the documented walk") {
    const BoundaryPath p = boundary_path({2, 2}, 1);
    const std::vector<GridPoint> expected{{2, 1}, {2, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 3}};
    CHECK(p.nodes == expected);
    CHECK(p.seg_first == std::vector<Index>{1, 0});
    CHECK(p.seg_last == std::vector<Index>{1, 5});
}

TEST_CASE("boundary paths stay adjacent, nested, and inside their squares") {
    for (const GridPoint center : {GridPoint{4, 4}, GridPoint{5, 4}, GridPoint{6, 7},
                                   GridPoint{7, 5}, GridPoint{4, 6}})
        for (Index radius = 0; radius <= 4; ++radius) check_path_shape(center, radius);
    CHECK_THROWS_AS(boundary_path({1, 5}, 2), std::invalid_argument);
    CHECK_THROWS_AS(boundary_path({5, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(boundary_path({3, 3}, -1), std::invalid_argument);
}

TEST_CASE("interval module on a square answers exactly inside its support") {
    const Index cols = 7, rows = 6;
    const Rect rect{1, 5, 1, 4};
    const BifiltrationGrid g = grid_interval_module(cols, rows, rect.points());
    CHECK(check_commutes(g));

    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) {
            const GridPoint center{c, r};
            const auto ranks = region_ranks(g, center, 3);
            for (Index eps = 0; eps <= 3; ++eps) {
                const Index expect = rect.contains_square(center, eps) ? 1 : 0;
                CHECK(ranks[std::size_t(eps)] == expect);
                CHECK(oracle_interval_rank(g, center, eps) == expect);
            }
        }
}

TEST_CASE("sums of conjugated interval modules have region ranks that count covers") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 20; ++it) {
        const Index cols = 7, rows = 5;
        const Index n_rects = Index(1 + rng() % 4);
        std::vector<Rect> rects;
        BifiltrationGrid g = grid_interval_module(cols, rows, {});
        for (Index j = 0; j < n_rects; ++j) {
            Rect rc{};
            rc.c0 = Index(rng() % cols);
            rc.c1 = rc.c0 + Index(rng() % std::uint64_t(cols - rc.c0));
            rc.r0 = Index(rng() % rows);
            rc.r1 = rc.r0 + Index(rng() % std::uint64_t(rows - rc.r0));
            rects.push_back(rc);
            g = grid_direct_sum(g, grid_interval_module(cols, rows, rc.points()));
        }
        g = conjugate_grid(g, rng());
        REQUIRE(check_commutes(g));

        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r) {
                const GridPoint center{c, r};
                const auto ranks = region_ranks(g, center, 2);
                for (Index eps = 0; eps <= 2; ++eps) {
                    Index expect = 0;
                    const bool inside = center.col - eps >= 0 && center.col + eps < cols &&
                                        center.row - eps >= 0 && center.row + eps < rows;
                    if (inside)
                        for (const Rect& rc : rects)
                            if (rc.contains_square(center, eps)) ++expect;
                    CHECK(ranks[std::size_t(eps)] == expect);
                }
                // Direct-rank evaluation agrees on a sample of radii.
                CHECK(oracle_interval_rank(g, center, 1) == ranks[1]);
            }
    }
}

TEST_CASE("radius zero rank is the dimension at the center") {
    const BifiltrationGrid g =
        grid_direct_sum(grid_interval_module(5, 4, Rect{0, 4, 0, 3}.points()),
                        grid_interval_module(5, 4, Rect{2, 3, 1, 2}.points()));
    for (Index c = 0; c < 5; ++c)
        for (Index r = 0; r < 4; ++r)
            CHECK(region_ranks(g, {c, r}, 0)[0] == g.dim_at({c, r}));
}

TEST_CASE("two rotated hexagon windows build the expected loop grid") {
    std::vector<zzl::signal::PointCloud> windows;
    windows.push_back(polygon(6, 0.0));
    windows.push_back(polygon(6, M_PI / 6.0)); // union is a regular 12-gon
    const std::vector<double> eps{0.6, 1.2, 1.5};
    const BifiltrationGrid g = build_grid(windows, eps, 1);

    REQUIRE(g.cols() == 3);
    REQUIRE(g.rows() == 3);
    CHECK(check_commutes(g));

    // Hexagon edges appear at scale 1, the 12-gon's at 2*sin(pi/12); both
    // loops fill at sqrt(3).
    CHECK(g.dim_at({0, 0}) == 0);
    CHECK(g.dim_at({2, 0}) == 0);
    CHECK(g.dim_at({1, 0}) == 1);
    for (Index c = 0; c < 3; ++c) {
        CHECK(g.dim_at({c, 1}) == 1);
        CHECK(g.dim_at({c, 2}) == 1);
    }
    CHECK(zzl::f2::rank(g.vertical(1, 0)) == 1);
    CHECK(zzl::f2::rank(g.h_from_left(1, 0)) == 1);
    CHECK(zzl::f2::rank(g.h_from_right(1, 0)) == 1);

    const auto ranks = region_ranks(g, {1, 1}, 1);
    CHECK(ranks[0] == 1);
    CHECK(ranks[1] == oracle_interval_rank(g, {1, 1}, 1));
}

TEST_CASE("two far-apart points track components across the union") {
    std::vector<zzl::signal::PointCloud> windows;
    Eigen::MatrixXd a(1, 2), b(1, 2);
    a << 0.0, 0.0;
    b << 10.0, 0.0;
    windows.push_back(a);
    windows.push_back(b);
    const BifiltrationGrid g = build_grid(windows, {1.0, 10.0}, 0);

    CHECK(g.dim_at({0, 0}) == 1);
    CHECK(g.dim_at({2, 0}) == 1);
    CHECK(g.dim_at({1, 0}) == 2);
    CHECK(g.dim_at({1, 1}) == 1);
    CHECK(check_commutes(g));

    const auto ranks = region_ranks(g, {1, 0}, 1);
    CHECK(ranks[0] == 2);
    CHECK(ranks[1] == 0); // square pokes above the top row
    CHECK(region_ranks(g, {1, 1}, 0)[0] == 1);
}

TEST_CASE("grids built from random clouds commute and match the direct rank") {
    std::mt19937_64 rng(77);
    const std::vector<double> eps{0.2, 0.45, 0.7, 0.95};
    for (int it = 0; it < 12; ++it) {
        const auto clouds = random_clouds(rng, 3, 4, 8);
        const int hom_dim = it % 2;
        const BifiltrationGrid g = build_grid(clouds, eps, hom_dim);
        REQUIRE(g.cols() == 5);
        REQUIRE(g.rows() == 4);
        REQUIRE(check_commutes(g));

        for (Index c = 0; c < g.cols(); ++c)
            for (Index r = 0; r < g.rows(); ++r) {
                const auto ranks = region_ranks(g, {c, r}, 2);
                for (Index e = 0; e <= 2; ++e)
                    CHECK(ranks[std::size_t(e)] == oracle_interval_rank(g, {c, r}, e));
            }
    }
}

TEST_CASE("grid construction is deterministic") {
    std::mt19937_64 rng(31);
    const auto clouds = random_clouds(rng, 3, 5, 7);
    const std::vector<double> eps{0.3, 0.6, 0.9};
    const BifiltrationGrid g1 = build_grid(clouds, eps, 1);
    const BifiltrationGrid g2 = build_grid(clouds, eps, 1, 2);

    for (Index c = 0; c < g1.cols(); ++c)
        for (Index r = 0; r < g1.rows(); ++r)
            CHECK(g1.dim_at({c, r}) == g2.dim_at({c, r}));
    for (Index r = 0; r < g1.rows(); ++r)
        for (Index i = 0; 2 * i + 1 < g1.cols(); ++i) {
            CHECK(g1.h_from_left(r, i) == g2.h_from_left(r, i));
            CHECK(g1.h_from_right(r, i) == g2.h_from_right(r, i));
        }
    for (Index c = 0; c < g1.cols(); ++c)
        for (Index r = 0; r + 1 < g1.rows(); ++r)
            CHECK(g1.vertical(c, r) == g2.vertical(c, r));
}

TEST_CASE("malformed grids and inputs are rejected") {
    CHECK_THROWS_AS(grid_interval_module(4, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(grid_interval_module(5, 3, {GridPoint{5, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_grid({}, {1.0}, 1), std::invalid_argument);

    std::vector<zzl::signal::PointCloud> one{Eigen::MatrixXd::Zero(3, 2)};
    CHECK_THROWS_AS(build_grid(one, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(one, {1.0, 0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(one, {-1.0, 0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(one, {1.0}, -1), std::invalid_argument);

    const BifiltrationGrid g = grid_interval_module(5, 4, Rect{0, 4, 0, 3}.points());
    CHECK_THROWS_AS(region_ranks(g, {9, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.edge_map({1, 0}, {2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(g.edge_map({0, 1}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(grid_direct_sum(g, grid_interval_module(7, 4, {})),
                    std::invalid_argument);
}

TEST_CASE("single-window grids reduce to one-parameter persistence") {
    std::vector<zzl::signal::PointCloud> windows{polygon(6, 0.0)};
    const BifiltrationGrid g = build_grid(windows, {0.5, 1.01, 1.4, 1.8}, 1);
    REQUIRE(g.cols() == 1);
    CHECK(g.dim_at({0, 0}) == 0);
    CHECK(g.dim_at({0, 1}) == 1);
    CHECK(g.dim_at({0, 2}) == 1);
    CHECK(g.dim_at({0, 3}) == 0); // filled above sqrt(3)
    CHECK(zzl::f2::rank(g.vertical(0, 1)) == 1);
    CHECK(region_ranks(g, {0, 1}, 0)[0] == 1);
    CHECK(region_ranks(g, {0, 2}, 1)[1] == 0);
}

} // TEST_SUITE
