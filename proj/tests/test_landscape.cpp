#include "doctest.h"

#include "zzl/grid.hpp"
#include "zzl/landscape.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using zzl::f2::BitMatrix;
using namespace zzl::grid;
using namespace zzl::landscape;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rect {
    Index c0, c1, r0, r1;

    bool contains(GridPoint p) const {
        return c0 <= p.col && p.col <= c1 && r0 <= p.row && p.row <= r1;
    }
    std::vector<GridPoint> points() const {
        std::vector<GridPoint> out;
        for (Index c = c0; c <= c1; ++c)
            for (Index r = r0; r <= r1; ++r) out.push_back({c, r});
        return out;
    }
    Index depth(GridPoint p) const {
        if (!contains(p)) return 0;
        return std::min(std::min(p.col - c0, c1 - p.col), std::min(p.row - r0, r1 - p.row));
    }
};

std::vector<double> unit_epsilons(Index rows) {
    std::vector<double> eps;
    for (Index r = 0; r < rows; ++r) eps.push_back(0.1 * double(r + 1));
    return eps;
}

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

void check_landscape_axioms(const Landscape& l, const BifiltrationGrid& g) {
    // Values are nonnegative radii that respect the grid boundary.
    for (Index k = 0; k < l.k_max; ++k)
        for (Index r = 0; r < l.rows; ++r)
            for (Index c = 0; c < l.cols; ++c) {
                const Index v = l.at(k, r, c);
                CHECK(v >= 0);
                CHECK(v <= std::min(std::min(c, l.cols - 1 - c), std::min(r, l.rows - 1 - r)));
            }
    // Levels are nested.
    for (Index k = 0; k + 1 < l.k_max; ++k)
        for (Index r = 0; r < l.rows; ++r)
            for (Index c = 0; c < l.cols; ++c) CHECK(l.at(k, r, c) >= l.at(k + 1, r, c));
    // One unit of sup-distance moves a value by at most one.
    for (Index k = 0; k < l.k_max; ++k)
        for (Index r1 = 0; r1 < l.rows; ++r1)
            for (Index c1 = 0; c1 < l.cols; ++c1)
                for (Index r2 = 0; r2 < l.rows; ++r2)
                    for (Index c2 = 0; c2 < l.cols; ++c2) {
                        const Index d = std::max(std::abs(r1 - r2), std::abs(c1 - c2));
                        CHECK(std::abs(l.at(k, r1, c1) - l.at(k, r2, c2)) <= d);
                    }
    // Restricting to any single row or column only raises the landscape.
    for (Index r = 0; r < g.rows(); ++r) {
        const auto line =
            line_landscape(zzl::zigzag::barcode(row_module(g, r)), g.cols(), l.k_max);
        for (Index k = 0; k < l.k_max; ++k)
            for (Index c = 0; c < g.cols(); ++c)
                CHECK(l.at(k, r, c) <= line[std::size_t(k)][std::size_t(c)]);
    }
    for (Index c = 0; c < g.cols(); ++c) {
        const auto line =
            line_landscape(zzl::zigzag::barcode(column_module(g, c)), g.rows(), l.k_max);
        for (Index k = 0; k < l.k_max; ++k)
            for (Index r = 0; r < g.rows(); ++r)
                CHECK(l.at(k, r, c) <= line[std::size_t(k)][std::size_t(r)]);
    }
}

} // namespace

TEST_SUITE("landscape") {

TEST_CASE("interval module landscape is the distance to the support boundary") {
    const Rect rect{2, 6, 1, 5};
    const BifiltrationGrid g = grid_interval_module(9, 7, rect.points());
    const Landscape l = compute_landscape(g, 2, unit_epsilons(7), 1);

    for (Index c = 0; c < 9; ++c)
        for (Index r = 0; r < 7; ++r) {
            CHECK(l.at(0, r, c) == rect.depth({c, r}));
            CHECK(l.at(1, r, c) == 0);
        }
    check_landscape_axioms(l, g);
}

TEST_CASE("doubling a module lifts the second level to the first") {
    const Rect rect{1, 5, 1, 5};
    const BifiltrationGrid one = grid_interval_module(7, 7, rect.points());
    const BifiltrationGrid two = grid_direct_sum(one, one);
    const Landscape l = compute_landscape(two, 3, unit_epsilons(7), 1);

    for (Index c = 0; c < 7; ++c)
        for (Index r = 0; r < 7; ++r) {
            CHECK(l.at(0, r, c) == rect.depth({c, r}));
            CHECK(l.at(1, r, c) == rect.depth({c, r}));
            CHECK(l.at(2, r, c) == 0);
        }
}

TEST_CASE("overlapping squares and their union are landscape-indistinguishable") {
    const Rect sq_low{1, 3, 1, 3};
    const Rect sq_high{1, 3, 2, 4};
    const Rect box{1, 3, 1, 4};

    const BifiltrationGrid sum =
        grid_direct_sum(grid_interval_module(5, 5, sq_low.points()),
                        grid_interval_module(5, 5, sq_high.points()));
    const BifiltrationGrid merged = grid_interval_module(5, 5, box.points());

    const Landscape l_sum = compute_landscape(sum, 3, unit_epsilons(5), 1);
    const Landscape l_merged = compute_landscape(merged, 3, unit_epsilons(5), 1);

    CHECK(l_sum.values == l_merged.values);
    CHECK(distance_p(l_sum, l_merged, 1.0) == 0.0);
    CHECK(distance_p(l_sum, l_merged, 2.0) == 0.0);
    CHECK(distance_p(l_sum, l_merged, kInf) == 0.0);
}

TEST_CASE("line restrictions give closed-form bars on interval modules") {
    const Rect rect{2, 6, 1, 5};
    const BifiltrationGrid g = grid_interval_module(9, 7, rect.points());

    const auto row_bars = zzl::zigzag::barcode(row_module(g, 3));
    REQUIRE(row_bars == zzl::zigzag::Barcode{{2, 6}});
    const auto row_line = line_landscape(row_bars, 9, 1);
    for (Index c = 0; c < 9; ++c) {
        const Index expect = std::max(Index(0), std::min(c - 2, 6 - c));
        CHECK(row_line[0][std::size_t(c)] == expect);
    }

    const auto col_bars = zzl::zigzag::barcode(column_module(g, 4));
    REQUIRE(col_bars == zzl::zigzag::Barcode{{1, 5}});
    const auto empty_bars = zzl::zigzag::barcode(row_module(g, 0));
    CHECK(empty_bars.empty());
}

TEST_CASE("axioms hold on sums of conjugated interval modules") {
    std::mt19937_64 rng(404);
    for (int it = 0; it < 6; ++it) {
        const Index cols = 7, rows = 5;
        BifiltrationGrid g = grid_interval_module(cols, rows, {});
        const Index n_rects = Index(1 + rng() % 3);
        for (Index j = 0; j < n_rects; ++j) {
            Rect rc{};
            rc.c0 = Index(rng() % cols);
            rc.c1 = rc.c0 + Index(rng() % std::uint64_t(cols - rc.c0));
            rc.r0 = Index(rng() % rows);
            rc.r1 = rc.r0 + Index(rng() % std::uint64_t(rows - rc.r0));
            g = grid_direct_sum(g, grid_interval_module(cols, rows, rc.points()));
        }
        g = conjugate_grid(g, rng());
        const Landscape l = compute_landscape(g, 3, unit_epsilons(rows), 1);
        check_landscape_axioms(l, g);
    }
}

TEST_CASE("axioms hold on a grid built from genuine point clouds") {
    std::mt19937_64 rng(11);
    std::vector<zzl::signal::PointCloud> clouds;
    for (Index i = 0; i < 3; ++i) {
        Eigen::MatrixXd pc(6, 2);
        for (Index p = 0; p < 6; ++p)
            for (Index d = 0; d < 2; ++d) pc(p, d) = double(rng() >> 11) * 0x1.0p-53;
        clouds.push_back(std::move(pc));
    }
    const std::vector<double> eps{0.15, 0.4, 0.65, 0.9};
    const BifiltrationGrid g = build_grid(clouds, eps, 1);
    const Landscape l = compute_landscape(g, 2, eps, 1);
    check_landscape_axioms(l, g);

    const Landscape l0 = compute_landscape(build_grid(clouds, eps, 0), 2, eps, 0);
    check_landscape_axioms(l0, build_grid(clouds, eps, 0));
}

TEST_CASE("distances follow the usual norms") {
    Landscape a, b;
    a.cols = b.cols = 3;
    a.rows = b.rows = 1;
    a.k_max = b.k_max = 1;
    a.epsilons = b.epsilons = {0.5};
    a.values = {{{0, 1, 2}}};
    b.values = {{{2, 1, 0}}};

    CHECK(distance_p(a, b, 1.0) == doctest::Approx(4.0));
    CHECK(distance_p(a, b, 2.0) == doctest::Approx(std::sqrt(8.0)));
    CHECK(distance_p(a, b, kInf) == doctest::Approx(2.0));
    CHECK(distance_p(a, a, 1.0) == 0.0);
    CHECK(distance_p(b, a, 2.0) == distance_p(a, b, 2.0));
    CHECK_THROWS_AS(distance_p(a, b, 0.5), std::invalid_argument);

    Landscape c = a;
    c.cols = 4;
    c.values = {{{0, 1, 2, 3}}};
    CHECK_THROWS_AS(distance_p(a, c, 1.0), std::invalid_argument);
}

TEST_CASE("means average pointwise") {
    Landscape a, b;
    a.cols = b.cols = 2;
    a.rows = b.rows = 2;
    a.k_max = b.k_max = 1;
    a.epsilons = b.epsilons = {0.1, 0.2};
    a.values = {{{0, 1}, {2, 3}}};
    b.values = {{{2, 1}, {0, 1}}};

    const MeanLandscape m = mean_landscape({a, b});
    CHECK(m.values[0][0][0] == doctest::Approx(1.0));
    CHECK(m.values[0][0][1] == doctest::Approx(1.0));
    CHECK(m.values[0][1][0] == doctest::Approx(1.0));
    CHECK(m.values[0][1][1] == doctest::Approx(2.0));

    const MeanLandscape single = mean_landscape({a});
    CHECK(single.values[0][1][1] == doctest::Approx(3.0));
    CHECK(distance_p(m, single, kInf) == doctest::Approx(1.0));

    CHECK_THROWS_AS(mean_landscape({}), std::invalid_argument);
    Landscape c = a;
    c.cols = 3;
    c.values = {{{0, 1, 2}, {2, 3, 4}}};
    CHECK_THROWS_AS(mean_landscape(std::vector<Landscape>{a, c}), std::invalid_argument);
}

TEST_CASE("landscape computation validates its inputs") {
    const BifiltrationGrid g = grid_interval_module(5, 4, {});
    CHECK_THROWS_AS(compute_landscape(g, 0, unit_epsilons(4), 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_landscape(g, 1, unit_epsilons(3), 1), std::invalid_argument);
    CHECK_THROWS_AS(line_landscape({}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(row_module(g, 9), std::invalid_argument);
    CHECK_THROWS_AS(column_module(g, -1), std::invalid_argument);
}

TEST_CASE("parallel landscape evaluation matches the serial result") {
    std::mt19937_64 rng(500);
    BifiltrationGrid g = grid_interval_module(7, 5, Rect{0, 6, 0, 4}.points());
    g = grid_direct_sum(g, grid_interval_module(7, 5, Rect{2, 4, 1, 3}.points()));
    g = conjugate_grid(g, 77);
    const Landscape serial = compute_landscape(g, 2, unit_epsilons(5), 1, 1);
    const Landscape parallel = compute_landscape(g, 2, unit_epsilons(5), 1, 4);
    CHECK(serial.values == parallel.values);
}

} // TEST_SUITE
