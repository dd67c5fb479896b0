#include "zzl/landscape.hpp"

#include "zzl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zzl::landscape {

Landscape compute_landscape(const grid::BifiltrationGrid& g, Index k_max,
                            const std::vector<double>& epsilons, int hom_dim,
                            int threads) {
    if (k_max < 1) throw std::invalid_argument("compute_landscape: k_max must be >= 1");
    if (Index(epsilons.size()) != g.rows())
        throw std::invalid_argument("compute_landscape: one scale per grid row expected");

    Landscape out;
    out.cols = g.cols();
    out.rows = g.rows();
    out.k_max = k_max;
    out.hom_dim = hom_dim;
    out.epsilons = epsilons;
    out.values.assign(std::size_t(k_max),
                      std::vector<std::vector<Index>>(
                          std::size_t(g.rows()), std::vector<Index>(std::size_t(g.cols()), 0)));

    parallel_for(g.cols() * g.rows(), threads, [&](Index cell) {
        const Index c = cell / g.rows();
        const Index r = cell % g.rows();
        const Index bound = std::min(std::min(c, g.cols() - 1 - c),
                                     std::min(r, g.rows() - 1 - r));
        const std::vector<Index> ranks = grid::region_ranks(g, {c, r}, bound);
        for (Index k = 1; k <= k_max; ++k) {
            // Ranks only fall as the square grows, so take the last radius
            // still supporting k classes.
            Index best = -1;
            for (Index eps = 0; eps <= bound; ++eps)
                if (ranks[std::size_t(eps)] >= k) best = eps;
                else break;
            out.values[std::size_t(k - 1)][std::size_t(r)][std::size_t(c)] =
                best < 0 ? 0 : best;
        }
    });
    return out;
}

namespace {

template <typename L>
void check_same_shape(const L& a, const L& b) {
    if (a.cols != b.cols || a.rows != b.rows || a.k_max != b.k_max)
        throw std::invalid_argument("distance_p: landscapes of different shape");
}

double accumulate_distance(double p, const std::vector<double>& diffs) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double d : diffs) m = std::max(m, d);
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("distance_p: p must be >= 1 or infinity");
    double sum = 0.0;
    for (double d : diffs) sum += std::pow(d, p);
    return std::pow(sum, 1.0 / p);
}

} // namespace

double distance_p(const Landscape& a, const Landscape& b, double p) {
    check_same_shape(a, b);
    std::vector<double> diffs;
    diffs.reserve(std::size_t(a.k_max * a.rows * a.cols));
    for (Index k = 0; k < a.k_max; ++k)
        for (Index r = 0; r < a.rows; ++r)
            for (Index c = 0; c < a.cols; ++c)
                diffs.push_back(std::abs(double(a.at(k, r, c)) - double(b.at(k, r, c))));
    return accumulate_distance(p, diffs);
}

double distance_p(const MeanLandscape& a, const MeanLandscape& b, double p) {
    check_same_shape(a, b);
    std::vector<double> diffs;
    diffs.reserve(std::size_t(a.k_max * a.rows * a.cols));
    for (Index k = 0; k < a.k_max; ++k)
        for (Index r = 0; r < a.rows; ++r)
            for (Index c = 0; c < a.cols; ++c)
                diffs.push_back(std::abs(a.values[std::size_t(k)][std::size_t(r)][std::size_t(c)] -
                                         b.values[std::size_t(k)][std::size_t(r)][std::size_t(c)]));
    return accumulate_distance(p, diffs);
}

MeanLandscape mean_landscape(const std::vector<Landscape>& ls) {
    if (ls.empty()) throw std::invalid_argument("mean_landscape: no landscapes given");
    for (const Landscape& l : ls)
        if (l.cols != ls[0].cols || l.rows != ls[0].rows || l.k_max != ls[0].k_max)
            throw std::invalid_argument("mean_landscape: landscapes of different shape");

    MeanLandscape out;
    out.cols = ls[0].cols;
    out.rows = ls[0].rows;
    out.k_max = ls[0].k_max;
    out.hom_dim = ls[0].hom_dim;
    out.epsilons = ls[0].epsilons;
    out.values.assign(std::size_t(out.k_max),
                      std::vector<std::vector<double>>(
                          std::size_t(out.rows), std::vector<double>(std::size_t(out.cols), 0.0)));
    for (const Landscape& l : ls)
        for (Index k = 0; k < out.k_max; ++k)
            for (Index r = 0; r < out.rows; ++r)
                for (Index c = 0; c < out.cols; ++c)
                    out.values[std::size_t(k)][std::size_t(r)][std::size_t(c)] +=
                        double(l.at(k, r, c));
    for (Index k = 0; k < out.k_max; ++k)
        for (Index r = 0; r < out.rows; ++r)
            for (Index c = 0; c < out.cols; ++c)
                out.values[std::size_t(k)][std::size_t(r)][std::size_t(c)] /=
                    double(ls.size());
    return out;
}

zigzag::ZigzagModule row_module(const grid::BifiltrationGrid& g, Index row) {
    if (row < 0 || row >= g.rows()) throw std::invalid_argument("row_module: row out of range");
    std::vector<Index> dims;
    std::vector<zigzag::Arrow> arrows;
    for (Index c = 0; c < g.cols(); ++c) {
        dims.push_back(g.dim_at({c, row}));
        if (c + 1 < g.cols()) {
            if (c % 2 == 0)
                arrows.push_back({zigzag::Dir::forward, g.edge_map({c, row}, {c + 1, row})});
            else
                arrows.push_back({zigzag::Dir::backward, g.edge_map({c + 1, row}, {c, row})});
        }
    }
    return zigzag::ZigzagModule(std::move(dims), std::move(arrows));
}

zigzag::ZigzagModule column_module(const grid::BifiltrationGrid& g, Index col) {
    if (col < 0 || col >= g.cols())
        throw std::invalid_argument("column_module: column out of range");
    std::vector<Index> dims;
    std::vector<zigzag::Arrow> arrows;
    for (Index r = 0; r < g.rows(); ++r) {
        dims.push_back(g.dim_at({col, r}));
        if (r + 1 < g.rows())
            arrows.push_back({zigzag::Dir::forward, g.vertical(col, r)});
    }
    return zigzag::ZigzagModule(std::move(dims), std::move(arrows));
}

std::vector<std::vector<Index>> line_landscape(const zigzag::Barcode& bc, Index length,
                                               Index k_max) {
    if (length < 1 || k_max < 1)
        throw std::invalid_argument("line_landscape: need positive length and k_max");
    std::vector<std::vector<Index>> out(std::size_t(k_max),
                                        std::vector<Index>(std::size_t(length), 0));
    for (Index k = 1; k <= k_max; ++k)
        for (Index x = 0; x < length; ++x)
            out[std::size_t(k - 1)][std::size_t(x)] =
                zigzag::landscape_from_barcode(bc, k, x);
    return out;
}

} // namespace zzl::landscape
