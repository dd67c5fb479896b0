#ifndef ZZL_LANDSCAPE_HPP
#define ZZL_LANDSCAPE_HPP

#include "zzl/grid.hpp"
#include "zzl/zigzag.hpp"

#include <vector>

/**
 * Landscapes over the window/scale grid.
 *
 * The k-th landscape value at a grid point is the largest square radius
 * (in grid units) at which at least k homology classes survive jointly
 * across the whole square.  Squares reaching outside the grid count as
 * rank zero, so values taper toward the boundary.
 */
namespace zzl::landscape {

using Index = f2::Index;

struct Landscape {
    Index cols = 0;
    Index rows = 0;
    Index k_max = 0;
    int hom_dim = 0;
    std::vector<double> epsilons;                        // scale per row
    std::vector<std::vector<std::vector<Index>>> values; // [k][row][col]

    /** Value of level k (0-based) at a grid cell. */
    Index at(Index k, Index row, Index col) const {
        return values[std::size_t(k)][std::size_t(row)][std::size_t(col)];
    }
};

/** Pointwise average of landscapes of one shape. */
struct MeanLandscape {
    Index cols = 0;
    Index rows = 0;
    Index k_max = 0;
    int hom_dim = 0;
    std::vector<double> epsilons;
    std::vector<std::vector<std::vector<double>>> values; // [k][row][col]
};

/**
 * Landscape of the grid module up to level k_max.  epsilons annotates the
 * rows (must match the grid) and hom_dim is carried as metadata.
 */
Landscape compute_landscape(const grid::BifiltrationGrid& g, Index k_max,
                            const std::vector<double>& epsilons, int hom_dim,
                            int threads = 1);

/** L^p distance over all levels and cells; use infinity for the sup norm. */
double distance_p(const Landscape& a, const Landscape& b, double p);
double distance_p(const MeanLandscape& a, const MeanLandscape& b, double p);

MeanLandscape mean_landscape(const std::vector<Landscape>& ls);

/** The zigzag module along one row of the grid. */
zigzag::ZigzagModule row_module(const grid::BifiltrationGrid& g, Index row);

/** The (one-directional) module up one column of the grid. */
zigzag::ZigzagModule column_module(const grid::BifiltrationGrid& g, Index col);

/**
 * Landscape of a one-line module given by its barcode: out[k][x] is the
 * k+1-th largest interval depth at position x.  Restricting the grid
 * module to a line can only grow landscape values, which makes these
 * useful upper bounds.
 */
std::vector<std::vector<Index>> line_landscape(const zigzag::Barcode& bc, Index length,
                                               Index k_max);

} // namespace zzl::landscape

#endif
