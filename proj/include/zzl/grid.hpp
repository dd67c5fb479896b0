#ifndef ZZL_GRID_HPP
#define ZZL_GRID_HPP

#include "zzl/f2.hpp"
#include "zzl/signal.hpp"
#include "zzl/zigzag.hpp"

#include <vector>

/**
 * The two-parameter grid of homology spaces behind a windowed signal.
 *
 * Columns alternate between single windows (even columns 2i) and unions of
 * adjacent windows (odd columns 2i+1), so T windows give 2T-1 columns.
 * Rows index an ascending list of scales.  Moving up a column or from an
 * even column into a neighbouring odd column are the order relations; each
 * carries an induced map on homology.
 *
 * The rank of the module restricted to a square around a grid point is the
 * main query.  It is answered by a single zigzag path per center that
 * threads the boundaries of all nested squares, so every radius at that
 * center reuses one path module.
 */
namespace zzl::grid {

using Index = f2::Index;

struct GridPoint {
    Index col;
    Index row;

    auto operator<=>(const GridPoint&) const = default;
};

/**
 * Order relation of the grid poset: rows only grow, and the column may
 * move sideways exactly once, from an even column into an adjacent odd
 * one.
 */
bool poset_leq(GridPoint a, GridPoint b);

class BifiltrationGrid {
  public:
    /**
     * Direct construction from dimension and map tables.
     *
     *   node_dims[col][row]                    space dimensions
     *   from_left[row][i]:  col 2i   -> 2i+1   dims[2i+1] x dims[2i]
     *   from_right[row][i]: col 2i+2 -> 2i+1   dims[2i+1] x dims[2i+2]
     *   vertical[col][row]: row      -> row+1  dims[col][row+1] x dims[col][row]
     */
    BifiltrationGrid(std::vector<std::vector<Index>> node_dims,
                     std::vector<std::vector<f2::BitMatrix>> from_left,
                     std::vector<std::vector<f2::BitMatrix>> from_right,
                     std::vector<std::vector<f2::BitMatrix>> vertical);

    Index cols() const { return Index(node_dims_.size()); }
    Index rows() const { return rows_; }
    Index windows() const { return (cols() + 1) / 2; }

    bool contains(GridPoint p) const {
        return p.col >= 0 && p.col < cols() && p.row >= 0 && p.row < rows();
    }
    Index dim_at(GridPoint p) const {
        return node_dims_[std::size_t(p.col)][std::size_t(p.row)];
    }

    const f2::BitMatrix& h_from_left(Index row, Index i) const;
    const f2::BitMatrix& h_from_right(Index row, Index i) const;
    const f2::BitMatrix& vertical(Index col, Index row) const;

    /** Map along a covering relation a -> b (adjacent, a <= b). */
    const f2::BitMatrix& edge_map(GridPoint a, GridPoint b) const;

  private:
    Index rows_;
    std::vector<std::vector<Index>> node_dims_;
    std::vector<std::vector<f2::BitMatrix>> from_left_;
    std::vector<std::vector<f2::BitMatrix>> from_right_;
    std::vector<std::vector<f2::BitMatrix>> vertical_;
};

/** True when every square of adjacent maps commutes. */
bool check_commutes(const BifiltrationGrid& g);

/**
 * The zigzag path threading the boundaries of all squares of radius
 * 0..radius around the center.  nodes is the walk for the largest radius;
 * the subrange [seg_first[e], seg_last[e]] is the walk for radius e.
 * Requires center.col >= radius and center.row >= radius.
 */
struct BoundaryPath {
    std::vector<GridPoint> nodes;
    std::vector<Index> seg_first;
    std::vector<Index> seg_last;
};

BoundaryPath boundary_path(GridPoint center, Index radius);

/** The zigzag module read off the grid along a boundary path. */
zigzag::ZigzagModule path_module(const BifiltrationGrid& g, const BoundaryPath& path);

/**
 * ranks[e] = rank of the module over the square of radius e at the
 * center, for e = 0..max_radius.  Squares that poke outside the grid
 * count as rank 0.
 */
std::vector<Index> region_ranks(const BifiltrationGrid& g, GridPoint center,
                                Index max_radius);

/**
 * Reference evaluation of the same rank as a full limit-to-colimit
 * computation over every node of the square.  Slower than region_ranks;
 * intended for cross-validation.
 */
Index oracle_interval_rank(const BifiltrationGrid& g, GridPoint center, Index radius);

/**
 * Homology grid of a windowed point cloud: even columns carry the
 * windows, odd columns the unions of adjacent windows, rows the scales
 * (ascending).  hom_dim selects the homology degree.
 */
BifiltrationGrid build_grid(const std::vector<signal::PointCloud>& windows,
                            const std::vector<double>& epsilons, int hom_dim,
                            int threads = 1);

/** Module that is one-dimensional exactly on the given (convex) support. */
BifiltrationGrid grid_interval_module(Index cols, Index rows,
                                      const std::vector<GridPoint>& support);

/** Direct sum of two grids of identical shape. */
BifiltrationGrid grid_direct_sum(const BifiltrationGrid& a, const BifiltrationGrid& b);

} // namespace zzl::grid

#endif
