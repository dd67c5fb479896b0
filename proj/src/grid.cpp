#include "zzl/grid.hpp"

#include "zzl/complex.hpp"
#include "zzl/homology.hpp"
#include "zzl/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace zzl::grid {

bool poset_leq(GridPoint a, GridPoint b) {
    if (a.row > b.row) return false;
    if (a.col == b.col) return true;
    return a.col % 2 == 0 && (b.col == a.col - 1 || b.col == a.col + 1);
}

BifiltrationGrid::BifiltrationGrid(std::vector<std::vector<Index>> node_dims,
                                   std::vector<std::vector<f2::BitMatrix>> from_left,
                                   std::vector<std::vector<f2::BitMatrix>> from_right,
                                   std::vector<std::vector<f2::BitMatrix>> vertical)
    : node_dims_(std::move(node_dims)),
      from_left_(std::move(from_left)),
      from_right_(std::move(from_right)),
      vertical_(std::move(vertical)) {
    const Index c = cols();
    if (c < 1 || c % 2 == 0)
        throw std::invalid_argument("grid: need an odd, positive number of columns");
    rows_ = Index(node_dims_[0].size());
    if (rows_ < 1) throw std::invalid_argument("grid: need at least one row");
    for (const auto& col : node_dims_)
        if (Index(col.size()) != rows_)
            throw std::invalid_argument("grid: ragged dimension table");

    const Index pairs = (c - 1) / 2;
    if (Index(from_left_.size()) != rows_ || Index(from_right_.size()) != rows_)
        throw std::invalid_argument("grid: one horizontal map row per grid row expected");
    for (Index r = 0; r < rows_; ++r) {
        if (Index(from_left_[std::size_t(r)].size()) != pairs ||
            Index(from_right_[std::size_t(r)].size()) != pairs)
            throw std::invalid_argument("grid: one horizontal map per window pair expected");
        for (Index i = 0; i < pairs; ++i) {
            const auto& l = from_left_[std::size_t(r)][std::size_t(i)];
            const auto& rm = from_right_[std::size_t(r)][std::size_t(i)];
            if (l.rows() != dim_at({2 * i + 1, r}) || l.cols() != dim_at({2 * i, r}))
                throw std::invalid_argument("grid: bad shape for map into odd column " +
                                            std::to_string(2 * i + 1));
            if (rm.rows() != dim_at({2 * i + 1, r}) || rm.cols() != dim_at({2 * i + 2, r}))
                throw std::invalid_argument("grid: bad shape for map into odd column " +
                                            std::to_string(2 * i + 1));
        }
    }

    if (Index(vertical_.size()) != c)
        throw std::invalid_argument("grid: one vertical map column per grid column expected");
    for (Index col = 0; col < c; ++col) {
        if (Index(vertical_[std::size_t(col)].size()) != rows_ - 1)
            throw std::invalid_argument("grid: need rows-1 vertical maps per column");
        for (Index r = 0; r + 1 < rows_; ++r) {
            const auto& v = vertical_[std::size_t(col)][std::size_t(r)];
            if (v.rows() != dim_at({col, r + 1}) || v.cols() != dim_at({col, r}))
                throw std::invalid_argument("grid: bad vertical map shape at column " +
                                            std::to_string(col));
        }
    }
}

const f2::BitMatrix& BifiltrationGrid::h_from_left(Index row, Index i) const {
    return from_left_[std::size_t(row)][std::size_t(i)];
}

const f2::BitMatrix& BifiltrationGrid::h_from_right(Index row, Index i) const {
    return from_right_[std::size_t(row)][std::size_t(i)];
}

const f2::BitMatrix& BifiltrationGrid::vertical(Index col, Index row) const {
    return vertical_[std::size_t(col)][std::size_t(row)];
}

const f2::BitMatrix& BifiltrationGrid::edge_map(GridPoint a, GridPoint b) const {
    if (!contains(a) || !contains(b))
        throw std::invalid_argument("edge_map: point outside the grid");
    if (a.col == b.col && b.row == a.row + 1) return vertical(a.col, a.row);
    if (a.row == b.row && a.col % 2 == 0 && b.col % 2 != 0) {
        const Index i = (b.col - 1) / 2;
        if (a.col == b.col - 1) return h_from_left(a.row, i);
        if (a.col == b.col + 1) return h_from_right(a.row, i);
    }
    throw std::invalid_argument("edge_map: not a covering relation");
}

bool check_commutes(const BifiltrationGrid& g) {
    for (Index r = 0; r + 1 < g.rows(); ++r) {
        for (Index i = 0; 2 * i + 1 < g.cols(); ++i) {
            const Index odd = 2 * i + 1;
            const auto up_then_in_l =
                f2::mul(g.h_from_left(r + 1, i), g.vertical(odd - 1, r));
            const auto in_then_up_l = f2::mul(g.vertical(odd, r), g.h_from_left(r, i));
            if (!(up_then_in_l == in_then_up_l)) return false;
            const auto up_then_in_r =
                f2::mul(g.h_from_right(r + 1, i), g.vertical(odd + 1, r));
            const auto in_then_up_r = f2::mul(g.vertical(odd, r), g.h_from_right(r, i));
            if (!(up_then_in_r == in_then_up_r)) return false;
        }
    }
    return true;
}

BoundaryPath boundary_path(GridPoint center, Index radius) {
    if (radius < 0) throw std::invalid_argument("boundary_path: negative radius");
    if (center.col < radius || center.row < radius)
        throw std::invalid_argument("boundary_path: square leaves the quadrant");

    BoundaryPath p;
    p.nodes = {center};
    p.seg_first = {0};
    p.seg_last = {0};

    for (Index eps = 1; eps <= radius; ++eps) {
        const Index row_lo = center.row - eps;
        const Index row_hi = center.row + eps;
        const Index lo_e = ((center.col - eps) % 2 == 0) ? center.col - eps : center.col - eps + 1;
        const Index hi_e = ((center.col + eps) % 2 == 0) ? center.col + eps : center.col + eps - 1;
        const Index lo_o = ((center.col - eps) % 2 != 0) ? center.col - eps : center.col - eps + 1;
        const Index hi_o = ((center.col + eps) % 2 != 0) ? center.col + eps : center.col + eps - 1;

        // Walk the bottom edge rightward, then back left to the column where
        // the inner path begins; one upward step then lands on it.
        std::vector<GridPoint> before;
        for (Index c = lo_e; c <= hi_e; ++c) before.push_back({c, row_lo});
        for (Index c = hi_e - 1; c >= p.nodes.front().col; --c) before.push_back({c, row_lo});

        // Leave the inner path leftward to the column where the top edge
        // begins, step up, and walk the top edge rightward.
        std::vector<GridPoint> after;
        for (Index c = p.nodes.back().col - 1; c >= lo_o; --c) after.push_back({c, row_hi - 1});
        for (Index c = lo_o; c <= hi_o; ++c) after.push_back({c, row_hi});

        const Index shift = Index(before.size());
        for (auto& s : p.seg_first) s += shift;
        for (auto& s : p.seg_last) s += shift;
        before.insert(before.end(), p.nodes.begin(), p.nodes.end());
        before.insert(before.end(), after.begin(), after.end());
        p.nodes = std::move(before);
        p.seg_first.push_back(0);
        p.seg_last.push_back(Index(p.nodes.size()) - 1);
    }
    return p;
}

zigzag::ZigzagModule path_module(const BifiltrationGrid& g, const BoundaryPath& path) {
    std::vector<Index> dims;
    dims.reserve(path.nodes.size());
    for (GridPoint n : path.nodes) {
        if (!g.contains(n)) throw std::invalid_argument("path_module: node outside the grid");
        dims.push_back(g.dim_at(n));
    }
    std::vector<zigzag::Arrow> arrows;
    arrows.reserve(path.nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        const GridPoint a = path.nodes[i], b = path.nodes[i + 1];
        if (poset_leq(a, b))
            arrows.push_back({zigzag::Dir::forward, g.edge_map(a, b)});
        else if (poset_leq(b, a))
            arrows.push_back({zigzag::Dir::backward, g.edge_map(b, a)});
        else
            throw std::invalid_argument("path_module: consecutive nodes are incomparable");
    }
    return zigzag::ZigzagModule(std::move(dims), std::move(arrows));
}

std::vector<Index> region_ranks(const BifiltrationGrid& g, GridPoint center,
                                Index max_radius) {
    if (!g.contains(center)) throw std::invalid_argument("region_ranks: center outside the grid");
    if (max_radius < 0) throw std::invalid_argument("region_ranks: negative radius");

    std::vector<Index> out(std::size_t(max_radius) + 1, 0);
    const Index bound = std::min(std::min(center.col, g.cols() - 1 - center.col),
                                 std::min(center.row, g.rows() - 1 - center.row));
    const Index usable = std::min(max_radius, bound);

    const BoundaryPath bp = boundary_path(center, usable);
    const zigzag::ZigzagModule m = path_module(g, bp);
    for (Index eps = 0; eps <= usable; ++eps) {
        const Index rank =
            zigzag::gen_rank_range(m, bp.seg_first[std::size_t(eps)],
                                   bp.seg_last[std::size_t(eps)]);
        out[std::size_t(eps)] = rank;
        if (rank == 0) break; // larger squares can only lose classes
    }
    return out;
}

Index oracle_interval_rank(const BifiltrationGrid& g, GridPoint center, Index radius) {
    if (!g.contains(center))
        throw std::invalid_argument("oracle_interval_rank: center outside the grid");
    if (radius < 0) throw std::invalid_argument("oracle_interval_rank: negative radius");
    if (center.col - radius < 0 || center.col + radius >= g.cols() ||
        center.row - radius < 0 || center.row + radius >= g.rows())
        return 0;

    const Index c0 = center.col - radius, c1 = center.col + radius;
    const Index r0 = center.row - radius, r1 = center.row + radius;
    const Index span = r1 - r0 + 1;
    auto node_id = [&](Index c, Index r) { return (c - c0) * span + (r - r0); };

    zigzag::Diagram d;
    for (Index c = c0; c <= c1; ++c)
        for (Index r = r0; r <= r1; ++r) d.dims.push_back(g.dim_at({c, r}));
    for (Index c = c0; c <= c1; ++c)
        for (Index r = r0; r <= r1; ++r) {
            if (r + 1 <= r1)
                d.edges.push_back({node_id(c, r), node_id(c, r + 1), g.vertical(c, r)});
            if (c % 2 == 0 && c + 1 <= c1)
                d.edges.push_back(
                    {node_id(c, r), node_id(c + 1, r), g.edge_map({c, r}, {c + 1, r})});
            if (c % 2 == 0 && c - 1 >= c0)
                d.edges.push_back(
                    {node_id(c, r), node_id(c - 1, r), g.edge_map({c, r}, {c - 1, r})});
        }
    return zigzag::diagram_rank(d, node_id(center.col, center.row));
}

BifiltrationGrid build_grid(const std::vector<signal::PointCloud>& windows,
                            const std::vector<double>& epsilons, int hom_dim,
                            int threads) {
    const Index t = Index(windows.size());
    if (t < 1) throw std::invalid_argument("build_grid: need at least one window");
    if (epsilons.empty()) throw std::invalid_argument("build_grid: need at least one scale");
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
        if (!(epsilons[i] <= epsilons[i + 1]))
            throw std::invalid_argument("build_grid: scales must be ascending");
    if (epsilons.front() < 0.0)
        throw std::invalid_argument("build_grid: scales must be nonnegative");
    if (hom_dim < 0) throw std::invalid_argument("build_grid: negative homology degree");
    for (std::size_t i = 1; i < windows.size(); ++i)
        if (windows[i].cols() != windows[0].cols())
            throw std::invalid_argument("build_grid: windows of mixed ambient dimension");

    const Index c = 2 * t - 1;
    const Index r_count = Index(epsilons.size());

    std::vector<complex::VId> off(std::size_t(t) + 1, 0);
    for (Index i = 0; i < t; ++i)
        off[std::size_t(i) + 1] = off[std::size_t(i)] + complex::VId(windows[std::size_t(i)].rows());

    std::vector<std::vector<Index>> node_dims(static_cast<std::size_t>(c),
                                              std::vector<Index>(static_cast<std::size_t>(r_count), 0));
    std::vector<std::vector<f2::BitMatrix>> from_left(static_cast<std::size_t>(r_count));
    std::vector<std::vector<f2::BitMatrix>> from_right(static_cast<std::size_t>(r_count));
    std::vector<std::vector<f2::BitMatrix>> vertical(static_cast<std::size_t>(c));
    for (auto& v : vertical) v.resize(std::size_t(r_count - 1));

    std::vector<complex::SimplicialComplex> prev_k;
    std::vector<homology::HomologyBasis> prev_h;

    for (Index r = 0; r < r_count; ++r) {
        std::vector<complex::SimplicialComplex> cur_k(static_cast<std::size_t>(c));
        std::vector<homology::HomologyBasis> cur_h(static_cast<std::size_t>(c));
        const double eps = epsilons[std::size_t(r)];

        parallel_for(c, threads, [&](Index col) {
            if (col % 2 == 0) {
                const Index i = col / 2;
                cur_k[std::size_t(col)] = complex::vietoris_rips(
                    windows[std::size_t(i)], eps, hom_dim + 1, off[std::size_t(i)]);
            } else {
                const Index i = (col - 1) / 2;
                cur_k[std::size_t(col)] = complex::union_rips(
                    windows[std::size_t(i)], windows[std::size_t(i) + 1], eps, hom_dim + 1,
                    off[std::size_t(i)], off[std::size_t(i) + 1]);
            }
            cur_h[std::size_t(col)] =
                homology::homology_basis(cur_k[std::size_t(col)], hom_dim, int(r * c + col));
            node_dims[std::size_t(col)][std::size_t(r)] = cur_h[std::size_t(col)].betti();
        });

        from_left[std::size_t(r)].resize(std::size_t((c - 1) / 2));
        from_right[std::size_t(r)].resize(std::size_t((c - 1) / 2));
        parallel_for((c - 1) / 2, threads, [&](Index i) {
            const Index odd = 2 * i + 1;
            from_left[std::size_t(r)][std::size_t(i)] = homology::induced_map(
                cur_h[std::size_t(odd - 1)], cur_h[std::size_t(odd)],
                complex::simplex_index_map(cur_k[std::size_t(odd - 1)], cur_k[std::size_t(odd)],
                                           hom_dim));
            from_right[std::size_t(r)][std::size_t(i)] = homology::induced_map(
                cur_h[std::size_t(odd + 1)], cur_h[std::size_t(odd)],
                complex::simplex_index_map(cur_k[std::size_t(odd + 1)], cur_k[std::size_t(odd)],
                                           hom_dim));
        });

        if (r > 0) {
            parallel_for(c, threads, [&](Index col) {
                vertical[std::size_t(col)][std::size_t(r - 1)] = homology::induced_map(
                    prev_h[std::size_t(col)], cur_h[std::size_t(col)],
                    complex::simplex_index_map(prev_k[std::size_t(col)],
                                               cur_k[std::size_t(col)], hom_dim));
            });
        }

        // Everything mapping into this row is done; only the cycle
        // representatives are needed when the row acts as a source next.
        for (auto& h : cur_h) h.release_solver();
        prev_k = std::move(cur_k);
        prev_h = std::move(cur_h);
    }

    return BifiltrationGrid(std::move(node_dims), std::move(from_left),
                            std::move(from_right), std::move(vertical));
}

BifiltrationGrid grid_interval_module(Index cols, Index rows,
                                      const std::vector<GridPoint>& support) {
    if (cols < 1 || cols % 2 == 0 || rows < 1)
        throw std::invalid_argument("grid_interval_module: bad grid shape");
    std::set<GridPoint> s;
    for (GridPoint p : support) {
        if (p.col < 0 || p.col >= cols || p.row < 0 || p.row >= rows)
            throw std::invalid_argument("grid_interval_module: support outside the grid");
        s.insert(p);
    }
    auto dim = [&](Index c, Index r) { return s.count({c, r}) ? Index(1) : Index(0); };

    std::vector<std::vector<Index>> node_dims(static_cast<std::size_t>(cols),
                                              std::vector<Index>(static_cast<std::size_t>(rows), 0));
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) node_dims[std::size_t(c)][std::size_t(r)] = dim(c, r);

    auto connect = [&](Index cs, Index rs, Index cd, Index rd) {
        f2::BitMatrix m(dim(cd, rd), dim(cs, rs));
        if (m.rows() == 1 && m.cols() == 1) m.set(0, 0, true);
        return m;
    };

    std::vector<std::vector<f2::BitMatrix>> from_left(static_cast<std::size_t>(rows));
    std::vector<std::vector<f2::BitMatrix>> from_right(static_cast<std::size_t>(rows));
    for (Index r = 0; r < rows; ++r)
        for (Index i = 0; 2 * i + 1 < cols; ++i) {
            from_left[std::size_t(r)].push_back(connect(2 * i, r, 2 * i + 1, r));
            from_right[std::size_t(r)].push_back(connect(2 * i + 2, r, 2 * i + 1, r));
        }
    std::vector<std::vector<f2::BitMatrix>> vertical(static_cast<std::size_t>(cols));
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r + 1 < rows; ++r)
            vertical[std::size_t(c)].push_back(connect(c, r, c, r + 1));

    return BifiltrationGrid(std::move(node_dims), std::move(from_left),
                            std::move(from_right), std::move(vertical));
}

namespace {

f2::BitMatrix block_diag(const f2::BitMatrix& a, const f2::BitMatrix& b) {
    f2::BitMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) m.set(r, c, true);
    for (Index r = 0; r < b.rows(); ++r)
        for (Index c = 0; c < b.cols(); ++c)
            if (b.get(r, c)) m.set(a.rows() + r, a.cols() + c, true);
    return m;
}

} // namespace

BifiltrationGrid grid_direct_sum(const BifiltrationGrid& a, const BifiltrationGrid& b) {
    if (a.cols() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("grid_direct_sum: shape mismatch");

    std::vector<std::vector<Index>> node_dims(std::size_t(a.cols()),
                                              std::vector<Index>(std::size_t(a.rows()), 0));
    for (Index c = 0; c < a.cols(); ++c)
        for (Index r = 0; r < a.rows(); ++r)
            node_dims[std::size_t(c)][std::size_t(r)] = a.dim_at({c, r}) + b.dim_at({c, r});

    std::vector<std::vector<f2::BitMatrix>> from_left(std::size_t(a.rows())),
        from_right(std::size_t(a.rows()));
    for (Index r = 0; r < a.rows(); ++r)
        for (Index i = 0; 2 * i + 1 < a.cols(); ++i) {
            from_left[std::size_t(r)].push_back(
                block_diag(a.h_from_left(r, i), b.h_from_left(r, i)));
            from_right[std::size_t(r)].push_back(
                block_diag(a.h_from_right(r, i), b.h_from_right(r, i)));
        }
    std::vector<std::vector<f2::BitMatrix>> vertical(std::size_t(a.cols()));
    for (Index c = 0; c < a.cols(); ++c)
        for (Index r = 0; r + 1 < a.rows(); ++r)
            vertical[std::size_t(c)].push_back(block_diag(a.vertical(c, r), b.vertical(c, r)));

    return BifiltrationGrid(std::move(node_dims), std::move(from_left),
                            std::move(from_right), std::move(vertical));
}

} // namespace zzl::grid
