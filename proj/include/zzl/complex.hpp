#ifndef ZZL_COMPLEX_HPP
#define ZZL_COMPLEX_HPP

#include "zzl/f2.hpp"
#include "zzl/signal.hpp"

#include <cstdint>
#include <span>
#include <vector>

/**
 * Vietoris-Rips complexes over point clouds with global vertex ids.
 *
 * Vertex ids are global so that complexes built over different (disjoint)
 * windows of the same data can be compared: a window complex is literally
 * a subcomplex of the union complex over the same ids, which is what the
 * downstream inclusion-induced maps rely on.
 */
namespace zzl::complex {

using VId = std::int32_t;
using Index = std::int64_t;

constexpr Index npos = -1;

/**
 * A finite simplicial complex stored per dimension as a flat array of
 * vertex tuples.  Tuples are ascending and each dimension's list is
 * sorted lexicographically, so simplex lookup is a binary search.
 */
class SimplicialComplex {
  public:
    /** Largest dimension with at least one simplex; -1 when empty. */
    int max_dim() const { return int(flat_.size()) - 1; }

    /** Number of p-simplices (0 for dimensions that are not present). */
    Index size(int p) const
    {
        if (p < 0 || p >= int(flat_.size()))
            return 0;
        return Index(flat_[p].size()) / (p + 1);
    }

    /** The (p+1) vertex ids of the i-th p-simplex, ascending. */
    std::span<const VId> simplex(int p, Index i) const
    {
        return {flat_[p].data() + i * (p + 1), std::size_t(p + 1)};
    }

    /** Index of the given tuple among the p-simplices, or npos. */
    Index find(int p, std::span<const VId> tuple) const;

    /**
     * Appends the flat tuple array for the next dimension.  Tuples must
     * be ascending and the list lexicographically sorted; builders in
     * this module guarantee that by construction.
     */
    void push_dimension(std::vector<VId> flat) { flat_.push_back(std::move(flat)); }

  private:
    std::vector<std::vector<VId>> flat_;
};

/**
 * Vietoris-Rips complex of a point cloud with closed balls: a simplex
 * enters when all pairwise distances are <= eps.  Vertex i is given the
 * global id id_offset + i.  Simplices above max_dim are not built.
 */
SimplicialComplex vietoris_rips(const signal::PointCloud& pc, double eps,
                                int max_dim, VId id_offset);

/**
 * Vietoris-Rips complex of the union of two clouds whose vertex id
 * ranges [off_a, off_a + |a|) and [off_b, off_b + |b|) must be disjoint.
 * Cross edges use the same metric; either cloud may be empty.
 */
SimplicialComplex union_rips(const signal::PointCloud& a, const signal::PointCloud& b,
                             double eps, int max_dim, VId off_a, VId off_b);

/**
 * Boundary matrix of the p-th differential over F2: rows index
 * (p-1)-simplices, columns index p-simplices (p >= 1).
 */
f2::BitMatrix boundary_matrix(const SimplicialComplex& k, int p);

/**
 * For a subcomplex inclusion, maps each p-simplex index of `sub` to the
 * index of the identical tuple in `super`.  Throws when some simplex of
 * `sub` is missing from `super`.
 */
std::vector<Index> simplex_index_map(const SimplicialComplex& sub,
                                     const SimplicialComplex& super, int p);

} // namespace zzl::complex

#endif
