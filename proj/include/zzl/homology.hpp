#ifndef ZZL_HOMOLOGY_HPP
#define ZZL_HOMOLOGY_HPP

#include "zzl/complex.hpp"
#include "zzl/f2.hpp"

#include <vector>

/**
 * Simplicial homology over F2 with coset representatives and maps induced
 * by subcomplex inclusions.
 *
 * Internally a basis works in the free-column coordinates of the reduced
 * lower boundary matrix: restricting a cycle to those columns is an
 * isomorphism of the cycle space, boundary columns become sparse there,
 * and the boundary echelon can stop as soon as it saturates the cycle
 * space.  The public representatives are ordinary chain vectors.
 */
namespace zzl::homology {

using Index = f2::Index;

class HomologyBasis {
  public:
    /** Caller-chosen identifier of the underlying complex. */
    int complex_id = 0;
    /** Homology dimension. */
    int p = 0;
    /** Number of p-simplices of the complex. */
    Index chain_dim = 0;
    /** One chain-vector cycle per homology class, in coordinate order. */
    std::vector<f2::BitVector> cycle_reps;
    /**
     * Basis of the boundary space, one entry per basis element, stored as
     * the support (p-simplex indices) of the boundary of the chosen
     * (p+1)-simplex.  Use boundary_chain to materialize a vector.
     */
    std::vector<std::vector<Index>> boundary_support;

    Index betti() const { return Index(cycle_reps.size()); }

    /** Dense chain vector of the i-th boundary basis element. */
    f2::BitVector boundary_chain(std::size_t i) const;

    /**
     * Coordinates of the class of a cycle in the cycle_reps basis.
     * The input must be a cycle of this complex; a vector that cannot be
     * reduced to zero against the stored bases raises logic_error.
     */
    f2::BitVector express(const f2::BitVector& cycle) const;

    /** Frees the internal solver tables once no more maps are needed. */
    void release_solver();

  private:
    friend HomologyBasis homology_basis(const complex::SimplicialComplex& k, int p,
                                        int complex_id);

    std::vector<Index> free_cols_;
    std::vector<f2::BitVector> bnd_basis_;
    std::vector<Index> bnd_slot_;
    std::vector<f2::BitVector> rep_basis_;
    std::vector<f2::BitVector> rep_coeff_;
    std::vector<Index> rep_slot_;
};

/**
 * Homology basis of k in dimension p (p >= 0; dimension 0 uses the full
 * chain space as cycles, i.e. unreduced homology).
 */
HomologyBasis homology_basis(const complex::SimplicialComplex& k, int p,
                             int complex_id = 0);

/**
 * Matrix of the map on homology induced by a subcomplex inclusion, as a
 * betti(dst) x betti(src) matrix over the two bases' coordinates.
 * `inclusion` maps each p-simplex index of src to its index in dst
 * (see complex::simplex_index_map).
 */
f2::BitMatrix induced_map(const HomologyBasis& src, const HomologyBasis& dst,
                          const std::vector<Index>& inclusion);

} // namespace zzl::homology

#endif
