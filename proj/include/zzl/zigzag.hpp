#ifndef ZZL_ZIGZAG_HPP
#define ZZL_ZIGZAG_HPP

#include "zzl/f2.hpp"

#include <cstdint>
#include <vector>

/**
 * Zigzag modules over F2 and their interval content.
 *
 * A module is a finite sequence of F2 vector spaces joined by linear maps
 * that may point either way.  The key quantity is the rank of the
 * canonical map from the limit to the colimit of a consecutive range;
 * counting bars by inclusion-exclusion over those ranks recovers the
 * barcode without any sequential reduction.
 */
namespace zzl::zigzag {

using Index = f2::Index;

enum class Dir { forward, backward };

/**
 * The connecting map between spaces i and i+1.  A forward arrow carries a
 * dims[i+1] x dims[i] matrix (map out of space i); a backward arrow
 * carries dims[i] x dims[i+1] (map out of space i+1).
 */
struct Arrow {
    Dir dir;
    f2::BitMatrix map;
};

class ZigzagModule {
  public:
    ZigzagModule(std::vector<Index> dims, std::vector<Arrow> arrows);

    /** Number of spaces. */
    Index length() const { return Index(dims_.size()); }
    Index dim(Index i) const { return dims_[std::size_t(i)]; }
    const std::vector<Index>& dims() const { return dims_; }
    /** Arrow between spaces i and i+1. */
    const Arrow& arrow(Index i) const { return arrows_[std::size_t(i)]; }

  private:
    std::vector<Index> dims_;
    std::vector<Arrow> arrows_;
};

/** Closed integer interval [birth, death] of space indices. */
struct Bar {
    Index birth;
    Index death;

    auto operator<=>(const Bar&) const = default;
};

/** Bars with multiplicity given by repetition, sorted ascending. */
using Barcode = std::vector<Bar>;

/**
 * A finite diagram of F2 spaces: nodes with dimensions and edges carrying
 * structure maps (map shape dims[dst] x dims[src]).  Zigzag ranges and
 * poset regions both reduce to this shape.
 */
struct Diagram {
    struct Edge {
        Index src;
        Index dst;
        f2::BitMatrix map;
    };

    std::vector<Index> dims;
    std::vector<Edge> edges;
};

struct Limit {
    Index dim;
    /** projections[i] maps the limit into space i: dims[i] x dim. */
    std::vector<f2::BitMatrix> projections;
};

struct Colimit {
    Index dim;
    /** injections[i] maps space i into the colimit: dim x dims[i]. */
    std::vector<f2::BitMatrix> injections;
};

/** Limit (compatible-section space) of a diagram. */
Limit diagram_limit(const Diagram& d);

/** Colimit of a diagram, realized on coset representatives. */
Colimit diagram_colimit(const Diagram& d);

/**
 * Rank of the canonical limit-to-colimit composite through the given
 * node.  On a connected diagram the choice of node does not matter.
 */
Index diagram_rank(const Diagram& d, Index node);

/** The range [s, e] of a module as a standalone diagram. */
Diagram range_diagram(const ZigzagModule& m, Index s, Index e);

Limit limit(const ZigzagModule& m, Index s, Index e);
Colimit colimit(const ZigzagModule& m, Index s, Index e);

/** Generalized rank of the module over the range [s, e], evaluated at s. */
Index gen_rank_range(const ZigzagModule& m, Index s, Index e);

/**
 * Interval multiplicities by inclusion-exclusion over generalized ranks
 * of all consecutive ranges.  Returns bars sorted ascending with
 * multiplicity as repetition.
 */
Barcode barcode(const ZigzagModule& m);

/**
 * Builds a module that decomposes exactly into the given bars over the
 * given arrow directions, then (optionally) conjugates every space by a
 * seeded random change of basis to hide the interval structure.
 */
ZigzagModule synth_from_bars(const Barcode& bars, const std::vector<Dir>& dirs,
                             std::uint64_t seed, bool conjugate = true);

/**
 * Landscape profile of a barcode: the k-th largest (k >= 1) of the
 * depths min(x - birth, death - x) over bars containing x, clamped at 0.
 */
Index landscape_from_barcode(const Barcode& bc, Index k, Index x);

} // namespace zzl::zigzag

#endif
