#include "zzl/zigzag.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace zzl::zigzag {

namespace {

std::vector<Index> block_offsets(const std::vector<Index>& dims) {
    std::vector<Index> off(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
    return off;
}

void validate_diagram(const Diagram& d) {
    const Index n = Index(d.dims.size());
    for (Index dim : d.dims)
        if (dim < 0) throw std::invalid_argument("diagram: negative dimension");
    for (const auto& e : d.edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw std::invalid_argument("diagram: edge endpoint out of range");
        if (e.map.rows() != d.dims[std::size_t(e.dst)] ||
            e.map.cols() != d.dims[std::size_t(e.src)])
            throw std::invalid_argument("diagram: edge map shape mismatch");
    }
}

/** Relation columns spanning the subspace the colimit quotients out. */
std::vector<f2::BitVector> relation_columns(const Diagram& d,
                                            const std::vector<Index>& off) {
    const Index total = off.back();
    std::vector<f2::BitVector> rel;
    for (const auto& e : d.edges) {
        const Index src_off = off[std::size_t(e.src)];
        const Index dst_off = off[std::size_t(e.dst)];
        for (Index c = 0; c < e.map.cols(); ++c) {
            f2::BitVector v(total);
            v.flip(src_off + c);
            for (Index r = 0; r < e.map.rows(); ++r)
                if (e.map.get(r, c)) v.flip(dst_off + r);
            if (v.any()) rel.push_back(std::move(v));
        }
    }
    return rel;
}

f2::BitMatrix random_invertible(Index n, std::mt19937_64& rng) {
    if (n == 0) return f2::BitMatrix(0, 0);
    for (;;) {
        f2::BitMatrix m(n, n);
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < n; ++c)
                if (rng() & 1u) m.set(r, c, true);
        if (f2::rank(m) == n) return m;
    }
}

} // namespace

ZigzagModule::ZigzagModule(std::vector<Index> dims, std::vector<Arrow> arrows)
    : dims_(std::move(dims)), arrows_(std::move(arrows)) {
    if (dims_.empty()) throw std::invalid_argument("zigzag: at least one space required");
    if (arrows_.size() + 1 != dims_.size())
        throw std::invalid_argument("zigzag: need exactly one arrow between consecutive spaces");
    for (Index d : dims_)
        if (d < 0) throw std::invalid_argument("zigzag: negative dimension");
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
        const Arrow& a = arrows_[i];
        const Index lo = dims_[i], hi = dims_[i + 1];
        const bool ok = (a.dir == Dir::forward) ? (a.map.rows() == hi && a.map.cols() == lo)
                                                : (a.map.rows() == lo && a.map.cols() == hi);
        if (!ok)
            throw std::invalid_argument("zigzag: arrow " + std::to_string(i) +
                                        " has wrong shape for its direction");
    }
}

Limit diagram_limit(const Diagram& d) {
    validate_diagram(d);
    const auto off = block_offsets(d.dims);
    const Index total = off.back();

    Index rows = 0;
    for (const auto& e : d.edges) rows += e.map.rows();

    // One row per target coordinate of each edge: (A v_src)[r] = v_dst[r].
    f2::BitMatrix constraints(rows, total);
    Index ro = 0;
    for (const auto& e : d.edges) {
        const Index src_off = off[std::size_t(e.src)];
        const Index dst_off = off[std::size_t(e.dst)];
        for (Index r = 0; r < e.map.rows(); ++r) {
            constraints.set(ro + r, dst_off + r, !constraints.get(ro + r, dst_off + r));
            for (Index c = 0; c < e.map.cols(); ++c)
                if (e.map.get(r, c))
                    constraints.set(ro + r, src_off + c, !constraints.get(ro + r, src_off + c));
        }
        ro += e.map.rows();
    }

    const std::vector<f2::BitVector> kernel = f2::kernel_basis(constraints);
    Limit lim;
    lim.dim = Index(kernel.size());
    lim.projections.reserve(d.dims.size());
    for (std::size_t i = 0; i < d.dims.size(); ++i) {
        f2::BitMatrix proj(d.dims[i], lim.dim);
        for (Index k = 0; k < lim.dim; ++k)
            for (Index r = 0; r < d.dims[i]; ++r)
                if (kernel[std::size_t(k)].get(off[i] + r)) proj.set(r, k, true);
        lim.projections.push_back(std::move(proj));
    }
    return lim;
}

Colimit diagram_colimit(const Diagram& d) {
    validate_diagram(d);
    const auto off = block_offsets(d.dims);
    const Index total = off.back();

    f2::ColumnEchelon ech(total);
    for (auto& v : relation_columns(d, off)) ech.insert(std::move(v));
    const Index rel_rank = ech.rank();

    // Extend the relation span to a full basis; the added unit vectors
    // represent the quotient.
    std::vector<Index> unit_cols;
    for (Index j = 0; j < total && rel_rank + Index(unit_cols.size()) < total; ++j) {
        f2::BitVector e(total);
        e.flip(j);
        if (ech.insert(std::move(e))) unit_cols.push_back(j);
    }

    Colimit col;
    col.dim = Index(unit_cols.size());

    f2::BitMatrix rho(col.dim, total);
    if (total > 0) {
        f2::BitMatrix full(total, total);
        const std::vector<f2::BitVector> basis = ech.basis();
        // ech.basis() holds the relation span first, then the unit extension,
        // in insertion order.
        for (Index c = 0; c < total; ++c)
            for (Index r = 0; r < total; ++r)
                if (basis[std::size_t(c)].get(r)) full.set(r, c, true);
        const f2::BitMatrix inv = f2::inverse(full).value();
        // Coordinates w.r.t. the unit extension give the quotient map.
        for (Index r = 0; r < col.dim; ++r)
            for (Index c = 0; c < total; ++c)
                if (inv.get(rel_rank + r, c)) rho.set(r, c, true);
    }

    col.injections.reserve(d.dims.size());
    for (std::size_t i = 0; i < d.dims.size(); ++i) {
        f2::BitMatrix inj(col.dim, d.dims[i]);
        for (Index r = 0; r < col.dim; ++r)
            for (Index c = 0; c < d.dims[i]; ++c)
                if (rho.get(r, off[i] + c)) inj.set(r, c, true);
        col.injections.push_back(std::move(inj));
    }
    return col;
}

Index diagram_rank(const Diagram& d, Index node) {
    if (node < 0 || node >= Index(d.dims.size()))
        throw std::invalid_argument("diagram_rank: node out of range");
    const Limit lim = diagram_limit(d);
    const Colimit col = diagram_colimit(d);
    return f2::rank(f2::mul(col.injections[std::size_t(node)],
                            lim.projections[std::size_t(node)]));
}

Diagram range_diagram(const ZigzagModule& m, Index s, Index e) {
    if (s < 0 || e >= m.length() || s > e)
        throw std::invalid_argument("range_diagram: bad range");
    Diagram d;
    d.dims.reserve(std::size_t(e - s + 1));
    for (Index i = s; i <= e; ++i) d.dims.push_back(m.dim(i));
    for (Index i = s; i < e; ++i) {
        const Arrow& a = m.arrow(i);
        if (a.dir == Dir::forward)
            d.edges.push_back({i - s, i - s + 1, a.map});
        else
            d.edges.push_back({i - s + 1, i - s, a.map});
    }
    return d;
}

Limit limit(const ZigzagModule& m, Index s, Index e) {
    return diagram_limit(range_diagram(m, s, e));
}

Colimit colimit(const ZigzagModule& m, Index s, Index e) {
    return diagram_colimit(range_diagram(m, s, e));
}

Index gen_rank_range(const ZigzagModule& m, Index s, Index e) {
    return diagram_rank(range_diagram(m, s, e), 0);
}

Barcode barcode(const ZigzagModule& m) {
    const Index n = m.length();
    // rk[b][e] for 0 <= b <= e < n; out-of-range treated as 0.
    std::vector<std::vector<Index>> rk(std::size_t(n), std::vector<Index>(std::size_t(n), 0));
    for (Index b = 0; b < n; ++b)
        for (Index e = b; e < n; ++e) rk[std::size_t(b)][std::size_t(e)] = gen_rank_range(m, b, e);

    auto rk_at = [&](Index b, Index e) -> Index {
        if (b < 0 || e >= n || b > e) return 0;
        return rk[std::size_t(b)][std::size_t(e)];
    };

    Barcode bars;
    std::vector<Index> covered(std::size_t(n), 0);
    for (Index b = 0; b < n; ++b) {
        for (Index e = b; e < n; ++e) {
            const Index mult = rk_at(b, e) - rk_at(b - 1, e) - rk_at(b, e + 1) + rk_at(b - 1, e + 1);
            if (mult < 0) throw std::logic_error("barcode: negative interval multiplicity");
            for (Index i = b; i <= e; ++i) covered[std::size_t(i)] += mult;
            bars.insert(bars.end(), std::size_t(mult), Bar{b, e});
        }
    }
    for (Index i = 0; i < n; ++i)
        if (covered[std::size_t(i)] != m.dim(i))
            throw std::logic_error("barcode: interval multiplicities do not add up to the dimensions");
    std::sort(bars.begin(), bars.end());
    return bars;
}

ZigzagModule synth_from_bars(const Barcode& bars, const std::vector<Dir>& dirs,
                             std::uint64_t seed, bool conjugate) {
    const Index n = Index(dirs.size()) + 1;
    for (const Bar& b : bars)
        if (b.birth < 0 || b.death >= n || b.birth > b.death)
            throw std::invalid_argument("synth_from_bars: bar out of range");

    Barcode sorted = bars;
    std::sort(sorted.begin(), sorted.end());

    // slot_of[i][j]: position of bar j among the bars alive at space i.
    std::vector<std::vector<Index>> slot_of(std::size_t(n),
                                            std::vector<Index>(sorted.size(), f2::npos));
    std::vector<Index> dims(std::size_t(n), 0);
    for (std::size_t j = 0; j < sorted.size(); ++j)
        for (Index i = sorted[j].birth; i <= sorted[j].death; ++i)
            slot_of[std::size_t(i)][j] = dims[std::size_t(i)]++;

    std::mt19937_64 rng(seed);
    std::vector<f2::BitMatrix> p, p_inv;
    p.reserve(std::size_t(n));
    p_inv.reserve(std::size_t(n));
    for (Index i = 0; i < n; ++i) {
        f2::BitMatrix pi = conjugate ? random_invertible(dims[std::size_t(i)], rng)
                                     : f2::BitMatrix::identity(dims[std::size_t(i)]);
        p_inv.push_back(f2::inverse(pi).value());
        p.push_back(std::move(pi));
    }

    std::vector<Arrow> arrows;
    arrows.reserve(dirs.size());
    for (Index i = 0; i + 1 < n; ++i) {
        const Dir dir = dirs[std::size_t(i)];
        const Index lo = dims[std::size_t(i)], hi = dims[std::size_t(i + 1)];
        // In the block basis a bar alive on both sides maps slot to slot.
        f2::BitMatrix base = (dir == Dir::forward) ? f2::BitMatrix(hi, lo) : f2::BitMatrix(lo, hi);
        for (std::size_t j = 0; j < sorted.size(); ++j) {
            const Index a = slot_of[std::size_t(i)][j];
            const Index b = slot_of[std::size_t(i + 1)][j];
            if (a == f2::npos || b == f2::npos) continue;
            if (dir == Dir::forward)
                base.set(b, a, true);
            else
                base.set(a, b, true);
        }
        f2::BitMatrix map = (dir == Dir::forward)
                                ? f2::mul(p[std::size_t(i + 1)], f2::mul(base, p_inv[std::size_t(i)]))
                                : f2::mul(p[std::size_t(i)], f2::mul(base, p_inv[std::size_t(i + 1)]));
        arrows.push_back({dir, std::move(map)});
    }
    return ZigzagModule(std::move(dims), std::move(arrows));
}

Index landscape_from_barcode(const Barcode& bc, Index k, Index x) {
    if (k < 1) throw std::invalid_argument("landscape_from_barcode: k must be >= 1");
    std::vector<Index> depths;
    depths.reserve(bc.size());
    for (const Bar& b : bc) {
        const Index d = std::min(x - b.birth, b.death - x);
        if (d > 0) depths.push_back(d);
    }
    if (Index(depths.size()) < k) return 0;
    std::nth_element(depths.begin(), depths.begin() + (k - 1), depths.end(),
                     std::greater<Index>());
    return depths[std::size_t(k - 1)];
}

} // namespace zzl::zigzag
