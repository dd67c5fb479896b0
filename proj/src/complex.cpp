#include "zzl/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace zzl::complex {

namespace {

/** Lexicographic compare of two tuples of equal length. */
bool tuple_less(const VId* a, const VId* b, int len)
{
    for (int i = 0; i < len; ++i) {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return false;
}

/**
 * Shared Rips construction over points with ascending global ids.
 * `ids` must be strictly increasing; row i of `points` carries id ids[i].
 */
SimplicialComplex rips_core(const signal::PointCloud& points,
                            const std::vector<VId>& ids, double eps, int max_dim)
{
    const Index n = points.rows();
    SimplicialComplex k;
    if (n == 0)
        return k;

    // closed-ball adjacency over local indices
    std::vector<f2::BitVector> nbr(n, f2::BitVector(n));
    const double eps2 = eps * eps;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if ((points.row(i) - points.row(j)).squaredNorm() <= eps2) {
                nbr[i].set(j, true);
                nbr[j].set(i, true);
            }
        }
    }

    std::vector<VId> verts(ids.begin(), ids.end());
    k.push_dimension(std::move(verts));

    if (max_dim < 1)
        return k;

    // local-index tuples per dimension; extended one vertex at a time
    std::vector<Index> prev_flat;
    for (Index i = 0; i < n; ++i)
        prev_flat.push_back(i);

    for (int p = 1; p <= max_dim; ++p) {
        std::vector<Index> cur_flat;
        const Index n_prev = Index(prev_flat.size()) / p;
        f2::BitVector common(n);
        for (Index s = 0; s < n_prev; ++s) {
            const Index* tup = prev_flat.data() + s * p;
            common = nbr[tup[0]];
            for (int v = 1; v < p; ++v) {
                for (std::size_t w = 0; w < common.words().size(); ++w)
                    common.words()[w] &= nbr[tup[v]].words()[w];
            }
            const Index last = tup[p - 1];
            common.for_each_set([&](Index cand) {
                if (cand <= last)
                    return;
                for (int v = 0; v < p; ++v)
                    cur_flat.push_back(tup[v]);
                cur_flat.push_back(cand);
            });
        }
        if (cur_flat.empty())
            break;
        std::vector<VId> global;
        global.reserve(cur_flat.size());
        for (Index local : cur_flat)
            global.push_back(ids[std::size_t(local)]);
        k.push_dimension(std::move(global));
        prev_flat = std::move(cur_flat);
    }
    return k;
}

} // namespace

Index SimplicialComplex::find(int p, std::span<const VId> tuple) const
{
    if (p < 0 || p >= int(flat_.size()) || int(tuple.size()) != p + 1)
        return npos;
    const auto& flat = flat_[p];
    Index lo = 0;
    Index hi = size(p);
    while (lo < hi) {
        Index mid = (lo + hi) / 2;
        if (tuple_less(flat.data() + mid * (p + 1), tuple.data(), p + 1))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size(p) && std::equal(tuple.begin(), tuple.end(), flat.data() + lo * (p + 1)))
        return lo;
    return npos;
}

SimplicialComplex vietoris_rips(const signal::PointCloud& pc, double eps,
                                int max_dim, VId id_offset)
{
    if (eps < 0.0)
        throw std::invalid_argument("vietoris_rips: eps must be nonnegative");
    if (max_dim < 0)
        throw std::invalid_argument("vietoris_rips: max_dim must be nonnegative");
    std::vector<VId> ids(std::size_t(pc.rows()));
    for (std::size_t i = 0; i < ids.size(); ++i)
        ids[i] = id_offset + VId(i);
    return rips_core(pc, ids, eps, max_dim);
}

SimplicialComplex union_rips(const signal::PointCloud& a, const signal::PointCloud& b,
                             double eps, int max_dim, VId off_a, VId off_b)
{
    if (eps < 0.0)
        throw std::invalid_argument("union_rips: eps must be nonnegative");
    if (max_dim < 0)
        throw std::invalid_argument("union_rips: max_dim must be nonnegative");
    if (a.rows() > 0 && b.rows() > 0) {
        if (a.cols() != b.cols())
            throw std::invalid_argument("union_rips: point dimensions differ");
        const bool disjoint =
            off_a + VId(a.rows()) <= off_b || off_b + VId(b.rows()) <= off_a;
        if (!disjoint)
            throw std::invalid_argument("union_rips: vertex id ranges overlap");
    }

    const Index n = a.rows() + b.rows();
    const Index dim = a.rows() > 0 ? a.cols() : b.cols();
    signal::PointCloud points(n, dim);
    std::vector<VId> ids(static_cast<std::size_t>(n));

    // rows ordered by global id so tuples stay ascending
    const bool a_first = a.rows() == 0 || b.rows() == 0 || off_a < off_b;
    const auto& first = a_first ? a : b;
    const auto& second = a_first ? b : a;
    const VId first_off = a_first ? off_a : off_b;
    const VId second_off = a_first ? off_b : off_a;
    points.topRows(first.rows()) = first;
    points.bottomRows(second.rows()) = second;
    for (Index i = 0; i < first.rows(); ++i)
        ids[std::size_t(i)] = first_off + VId(i);
    for (Index i = 0; i < second.rows(); ++i)
        ids[std::size_t(first.rows() + i)] = second_off + VId(i);
    return rips_core(points, ids, eps, max_dim);
}

f2::BitMatrix boundary_matrix(const SimplicialComplex& k, int p)
{
    if (p < 1)
        throw std::invalid_argument("boundary_matrix: p must be at least 1");
    const Index n_rows = k.size(p - 1);
    const Index n_cols = k.size(p);
    f2::BitMatrix d(n_rows, n_cols);
    std::vector<VId> facet(static_cast<std::size_t>(p));
    for (Index j = 0; j < n_cols; ++j) {
        auto tup = k.simplex(p, j);
        for (int drop = 0; drop <= p; ++drop) {
            int at = 0;
            for (int v = 0; v <= p; ++v)
                if (v != drop)
                    facet[std::size_t(at++)] = tup[std::size_t(v)];
            const Index r = k.find(p - 1, facet);
            if (r == npos)
                throw std::logic_error("boundary_matrix: complex not closed under faces");
            d.set(r, j, true);
        }
    }
    return d;
}

std::vector<Index> simplex_index_map(const SimplicialComplex& sub,
                                     const SimplicialComplex& super, int p)
{
    std::vector<Index> map(static_cast<std::size_t>(sub.size(p)));
    for (Index i = 0; i < sub.size(p); ++i) {
        const Index j = super.find(p, sub.simplex(p, i));
        if (j == npos)
            throw std::invalid_argument("simplex_index_map: not a subcomplex");
        map[std::size_t(i)] = j;
    }
    return map;
}

} // namespace zzl::complex
