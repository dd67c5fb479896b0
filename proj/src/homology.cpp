#include "zzl/homology.hpp"

#include <stdexcept>

namespace zzl::homology {

using complex::SimplicialComplex;
using complex::VId;
using f2::BitVector;
using f2::npos;

f2::BitVector HomologyBasis::boundary_chain(std::size_t i) const
{
    BitVector v(chain_dim);
    for (Index idx : boundary_support[i])
        v.set(idx, true);
    return v;
}

f2::BitVector HomologyBasis::express(const f2::BitVector& cycle) const
{
    if (cycle.size() != chain_dim)
        throw std::invalid_argument("express: chain dimension mismatch");
    BitVector coords(betti());
    if (betti() == 0)
        return coords;
    BitVector r = cycle.gather(free_cols_);
    for (;;) {
        const Index pv = r.first_set();
        if (pv == npos)
            break;
        if (bnd_slot_[pv] != npos) {
            r.xor_with(bnd_basis_[bnd_slot_[pv]]);
        } else if (rep_slot_[pv] != npos) {
            const Index s = rep_slot_[pv];
            r.xor_with(rep_basis_[s]);
            coords.xor_with(rep_coeff_[s]);
        } else {
            throw std::logic_error("express: vector is not a cycle of this complex");
        }
    }
    return coords;
}

void HomologyBasis::release_solver()
{
    free_cols_.clear();
    free_cols_.shrink_to_fit();
    bnd_basis_.clear();
    bnd_basis_.shrink_to_fit();
    bnd_slot_.clear();
    bnd_slot_.shrink_to_fit();
    rep_basis_.clear();
    rep_basis_.shrink_to_fit();
    rep_coeff_.clear();
    rep_coeff_.shrink_to_fit();
    rep_slot_.clear();
    rep_slot_.shrink_to_fit();
}

HomologyBasis homology_basis(const SimplicialComplex& k, int p, int complex_id)
{
    if (p < 0)
        throw std::invalid_argument("homology_basis: p must be nonnegative");
    HomologyBasis h;
    h.complex_id = complex_id;
    h.p = p;
    h.chain_dim = k.size(p);
    const Index n_chain = h.chain_dim;
    if (n_chain == 0)
        return h;

    // Reduce the lower boundary; its free columns coordinatize the cycles.
    f2::Rref low;
    if (p >= 1)
        low = f2::rref(complex::boundary_matrix(k, p));
    std::vector<char> is_pivot(static_cast<std::size_t>(n_chain), 0);
    for (Index c : low.pivot_cols)
        is_pivot[std::size_t(c)] = 1;
    std::vector<Index> pos_in_free(static_cast<std::size_t>(n_chain), npos);
    for (Index c = 0; c < n_chain; ++c) {
        if (!is_pivot[std::size_t(c)]) {
            pos_in_free[std::size_t(c)] = Index(h.free_cols_.size());
            h.free_cols_.push_back(c);
        }
    }
    const Index n_free = Index(h.free_cols_.size());

    // Echelonize upper boundary columns in free coordinates; stop once
    // they saturate the cycle space (no homology can remain).
    h.bnd_slot_.assign(static_cast<std::size_t>(n_free), npos);
    const Index n_upper = k.size(p + 1);
    std::vector<VId> facet(static_cast<std::size_t>(p + 1));
    std::vector<Index> support(static_cast<std::size_t>(p + 2));
    for (Index j = 0; j < n_upper && Index(h.bnd_basis_.size()) < n_free; ++j) {
        auto tup = k.simplex(p + 1, j);
        BitVector col(n_free);
        for (int drop = 0; drop <= p + 1; ++drop) {
            int at = 0;
            for (int v = 0; v <= p + 1; ++v)
                if (v != drop)
                    facet[std::size_t(at++)] = tup[std::size_t(v)];
            const Index idx = k.find(p, facet);
            if (idx == complex::npos)
                throw std::logic_error("homology_basis: complex not closed under faces");
            support[std::size_t(drop)] = idx;
            if (pos_in_free[std::size_t(idx)] != npos)
                col.set(pos_in_free[std::size_t(idx)], true);
        }
        for (;;) {
            const Index pv = col.first_set();
            if (pv == npos)
                break;
            if (h.bnd_slot_[pv] == npos) {
                h.bnd_slot_[pv] = Index(h.bnd_basis_.size());
                h.bnd_basis_.push_back(col);
                h.boundary_support.emplace_back(support.begin(), support.end());
                break;
            }
            col.xor_with(h.bnd_basis_[h.bnd_slot_[pv]]);
        }
    }

    const Index beta = n_free - Index(h.bnd_basis_.size());
    if (beta > 0) {
        h.rep_slot_.assign(static_cast<std::size_t>(n_free), npos);
        for (Index fpos = 0; fpos < n_free && h.betti() < beta; ++fpos) {
            BitVector r(n_free);
            r.set(fpos, true);
            BitVector coeff(beta);
            Index fresh = npos;
            for (;;) {
                const Index pv = r.first_set();
                if (pv == npos)
                    break;
                if (h.bnd_slot_[pv] != npos) {
                    r.xor_with(h.bnd_basis_[h.bnd_slot_[pv]]);
                } else if (h.rep_slot_[pv] != npos) {
                    const Index s = h.rep_slot_[pv];
                    r.xor_with(h.rep_basis_[s]);
                    coeff.xor_with(h.rep_coeff_[s]);
                } else {
                    fresh = pv;
                    break;
                }
            }
            if (fresh == npos)
                continue;
            const Index t = h.betti();
            coeff.set(t, true);
            h.rep_slot_[fresh] = t;
            h.rep_basis_.push_back(std::move(r));
            h.rep_coeff_.push_back(std::move(coeff));

            // chain-space reconstruction of the candidate cycle
            const Index fcol = h.free_cols_[std::size_t(fpos)];
            BitVector chain(n_chain);
            chain.set(fcol, true);
            if (p >= 1) {
                for (std::size_t i = 0; i < low.pivot_cols.size(); ++i)
                    if (low.mat.get(Index(i), fcol))
                        chain.set(low.pivot_cols[i], true);
            }
            h.cycle_reps.push_back(std::move(chain));
        }
        if (h.betti() != beta)
            throw std::logic_error("homology_basis: representative search fell short");
    } else {
        // rank saturated: no classes, solver tables are never consulted
        h.release_solver();
    }
    return h;
}

f2::BitMatrix induced_map(const HomologyBasis& src, const HomologyBasis& dst,
                          const std::vector<Index>& inclusion)
{
    if (Index(inclusion.size()) != src.chain_dim)
        throw std::invalid_argument("induced_map: inclusion length mismatch");
    if (src.p != dst.p)
        throw std::invalid_argument("induced_map: dimension mismatch");
    f2::BitMatrix m(dst.betti(), src.betti());
    if (m.rows() == 0 || m.cols() == 0)
        return m;
    for (Index j = 0; j < src.betti(); ++j) {
        BitVector pushed(dst.chain_dim);
        src.cycle_reps[std::size_t(j)].for_each_set([&](Index i) {
            const Index target = inclusion[std::size_t(i)];
            if (target < 0 || target >= dst.chain_dim)
                throw std::invalid_argument("induced_map: inclusion index out of range");
            pushed.set(target, true);
        });
        const BitVector coords = dst.express(pushed);
        coords.for_each_set([&](Index r) { m.set(r, j, true); });
    }
    return m;
}

} // namespace zzl::homology
