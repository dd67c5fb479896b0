#include "zzl/f2.hpp"

#include <stdexcept>
#include <utility>

namespace zzl::f2 {

Index BitVector::first_set() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return Index(w) * 64 + __builtin_ctzll(words_[w]);
    return npos;
}

bool BitVector::any() const
{
    for (Word w : words_)
        if (w)
            return true;
    return false;
}

Index BitVector::popcount() const
{
    Index n = 0;
    for (Word w : words_)
        n += __builtin_popcountll(w);
    return n;
}

BitVector BitVector::gather(const std::vector<Index>& positions) const
{
    BitVector out(Index(positions.size()));
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (get(positions[i]))
            out.set(Index(i), true);
    return out;
}

BitMatrix BitMatrix::identity(Index n)
{
    BitMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVector>& cols, Index rows)
{
    BitMatrix m(rows, Index(cols.size()));
    for (Index c = 0; c < Index(cols.size()); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("from_columns: column length mismatch");
        cols[c].for_each_set([&](Index r) { m.set(r, c, true); });
    }
    return m;
}

void BitMatrix::swap_rows(Index a, Index b)
{
    if (a == b)
        return;
    Word* pa = data_.data() + a * wpr_;
    Word* pb = data_.data() + b * wpr_;
    for (Index w = 0; w < wpr_; ++w)
        std::swap(pa[w], pb[w]);
}

Index BitMatrix::row_first_set(Index r, Index from) const
{
    const Word* p = data_.data() + r * wpr_;
    Index w = from >> 6;
    if (w >= wpr_)
        return npos;
    Word head = p[w] & (~Word(0) << (from & 63));
    if (head)
        return w * 64 + __builtin_ctzll(head);
    for (++w; w < wpr_; ++w)
        if (p[w])
            return w * 64 + __builtin_ctzll(p[w]);
    return npos;
}

BitVector BitMatrix::row(Index r) const
{
    BitVector v(cols_);
    const Word* p = data_.data() + r * wpr_;
    for (Index w = 0; w < wpr_; ++w)
        v.words()[w] = p[w];
    return v;
}

BitVector BitMatrix::col(Index c) const
{
    BitVector v(rows_);
    for (Index r = 0; r < rows_; ++r)
        if (get(r, c))
            v.set(r, true);
    return v;
}

void BitMatrix::set_row(Index r, const BitVector& v)
{
    if (v.size() != cols_)
        throw std::invalid_argument("set_row: length mismatch");
    Word* p = data_.data() + r * wpr_;
    for (Index w = 0; w < wpr_; ++w)
        p[w] = v.words()[w];
}

BitVector BitMatrix::apply(const BitVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("apply: dimension mismatch");
    BitVector y(rows_);
    for (Index r = 0; r < rows_; ++r) {
        const Word* p = data_.data() + r * wpr_;
        Word acc = 0;
        for (Index w = 0; w < wpr_; ++w)
            acc ^= p[w] & x.words()[w];
        if (__builtin_popcountll(acc) & 1)
            y.set(r, true);
    }
    return y;
}

BitMatrix BitMatrix::transposed() const
{
    BitMatrix t(cols_, rows_);
    for (Index r = 0; r < rows_; ++r) {
        const Word* p = data_.data() + r * wpr_;
        for (Index w = 0; w < wpr_; ++w) {
            Word x = p[w];
            while (x) {
                Index c = w * 64 + __builtin_ctzll(x);
                t.set(c, r, true);
                x &= x - 1;
            }
        }
    }
    return t;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("mul: dimension mismatch");
    BitMatrix c(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        BitVector acc(b.cols());
        for (Index k = a.row_first_set(i); k != npos; k = a.row_first_set(i, k + 1))
            acc.xor_with(b.row(k));
        c.set_row(i, acc);
    }
    return c;
}

BitMatrix hcat(const BitMatrix& a, const BitMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hcat: row count mismatch");
    BitMatrix m(a.rows(), a.cols() + b.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = a.row_first_set(r); c != npos; c = a.row_first_set(r, c + 1))
            m.set(r, c, true);
        for (Index c = b.row_first_set(r); c != npos; c = b.row_first_set(r, c + 1))
            m.set(r, a.cols() + c, true);
    }
    return m;
}

BitMatrix vcat(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vcat: column count mismatch");
    BitMatrix m(a.rows() + b.rows(), a.cols());
    for (Index r = 0; r < a.rows(); ++r)
        m.set_row(r, a.row(r));
    for (Index r = 0; r < b.rows(); ++r)
        m.set_row(a.rows() + r, b.row(r));
    return m;
}

Rref rref(BitMatrix m)
{
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index pivot = npos;
        for (Index i = r; i < m.rows(); ++i) {
            if (m.get(i, c)) {
                pivot = i;
                break;
            }
        }
        if (pivot == npos)
            continue;
        m.swap_rows(r, pivot);
        for (Index i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c))
                m.xor_rows(i, r);
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

Index rank(BitMatrix m)
{
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index pivot = npos;
        for (Index i = r; i < m.rows(); ++i) {
            if (m.get(i, c)) {
                pivot = i;
                break;
            }
        }
        if (pivot == npos)
            continue;
        m.swap_rows(r, pivot);
        for (Index i = r + 1; i < m.rows(); ++i)
            if (m.get(i, c))
                m.xor_rows(i, r);
        ++r;
    }
    return r;
}

std::vector<BitVector> kernel_basis(const BitMatrix& m)
{
    Rref e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (Index c : e.pivot_cols)
        is_pivot[c] = true;

    std::vector<BitVector> basis;
    for (Index f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        BitVector v(m.cols());
        v.set(f, true);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            if (e.mat.get(Index(i), f))
                v.set(e.pivot_cols[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitMatrix> solve_many(const BitMatrix& m, const BitMatrix& rhs)
{
    if (rhs.rows() != m.rows())
        throw std::invalid_argument("solve_many: dimension mismatch");
    Rref e = rref(hcat(m, rhs));
    // any pivot landing in the rhs block signals inconsistency
    for (Index c : e.pivot_cols)
        if (c >= m.cols())
            return std::nullopt;
    BitMatrix x(m.cols(), rhs.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        for (Index j = 0; j < rhs.cols(); ++j)
            if (e.mat.get(Index(i), m.cols() + j))
                x.set(e.pivot_cols[i], j, true);
    return x;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& rhs)
{
    auto x = solve_many(m, BitMatrix::from_columns({rhs}, m.rows()));
    if (!x)
        return std::nullopt;
    return x->col(0);
}

std::optional<BitMatrix> inverse(const BitMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    auto x = solve_many(m, BitMatrix::identity(m.rows()));
    if (!x || rank(m) != m.rows())
        return std::nullopt;
    return x;
}

std::vector<BitVector> image_complement_basis(const BitMatrix& columns, Index ambient_dim)
{
    if (columns.rows() != ambient_dim)
        throw std::invalid_argument("image_complement_basis: ambient dimension mismatch");
    ColumnEchelon ech(ambient_dim);
    for (Index c = 0; c < columns.cols(); ++c)
        ech.insert(columns.col(c));
    std::vector<BitVector> complement;
    for (Index i = 0; i < ambient_dim && ech.rank() < ambient_dim; ++i) {
        BitVector e(ambient_dim);
        e.set(i, true);
        if (ech.insert(e)) {
            BitVector unit(ambient_dim);
            unit.set(i, true);
            complement.push_back(std::move(unit));
        }
    }
    return complement;
}

Index ColumnEchelon::reduce(BitVector& v) const
{
    for (;;) {
        Index p = v.first_set();
        if (p == npos)
            return npos;
        Index slot = slot_of_pivot_[p];
        if (slot == npos)
            return p;
        v.xor_with(basis_[slot]);
    }
}

bool ColumnEchelon::insert(BitVector v)
{
    Index p = reduce(v);
    if (p == npos)
        return false;
    slot_of_pivot_[p] = Index(basis_.size());
    basis_.push_back(std::move(v));
    return true;
}

} // namespace zzl::f2
