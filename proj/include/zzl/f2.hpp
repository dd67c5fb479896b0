#ifndef ZZL_F2_HPP
#define ZZL_F2_HPP

#include <cstdint>
#include <optional>
#include <vector>

/**
 * Dense linear algebra over the two-element field.
 *
 * Matrices are bit-packed row-major into 64-bit words so that row
 * operations run word-parallel.  Pivoting is deterministic: the first
 * nonzero entry in scan order wins, which keeps every derived basis
 * reproducible across runs.
 */
namespace zzl::f2 {

using Index = std::int64_t;
using Word = std::uint64_t;

constexpr Index npos = -1;

/** Packed vector over F2. */
class BitVector {
  public:
    BitVector() = default;

    explicit BitVector(Index size)
        : size_(size), words_((size + 63) / 64, 0)
    {
    }

    Index size() const { return size_; }

    bool get(Index i) const
    {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(Index i, bool v)
    {
        Word mask = Word(1) << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(Index i) { words_[i >> 6] ^= Word(1) << (i & 63); }

    /** In-place xor with another vector of the same size. */
    void xor_with(const BitVector& other)
    {
        const Word* src = other.words_.data();
        Word* dst = words_.data();
        for (std::size_t w = 0; w < words_.size(); ++w)
            dst[w] ^= src[w];
    }

    /** Index of the lowest set bit, or npos if the vector is zero. */
    Index first_set() const;

    bool any() const;

    Index popcount() const;

    /** Calls fn(i) for every set bit in ascending order. */
    template <typename Fn>
    void for_each_set(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word x = words_[w];
            while (x) {
                fn(Index(w) * 64 + __builtin_ctzll(x));
                x &= x - 1;
            }
        }
    }

    /** New vector holding the bits at the given positions, in order. */
    BitVector gather(const std::vector<Index>& positions) const;

    bool operator==(const BitVector& other) const
    {
        return size_ == other.size_ && words_ == other.words_;
    }

    const std::vector<Word>& words() const { return words_; }
    std::vector<Word>& words() { return words_; }

  private:
    Index size_ = 0;
    std::vector<Word> words_;
};

/** Packed row-major matrix over F2. */
class BitMatrix {
  public:
    BitMatrix() = default;

    BitMatrix(Index rows, Index cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          data_(static_cast<std::size_t>(rows * wpr_), 0)
    {
    }

    static BitMatrix identity(Index n);

    /** Matrix whose columns are the given vectors (all of length rows). */
    static BitMatrix from_columns(const std::vector<BitVector>& cols, Index rows);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    bool get(Index r, Index c) const
    {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(Index r, Index c, bool v)
    {
        Word mask = Word(1) << (c & 63);
        Word& w = data_[r * wpr_ + (c >> 6)];
        if (v)
            w |= mask;
        else
            w &= ~mask;
    }

    /** Row dst ^= row src, word-parallel. */
    void xor_rows(Index dst, Index src)
    {
        Word* d = data_.data() + dst * wpr_;
        const Word* s = data_.data() + src * wpr_;
        for (Index w = 0; w < wpr_; ++w)
            d[w] ^= s[w];
    }

    void swap_rows(Index a, Index b);

    /** First set column at or after `from` in row r, or npos. */
    Index row_first_set(Index r, Index from = 0) const;

    BitVector row(Index r) const;
    BitVector col(Index c) const;

    void set_row(Index r, const BitVector& v);

    /** y = M x. */
    BitVector apply(const BitVector& x) const;

    BitMatrix transposed() const;

    bool operator==(const BitMatrix& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    Index rows_ = 0;
    Index cols_ = 0;
    Index wpr_ = 0;
    std::vector<Word> data_;
};

/** Matrix product over F2. */
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);

/** Horizontal concatenation [a | b]. */
BitMatrix hcat(const BitMatrix& a, const BitMatrix& b);

/** Vertical concatenation [a ; b]. */
BitMatrix vcat(const BitMatrix& a, const BitMatrix& b);

struct Rref {
    BitMatrix mat;
    std::vector<Index> pivot_cols;
};

/** Reduced row echelon form with deterministic pivot order. */
Rref rref(BitMatrix m);

Index rank(BitMatrix m);

/**
 * Basis of the right kernel {x : m x = 0}.
 *
 * One basis vector per free column of the RREF; the basis vector for
 * free column f has a 1 at f and zeros at all other free columns.
 */
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/** A solution of m x = rhs, or nullopt if the system is inconsistent. */
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& rhs);

/** Solves m X = rhs column-wise; nullopt if any column is inconsistent. */
std::optional<BitMatrix> solve_many(const BitMatrix& m, const BitMatrix& rhs);

std::optional<BitMatrix> inverse(const BitMatrix& m);

/**
 * Standard basis vectors of F2^ambient_dim that are independent of the
 * column span of `columns`, appended in ascending index order.  The
 * returned vectors extend the span to the full space.
 */
std::vector<BitVector> image_complement_basis(const BitMatrix& columns, Index ambient_dim);

/**
 * Incremental column echelon over F2.
 *
 * Maintains a set of reduced columns with distinct pivot positions
 * (pivot = lowest set bit).  Insertion reduces the candidate against the
 * current set and either absorbs it (candidate was dependent) or stores
 * the residue as a new basis column.
 */
class ColumnEchelon {
  public:
    explicit ColumnEchelon(Index dim) : slot_of_pivot_(dim, npos) {}

    /**
     * Reduces v in place against the stored basis.  Returns the pivot of
     * the residue, or npos if v reduced to zero.
     */
    Index reduce(BitVector& v) const;

    /**
     * Reduces v and stores the residue if nonzero.
     * Returns true if the rank grew.
     */
    bool insert(BitVector v);

    Index rank() const { return Index(basis_.size()); }
    const std::vector<BitVector>& basis() const { return basis_; }

  private:
    std::vector<BitVector> basis_;
    std::vector<Index> slot_of_pivot_;
};

} // namespace zzl::f2

#endif
