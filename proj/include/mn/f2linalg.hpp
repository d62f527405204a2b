#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mn {

/// Dense bit-vector over GF(2), packed into 64-bit words.
class F2Vec {
public:
    F2Vec() : len_(0) {}
    explicit F2Vec(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    F2Vec& operator^=(const F2Vec& o) {
        if (o.len_ != len_) throw std::invalid_argument("F2Vec: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend F2Vec operator^(F2Vec a, const F2Vec& b) { a ^= b; return a; }

    bool is_zero() const {
        for (auto w : w_) if (w) return false;
        return true;
    }
    bool operator==(const F2Vec& o) const { return len_ == o.len_ && w_ == o.w_; }

    /// parity of the AND with another vector (GF(2) dot product)
    bool dot(const F2Vec& o) const {
        if (o.len_ != len_) throw std::invalid_argument("F2Vec: length mismatch");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return __builtin_parityll(acc);
    }

    int lowest_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

private:
    std::size_t len_;
    std::vector<std::uint64_t> w_;
};

/// Rectangular matrix over GF(2); rows share a common length.
class F2Matrix {
public:
    F2Matrix() : cols_(0) {}
    F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vec(cols)) {}
    explicit F2Matrix(std::vector<F2Vec> rows, std::size_t cols)
        : cols_(cols), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (r.size() != cols_) throw std::invalid_argument("F2Matrix: ragged rows");
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    F2Vec& row(std::size_t i) { return rows_[i]; }
    const F2Vec& row(std::size_t i) const { return rows_[i]; }
    bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool b) { rows_[i].set(j, b); }
    void append_row(F2Vec v) {
        if (v.size() != cols_) throw std::invalid_argument("F2Matrix: row length mismatch");
        rows_.push_back(std::move(v));
    }
    bool operator==(const F2Matrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

    F2Matrix transpose() const {
        F2Matrix t(cols_, rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (rows_[i].get(j)) t.set(j, i, true);
        return t;
    }

    /// matrix * column vector
    F2Vec apply(const F2Vec& x) const {
        if (x.size() != cols_) throw std::invalid_argument("F2Matrix::apply: size mismatch");
        F2Vec y(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].dot(x)) y.set(i, true);
        return y;
    }

private:
    std::size_t cols_;
    std::vector<F2Vec> rows_;
};

/// In-place reduced row echelon form. Returns (rref, rank); zero rows of
/// the input are kept at the bottom of the rref.
inline std::pair<F2Matrix, std::size_t> row_reduce(F2Matrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && !m.get(piv, col)) ++piv;
        if (piv == m.rows()) continue;
        std::swap(m.row(rank), m.row(piv));
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != rank && m.get(i, col)) m.row(i) ^= m.row(rank);
        ++rank;
    }
    return {std::move(m), rank};
}

/// Canonically represented subspace of GF(2)^len: basis stored as a
/// reduced row echelon matrix with no zero rows, so equal subspaces
/// compare equal structurally.
class F2Subspace {
public:
    F2Subspace() = default;
    explicit F2Subspace(std::size_t ambient) : basis_(0, ambient) {}

    static F2Subspace from_generators(const F2Matrix& gens) {
        auto [rref, rank] = row_reduce(gens);
        F2Subspace s(gens.cols());
        for (std::size_t i = 0; i < rank; ++i) s.basis_.append_row(rref.row(i));
        return s;
    }
    static F2Subspace full(std::size_t ambient) {
        F2Matrix id(ambient, ambient);
        for (std::size_t i = 0; i < ambient; ++i) id.set(i, i, true);
        F2Subspace s(ambient);
        s.basis_ = std::move(id);
        return s;
    }

    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const F2Matrix& basis() const { return basis_; }

    bool contains(F2Vec v) const {
        if (v.size() != ambient()) throw std::invalid_argument("F2Subspace: ambient mismatch");
        reduce(v);
        return v.is_zero();
    }

    /// reduce v modulo the subspace to the canonical coset representative
    void reduce(F2Vec& v) const {
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            int p = basis_.row(i).lowest_set();
            if (p >= 0 && v.get(static_cast<std::size_t>(p))) v ^= basis_.row(i);
        }
    }

    bool operator==(const F2Subspace& o) const { return basis_ == o.basis_; }

    /// all 2^dim member vectors, in Gray-free binary order of coefficients
    std::vector<F2Vec> enumerate() const {
        if (dim() > 20) throw std::length_error("F2Subspace::enumerate: too large");
        std::size_t n = std::size_t(1) << dim();
        std::vector<F2Vec> out;
        out.reserve(n);
        for (std::size_t mask = 0; mask < n; ++mask) {
            F2Vec v(ambient());
            for (std::size_t i = 0; i < dim(); ++i)
                if ((mask >> i) & 1) v ^= basis_.row(i);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    F2Matrix basis_;
};

inline F2Subspace subspace_sum(const F2Subspace& a, const F2Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace_sum: ambient mismatch");
    F2Matrix gens(0, a.ambient());
    for (std::size_t i = 0; i < a.dim(); ++i) gens.append_row(a.basis().row(i));
    for (std::size_t i = 0; i < b.dim(); ++i) gens.append_row(b.basis().row(i));
    return F2Subspace::from_generators(gens);
}

/// Zassenhaus: reduce [a|a; b|0]; rows with zero left half carry the
/// intersection in their right half.
inline F2Subspace subspace_intersect(const F2Subspace& a, const F2Subspace& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("subspace_intersect: ambient mismatch");
    std::size_t n = a.ambient();
    F2Matrix z(0, 2 * n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        F2Vec r(2 * n);
        for (std::size_t j = 0; j < n; ++j)
            if (a.basis().get(i, j)) { r.set(j, true); r.set(n + j, true); }
        z.append_row(std::move(r));
    }
    for (std::size_t i = 0; i < b.dim(); ++i) {
        F2Vec r(2 * n);
        for (std::size_t j = 0; j < n; ++j)
            if (b.basis().get(i, j)) r.set(j, true);
        z.append_row(std::move(r));
    }
    auto [rref, rank] = row_reduce(std::move(z));
    F2Matrix gens(0, n);
    for (std::size_t i = 0; i < rank; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (rref.get(i, j)) left_zero = false;
        if (!left_zero) continue;
        F2Vec r(n);
        for (std::size_t j = 0; j < n; ++j)
            if (rref.get(i, n + j)) r.set(j, true);
        gens.append_row(std::move(r));
    }
    return F2Subspace::from_generators(gens);
}

inline bool subspace_equal(const F2Subspace& a, const F2Subspace& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("subspace_equal: ambient mismatch");
    return a == b;
}

/// Basis of the right null space of m.
inline F2Subspace kernel_basis(const F2Matrix& m) {
    auto [rref, rank] = row_reduce(m);
    std::size_t n = m.cols();
    std::vector<std::size_t> pivot_col(rank);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < rank; ++i) {
        pivot_col[i] = static_cast<std::size_t>(rref.row(i).lowest_set());
        is_pivot[pivot_col[i]] = true;
    }
    F2Matrix gens(0, n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        F2Vec v(n);
        v.set(f, true);
        for (std::size_t i = 0; i < rank; ++i)
            if (rref.get(i, f)) v.set(pivot_col[i], true);
        gens.append_row(std::move(v));
    }
    return F2Subspace::from_generators(gens);
}

/// Solve m x = v; returns the particular solution with free variables
/// zero, or nullopt when v is outside the column space.
inline std::optional<F2Vec> image_membership(const F2Matrix& m, const F2Vec& v) {
    if (v.size() != m.rows())
        throw std::invalid_argument("image_membership: dimension mismatch");
    std::size_t n = m.cols();
    F2Matrix aug(0, n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        F2Vec r(n + 1);
        for (std::size_t j = 0; j < n; ++j)
            if (m.get(i, j)) r.set(j, true);
        r.set(n, v.get(i));
        aug.append_row(std::move(r));
    }
    auto [rref, rank] = row_reduce(std::move(aug));
    F2Vec x(n);
    for (std::size_t i = 0; i < rank; ++i) {
        std::size_t p = static_cast<std::size_t>(rref.row(i).lowest_set());
        if (p == n) return std::nullopt;  // inconsistent row 0...0|1
        x.set(p, rref.get(i, n));
    }
    return x;
}

/// Image of the subspace under coordinate projection onto coords
/// (strictly increasing column indices).
inline F2Subspace restrict_coords(const F2Subspace& a, const std::vector<std::size_t>& coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= a.ambient())
            throw std::out_of_range("restrict_coords: index out of range");
        if (i > 0 && coords[i] <= coords[i - 1])
            throw std::invalid_argument("restrict_coords: coords must be strictly increasing");
    }
    F2Matrix gens(0, coords.size());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        F2Vec r(coords.size());
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (a.basis().get(i, coords[j])) r.set(j, true);
        gens.append_row(std::move(r));
    }
    return F2Subspace::from_generators(gens);
}

}  // namespace mn
