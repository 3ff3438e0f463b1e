#pragma once

#include <utility>
#include <vector>

#include "hyperloop/coeffring.hpp"

namespace hyperloop {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // row-major

Vec zero_vec(const Ring& r, std::size_t n);
Mat zero_mat(const Ring& r, std::size_t rows, std::size_t cols);
Mat identity_mat(const Ring& r, std::size_t n);
bool is_zero_vec(const Vec& v);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& a);
std::size_t rank(Mat a);
/// Basis of {x : A x = 0} (A has `cols` columns).
Mat nullspace(const Mat& a, std::size_t cols);
/// Inverse of a square matrix; throws Internal if singular.
Mat inverse(const Mat& a);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a, std::size_t cols);
Vec mat_vec(const Mat& a, const Vec& v);

/// Incrementally maintained subspace of F^n with an echelon basis.
class Subspace {
public:
    Subspace(const Ring& r, std::size_t n) : ring_(&r), n_(n) {}
    /// Adds v; returns true if the dimension grew.
    bool add(const Vec& v);
    bool contains(const Vec& v) const;
    Vec reduce(Vec v) const;
    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }
    const std::vector<Vec>& basis() const { return rows_; }

private:
    const Ring* ring_;
    std::size_t n_;
    std::vector<Vec> rows_;            // pivot entry normalized to 1
    std::vector<std::size_t> pivots_;  // pivot column of each row
};

/// Sparse matrix over a field stored by columns.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(const Ring& r, std::size_t rows, std::size_t cols)
        : ring_(&r), rows_(rows), cols_(cols), col_(cols) {}

    static SparseMatrix identity(const Ring& r, std::size_t n);
    static SparseMatrix from_dense(const Ring& r, const Mat& m, std::size_t cols);

    const Ring& ring() const { return *ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const;
    std::size_t nnz() const;

    /// Adds v to entry (r, c); entries are kept unique per (r, c).
    void add(std::size_t r, std::size_t c, const Scalar& v);
    const std::vector<std::pair<std::size_t, Scalar>>& column(std::size_t c) const { return col_[c]; }

    Vec apply(const Vec& v) const;
    SparseMatrix operator*(const SparseMatrix& b) const;
    SparseMatrix operator+(const SparseMatrix& b) const;
    SparseMatrix scaled(const Scalar& s) const;
    SparseMatrix kron(const SparseMatrix& b) const;
    Mat dense() const;
    bool operator==(const SparseMatrix& o) const;

private:
    void prune();
    const Ring* ring_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> col_;
};

}  // namespace hyperloop
