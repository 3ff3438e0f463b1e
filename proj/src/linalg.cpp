#include "hyperloop/linalg.hpp"

#include <algorithm>
#include <map>

namespace hyperloop {

Vec zero_vec(const Ring& r, std::size_t n) { return Vec(n, Scalar::zero(r)); }

Mat zero_mat(const Ring& r, std::size_t rows, std::size_t cols) { return Mat(rows, zero_vec(r, cols)); }

Mat identity_mat(const Ring& r, std::size_t n) {
    Mat m = zero_mat(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar::one(r);
    return m;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<std::size_t> rref(Mat& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[r], a[piv]);
        Scalar inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j)
            if (!a[r][j].is_zero()) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(Mat a) { return rref(a).size(); }

Mat nullspace(const Mat& a0, std::size_t cols) {
    Mat a = a0;
    std::vector<std::size_t> piv = rref(a);
    const Ring* ring = nullptr;
    if (!a.empty() && cols > 0) ring = &a[0][0].ring();
    Mat out;
    if (cols == 0) return out;
    if (ring == nullptr) {
        // no rows: the whole space
        fail(ErrorCode::Internal, "nullspace of an empty matrix needs a ring");
    }
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec v = zero_vec(*ring, cols);
        v[f] = Scalar::one(*ring);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

Mat inverse(const Mat& a) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    const Ring& r = a[0][0].ring();
    Mat aug(n, zero_vec(r, 2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = Scalar::one(r);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorCode::Internal, "singular matrix");
    Mat inv(n, zero_vec(r, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    const Ring& r = a[0][0].ring();
    Mat c(a.size(), zero_vec(r, b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Mat transpose(const Mat& a, std::size_t cols) {
    if (a.empty()) return Mat(cols);
    Mat t(cols, zero_vec(a[0][0].ring(), a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    const Ring& r = v.empty() ? Ring::char0() : v[0].ring();
    Vec out = zero_vec(r, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!a[i][j].is_zero() && !v[j].is_zero()) out[i] += a[i][j] * v[j];
    return out;
}

// ---------------------------------------------------------------------------

Vec Subspace::reduce(Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Scalar& c = v[pivots_[i]];
        if (c.is_zero()) continue;
        Scalar f = c;
        const Vec& row = rows_[i];
        for (std::size_t j = pivots_[i]; j < n_; ++j)
            if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool Subspace::add(const Vec& v0) {
    Vec v = reduce(v0);
    std::size_t p = 0;
    while (p < n_ && v[p].is_zero()) ++p;
    if (p == n_) return false;
    Scalar inv = v[p].inverse();
    for (std::size_t j = p; j < n_; ++j)
        if (!v[j].is_zero()) v[j] *= inv;
    // keep rows reduced against the new pivot so reduce() stays one pass
    for (auto& row : rows_) {
        if (row[p].is_zero()) continue;
        Scalar f = row[p];
        for (std::size_t j = p; j < n_; ++j)
            if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

// ---------------------------------------------------------------------------

SparseMatrix SparseMatrix::identity(const Ring& r, std::size_t n) {
    SparseMatrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.col_[i].emplace_back(i, Scalar::one(r));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const Ring& r, const Mat& a, std::size_t cols) {
    SparseMatrix m(r, a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!a[i][j].is_zero()) m.col_[j].emplace_back(i, a[i][j]);
    return m;
}

bool SparseMatrix::empty() const {
    for (const auto& c : col_)
        if (!c.empty()) return false;
    return true;
}

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
    if (v.is_zero()) return;
    auto& col = col_[c];
    for (auto it = col.begin(); it != col.end(); ++it) {
        if (it->first == r) {
            it->second += v;
            if (it->second.is_zero()) col.erase(it);
            return;
        }
    }
    col.emplace_back(r, v);
}

Vec SparseMatrix::apply(const Vec& v) const {
    Vec out = zero_vec(*ring_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero()) continue;
        for (const auto& [r, a] : col_[c]) out[r] += a * v[c];
    }
    return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& b) const {
    SparseMatrix out(*ring_, rows_, b.cols_);
    Vec acc = zero_vec(*ring_, rows_);
    std::vector<char> touched(rows_, 0);
    std::vector<std::size_t> list;
    for (std::size_t c = 0; c < b.cols_; ++c) {
        list.clear();
        for (const auto& [k, bv] : b.col_[c]) {
            for (const auto& [r, av] : col_[k]) {
                if (!touched[r]) {
                    touched[r] = 1;
                    list.push_back(r);
                }
                acc[r] += av * bv;
            }
        }
        std::sort(list.begin(), list.end());
        for (auto r : list) {
            if (!acc[r].is_zero()) out.col_[c].emplace_back(r, acc[r]);
            acc[r] = Scalar::zero(*ring_);
            touched[r] = 0;
        }
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& b) const {
    SparseMatrix out = *this;
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : b.col_[c]) out.add(r, c, v);
    return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
    SparseMatrix out(*ring_, rows_, cols_);
    if (s.is_zero()) return out;
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : col_[c]) out.col_[c].emplace_back(r, v * s);
    return out;
}

SparseMatrix SparseMatrix::kron(const SparseMatrix& b) const {
    SparseMatrix out(*ring_, rows_ * b.rows_, cols_ * b.cols_);
    for (std::size_t c1 = 0; c1 < cols_; ++c1)
        for (std::size_t c2 = 0; c2 < b.cols_; ++c2) {
            auto& col = out.col_[c1 * b.cols_ + c2];
            for (const auto& [r1, v1] : col_[c1])
                for (const auto& [r2, v2] : b.col_[c2]) col.emplace_back(r1 * b.rows_ + r2, v1 * v2);
        }
    return out;
}

Mat SparseMatrix::dense() const {
    Mat m = zero_mat(*ring_, rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : col_[c]) m[r][c] = v;
    return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::map<std::size_t, const Scalar*> a;
        for (const auto& [r, v] : col_[c])
            if (!v.is_zero()) a[r] = &v;
        std::size_t count = 0;
        for (const auto& [r, v] : o.col_[c]) {
            if (v.is_zero()) continue;
            ++count;
            auto it = a.find(r);
            if (it == a.end() || !(*it->second == v)) return false;
        }
        if (count != a.size()) return false;
    }
    return true;
}

void SparseMatrix::prune() {
    for (auto& c : col_)
        c.erase(std::remove_if(c.begin(), c.end(), [](const auto& e) { return e.second.is_zero(); }), c.end());
}

}  // namespace hyperloop
