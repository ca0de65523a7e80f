#include "orbindex/matrix.hpp"

#include <sstream>

namespace orbindex {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cyclotomic(1);
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix shape mismatch");
    CMatrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix shape mismatch");
    CMatrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix shape mismatch");
    CMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) += at(i, k) * o.at(k, j);
            }
        }
    return m;
}

CMatrix CMatrix::operator*(const Cyclotomic& c) const {
    CMatrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * c;
    return m;
}

CMatrix CMatrix::operator-() const {
    CMatrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
    return m;
}

bool CMatrix::operator==(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

CMatrix CMatrix::conj() const {
    CMatrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i].conj();
    return m;
}

namespace {

struct Gauss {
    CMatrix m;
    std::vector<int> pivot_col;  // per pivot row

    explicit Gauss(const CMatrix& a) : m(a) { run(); }

    void run() {
        int r = 0;
        for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
            int piv = -1;
            for (int i = r; i < m.rows(); ++i)
                if (!m.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            if (piv != r)
                for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
            Cyclotomic inv = m.at(r, c).inverse();
            for (int j = 0; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
            for (int i = 0; i < m.rows(); ++i) {
                if (i == r || m.at(i, c).is_zero()) continue;
                Cyclotomic f = m.at(i, c);
                for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
            }
            pivot_col.push_back(c);
            ++r;
        }
    }

    long rank() const { return static_cast<long>(pivot_col.size()); }
};

}  // namespace

long CMatrix::rank() const { return Gauss(*this).rank(); }

Cyclotomic CMatrix::det() const {
    if (rows_ != cols_) throw domain_error("determinant of non-square matrix");
    CMatrix w = *this;
    Cyclotomic d(1);
    for (int c = 0; c < cols_; ++c) {
        int piv = -1;
        for (int i = c; i < rows_; ++i)
            if (!w.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return Cyclotomic();
        if (piv != c) {
            for (int j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(c, j));
            d = -d;
        }
        d *= w.at(c, c);
        Cyclotomic inv = w.at(c, c).inverse();
        for (int i = c + 1; i < rows_; ++i) {
            if (w.at(i, c).is_zero()) continue;
            Cyclotomic f = w.at(i, c) * inv;
            for (int j = c; j < cols_; ++j) w.at(i, j) -= f * w.at(c, j);
        }
    }
    return d;
}

CMatrix CMatrix::inverse() const {
    if (rows_ != cols_) throw domain_error("inverse of non-square matrix");
    CMatrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Cyclotomic(1);
    }
    Gauss g(aug);
    if (g.rank() < rows_) throw domain_error("matrix is singular");
    for (size_t r = 0; r < g.pivot_col.size(); ++r)
        if (g.pivot_col[r] != static_cast<int>(r)) throw domain_error("matrix is singular");
    CMatrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) inv.at(i, j) = g.m.at(i, cols_ + j);
    return inv;
}

CMatrix CMatrix::kernel() const {
    Gauss g(*this);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : g.pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    CMatrix k(cols_, static_cast<int>(free_cols.size()));
    for (size_t fc = 0; fc < free_cols.size(); ++fc) {
        int c = free_cols[fc];
        k.at(c, static_cast<int>(fc)) = Cyclotomic(1);
        for (size_t r = 0; r < g.pivot_col.size(); ++r)
            k.at(g.pivot_col[r], static_cast<int>(fc)) = -g.m.at(static_cast<int>(r), c);
    }
    return k;
}

CMatrix CMatrix::column_space() const {
    Gauss g(transpose());
    CMatrix b(cols_, static_cast<int>(g.pivot_col.size()));
    for (size_t r = 0; r < g.pivot_col.size(); ++r)
        for (int j = 0; j < cols_; ++j)
            b.at(j, static_cast<int>(r)) = g.m.at(static_cast<int>(r), j);
    return b;
}

CMatrix CMatrix::columns(const std::vector<int>& idx) const {
    CMatrix m(rows_, static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j)
        for (int i = 0; i < rows_; ++i) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return m;
}

CMatrix CMatrix::solve(const CMatrix& b) const {
    if (b.rows() != rows_) throw domain_error("solve: shape mismatch");
    CMatrix aug(rows_, cols_ + b.cols());
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (int j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
    }
    Gauss g(aug);
    CMatrix x(cols_, b.cols());
    std::vector<int> row_of_col(static_cast<size_t>(cols_), -1);
    for (size_t r = 0; r < g.pivot_col.size(); ++r) {
        int c = g.pivot_col[r];
        if (c >= cols_) throw domain_error("solve: inconsistent system");
        row_of_col[static_cast<size_t>(c)] = static_cast<int>(r);
    }
    for (int c = 0; c < cols_; ++c) {
        if (row_of_col[static_cast<size_t>(c)] < 0)
            throw domain_error("solve: underdetermined system");
        for (int j = 0; j < b.cols(); ++j)
            x.at(c, j) = g.m.at(row_of_col[static_cast<size_t>(c)], cols_ + j);
    }
    return x;
}

CMatrix matvec_columns(const std::vector<std::vector<Cyclotomic>>& cols) {
    if (cols.empty()) return CMatrix(0, 0);
    CMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i)
            m.at(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
    return m;
}

std::string CMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[ ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << " ]\n";
    }
    return os.str();
}

}  // namespace orbindex
