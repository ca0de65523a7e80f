#pragma once

#include <vector>

#include "orbindex/cyclotomic.hpp"

namespace orbindex {

// Dense matrix over the cyclotomic field. Exact arithmetic; desk-scale sizes.
class CMatrix {
  public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Cyclotomic& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    Cyclotomic& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(const Cyclotomic& c) const;
    CMatrix operator-() const;
    bool operator==(const CMatrix& o) const;

    CMatrix transpose() const;
    CMatrix conj() const;  // entrywise complex conjugation
    // Matrix inverse; throws domain_error if singular.
    CMatrix inverse() const;
    Cyclotomic det() const;
    long rank() const;
    // Basis of the right kernel, as columns.
    CMatrix kernel() const;
    // Basis of the column space, as columns.
    CMatrix column_space() const;

    // Columns from the given list.
    CMatrix columns(const std::vector<int>& idx) const;
    // Solve A x = b for each column of b; throws if inconsistent or underdetermined.
    CMatrix solve(const CMatrix& b) const;

    std::string str() const;

  private:
    int rows_, cols_;
    std::vector<Cyclotomic> e_;
};

CMatrix matvec_columns(const std::vector<std::vector<Cyclotomic>>& cols);

}  // namespace orbindex
