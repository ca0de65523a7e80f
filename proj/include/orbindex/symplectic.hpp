#pragma once

#include "orbindex/matrix.hpp"
#include "orbindex/weyl.hpp"

namespace orbindex {

// Finite-order linear symplectomorphism of R^{2n}, stored as its matrix M on
// the generator span in the ordering (p_1..p_n, q_1..q_n): the induced algebra
// automorphism substitutes x_b -> sum_a M[a][b] x_a, so that composition of
// automorphisms matches matrix multiplication.
class SymplecticMap {
  public:
    SymplecticMap(int n, CMatrix m);

    static SymplecticMap identity(int n);
    static SymplecticMap minus_one(int n);
    // Rotation acting on one pair with eigenvalue lambda on z = q + ip,
    // identity elsewhere. lambda must be a root of unity.
    static SymplecticMap rotation(int n, int pair, const Cyclotomic& lambda);

    int pairs() const { return n_; }
    const CMatrix& matrix() const { return m_; }
    long order() const { return order_; }
    bool is_identity() const { return m_ == CMatrix::identity(2 * n_); }

    SymplecticMap operator*(const SymplecticMap& o) const;
    SymplecticMap inverse() const;
    bool operator==(const SymplecticMap& o) const { return n_ == o.n_ && m_ == o.m_; }

    // The induced Weyl algebra automorphism (real basis only).
    WeylElement apply(const WeylElement& a) const;

  private:
    int n_;
    CMatrix m_;
    long order_;
};

// Standard symplectic Gram matrix J with J[p_i][q_i] = 1 = -J[q_i][p_i].
CMatrix symplectic_form(int n);

// Adapted data of a finite-order symplectomorphism: the fixed space
// ker(1 - M), and per normal complex direction an eigenpair (v_j, w_j) with
// M v_j = lambda_j v_j, M w_j = conj(lambda_j) w_j, normalized so that the
// pairing <v_j, w_j> = 2i matches z = q + ip. The lambda_j are the canonical
// normal eigenvalues (the choice within each conjugate pair is pinned by
// positivity of <v, conj v>/2i).
struct FixedDecomposition {
    int n = 0;
    int k = 0;                         // half-dimension of the fixed space
    CMatrix fixed_basis;               // 2n x 2k
    std::vector<Cyclotomic> eigenvalues;  // n - k entries, none equal 1
    CMatrix z_basis;                   // 2n x (n-k), columns v_j
    CMatrix zbar_basis;                // 2n x (n-k), columns w_j
};

FixedDecomposition fixed_decomposition(const SymplecticMap& g);

// (1 + A)(1 - A)^{-1} for A the matrix of g^{-1} on its normal part, written
// in the basis given by `normal_basis` columns. Formed directly so that
// eigenvalue -1 of g is regular; eigenvalue 1 is rejected.
CMatrix cayley_inverse(const SymplecticMap& g, const CMatrix& normal_basis);

// Diagonal entries (1 + conj(lambda)) / (1 - conj(lambda)).
std::vector<Cyclotomic> cayley_diagonal(const std::vector<Cyclotomic>& eigenvalues);

// Finite subgroup of Sp_{2n}, closed under products and inverses.
class FiniteSubgroup {
  public:
    explicit FiniteSubgroup(const std::vector<SymplecticMap>& generators);

    int pairs() const { return n_; }
    const std::vector<SymplecticMap>& elements() const { return elems_; }
    size_t size() const { return elems_.size(); }
    int identity_index() const { return id_index_; }

    int index_of(const SymplecticMap& g) const;  // -1 if absent
    int mul(int a, int b) const { return mul_table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int inv(int a) const { return inv_table_[static_cast<size_t>(a)]; }

    // conjugacy class id per element, classes numbered 0..num_classes-1
    const std::vector<int>& class_of() const { return class_of_; }
    int num_classes() const { return num_classes_; }

  private:
    int n_;
    std::vector<SymplecticMap> elems_;
    std::vector<std::vector<int>> mul_table_;
    std::vector<int> inv_table_;
    std::vector<int> class_of_;
    int num_classes_ = 0;
    int id_index_ = -1;
};

// For each even p, the number of conjugacy classes with p-dimensional fixed
// space. Counts sum to the number of conjugacy classes.
std::map<int, long> fixed_dimension_census(const FiniteSubgroup& g);

}  // namespace orbindex
