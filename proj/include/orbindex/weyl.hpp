#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "orbindex/laurent.hpp"

namespace orbindex {

// Exponent multi-index over the 2n ordered generators (p_1..p_n, q_1..q_n).
// On a pair flagged complex the p-slot holds z_j and the q-slot holds zb_j,
// with z = q + i p and zb = q - i p (unnormalized).
using Mono = std::vector<uint16_t>;

struct GradedLex {
    bool operator()(const Mono& a, const Mono& b) const {
        long da = 0, db = 0;
        for (auto x : a) da += x;
        for (auto x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse polynomial in the symplectic generators with Laurent-h coefficients.
// Immutable in spirit: all operations return new values.
class WeylElement {
  public:
    WeylElement() : n_(0), cmask_(0) {}
    explicit WeylElement(int n, uint32_t complex_mask = 0) : n_(n), cmask_(complex_mask) {}

    static WeylElement scalar(int n, const Laurent& c, uint32_t complex_mask = 0);
    static WeylElement one(int n, uint32_t complex_mask = 0) {
        return scalar(n, Laurent(1), complex_mask);
    }
    // Single generator: index g in [0, 2n): 0..n-1 are p_i (or z_i), n..2n-1 are q_i (or zb_i).
    static WeylElement generator(int n, int g, uint32_t complex_mask = 0);
    static WeylElement monomial(int n, const Mono& m, const Laurent& c, uint32_t complex_mask = 0);

    int pairs() const { return n_; }
    uint32_t complex_mask() const { return cmask_; }
    bool pair_complex(int j) const { return (cmask_ >> j) & 1u; }
    const std::map<Mono, Laurent, GradedLex>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_scalar() const;
    Laurent scalar_value() const;  // requires is_scalar()
    // Coefficient of the constant monomial.
    Laurent constant_term() const;
    long degree() const;  // total polynomial degree; -1 for zero

    WeylElement operator-() const;
    WeylElement operator+(const WeylElement& o) const;
    WeylElement operator-(const WeylElement& o) const;
    WeylElement& operator+=(const WeylElement& o) { return *this = *this + o; }
    WeylElement& operator-=(const WeylElement& o) { return *this = *this - o; }

    WeylElement operator*(const Laurent& c) const;
    WeylElement operator*(const Rational& r) const { return *this * Laurent(r); }
    WeylElement operator*(const Cyclotomic& c) const { return *this * Laurent(c); }

    bool operator==(const WeylElement& o) const;
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    // Commutative polynomial product (the h-degree-0 part of the star product).
    WeylElement mul(const WeylElement& o) const;

    // Partial derivative with respect to generator g.
    WeylElement derivative(int g) const;

    // Homogeneous part of polynomial degree d.
    WeylElement graded_part(long d) const;

    // Substitute each generator by an arbitrary element (multiplicatively
    // extended, commutative). All images must share pairs/basis; the result
    // basis is taken from `images`.
    static WeylElement substitute(const WeylElement& a, const std::vector<WeylElement>& images);

    std::string str() const;

  private:
    int n_;
    uint32_t cmask_;
    std::map<Mono, Laurent, GradedLex> t_;

    void add_term(const Mono& m, const Laurent& c);
    void check_compatible(const WeylElement& o) const;
    friend WeylElement star(const WeylElement&, const WeylElement&);
    friend class WeylBuilder;
};

inline WeylElement operator*(const Laurent& c, const WeylElement& w) { return w * c; }

// Moyal product: exact, terminating expansion of m(exp(h alpha)(a (x) b)).
// On real pairs one application of alpha contributes dp(a) dq(b) - dq(a) dp(b);
// on complex pairs 2i (dz(a) dzb(b) - dzb(a) dz(b)). [p, q] = 2h, [z, zb] = 4ih.
WeylElement star(const WeylElement& a, const WeylElement& b);

// (1/2h)(h * a - a * h) for a quadratic h-free Hamiltonian; on generators this
// is the classical Hamiltonian vector field, and it integrates to the linear
// symplectic action.
WeylElement sp_derivation(const WeylElement& h, const WeylElement& a);

// Star commutator x*y - y*x.
WeylElement star_commutator(const WeylElement& a, const WeylElement& b);

// Rewrite designated real pairs in complex coordinates z = q + ip, zb = q - ip
// and back. Round-trips exactly; requires i in the scalar field (level 4).
WeylElement to_complex_basis(const WeylElement& a, uint32_t pairs_mask);
WeylElement to_real_basis(const WeylElement& a, uint32_t pairs_mask);

// The matrix of the linear map sp_derivation(h, -) on the generator span,
// entries M[a][b] with D_h(x_b) = sum_a M[a][b] x_a. Requires h quadratic.
std::vector<std::vector<Laurent>> sp_matrix(const WeylElement& h);

}  // namespace orbindex
