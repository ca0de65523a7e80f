#pragma once

#include <functional>
#include <map>

#include "orbindex/symplectic.hpp"
#include "orbindex/weyl.hpp"

namespace orbindex {

// Linear combination of elementary tensors a_0 (x) ... (x) a_p of Weyl
// elements, all of the same tensor degree p.
struct Chain {
    int degree = 0;  // p: tuples have p+1 slots
    std::vector<std::pair<Laurent, std::vector<WeylElement>>> summands;

    static Chain single(const std::vector<WeylElement>& tuple, const Laurent& c = Laurent(1));
    Chain operator+(const Chain& o) const;
    Chain operator*(const Laurent& c) const;
    bool is_zero() const { return summands.empty(); }
    void normalize();  // merge equal tuples, drop zero scalars
};

using Automorphism = std::function<WeylElement(const WeylElement&)>;

// Chain-level twisted Hochschild boundary:
//   b(a_0 (x) ... (x) a_p) = sum_i (-1)^i a_0 (x)..(a_i * a_{i+1})..(x) a_p
//                          + (-1)^p (gamma(a_p) * a_0) (x) a_1 (x)..(x) a_{p-1}
// with * the Moyal product. Satisfies b(b(c)) = 0.
Chain twisted_boundary(const Chain& c, const Automorphism& gamma);

// The alternating cycle over the first 2k generators taken as the fixed-space
// basis (p_1..p_k, q_1..q_k) inside n >= k pairs:
//   sum over permutations s of sgn(s) 1 (x) y_{s(1)} (x) ... (x) y_{s(2k)}.
Chain fundamental_cycle(int k, int n, uint32_t complex_mask = 0);

// Homology dimensions of the twisted Koszul complex of the polynomial algebra
// K[y_1..y_2n] with differential (y_i - gamma(y_i)) contraction, sliced by
// (exterior degree p, total internal degree D = polynomial degree + p), for
// all D <= degree_bound. Exact ranks over the cyclotomic field.
std::map<std::pair<int, int>, long> koszul_homology_dims(const SymplecticMap& g, int degree_bound);

// The boundary matrix of one slice, from exterior degree p to p - 1 at fixed
// total degree. Consecutive matrices compose to zero.
CMatrix koszul_slice_matrix(const SymplecticMap& g, int exterior_degree, int total_degree);

// Independent count: dimension of the degree-D part of the Kaehler p-forms of
// a polynomial ring in 2k variables: binom(2k, p) * #monomials of degree D-p.
std::map<std::pair<int, int>, long> hkr_dims(int k, int degree_bound);

}  // namespace orbindex
