#pragma once

#include <map>
#include <memory>

#include "orbindex/hochschild.hpp"

namespace orbindex {

// Polynomial in the simplex variables u_1..u_m with Laurent coefficients.
// u_0 is identically zero and never stored.
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(int vars) : vars_(vars) {}
    static UPoly constant(int vars, const Laurent& c);
    // 2 u_i - 2 u_j + 1 for slot indices i < j (0-based, u_0 = 0).
    static UPoly pair_weight(int vars, int i, int j);

    int vars() const { return vars_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<std::vector<uint8_t>, Laurent>& terms() const { return t_; }

    UPoly operator+(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Laurent& c) const;
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }

    // Exact integral over the ordered region 0 <= u_1 <= ... <= u_m <= 1.
    Laurent simplex_integral() const;

  private:
    int vars_ = 0;
    std::map<std::vector<uint8_t>, Laurent> t_;

    void add(const std::vector<uint8_t>& e, const Laurent& c);
};

// Exact integral of the monomial u_1^{a_1} ... u_m^{a_m} over the ordered
// region; the building block of the above.
Rational simplex_monomial_integral(const std::vector<uint8_t>& exponents);

// Sum of tensors with u-polynomial coefficients; the working representation
// inside the cocycle pipeline. Slots live in the fixed-part Weyl algebra.
struct SlotTensor {
    int arity = 0;  // number of slots
    int uvars = 0;
    struct Term {
        UPoly coeff;
        std::vector<WeylElement> slots;
    };
    std::vector<Term> terms;

    static SlotTensor from_tuple(const std::vector<WeylElement>& tuple, int uvars);
    bool is_zero() const { return terms.empty(); }
};

// One application of the two-slot Poisson tensor with the 1/2 prefactor:
//   (1/2) sum_l [ dp_l(i) dq_l(j) - dq_l(i) dp_l(j) ].
SlotTensor alpha_pair(const SlotTensor& t, int i, int j);

// Alternating slotwise derivative sum over S_{2k}; arity must be 2k + 1.
SlotTensor pi_operator(const SlotTensor& t, int k);

// The degree-2k Hochschild cocycle on the Weyl algebra of k pairs:
//   tau(a) = mu ( integral over the ordered simplex of
//                 prod_{i<j} exp(h (2u_i - 2u_j + 1) alpha_ij) pi(a) ).
// Memoizes monomial tuples; not shareable across threads.
class CocycleEvaluator {
  public:
    explicit CocycleEvaluator(int k);

    int k() const { return k_; }
    // tuple of 2k+1 elements of the k-pair Weyl algebra, real basis
    Laurent operator()(const std::vector<WeylElement>& tuple);
    Laurent eval_chain(const Chain& c);
    // memoized evaluation on a tuple of monic monomials
    Laurent eval_monomials(const std::vector<Mono>& monos);

  private:
    int k_;
    std::map<std::vector<uint16_t>, Laurent> memo_;
};

// Data of the twisted trace on the normal Weyl factor: eigenvalues lambda_j,
// Cayley diagonal kappa_j = (1+conj lambda)/(1-conj lambda), and the
// normalizer prod (1 - conj lambda_j)^{-1}.
struct TwistedTraceData {
    std::vector<Cyclotomic> lambdas;
    std::vector<Cyclotomic> kappas;
    Cyclotomic normalizer;

    static TwistedTraceData from_eigenvalues(const std::vector<Cyclotomic>& lambdas);
    int pairs() const { return static_cast<int>(lambdas.size()); }
};

// tr(a) = normalizer * constant term of exp(-2i h sum_j kappa_j dz_j dzb_j) a
// for a on the normal pairs in complex coordinates. Exact closed form.
Laurent twisted_trace(const TwistedTraceData& d, const WeylElement& a);

// The twisted automorphism on the normal pairs: z_j -> lambda_j z_j.
WeylElement twisted_action(const TwistedTraceData& d, const WeylElement& a);

// The degree-2k twisted Hochschild cocycle on the (k + m)-pair Weyl algebra
// with pairs 0..k-1 fixed (real) and pairs k..k+m-1 normal (complex):
// external product of the fixed-part cocycle with the twisted trace.
class TwistedCocycle {
  public:
    TwistedCocycle(int k, TwistedTraceData trace);

    int k() const { return k_; }
    int normal_pairs() const { return trace_.pairs(); }
    int total_pairs() const { return k_ + trace_.pairs(); }
    uint32_t complex_mask() const;
    const TwistedTraceData& trace() const { return trace_; }

    // evaluate on a tuple of 2k+1 elements of the mixed-basis Weyl algebra
    Laurent operator()(const std::vector<WeylElement>& tuple);
    Laurent eval_chain(const Chain& c);

    // the automorphism gamma: trivial on fixed pairs, diagonal on normal pairs
    WeylElement gamma(const WeylElement& a) const;

  private:
    int k_;
    TwistedTraceData trace_;
    CocycleEvaluator tau_;
    std::map<std::vector<uint16_t>, Laurent> star_memo_;

    Laurent star_trace(const std::vector<Mono>& normal_monos);
};

// Twisted Hochschild coboundary of a cochain given as a callable, evaluated
// on one tuple: sum_i (-1)^i f(..a_i a_{i+1}..) + (-1)^{p+1} f(gamma(a_{p+1}) a_0, ...).
Laurent cochain_coboundary(const std::function<Laurent(const std::vector<WeylElement>&)>& f,
                           const Automorphism& gamma, const std::vector<WeylElement>& tuple);

}  // namespace orbindex
