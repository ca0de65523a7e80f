#pragma once

#include "orbindex/cocycle.hpp"

namespace orbindex {

// N x N matrix with Weyl-algebra entries; the star product induces the
// matrix product.
class MatrixWeyl {
  public:
    MatrixWeyl() : size_(0) {}
    MatrixWeyl(int size, int pairs, uint32_t mask)
        : size_(size), e_(static_cast<size_t>(size) * size, WeylElement(pairs, mask)) {}

    static MatrixWeyl identity(int size, int pairs, uint32_t mask);
    static MatrixWeyl embed_scalar(int size, const WeylElement& a);  // a * Id
    static MatrixWeyl unit(int size, int r, int c, const WeylElement& a);  // a * E_rc

    int size() const { return size_; }
    int pairs() const { return e_.empty() ? 0 : e_[0].pairs(); }
    uint32_t mask() const { return e_.empty() ? 0 : e_[0].complex_mask(); }

    const WeylElement& at(int r, int c) const { return e_[static_cast<size_t>(r) * size_ + c]; }
    WeylElement& at(int r, int c) { return e_[static_cast<size_t>(r) * size_ + c]; }

    MatrixWeyl operator+(const MatrixWeyl& o) const;
    MatrixWeyl operator-(const MatrixWeyl& o) const;
    MatrixWeyl operator-() const;
    MatrixWeyl operator*(const Laurent& c) const;
    bool operator==(const MatrixWeyl& o) const { return size_ == o.size_ && e_ == o.e_; }
    bool is_zero() const;

    // matrix product with star products of entries
    MatrixWeyl star_mul(const MatrixWeyl& o) const;
    WeylElement trace() const;

  private:
    int size_;
    std::vector<WeylElement> e_;
};

// (1/2h)(X star Y - Y star X): the bracket whose restriction to quadratics
// integrates to the linear symplectic action.
MatrixWeyl matrix_bracket(const MatrixWeyl& x, const MatrixWeyl& y);

// The degree-2k twisted Lie-algebra cocycle obtained from the twisted
// Hochschild cocycle by the cotrace: on decomposables M_i (x) a_i
//   sum_sigma sgn(sigma) tr(gV M_0 M_{sigma(1)}..M_{sigma(2k)})
//            tau^gamma(a_0 (x) a_{sigma(1)} (x) .. (x) a_{sigma(2k)}),
// realized entrywise so arbitrary matrix arguments work. gV is an optional
// finite-order matrix (the fiberwise action on a representation V); identity
// when absent.
class LieCocycle {
  public:
    // k: half-degree; trace data of the normal part; N: matrix size;
    // gv: optional V-action matrix (size N), must commute suitably.
    LieCocycle(int k, TwistedTraceData trace, int N);
    LieCocycle(int k, TwistedTraceData trace, const CMatrix& gv);

    int k() const { return k_; }
    int N() const { return n_size_; }
    int total_pairs() const { return cocycle_.total_pairs(); }
    uint32_t mask() const { return cocycle_.complex_mask(); }
    TwistedCocycle& scalar_cocycle() { return cocycle_; }

    // evaluator: 2k wedge arguments and the module argument x0
    Laurent operator()(const std::vector<MatrixWeyl>& args, const MatrixWeyl& x0);
    // evaluation at the identity matrix
    Laurent ev1(const std::vector<MatrixWeyl>& args);

    // the twisted module automorphism applied entrywise
    MatrixWeyl gamma(const MatrixWeyl& x) const;

  private:
    int k_;
    int n_size_;
    CMatrix gv_;
    TwistedCocycle cocycle_;
};

// Cartan--Eilenberg coboundary of the Lie cocycle on a (2k+1)-wedge with
// module argument x0, with the twisted module action m -> gamma(x) m - m x.
// Vanishes identically; exercised by tests.
Laurent lie_coboundary(LieCocycle& theta, const std::vector<MatrixWeyl>& args,
                       const MatrixWeyl& x0);

// Projection onto gl_N(K) (+) quadratics: (1/N) tr(X)_2 Id + X_0.
MatrixWeyl project_h(const MatrixWeyl& x);

// Curvature of the projection: [pr u, pr v] - pr([u, v]).
MatrixWeyl curvature(const MatrixWeyl& u, const MatrixWeyl& v);

// An element of h = gl_N(K) (+) sp_fixed (+) sp_normal^gamma, split into the
// quadratic Weyl part on the fixed pairs, the quadratic part on the normal
// pairs, and the constant matrix part.
struct HElement {
    WeylElement fixed_quad;    // on the k fixed pairs (real basis, k pairs)
    WeylElement normal_quad;   // on the m normal pairs (complex basis, m pairs)
    std::vector<std::vector<Laurent>> matrix;  // N x N Laurent entries

    static HElement split(const MatrixWeyl& x, int k, int m);
    HElement operator+(const HElement& o) const;
};

// Taylor expansion in the scaling parameter of
//   Ahat(X1) * tr exp(t X3) * tr_gamma(exp_star(t X2))
// where X1 is the fixed quadratic (via its sp matrix and even power sums),
// X3 the gl_N part, X2 the normal quadratic. The Ahat factor is
// det((ad/2)/sinh(ad/2))^{1/2} evaluated through even power sums.
Jet genus_series(const HElement& x, const TwistedTraceData& trace, int order);

// The degree from the generating series by polarization: the symmetric
// k-linear value P_k(h_1, .., h_k).
Laurent genus_polynomial(const std::vector<HElement>& hs, const TwistedTraceData& trace);

// Chern--Weil pairing: (1/q!) sum over pair-shuffles of sgn * P(C(..), ..).
Laurent chern_weil(const std::vector<MatrixWeyl>& wedge, const TwistedTraceData& trace, int k);

struct LocalIndexCase {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

struct LocalIndexReport {
    bool pass = false;
    std::vector<LocalIndexCase> cases;
};

// Direct verification that ev_1 of the Lie cocycle equals (-1)^k times the
// Chern--Weil image of the genus series, on the wedge families
// p_i ^ { u_ij, v_ir, w_is }. k = 1 fully supported; k = 2 supported for the
// same families (slower); anything else raises unsupported_error.
LocalIndexReport verify_local_index(int k, const std::vector<Cyclotomic>& lambdas, int N);

}  // namespace orbindex
