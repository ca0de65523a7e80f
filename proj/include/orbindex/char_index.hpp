#pragma once

#include <memory>
#include <optional>
#include <string>

#include "orbindex/laurent.hpp"
#include "orbindex/weyl.hpp"

namespace orbindex {

// A truncated graded-commutative cohomology ring with even-degree generators:
// monomials above the top degree vanish, and a linear integral is defined on
// top-degree monomials.
struct RingModel {
    std::vector<std::string> generator_names;
    std::vector<int> generator_degrees;  // even, >= 2
    int top_degree = 0;
    std::map<Mono, Cyclotomic> integrals;  // on top-degree monomials

    int generators() const { return static_cast<int>(generator_names.size()); }
    long monomial_degree(const Mono& m) const;
    int generator_index(const std::string& name) const;  // -1 if absent
};

// Element of a RingModel: sparse monomial map with Laurent coefficients.
using RingModelPtr = std::shared_ptr<const RingModel>;

class RingElement {
  public:
    RingElement() = default;
    explicit RingElement(RingModelPtr model) : model_(std::move(model)) {}

    static RingElement scalar(const RingModelPtr& model, const Laurent& c);
    static RingElement generator(const RingModelPtr& model, int g);

    const RingModelPtr& model() const { return model_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Mono, Laurent>& terms() const { return t_; }
    Laurent coeff(const Mono& m) const;
    Laurent scalar_part() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator*(const Laurent& c) const;
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
    bool operator==(const RingElement& o) const { return t_ == o.t_; }

    // exp of an element with zero scalar part (nilpotent; terminates)
    RingElement exp() const;
    // inverse of an element with invertible scalar part
    RingElement inverse() const;

    // degree check: true when every monomial has the given degree
    bool homogeneous_of_degree(long d) const;

    std::string str() const;

  private:
    RingModelPtr model_;
    std::map<Mono, Laurent> t_;

    void add(const Mono& m, const Laurent& c);
};

// One theta-eigenbundle block: eigenvalue mu (a root of unity) and one Chern
// root per line in the block.
struct BundleBlock {
    Cyclotomic mu;
    std::vector<RingElement> roots;
};

struct Sector {
    std::string name;
    int k = 0;             // half-dimension of the sector
    long m = 1;            // isotropy order of the principal stratum
    RingModelPtr ring;
    std::vector<RingElement> tangent_roots;                 // k of them
    std::vector<std::pair<Cyclotomic, RingElement>> normal; // (lambda != 1, root)
    RingElement omega;                                      // normalized class
    std::vector<BundleBlock> bundle_e;
    std::vector<BundleBlock> bundle_f;
};

struct OrbifoldModel {
    std::vector<Sector> sectors;
    bool geometric = false;  // integer-ness of the index asserted when set

    // optional fixed-point data for the independent oracle
    struct LefschetzElement {
        // per isolated fixed point: (rotation eigenvalue of the tangent map,
        // numerator character of the bundle at the point)
        std::vector<std::pair<Cyclotomic, Cyclotomic>> fixed_points;
    };
    struct LefschetzData {
        long group_order = 1;
        Rational identity_term;  // integral of Td Ch over the cover
        std::vector<LefschetzElement> elements;
    };
    std::optional<LefschetzData> lefschetz;
};

// A-hat class of the sector: product over tangent roots of
// x / (e^{x/2} - e^{-x/2}), expanded in the nilpotent ring.
RingElement a_hat_class(const Sector& s);

// Twisted Chern character of a bundle block list: sum mu_b sum_roots e^root.
RingElement chern_twisted(const std::vector<BundleBlock>& blocks, const Sector& s);

// Inverse of det(1 - theta^{-1} exp(-R_normal)): product over normal blocks of
// (1 - lambda^{-1} e^{-root})^{-1}, expanded in the ring.
RingElement normal_factor_inverse(const Sector& s);

// Integral over the sector: applies the ring integral to top-degree terms.
Laurent sector_integral(const Sector& s, const RingElement& x);

// Kawasaki-type index: sum over sectors of (1/m) integral of
// Ch_theta(E - F) * normal^{-1} * A-hat. Exact cyclotomic scalar.
Cyclotomic kawasaki_index(const OrbifoldModel& model);

// Deformed index: the same integrand times exp(-omega/h); Laurent in h.
Laurent algebraic_index(const OrbifoldModel& model);

// Independent fixed-point oracle:
//   (1/|G|) [ identity_term + sum_gamma sum_points mu_p / (1 - dgamma_p^{-1}) ].
Cyclotomic lefschetz_oracle(const OrbifoldModel::LefschetzData& data);

// Bundled desk-scale model builders.
namespace models {
// point orbifold of a cyclic group, bundle = the character chi^rep_exponent
OrbifoldModel point_quotient(long order, long rep_exponent);
// sphere football with two cone points of the given order, structure sheaf
OrbifoldModel football(long order);
// torus quotient by the involution, structure sheaf
OrbifoldModel torus_z2();
// football with a deformation class c * (normalized area class)
OrbifoldModel football_deformed(long order, const Rational& c);
}  // namespace models

}  // namespace orbindex
