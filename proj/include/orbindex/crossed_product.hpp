#pragma once

#include <memory>

#include "orbindex/cocycle.hpp"

namespace orbindex {

// Element of the crossed product of the Weyl algebra by a finite symplectic
// group: finitely supported map group element -> Weyl component, with
//   (a d_g)(b d_h) = (a * g(b)) d_{gh}
// under the left-action convention.
class CrossedElement {
  public:
    explicit CrossedElement(std::shared_ptr<const FiniteSubgroup> group)
        : group_(std::move(group)) {}

    static CrossedElement delta(std::shared_ptr<const FiniteSubgroup> group, int element,
                                const WeylElement& component);

    const FiniteSubgroup& group() const { return *group_; }
    std::shared_ptr<const FiniteSubgroup> group_ptr() const { return group_; }
    const std::map<int, WeylElement>& components() const { return c_; }
    WeylElement component(int g) const;

    CrossedElement operator+(const CrossedElement& o) const;
    CrossedElement operator-() const;
    CrossedElement operator-(const CrossedElement& o) const { return *this + (-o); }
    CrossedElement operator*(const Laurent& s) const;
    bool operator==(const CrossedElement& o) const;
    bool is_zero() const;

    static CrossedElement unit(std::shared_ptr<const FiniteSubgroup> group);

  private:
    std::shared_ptr<const FiniteSubgroup> group_;
    std::map<int, WeylElement> c_;

    void add_component(int g, const WeylElement& w);
    friend CrossedElement crossed_mul(const CrossedElement&, const CrossedElement&);
};

CrossedElement crossed_mul(const CrossedElement& x, const CrossedElement& y);

// Conjugation-invariant weights supported on conjugacy classes whose fixed
// space is zero-dimensional; those are the sectors carrying a polynomial
// twisted trace.
struct SectorWeights {
    std::map<int, Laurent> weight_by_class;
};

// Sum over elements g with k_g = 0 of w(<g>) tr_g(x_{g^{-1}}): a trace on the
// crossed product. Weights on classes with k > 0 are rejected.
Laurent sector_trace(const SectorWeights& w, const CrossedElement& x);

// The twisted trace of a real-basis Weyl element with respect to a
// zero-fixed-space group element: transforms into the adapted complex
// eigencoordinates of g and applies the diagonal twisted trace.
Laurent element_twisted_trace(const SymplecticMap& g, const WeylElement& a);

}  // namespace orbindex
