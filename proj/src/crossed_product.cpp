#include "orbindex/crossed_product.hpp"

namespace orbindex {

CrossedElement CrossedElement::delta(std::shared_ptr<const FiniteSubgroup> group, int element,
                                     const WeylElement& component) {
    CrossedElement x(std::move(group));
    if (element < 0 || element >= static_cast<int>(x.group_->size()))
        throw domain_error("group element index out of range");
    x.add_component(element, component);
    return x;
}

CrossedElement CrossedElement::unit(std::shared_ptr<const FiniteSubgroup> group) {
    int id = group->identity_index();
    int n = group->pairs();
    return delta(std::move(group), id, WeylElement::one(n));
}

WeylElement CrossedElement::component(int g) const {
    auto it = c_.find(g);
    return it == c_.end() ? WeylElement(group_->pairs(), 0) : it->second;
}

void CrossedElement::add_component(int g, const WeylElement& w) {
    if (w.is_zero()) return;
    auto it = c_.find(g);
    if (it == c_.end()) {
        c_[g] = w;
    } else {
        it->second += w;
        if (it->second.is_zero()) c_.erase(it);
    }
}

CrossedElement CrossedElement::operator+(const CrossedElement& o) const {
    if (group_ != o.group_ && !(group_->size() == o.group_->size()))
        throw domain_error("crossed elements over different groups");
    CrossedElement out = *this;
    for (const auto& [g, w] : o.c_) out.add_component(g, w);
    return out;
}

CrossedElement CrossedElement::operator-() const {
    CrossedElement out = *this;
    for (auto& [g, w] : out.c_) w = -w;
    return out;
}

CrossedElement CrossedElement::operator*(const Laurent& s) const {
    CrossedElement out(group_);
    for (const auto& [g, w] : c_) out.add_component(g, w * s);
    return out;
}

bool CrossedElement::operator==(const CrossedElement& o) const { return c_ == o.c_; }

bool CrossedElement::is_zero() const { return c_.empty(); }

CrossedElement crossed_mul(const CrossedElement& x, const CrossedElement& y) {
    if (x.group_->size() != y.group().size())
        throw domain_error("crossed elements over different groups");
    const FiniteSubgroup& grp = *x.group_;
    CrossedElement out(x.group_);
    for (const auto& [a, wa] : x.c_) {
        const SymplecticMap& ga = grp.elements()[static_cast<size_t>(a)];
        for (const auto& [b, wb] : y.components()) {
            int g = grp.mul(a, b);
            out.add_component(g, star(wa, ga.apply(wb)));
        }
    }
    return out;
}

Laurent element_twisted_trace(const SymplecticMap& g, const WeylElement& a) {
    FixedDecomposition d = fixed_decomposition(g);
    if (d.k != 0)
        throw domain_error(
            "twisted trace of a polynomial element needs a zero-dimensional fixed space");
    const int n = g.pairs();
    // coordinate change x = (C^T)^{-1} (z', zbar'): columns of C are the
    // eigenvectors (z then zbar)
    CMatrix c(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        for (int j = 0; j < n; ++j) {
            c.at(r, j) = d.z_basis.at(r, j);
            c.at(r, n + j) = d.zbar_basis.at(r, j);
        }
    }
    CMatrix inv = c.transpose().inverse();
    uint32_t full = (1u << n) - 1u;
    std::vector<WeylElement> images;
    images.reserve(static_cast<size_t>(2 * n));
    for (int aRow = 0; aRow < 2 * n; ++aRow) {
        WeylElement img(n, full);
        for (int b = 0; b < 2 * n; ++b) {
            const Cyclotomic& coef = inv.at(aRow, b);
            if (coef.is_zero()) continue;
            img += WeylElement::generator(n, b, full) * coef;
        }
        images.push_back(img);
    }
    WeylElement az = WeylElement::substitute(a, images);
    return twisted_trace(TwistedTraceData::from_eigenvalues(d.eigenvalues), az);
}

Laurent sector_trace(const SectorWeights& w, const CrossedElement& x) {
    const FiniteSubgroup& grp = x.group();
    // validate: weights only on classes with zero-dimensional fixed space
    for (const auto& [cls, weight] : w.weight_by_class) {
        if (weight.is_zero()) continue;
        for (size_t e = 0; e < grp.size(); ++e) {
            if (grp.class_of()[e] != cls) continue;
            CMatrix one_minus = CMatrix::identity(2 * grp.pairs()) -
                                grp.elements()[e].matrix();
            long fixed_dim = 2 * grp.pairs() - one_minus.rank();
            if (fixed_dim != 0)
                throw domain_error(
                    "sector weight on a class with a positive-dimensional fixed space; "
                    "no polynomial trace exists there");
            break;
        }
    }
    Laurent acc;
    for (size_t e = 0; e < grp.size(); ++e) {
        int cls = grp.class_of()[e];
        auto it = w.weight_by_class.find(cls);
        if (it == w.weight_by_class.end() || it->second.is_zero()) continue;
        WeylElement comp = x.component(grp.inv(static_cast<int>(e)));
        if (comp.is_zero()) continue;
        acc += it->second * element_twisted_trace(grp.elements()[e], comp);
    }
    return acc;
}

}  // namespace orbindex
