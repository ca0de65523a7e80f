#include "orbindex/char_index.hpp"

#include <sstream>

namespace orbindex {

long RingModel::monomial_degree(const Mono& m) const {
    long d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * generator_degrees[i];
    return d;
}

int RingModel::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generator_names.size(); ++i)
        if (generator_names[i] == name) return static_cast<int>(i);
    return -1;
}

RingElement RingElement::scalar(const RingModelPtr& model, const Laurent& c) {
    RingElement e(model);
    if (!c.is_zero()) e.t_[Mono(static_cast<size_t>(model->generators()), 0)] = c;
    return e;
}

RingElement RingElement::generator(const RingModelPtr& model, int g) {
    RingElement e(model);
    Mono m(static_cast<size_t>(model->generators()), 0);
    m[static_cast<size_t>(g)] = 1;
    if (model->monomial_degree(m) <= model->top_degree) e.t_[m] = Laurent(1);
    return e;
}

Laurent RingElement::coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Laurent() : it->second;
}

Laurent RingElement::scalar_part() const {
    if (!model_) return Laurent();
    return coeff(Mono(static_cast<size_t>(model_->generators()), 0));
}

void RingElement::add(const Mono& m, const Laurent& c) {
    if (c.is_zero()) return;
    if (model_->monomial_degree(m) > model_->top_degree) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement e = *this;
    if (!e.model_) return o;
    for (const auto& [m, c] : o.t_) e.add(m, c);
    return e;
}

RingElement RingElement::operator-() const {
    RingElement e = *this;
    for (auto& [m, c] : e.t_) c = -c;
    return e;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
    RingElement e(model_);
    for (const auto& [ma, ca] : t_) {
        for (const auto& [mb, cb] : o.t_) {
            Mono m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<uint16_t>(ma[i] + mb[i]);
            e.add(m, ca * cb);
        }
    }
    return e;
}

RingElement RingElement::operator*(const Laurent& c) const {
    RingElement e(model_);
    if (c.is_zero()) return e;
    for (const auto& [m, v] : t_) e.t_[m] = v * c;
    return e;
}

RingElement RingElement::exp() const {
    if (!scalar_part().is_zero()) throw domain_error("ring exp requires zero scalar part");
    RingElement acc = scalar(model_, Laurent(1));
    RingElement power = scalar(model_, Laurent(1));
    Rational fact(1);
    for (int j = 1;; ++j) {
        power = power * (*this);
        if (power.is_zero()) break;
        fact *= j;
        acc += power * Laurent(rat(1) / fact);
    }
    return acc;
}

RingElement RingElement::inverse() const {
    Laurent c0 = scalar_part();
    if (c0.is_zero()) throw domain_error("ring inverse requires invertible scalar part");
    Laurent c0inv = c0.inverse();
    RingElement r = (*this) * c0inv - scalar(model_, Laurent(1));
    RingElement acc = scalar(model_, Laurent(1));
    RingElement power = scalar(model_, Laurent(1));
    for (int j = 1;; ++j) {
        power = power * r;
        if (power.is_zero()) break;
        acc = (j % 2 == 1) ? acc - power : acc + power;
    }
    return acc * c0inv;
}

bool RingElement::homogeneous_of_degree(long d) const {
    for (const auto& [m, c] : t_)
        if (model_->monomial_degree(m) != d) return false;
    return true;
}

std::string RingElement::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (size_t g = 0; g < m.size(); ++g) {
            if (m[g] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += model_->generator_names[g];
            if (m[g] > 1) mono += "^" + std::to_string(m[g]);
        }
        std::string cs = c.str();
        bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (mono.empty())
            os << (compound ? "(" + cs + ")" : cs);
        else if (cs == "1")
            os << mono;
        else
            os << (compound ? "(" + cs + ")" : cs) << "*" << mono;
    }
    return os.str();
}

RingElement a_hat_class(const Sector& s) {
    RingElement acc = RingElement::scalar(s.ring, Laurent(1));
    for (const auto& x : s.tangent_roots) {
        if (!x.homogeneous_of_degree(2)) throw domain_error("tangent root must have degree 2");
        // x / (e^{x/2} - e^{-x/2}) = 1 / (1 + x^2/24 + x^4/1920 + ...)
        RingElement denom = RingElement::scalar(s.ring, Laurent(1));
        RingElement x2 = x * x;
        RingElement power = RingElement::scalar(s.ring, Laurent(1));
        Rational fact(1);  // (2j+1)! / ... denominators 2^{2j} (2j+1)!
        for (int j = 1;; ++j) {
            power = power * x2;
            if (power.is_zero()) break;
            fact = Rational(factorial(2 * j + 1));
            Rational coef = rat(1) / (fact * rat_pow(rat(4), j));
            denom += power * Laurent(coef);
        }
        acc *= denom.inverse();
    }
    return acc;
}

RingElement chern_twisted(const std::vector<BundleBlock>& blocks, const Sector& s) {
    RingElement acc(s.ring);
    for (const auto& b : blocks) {
        for (const auto& root : b.roots) {
            if (!root.is_zero() && !root.homogeneous_of_degree(2))
                throw domain_error("chern root must have degree 2");
            acc += root.exp() * Laurent(b.mu);
        }
    }
    return acc;
}

RingElement normal_factor_inverse(const Sector& s) {
    RingElement acc = RingElement::scalar(s.ring, Laurent(1));
    for (const auto& [lambda, root] : s.normal) {
        if (lambda == Cyclotomic(1))
            throw domain_error("normal block eigenvalue 1 is not allowed");
        if (!root.is_zero() && !root.homogeneous_of_degree(2))
            throw domain_error("normal root must have degree 2");
        RingElement factor =
            RingElement::scalar(s.ring, Laurent(1)) -
            (-root).exp() * Laurent(lambda.inverse());
        acc *= factor.inverse();
    }
    return acc;
}

Laurent sector_integral(const Sector& s, const RingElement& x) {
    Laurent acc;
    for (const auto& [m, c] : x.terms()) {
        if (s.ring->monomial_degree(m) != s.ring->top_degree) continue;
        auto it = s.ring->integrals.find(m);
        if (it == s.ring->integrals.end()) continue;
        acc += c * it->second;
    }
    return acc;
}

namespace {

RingElement index_integrand(const Sector& s) {
    return (chern_twisted(s.bundle_e, s) - chern_twisted(s.bundle_f, s)) *
           normal_factor_inverse(s) * a_hat_class(s);
}

}  // namespace

Cyclotomic kawasaki_index(const OrbifoldModel& model) {
    Laurent acc;
    for (const auto& s : model.sectors) {
        Laurent contrib = sector_integral(s, index_integrand(s)) * rat(1, s.m);
        acc += contrib;
    }
    if (acc.is_zero()) return Cyclotomic();
    if (!acc.is_scalar()) throw domain_error("index without deformation class must be h-free");
    Cyclotomic v = acc.constant_term();
    if (model.geometric) {
        if (!v.is_rational() || !is_integer(v.rational_value()))
            throw domain_error("geometric model produced a non-integer index: " + v.str());
    }
    return v;
}

Laurent algebraic_index(const OrbifoldModel& model) {
    Laurent acc;
    for (const auto& s : model.sectors) {
        // exp(-omega/h): nilpotent exponential with h^{-1} weights
        RingElement expfac = RingElement::scalar(s.ring, Laurent(1));
        if (!s.omega.is_zero()) {
            RingElement weighted = s.omega * Laurent::h_power(-1, Cyclotomic(-1));
            expfac = weighted.exp();
        }
        acc += sector_integral(s, index_integrand(s) * expfac) * rat(1, s.m);
    }
    return acc;
}

Cyclotomic lefschetz_oracle(const OrbifoldModel::LefschetzData& data) {
    Cyclotomic acc(data.identity_term);
    for (const auto& el : data.elements) {
        for (const auto& [rot, numer] : el.fixed_points) {
            if (rot == Cyclotomic(1)) {
                // zero-dimensional fixed locus: bare character contribution
                acc += numer;
                continue;
            }
            acc += numer * (Cyclotomic(1) - rot.inverse()).inverse();
        }
    }
    return acc * rat(1, data.group_order);
}

namespace models {

namespace {

RingModel point_ring() {
    RingModel r;
    r.top_degree = 0;
    r.integrals[Mono{}] = Cyclotomic(1);
    return r;
}

Sector point_sector(const std::string& name, long m) {
    Sector s;
    s.name = name;
    s.k = 0;
    s.m = m;
    s.ring = std::make_shared<RingModel>(point_ring());
    s.omega = RingElement(s.ring);
    return s;
}

RingModel surface_ring() {
    RingModel r;
    r.generator_names = {"t"};
    r.generator_degrees = {2};
    r.top_degree = 2;
    Mono top{1};
    r.integrals[top] = Cyclotomic(1);
    return r;
}

}  // namespace

OrbifoldModel point_quotient(long order, long rep_exponent) {
    OrbifoldModel model;
    model.geometric = true;
    for (long j = 0; j < order; ++j) {
        Sector s = point_sector("gamma^" + std::to_string(j), order);
        BundleBlock block;
        block.mu = Cyclotomic::root(order, rep_exponent * j);
        block.roots = {RingElement(s.ring)};
        s.bundle_e = {block};
        model.sectors.push_back(std::move(s));
    }
    // oracle: the Lefschetz number of gamma^j on a point is the character value
    OrbifoldModel::LefschetzData lf;
    lf.group_order = order;
    lf.identity_term = Rational(1);
    for (long j = 1; j < order; ++j) {
        OrbifoldModel::LefschetzElement el;
        el.fixed_points = {{Cyclotomic(1), Cyclotomic::root(order, rep_exponent * j)}};
        lf.elements.push_back(std::move(el));
    }
    model.lefschetz = lf;
    return model;
}

OrbifoldModel football(long order) {
    OrbifoldModel model;
    model.geometric = true;
    // main sector: the quotient surface; chi_orb = 2/order
    Sector main;
    main.name = "main";
    main.k = 1;
    main.m = 1;
    main.ring = std::make_shared<RingModel>(surface_ring());
    RingElement t = RingElement::generator(main.ring, 0);
    main.tangent_roots = {t * Laurent(rat(2, order))};
    main.omega = RingElement(main.ring);
    BundleBlock structure;
    structure.mu = Cyclotomic(1);
    structure.roots = {t * Laurent(rat(1, order))};  // half the tangent root
    main.bundle_e = {structure};
    model.sectors.push_back(std::move(main));

    // twisted sectors: two cone points, eigenvalues zeta^j and zeta^{-j}
    for (long j = 1; j < order; ++j) {
        for (int pole = 0; pole < 2; ++pole) {
            Sector s = point_sector(
                (pole == 0 ? "north gamma^" : "south gamma^") + std::to_string(j), order);
            Cyclotomic lam = Cyclotomic::root(order, pole == 0 ? j : -j);
            s.normal = {{lam, RingElement(s.ring)}};
            BundleBlock block;
            block.mu = Cyclotomic(1);
            block.roots = {RingElement(s.ring)};
            s.bundle_e = {block};
            model.sectors.push_back(std::move(s));
        }
    }

    OrbifoldModel::LefschetzData lf;
    lf.group_order = order;
    lf.identity_term = Rational(1);  // integral of Td over the sphere
    for (long j = 1; j < order; ++j) {
        OrbifoldModel::LefschetzElement el;
        el.fixed_points = {{Cyclotomic::root(order, j), Cyclotomic(1)},
                           {Cyclotomic::root(order, -j), Cyclotomic(1)}};
        lf.elements.push_back(std::move(el));
    }
    model.lefschetz = lf;
    return model;
}

OrbifoldModel torus_z2() {
    OrbifoldModel model;
    model.geometric = true;
    Sector main;
    main.name = "main";
    main.k = 1;
    main.m = 1;
    main.ring = std::make_shared<RingModel>(surface_ring());
    RingElement t = RingElement::generator(main.ring, 0);
    // chi_orb(T^2/Z2) = 0: degree-zero tangent root
    main.tangent_roots = {RingElement(main.ring)};
    main.omega = RingElement(main.ring);
    BundleBlock structure;
    structure.mu = Cyclotomic(1);
    structure.roots = {RingElement(main.ring)};
    main.bundle_e = {structure};
    model.sectors.push_back(std::move(main));

    for (int pt = 0; pt < 4; ++pt) {
        Sector s = point_sector("fixed point " + std::to_string(pt + 1), 2);
        s.normal = {{Cyclotomic(-1), RingElement(s.ring)}};
        BundleBlock block;
        block.mu = Cyclotomic(1);
        block.roots = {RingElement(s.ring)};
        s.bundle_e = {block};
        model.sectors.push_back(std::move(s));
    }

    OrbifoldModel::LefschetzData lf;
    lf.group_order = 2;
    lf.identity_term = Rational(0);  // integral of Td over the torus
    OrbifoldModel::LefschetzElement el;
    for (int pt = 0; pt < 4; ++pt)
        el.fixed_points.push_back({Cyclotomic(-1), Cyclotomic(1)});
    lf.elements.push_back(std::move(el));
    model.lefschetz = lf;
    return model;
}

OrbifoldModel football_deformed(long order, const Rational& c) {
    OrbifoldModel model = football(order);
    model.geometric = false;
    RingElement t = RingElement::generator(model.sectors[0].ring, 0);
    model.sectors[0].omega = t * Laurent(c);
    return model;
}

}  // namespace models

}  // namespace orbindex
