#include "orbindex/weyl.hpp"

#include <sstream>

namespace orbindex {

WeylElement WeylElement::scalar(int n, const Laurent& c, uint32_t complex_mask) {
    WeylElement w(n, complex_mask);
    if (!c.is_zero()) w.t_[Mono(static_cast<size_t>(2 * n), 0)] = c;
    return w;
}

WeylElement WeylElement::generator(int n, int g, uint32_t complex_mask) {
    if (g < 0 || g >= 2 * n) throw domain_error("generator index out of range");
    WeylElement w(n, complex_mask);
    Mono m(static_cast<size_t>(2 * n), 0);
    m[static_cast<size_t>(g)] = 1;
    w.t_[m] = Laurent(1);
    return w;
}

WeylElement WeylElement::monomial(int n, const Mono& m, const Laurent& c, uint32_t complex_mask) {
    if (static_cast<int>(m.size()) != 2 * n) throw domain_error("monomial length mismatch");
    WeylElement w(n, complex_mask);
    if (!c.is_zero()) w.t_[m] = c;
    return w;
}

bool WeylElement::is_scalar() const {
    if (t_.empty()) return true;
    if (t_.size() > 1) return false;
    for (auto e : t_.begin()->first)
        if (e) return false;
    return true;
}

Laurent WeylElement::scalar_value() const {
    if (!is_scalar()) throw domain_error("weyl element is not a scalar");
    return t_.empty() ? Laurent() : t_.begin()->second;
}

Laurent WeylElement::constant_term() const {
    Mono zero(static_cast<size_t>(2 * n_), 0);
    auto it = t_.find(zero);
    return it == t_.end() ? Laurent() : it->second;
}

long WeylElement::degree() const {
    long d = -1;
    for (const auto& [m, c] : t_) {
        long dm = 0;
        for (auto e : m) dm += e;
        if (dm > d) d = dm;
    }
    return d;
}

void WeylElement::add_term(const Mono& m, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void WeylElement::check_compatible(const WeylElement& o) const {
    if (n_ != o.n_ || cmask_ != o.cmask_)
        throw domain_error("weyl elements live on different generator bases");
}

WeylElement WeylElement::operator-() const {
    WeylElement out(n_, cmask_);
    for (const auto& [m, c] : t_) out.t_[m] = -c;
    return out;
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
    check_compatible(o);
    WeylElement out = *this;
    for (const auto& [m, c] : o.t_) out.add_term(m, c);
    return out;
}

WeylElement WeylElement::operator-(const WeylElement& o) const { return *this + (-o); }

WeylElement WeylElement::operator*(const Laurent& c) const {
    WeylElement out(n_, cmask_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : t_) out.add_term(m, v * c);
    return out;
}

bool WeylElement::operator==(const WeylElement& o) const {
    if (n_ != o.n_ || cmask_ != o.cmask_ || t_.size() != o.t_.size()) return false;
    auto a = t_.begin();
    auto b = o.t_.begin();
    for (; a != t_.end(); ++a, ++b)
        if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
}

WeylElement WeylElement::mul(const WeylElement& o) const {
    check_compatible(o);
    WeylElement out(n_, cmask_);
    for (const auto& [ma, ca] : t_) {
        for (const auto& [mb, cb] : o.t_) {
            Mono m(ma.size());
            for (size_t g = 0; g < ma.size(); ++g)
                m[g] = static_cast<uint16_t>(ma[g] + mb[g]);
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

WeylElement WeylElement::derivative(int g) const {
    if (g < 0 || g >= 2 * n_) throw domain_error("derivative index out of range");
    WeylElement out(n_, cmask_);
    for (const auto& [m, c] : t_) {
        uint16_t e = m[static_cast<size_t>(g)];
        if (e == 0) continue;
        Mono m2 = m;
        --m2[static_cast<size_t>(g)];
        out.add_term(m2, c * rat(e));
    }
    return out;
}

WeylElement WeylElement::graded_part(long d) const {
    WeylElement out(n_, cmask_);
    for (const auto& [m, c] : t_) {
        long dm = 0;
        for (auto e : m) dm += e;
        if (dm == d) out.t_[m] = c;
    }
    return out;
}

WeylElement WeylElement::substitute(const WeylElement& a, const std::vector<WeylElement>& images) {
    if (static_cast<int>(images.size()) != 2 * a.n_)
        throw domain_error("substitution needs one image per generator");
    int n_out = images.empty() ? a.n_ : images[0].pairs();
    uint32_t mask_out = images.empty() ? a.cmask_ : images[0].complex_mask();
    WeylElement out(n_out, mask_out);
    // memoized powers per generator
    std::vector<std::vector<WeylElement>> powers(images.size());
    auto power = [&](size_t g, uint16_t e) -> const WeylElement& {
        auto& tab = powers[g];
        if (tab.empty()) tab.push_back(WeylElement::one(n_out, mask_out));
        while (tab.size() <= e) tab.push_back(tab.back().mul(images[g]));
        return tab[e];
    };
    for (const auto& [m, c] : a.t_) {
        WeylElement prod = WeylElement::scalar(n_out, c, mask_out);
        for (size_t g = 0; g < m.size(); ++g) {
            if (m[g] == 0) continue;
            prod = prod.mul(power(g, m[g]));
        }
        out += prod;
    }
    return out;
}

std::string WeylElement::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        std::string cs = c.str();
        bool negated = false;
        if (cs.size() > 0 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        std::string mono;
        for (int j = 0; j < 2 * n_; ++j) {
            uint16_t e = m[static_cast<size_t>(j)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            int pair_index = (j < n_) ? j : j - n_;
            bool is_p_slot = j < n_;
            if (pair_complex(pair_index))
                mono += std::string(is_p_slot ? "z" : "zb") + std::to_string(pair_index + 1);
            else
                mono += std::string(is_p_slot ? "p" : "q") + std::to_string(pair_index + 1);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            os << (compound ? "(" + cs + ")" : cs);
        } else if (cs == "1") {
            os << mono;
        } else {
            os << (compound ? "(" + cs + ")" : cs) << "*" << mono;
        }
    }
    return os.str();
}

namespace {

// falling factorial m (m-1) ... (m-s+1)
Rational falling(uint16_t m, uint16_t s) {
    Rational r(1);
    for (uint16_t i = 0; i < s; ++i) r *= rat(m - i);
    return r;
}

}  // namespace

WeylElement star(const WeylElement& a, const WeylElement& b) {
    a.check_compatible(b);
    const int n = a.pairs();
    WeylElement out(n, a.complex_mask());

    // Per pair j the expansion of exp(h alpha) factors into independent sums:
    //   real:    sum_{s,t} h^{s+t} (-1)^t / (s! t!)  dp^s dq^t a . dq^s dp^t b
    //   complex: sum_{s,t} (2ih)^s (-2ih)^t / (s! t!) dz^s dzb^t a . dzb^s dz^t b
    // so [p, q] = 2h and [z, zb] = 4ih.
    const Cyclotomic two_i = cyclo_i() * rat(2);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<uint16_t> smax(static_cast<size_t>(n)), tmax(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                smax[static_cast<size_t>(j)] =
                    std::min(ma[static_cast<size_t>(j)], mb[static_cast<size_t>(j + n)]);
                tmax[static_cast<size_t>(j)] =
                    std::min(ma[static_cast<size_t>(j + n)], mb[static_cast<size_t>(j)]);
            }
            std::vector<uint16_t> s(static_cast<size_t>(n), 0), t(static_cast<size_t>(n), 0);
            while (true) {
                Mono mo(static_cast<size_t>(2 * n));
                Rational comb(1);
                int total_st = 0, total_t = 0, complex_st = 0;
                for (int j = 0; j < n; ++j) {
                    uint16_t sj = s[static_cast<size_t>(j)], tj = t[static_cast<size_t>(j)];
                    uint16_t ap = ma[static_cast<size_t>(j)], aq = ma[static_cast<size_t>(j + n)];
                    uint16_t bp = mb[static_cast<size_t>(j)], bq = mb[static_cast<size_t>(j + n)];
                    mo[static_cast<size_t>(j)] = static_cast<uint16_t>(ap - sj + bp - tj);
                    mo[static_cast<size_t>(j + n)] = static_cast<uint16_t>(aq - tj + bq - sj);
                    comb *= falling(ap, sj) * falling(bq, sj) / Rational(factorial(sj));
                    comb *= falling(aq, tj) * falling(bp, tj) / Rational(factorial(tj));
                    total_st += sj + tj;
                    total_t += tj;
                    if (a.pair_complex(j)) complex_st += sj + tj;
                }
                Cyclotomic phase(comb);
                if (complex_st > 0) phase *= two_i.pow(complex_st);
                if (total_t % 2 == 1) phase = -phase;
                out.add_term(mo, (ca * cb).shifted(total_st) * phase);

                int pos = 0;
                for (; pos < 2 * n; ++pos) {
                    auto& vec = (pos < n) ? s : t;
                    auto& cap = (pos < n) ? smax : tmax;
                    size_t idx = static_cast<size_t>(pos < n ? pos : pos - n);
                    if (vec[idx] < cap[idx]) {
                        ++vec[idx];
                        break;
                    }
                    vec[idx] = 0;
                }
                if (pos == 2 * n) break;
            }
        }
    }
    return out;
}

WeylElement star_commutator(const WeylElement& a, const WeylElement& b) {
    return star(a, b) - star(b, a);
}

WeylElement sp_derivation(const WeylElement& h, const WeylElement& a) {
    if (h.is_zero()) return WeylElement(a.pairs(), a.complex_mask());
    for (const auto& [m, c] : h.terms()) {
        long d = 0;
        for (auto e : m) d += e;
        if (d != 2) throw domain_error("sp derivation requires a homogeneous quadratic");
    }
    WeylElement comm = star_commutator(h, a);
    WeylElement out(a.pairs(), a.complex_mask());
    for (const auto& [m, c] : comm.terms())
        out += WeylElement::monomial(a.pairs(), m, c.shifted(-1) * rat(1, 2), a.complex_mask());
    return out;
}

WeylElement to_complex_basis(const WeylElement& a, uint32_t pairs_mask) {
    if ((a.complex_mask() & pairs_mask) != 0)
        throw domain_error("pair already in complex coordinates");
    const int n = a.pairs();
    uint32_t new_mask = a.complex_mask() | pairs_mask;
    const Cyclotomic i = cyclo_i();
    // p = -(i/2)(z - zb), q = (z + zb)/2 on converted pairs
    std::vector<WeylElement> images;
    images.reserve(static_cast<size_t>(2 * n));
    for (int g = 0; g < 2 * n; ++g) {
        int j = (g < n) ? g : g - n;
        if ((pairs_mask >> j) & 1u) {
            WeylElement z = WeylElement::generator(n, j, new_mask);
            WeylElement zb = WeylElement::generator(n, j + n, new_mask);
            if (g < n)
                images.push_back((z - zb) * (-(i * rat(1, 2))));
            else
                images.push_back((z + zb) * rat(1, 2));
        } else {
            images.push_back(WeylElement::generator(n, g, new_mask));
        }
    }
    return WeylElement::substitute(a, images);
}

WeylElement to_real_basis(const WeylElement& a, uint32_t pairs_mask) {
    if ((a.complex_mask() & pairs_mask) != pairs_mask)
        throw domain_error("pair is not in complex coordinates");
    const int n = a.pairs();
    uint32_t new_mask = a.complex_mask() & ~pairs_mask;
    const Cyclotomic i = cyclo_i();
    // z = q + i p, zb = q - i p on converted pairs
    std::vector<WeylElement> images;
    images.reserve(static_cast<size_t>(2 * n));
    for (int g = 0; g < 2 * n; ++g) {
        int j = (g < n) ? g : g - n;
        if ((pairs_mask >> j) & 1u) {
            WeylElement p = WeylElement::generator(n, j, new_mask);
            WeylElement q = WeylElement::generator(n, j + n, new_mask);
            if (g < n)
                images.push_back(q + p * i);
            else
                images.push_back(q - p * i);
        } else {
            images.push_back(WeylElement::generator(n, g, new_mask));
        }
    }
    return WeylElement::substitute(a, images);
}

std::vector<std::vector<Laurent>> sp_matrix(const WeylElement& h) {
    const int n = h.pairs();
    std::vector<std::vector<Laurent>> m(static_cast<size_t>(2 * n),
                                        std::vector<Laurent>(static_cast<size_t>(2 * n)));
    for (int b = 0; b < 2 * n; ++b) {
        WeylElement image = sp_derivation(h, WeylElement::generator(n, b, h.complex_mask()));
        for (const auto& [mono, c] : image.terms()) {
            int idx = -1;
            long deg = 0;
            for (int g = 0; g < 2 * n; ++g) {
                deg += mono[static_cast<size_t>(g)];
                if (mono[static_cast<size_t>(g)] == 1 && idx < 0) idx = g;
            }
            if (deg != 1 || idx < 0)
                throw domain_error("sp derivation image of a generator is not linear");
            m[static_cast<size_t>(idx)][static_cast<size_t>(b)] = c;
        }
    }
    return m;
}

}  // namespace orbindex
