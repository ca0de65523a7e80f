#include "orbindex/cocycle.hpp"

#include <algorithm>
#include <numeric>

namespace orbindex {

UPoly UPoly::constant(int vars, const Laurent& c) {
    UPoly p(vars);
    if (!c.is_zero()) p.t_[std::vector<uint8_t>(static_cast<size_t>(vars), 0)] = c;
    return p;
}

UPoly UPoly::pair_weight(int vars, int i, int j) {
    if (i >= j) throw domain_error("pair weight needs i < j");
    UPoly p(vars);
    std::vector<uint8_t> e(static_cast<size_t>(vars), 0);
    p.t_[e] = Laurent(1);  // the +1
    if (i > 0) {
        e.assign(static_cast<size_t>(vars), 0);
        e[static_cast<size_t>(i - 1)] = 1;  // u_i with u_0 absent
        p.add(e, Laurent(2));
    }
    e.assign(static_cast<size_t>(vars), 0);
    e[static_cast<size_t>(j - 1)] = 1;
    p.add(e, Laurent(-2));
    return p;
}

void UPoly::add(const std::vector<uint8_t>& e, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_[e] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly p = *this;
    for (const auto& [e, c] : o.t_) p.add(e, c);
    return p;
}

UPoly UPoly::operator*(const UPoly& o) const {
    UPoly p(vars_);
    for (const auto& [ea, ca] : t_) {
        for (const auto& [eb, cb] : o.t_) {
            std::vector<uint8_t> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
            p.add(e, ca * cb);
        }
    }
    return p;
}

UPoly UPoly::operator*(const Laurent& c) const {
    UPoly p(vars_);
    if (c.is_zero()) return p;
    for (const auto& [e, v] : t_) p.t_[e] = v * c;
    return p;
}

Rational simplex_monomial_integral(const std::vector<uint8_t>& exponents) {
    Rational denom(1);
    long carry = 0;
    for (uint8_t a : exponents) {
        long e = a + carry;
        denom *= rat(e + 1);
        carry = e + 1;
    }
    return rat(1) / denom;
}

Laurent UPoly::simplex_integral() const {
    Laurent acc;
    for (const auto& [e, c] : t_) acc += c * simplex_monomial_integral(e);
    return acc;
}

SlotTensor SlotTensor::from_tuple(const std::vector<WeylElement>& tuple, int uvars) {
    SlotTensor t;
    t.arity = static_cast<int>(tuple.size());
    t.uvars = uvars;
    t.terms.push_back({UPoly::constant(uvars, Laurent(1)), tuple});
    return t;
}

SlotTensor alpha_pair(const SlotTensor& t, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= t.arity || j >= t.arity)
        throw domain_error("alpha slot index out of range");
    SlotTensor out;
    out.arity = t.arity;
    out.uvars = t.uvars;
    for (const auto& term : t.terms) {
        const int k = term.slots.empty() ? 0 : term.slots[0].pairs();
        for (int l = 0; l < k; ++l) {
            // + (1/2) dp_l(slot i) dq_l(slot j)
            {
                WeylElement di = term.slots[static_cast<size_t>(i)].derivative(l);
                WeylElement dj = term.slots[static_cast<size_t>(j)].derivative(k + l);
                if (!di.is_zero() && !dj.is_zero()) {
                    auto slots = term.slots;
                    slots[static_cast<size_t>(i)] = di;
                    slots[static_cast<size_t>(j)] = dj;
                    out.terms.push_back({term.coeff * Laurent(rat(1, 2)), std::move(slots)});
                }
            }
            // - (1/2) dq_l(slot i) dp_l(slot j)
            {
                WeylElement di = term.slots[static_cast<size_t>(i)].derivative(k + l);
                WeylElement dj = term.slots[static_cast<size_t>(j)].derivative(l);
                if (!di.is_zero() && !dj.is_zero()) {
                    auto slots = term.slots;
                    slots[static_cast<size_t>(i)] = di;
                    slots[static_cast<size_t>(j)] = dj;
                    out.terms.push_back({term.coeff * Laurent(rat(-1, 2)), std::move(slots)});
                }
            }
        }
    }
    return out;
}

SlotTensor pi_operator(const SlotTensor& t, int k) {
    if (t.arity != 2 * k + 1) throw domain_error("pi operator arity mismatch");
    SlotTensor out;
    out.arity = t.arity;
    out.uvars = t.uvars;
    std::vector<int> perm(static_cast<size_t>(2 * k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inv = 0;
        for (size_t a = 0; a < perm.size(); ++a)
            for (size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) ++inv;
        Laurent sign(inv % 2 == 0 ? 1 : -1);
        for (const auto& term : t.terms) {
            auto slots = term.slots;
            bool dead = false;
            for (int s = 1; s <= 2 * k; ++s) {
                // symplectic basis order y = (p_1, q_1, p_2, q_2, ...)
                int y = perm[static_cast<size_t>(s - 1)];
                int gen = (y % 2 == 0) ? y / 2 : k + y / 2;
                slots[static_cast<size_t>(s)] = slots[static_cast<size_t>(s)].derivative(gen);
                if (slots[static_cast<size_t>(s)].is_zero()) {
                    dead = true;
                    break;
                }
            }
            if (!dead) out.terms.push_back({term.coeff * sign, std::move(slots)});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

// apply exp(2 h w alpha_ij) to the tensor, w the pair weight u-polynomial.
// The factor 2 makes the exponential at coincident simplex variables equal to
// the star product's exponential (alpha_ij carries the 1/2 while the product
// convention has [p, q] = 2h); the Hochschild cocycle condition pins it.
SlotTensor exp_alpha_pair(const SlotTensor& t, int i, int j) {
    UPoly w = UPoly::pair_weight(t.uvars, i, j);
    SlotTensor acc = t;
    SlotTensor power = t;
    Rational fact(1);
    for (int m = 1;; ++m) {
        power = alpha_pair(power, i, j);
        if (power.is_zero()) break;
        fact *= m;
        UPoly wm = UPoly::constant(t.uvars,
                                   Laurent::h_power(m) * (rat_pow(rat(2), m) / fact));
        for (int r = 0; r < m; ++r) wm = wm * w;
        for (const auto& term : power.terms)
            acc.terms.push_back({term.coeff * wm, term.slots});
    }
    return acc;
}

}  // namespace

CocycleEvaluator::CocycleEvaluator(int k) : k_(k) {
    if (k < 1 || k > 3) throw unsupported_error("cocycle degree out of the supported range");
}

Laurent CocycleEvaluator::operator()(const std::vector<WeylElement>& tuple) {
    if (static_cast<int>(tuple.size()) != 2 * k_ + 1)
        throw domain_error("cocycle expects 2k+1 slots");
    for (const auto& s : tuple) {
        if (s.pairs() != k_ || s.complex_mask() != 0)
            throw domain_error("cocycle slots must live on the fixed real pairs");
    }
    // expand multilinearly into monomial tuples and use the memo
    Laurent acc;
    std::vector<std::pair<Laurent, std::vector<Mono>>> expanded = {{Laurent(1), {}}};
    for (const auto& slot : tuple) {
        std::vector<std::pair<Laurent, std::vector<Mono>>> next;
        for (const auto& [coef, monos] : expanded) {
            for (const auto& [m, c] : slot.terms()) {
                auto m2 = monos;
                m2.push_back(m);
                next.push_back({coef * c, std::move(m2)});
            }
        }
        expanded = std::move(next);
    }
    for (const auto& [coef, monos] : expanded) acc += coef * eval_monomials(monos);
    return acc;
}

Laurent CocycleEvaluator::eval_monomials(const std::vector<Mono>& monos) {
    std::vector<uint16_t> key;
    key.reserve(monos.size() * static_cast<size_t>(2 * k_));
    for (const auto& m : monos) key.insert(key.end(), m.begin(), m.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<WeylElement> tuple;
    tuple.reserve(monos.size());
    for (const auto& m : monos) tuple.push_back(WeylElement::monomial(k_, m, Laurent(1)));
    SlotTensor t = SlotTensor::from_tuple(tuple, 2 * k_);
    t = pi_operator(t, k_);
    for (int i = 0; i <= 2 * k_ && !t.is_zero(); ++i)
        for (int j = i + 1; j <= 2 * k_; ++j) t = exp_alpha_pair(t, i, j);
    // mu: constant term of every slot, then integrate the u-polynomial
    Laurent acc;
    for (const auto& term : t.terms) {
        Laurent factor(1);
        bool dead = false;
        for (const auto& s : term.slots) {
            Laurent c = s.constant_term();
            if (c.is_zero()) {
                dead = true;
                break;
            }
            factor *= c;
        }
        if (dead) continue;
        acc += factor * term.coeff.simplex_integral();
    }
    memo_[std::move(key)] = acc;
    return acc;
}

Laurent CocycleEvaluator::eval_chain(const Chain& c) {
    Laurent acc;
    for (const auto& [s, tuple] : c.summands) acc += s * (*this)(tuple);
    return acc;
}

TwistedTraceData TwistedTraceData::from_eigenvalues(const std::vector<Cyclotomic>& lambdas) {
    TwistedTraceData d;
    d.lambdas = lambdas;
    d.kappas = cayley_diagonal(lambdas);
    Cyclotomic norm(1);
    for (const auto& lam : lambdas) norm *= (Cyclotomic(1) - lam.conj());
    d.normalizer = norm.inverse();
    return d;
}

Laurent twisted_trace(const TwistedTraceData& d, const WeylElement& a) {
    const int m = d.pairs();
    if (a.pairs() != m) throw domain_error("twisted trace dimension mismatch");
    uint32_t full = m == 0 ? 0u : ((1u << m) - 1u);
    if (a.complex_mask() != full)
        throw domain_error("twisted trace needs complex coordinates on all pairs");
    const Cyclotomic minus_two_i = -(cyclo_i() * rat(2));
    Laurent acc;
    for (const auto& [mono, c] : a.terms()) {
        bool diag = true;
        for (int j = 0; j < m; ++j)
            if (mono[static_cast<size_t>(j)] != mono[static_cast<size_t>(j + m)]) {
                diag = false;
                break;
            }
        if (!diag) continue;
        // exp(-2i h sum kappa dz dzb): monomial z^a zb^a contributes a!(-2i h kappa)^a
        Laurent factor(1);
        int total = 0;
        for (int j = 0; j < m; ++j) {
            uint16_t e = mono[static_cast<size_t>(j)];
            if (e == 0) continue;
            Cyclotomic base = minus_two_i * d.kappas[static_cast<size_t>(j)];
            factor *= Laurent(Cyclotomic(Rational(factorial(e))) * base.pow(e));
            total += e;
        }
        acc += c * factor.shifted(total);
    }
    return acc * d.normalizer;
}

WeylElement twisted_action(const TwistedTraceData& d, const WeylElement& a) {
    const int m = d.pairs();
    WeylElement out(a.pairs(), a.complex_mask());
    for (const auto& [mono, c] : a.terms()) {
        Cyclotomic scale(1);
        for (int j = 0; j < m; ++j) {
            uint16_t ez = mono[static_cast<size_t>(j)];
            uint16_t ezb = mono[static_cast<size_t>(j + m)];
            if (ez) scale *= d.lambdas[static_cast<size_t>(j)].pow(ez);
            if (ezb) scale *= d.lambdas[static_cast<size_t>(j)].conj().pow(ezb);
        }
        out += WeylElement::monomial(a.pairs(), mono, c * scale, a.complex_mask());
    }
    return out;
}

TwistedCocycle::TwistedCocycle(int k, TwistedTraceData trace)
    : k_(k), trace_(std::move(trace)), tau_(k) {}

uint32_t TwistedCocycle::complex_mask() const {
    uint32_t mask = 0;
    for (int j = 0; j < trace_.pairs(); ++j) mask |= (1u << (k_ + j));
    return mask;
}

WeylElement TwistedCocycle::gamma(const WeylElement& a) const {
    const int n = total_pairs();
    if (a.pairs() != n || a.complex_mask() != complex_mask())
        throw domain_error("twisted cocycle basis mismatch");
    WeylElement out(n, a.complex_mask());
    for (const auto& [mono, c] : a.terms()) {
        Cyclotomic scale(1);
        for (int j = 0; j < trace_.pairs(); ++j) {
            uint16_t ez = mono[static_cast<size_t>(k_ + j)];
            uint16_t ezb = mono[static_cast<size_t>(n + k_ + j)];
            if (ez) scale *= trace_.lambdas[static_cast<size_t>(j)].pow(ez);
            if (ezb) scale *= trace_.lambdas[static_cast<size_t>(j)].conj().pow(ezb);
        }
        out += WeylElement::monomial(n, mono, c * scale, a.complex_mask());
    }
    return out;
}

Laurent TwistedCocycle::star_trace(const std::vector<Mono>& normal_monos) {
    const int m = trace_.pairs();
    uint32_t full = m == 0 ? 0u : ((1u << m) - 1u);
    std::vector<uint16_t> key;
    key.reserve(normal_monos.size() * static_cast<size_t>(2 * m));
    for (const auto& mo : normal_monos) key.insert(key.end(), mo.begin(), mo.end());
    auto it = star_memo_.find(key);
    if (it != star_memo_.end()) return it->second;

    WeylElement prod = WeylElement::one(m, full);
    for (const auto& mo : normal_monos)
        prod = star(prod, WeylElement::monomial(m, mo, Laurent(1), full));
    Laurent val = twisted_trace(trace_, prod);
    star_memo_[std::move(key)] = val;
    return val;
}

Laurent TwistedCocycle::operator()(const std::vector<WeylElement>& tuple) {
    if (static_cast<int>(tuple.size()) != 2 * k_ + 1)
        throw domain_error("twisted cocycle expects 2k+1 slots");
    const int n = total_pairs();
    const int m = trace_.pairs();
    for (const auto& s : tuple)
        if (s.pairs() != n || s.complex_mask() != complex_mask())
            throw domain_error("twisted cocycle basis mismatch");

    // expand slots into (coeff, fixed monomial, normal monomial)
    struct Split {
        Laurent c;
        Mono fixed;
        Mono normal;
    };
    std::vector<std::vector<Split>> splits(tuple.size());
    for (size_t s = 0; s < tuple.size(); ++s) {
        for (const auto& [mono, c] : tuple[s].terms()) {
            Mono f(static_cast<size_t>(2 * k_)), nm(static_cast<size_t>(2 * m));
            for (int j = 0; j < k_; ++j) {
                f[static_cast<size_t>(j)] = mono[static_cast<size_t>(j)];
                f[static_cast<size_t>(k_ + j)] = mono[static_cast<size_t>(n + j)];
            }
            for (int j = 0; j < m; ++j) {
                nm[static_cast<size_t>(j)] = mono[static_cast<size_t>(k_ + j)];
                nm[static_cast<size_t>(m + j)] = mono[static_cast<size_t>(n + k_ + j)];
            }
            splits[s].push_back({c, std::move(f), std::move(nm)});
        }
    }
    Laurent acc;
    std::vector<size_t> idx(tuple.size(), 0);
    while (true) {
        Laurent coef(1);
        std::vector<Mono> fixed;
        std::vector<Mono> normal;
        fixed.reserve(tuple.size());
        normal.reserve(tuple.size());
        bool any_empty = false;
        for (size_t s = 0; s < tuple.size(); ++s) {
            if (splits[s].empty()) {
                any_empty = true;
                break;
            }
            const Split& sp = splits[s][idx[s]];
            coef *= sp.c;
            fixed.push_back(sp.fixed);
            normal.push_back(sp.normal);
        }
        if (any_empty) break;
        Laurent tau_val = tau_.eval_monomials(fixed);
        if (!tau_val.is_zero()) acc += coef * tau_val * star_trace(normal);
        // odometer
        size_t s = 0;
        for (; s < tuple.size(); ++s) {
            if (++idx[s] < splits[s].size()) break;
            idx[s] = 0;
        }
        if (s == tuple.size()) break;
    }
    return acc;
}

Laurent TwistedCocycle::eval_chain(const Chain& c) {
    Laurent acc;
    for (const auto& [s, tuple] : c.summands) acc += s * (*this)(tuple);
    return acc;
}

Laurent cochain_coboundary(const std::function<Laurent(const std::vector<WeylElement>&)>& f,
                           const Automorphism& gamma, const std::vector<WeylElement>& tuple) {
    const int p1 = static_cast<int>(tuple.size()) - 1;  // f has p1 slots; result degree p1
    Laurent acc;
    for (int i = 0; i < p1; ++i) {
        std::vector<WeylElement> face;
        face.reserve(tuple.size() - 1);
        for (int j = 0; j < i; ++j) face.push_back(tuple[static_cast<size_t>(j)]);
        face.push_back(star(tuple[static_cast<size_t>(i)], tuple[static_cast<size_t>(i + 1)]));
        for (int j = i + 2; j <= p1; ++j) face.push_back(tuple[static_cast<size_t>(j)]);
        Laurent v = f(face);
        acc += (i % 2 == 0) ? v : -v;
    }
    std::vector<WeylElement> wrap;
    wrap.reserve(tuple.size() - 1);
    wrap.push_back(star(gamma(tuple[static_cast<size_t>(p1)]), tuple[0]));
    for (int j = 1; j < p1; ++j) wrap.push_back(tuple[static_cast<size_t>(j)]);
    Laurent v = f(wrap);
    acc += (p1 % 2 == 0) ? v : -v;
    return acc;
}

}  // namespace orbindex
